#include "cliffbie/cli.hpp"

#include <cstdio>
#include <iomanip>
#include <ostream>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "cliffbie/errors.hpp"
#include "cliffbie/harness.hpp"

namespace cliffbie::cli {

namespace {

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, sep)) {
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

double parse_double(const std::string& s) {
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(s, &used);
  } catch (const std::exception&) {
    throw UsageError("not a number: '" + s + "'");
  }
  if (used != s.size()) throw UsageError("not a number: '" + s + "'");
  return v;
}

int parse_int(const std::string& s) {
  const double v = parse_double(s);
  if (v != static_cast<int>(v)) throw UsageError("not an integer: '" + s + "'");
  return static_cast<int>(v);
}

std::vector<Resolution> parse_resolutions(std::string s) {
  // Accept the multiplication sign as well as x.
  for (std::size_t p; (p = s.find("\xC3\x97")) != std::string::npos;) s.replace(p, 2, "x");
  std::vector<Resolution> out;
  for (auto token : split(s, ',')) {
    for (char& c : token) {
      if (c == 'X') c = 'x';
    }
    const auto parts = split(token, 'x');
    if (parts.size() == 1) {
      out.push_back({parse_int(parts[0]), 1});
    } else if (parts.size() == 2) {
      out.push_back({parse_int(parts[0]), parse_int(parts[1])});
    } else {
      throw UsageError("bad resolution '" + token + "'");
    }
  }
  return out;
}

std::map<std::string, double> parse_pairs(const std::string& s) {
  std::map<std::string, double> out;
  for (const auto& item : split(s, ',')) {
    const auto eq = item.find('=');
    if (eq == std::string::npos || eq == 0) throw UsageError("expected name=value, got '" + item + "'");
    out[item.substr(0, eq)] = parse_double(item.substr(eq + 1));
  }
  return out;
}

SurfaceKind parse_surface(const std::string& s) {
  if (s == "sphere") return SurfaceKind::Sphere;
  if (s == "torus") return SurfaceKind::Torus;
  if (s == "circle") return SurfaceKind::Circle;
  throw UsageError("unknown surface '" + s + "'");
}

void print_summary(const ExperimentReport& report, std::ostream& err) {
  std::size_t passed = 0;
  for (const auto& g : report.gates) {
    err << (g.pass ? "PASS " : "FAIL ") << std::left << std::setw(36) << g.name << " observed "
        << std::scientific << std::setprecision(3) << g.observed << "  " << g.kind << ' '
        << g.threshold << std::defaultfloat << '\n';
    if (g.pass) ++passed;
  }
  err << report.experiment << ": " << passed << '/' << report.gates.size() << " gates passed\n";
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Numerical checks for Clifford boundary operators"};
  app.require_subcommand(1);

  auto* list = app.add_subcommand("list", "List the registered experiments");
  auto* run_cmd = app.add_subcommand("run", "Run one experiment and emit its report");
  run_cmd->set_help_flag("--help", "Print this help message and exit");

  std::string experiment;
  std::string surface;
  std::string params;
  std::string res;
  std::vector<std::string> densities;
  std::string deltas;
  double h = 0.0;
  std::string tol;
  std::uint64_t seed = ExperimentConfig{}.seed;
  std::string out_path;
  std::string format = "json";
  bool timings = false;

  run_cmd->add_option("experiment", experiment, "Experiment name (see `list`)")->required();
  run_cmd->add_option("--surface", surface, "sphere | torus | circle");
  run_cmd->add_option("--params", params, "Surface and experiment parameters, k=v,...");
  run_cmd->add_option("--res", res, "Resolutions, e.g. 16x32,32x64");
  run_cmd->add_option("--density", densities, "Density name; repeat for several");
  run_cmd->add_option("--delta", deltas, "Two normal offsets at the finest resolution");
  auto* h_opt = run_cmd->add_option("--h", h, "Finite-difference step");
  run_cmd->add_option("--tol", tol, "Gate threshold overrides, name=value,...");
  run_cmd->add_option("--seed", seed, "Random seed");
  run_cmd->add_option("--out", out_path, "Write the report to this file");
  run_cmd->add_option("--format", format, "json | csv")->check(CLI::IsMember({"json", "csv"}));
  run_cmd->add_flag("--timings", timings, "Record wall-clock time per resolution");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kExitPass;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }

  if (list->parsed()) {
    for (const auto& name : experiment_names()) out << name << '\n';
    return kExitPass;
  }

  ExperimentReport report;
  try {
    ExperimentConfig config;
    config.experiment = experiment;
    if (!surface.empty()) config.surface = parse_surface(surface);
    if (!params.empty()) config.params = parse_pairs(params);
    if (!res.empty()) config.resolutions = parse_resolutions(res);
    config.densities = densities;
    if (!deltas.empty()) {
      for (const auto& d : split(deltas, ',')) config.deltas.push_back(parse_double(d));
    }
    if (h_opt->count() > 0) config.h = h;
    if (!tol.empty()) config.tolerances = parse_pairs(tol);
    config.seed = seed;
    config.timings = timings;
    report = run_experiment(config);
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const UnsupportedError& e) {
    err << "usage error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitRuntime;
  }

  const auto fmt = format == "csv" ? ReportFormat::Csv : ReportFormat::Json;
  try {
    if (out_path.empty()) {
      emit_report(report, fmt, out);
    } else {
      emit_report(report, fmt, out_path);
    }
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitRuntime;
  }
  print_summary(report, err);
  return report.passed() ? kExitPass : kExitGateFailure;
}

}  // namespace cliffbie::cli
