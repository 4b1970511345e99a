#include <fstream>
#include <iomanip>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "cliffbie/errors.hpp"
#include "cliffbie/harness.hpp"

namespace cliffbie {

namespace {

Resolution parse_resolution(const std::string& s) {
  const auto x = s.find('x');
  if (x == std::string::npos) return {std::stoi(s), 1};
  return {std::stoi(s.substr(0, x)), std::stoi(s.substr(x + 1))};
}

// Enough digits to read back the same double.
std::string format_number(double v) {
  std::ostringstream os;
  os << std::setprecision(17) << v;
  return os.str();
}

}  // namespace

bool ExperimentReport::passed() const {
  for (const auto& g : gates) {
    if (!g.pass) return false;
  }
  return true;
}

nlohmann::json report_to_json(const ExperimentReport& report) {
  nlohmann::json j;
  j["schema"] = report.schema;
  j["experiment"] = report.experiment;
  j["config"] = report.config;
  auto& results = j["results"] = nlohmann::json::array();
  for (const auto& r : report.results) {
    nlohmann::json row;
    row["resolution"] = r.resolution ? nlohmann::json(r.resolution->to_string()) : nlohmann::json();
    row["residuals"] = r.residuals;
    row["orders"] = r.orders;
    row["timings_ms"] = r.timing_ms ? nlohmann::json(*r.timing_ms) : nlohmann::json();
    results.push_back(std::move(row));
  }
  auto& gates = j["gates"] = nlohmann::json::array();
  for (const auto& g : report.gates) {
    nlohmann::json row;
    row["name"] = g.name;
    row["criterion"] = g.criterion;
    row["kind"] = g.kind;
    row["threshold"] = g.threshold;
    row["observed"] = g.observed;
    if (g.floor) row["floor"] = *g.floor;
    row["pass"] = g.pass;
    gates.push_back(std::move(row));
  }
  j["passed"] = report.passed();
  return j;
}

ExperimentReport report_from_json(const nlohmann::json& j) {
  ExperimentReport report;
  report.schema = j.at("schema").get<int>();
  if (report.schema != 1) throw UsageError("unsupported report schema");
  report.experiment = j.at("experiment").get<std::string>();
  report.config = j.at("config");
  for (const auto& row : j.at("results")) {
    ResolutionResult r;
    if (!row.at("resolution").is_null()) r.resolution = parse_resolution(row.at("resolution"));
    r.residuals = row.at("residuals").get<Residuals>();
    r.orders = row.at("orders").get<Residuals>();
    if (!row.at("timings_ms").is_null()) r.timing_ms = row.at("timings_ms").get<double>();
    report.results.push_back(std::move(r));
  }
  for (const auto& row : j.at("gates")) {
    Gate g;
    g.name = row.at("name");
    g.criterion = row.at("criterion");
    g.kind = row.at("kind");
    g.threshold = row.at("threshold");
    g.observed = row.at("observed");
    if (row.contains("floor")) g.floor = row.at("floor").get<double>();
    g.pass = row.at("pass");
    report.gates.push_back(std::move(g));
  }
  return report;
}

std::string report_to_csv(const ExperimentReport& report) {
  std::ostringstream os;
  os << "experiment,resolution,residual,value,order\n";
  for (const auto& r : report.results) {
    const std::string res = r.resolution ? r.resolution->to_string() : "";
    for (const auto& [name, value] : r.residuals) {
      os << report.experiment << ',' << res << ',' << name << ',' << format_number(value) << ',';
      const auto it = r.orders.find(name);
      if (it != r.orders.end()) os << format_number(it->second);
      os << '\n';
    }
  }
  return os.str();
}

void emit_report(const ExperimentReport& report, ReportFormat format, std::ostream& out) {
  if (format == ReportFormat::Json) {
    out << report_to_json(report).dump(2) << '\n';
  } else {
    out << report_to_csv(report);
  }
}

void emit_report(const ExperimentReport& report, ReportFormat format, const std::string& path) {
  std::ofstream file(path);
  if (!file) throw std::runtime_error("cannot open " + path + " for writing");
  emit_report(report, format, file);
  if (!file) throw std::runtime_error("failed writing " + path);
}

}  // namespace cliffbie
