// Runs every acceptance criterion at its stated tolerance and prints one
// PASS/FAIL line per criterion. Optional arguments select criteria by number.
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <iostream>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "cliffbie/harness.hpp"

using namespace cliffbie;

namespace {

struct Run {
  std::string experiment;
  std::optional<SurfaceKind> surface;
};

struct Criterion {
  int id;
  std::string title;
  std::vector<Run> runs;
  std::string tag;
};

const std::vector<Criterion>& criteria() {
  static const std::vector<Criterion> list = {
      {1, "algebra exactness", {{"algebra", {}}}, "algebra"},
      {2, "kernel identities", {{"kernel-identities", {}}}, "kernel-identities"},
      {3, "Cauchy constants (sphere 32x64)", {{"cauchy-constant", SurfaceKind::Sphere}}, "cauchy-constant"},
      {4, "order-zero Plemelj limits (x1sq)", {{"plemelj0", SurfaceKind::Sphere}}, "plemelj0"},
      {5, "involution (sphere and torus)",
       {{"involution", SurfaceKind::Sphere}, {"involution", SurfaceKind::Torus}}, "involution"},
      {6, "idSj cross-check (64x128)", {{"idsj", SurfaceKind::Sphere}}, "idsj"},
      {7, "projection algebra", {{"projections", SurfaceKind::Sphere}}, "projections"},
      {8, "Hardy plus", {{"hardy-plus", SurfaceKind::Sphere}}, "hardy-plus"},
      {9, "Hardy minus", {{"hardy-minus", SurfaceKind::Sphere}}, "hardy-minus"},
      {10, "jump problem (x1sq)", {{"jump", SurfaceKind::Sphere}}, "jump"},
      {11, "harmonicity of C1 W", {{"jump", SurfaceKind::Sphere}}, "harmonicity"},
      {12, "circle baseline", {{"circle-baseline", {}}}, "circle-baseline"},
      {13, "gradient recovery", {{"gradient-recovery", SurfaceKind::Sphere}}, "gradient-recovery"},
  };
  return list;
}

std::string key(const Run& r) {
  return r.experiment + (r.surface ? "/" + to_string(*r.surface) : std::string());
}

}  // namespace

int main(int argc, char** argv) {
  std::set<int> selected;
  for (int a = 1; a < argc; ++a) {
    const int id = std::atoi(argv[a]);
    if (id < 1 || id > static_cast<int>(criteria().size())) {
      std::cerr << "usage: acceptance [criterion numbers 1.." << criteria().size() << "]\n";
      return 2;
    }
    selected.insert(id);
  }

  std::map<std::string, ExperimentReport> reports;
  auto report_for = [&](const Run& run) -> const ExperimentReport& {
    const auto k = key(run);
    auto it = reports.find(k);
    if (it == reports.end()) {
      ExperimentConfig config;
      config.experiment = run.experiment;
      config.surface = run.surface;
      const auto start = std::chrono::steady_clock::now();
      auto report = run_experiment(config);
      const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
      std::fprintf(stderr, "  ran %-28s %8.1f s\n", k.c_str(), secs);
      it = reports.emplace(k, std::move(report)).first;
    }
    return it->second;
  };

  int failed = 0;
  for (const auto& c : criteria()) {
    if (!selected.empty() && !selected.contains(c.id)) continue;
    std::vector<std::string> failures;
    std::size_t gates = 0;
    std::string error;
    try {
      for (const auto& run : c.runs) {
        for (const auto& g : report_for(run).gates) {
          if (g.criterion != c.tag) continue;
          ++gates;
          if (!g.pass) {
            char line[256];
            std::snprintf(line, sizeof line, "%s %s: observed %.3e, %s %.3e", key(run).c_str(), g.name.c_str(),
                          g.observed, g.kind.c_str(), g.threshold);
            failures.emplace_back(line);
          }
        }
      }
    } catch (const std::exception& e) {
      error = e.what();
    }
    const bool pass = error.empty() && gates > 0 && failures.empty();
    if (!pass) ++failed;
    std::printf("%s  %2d  %-36s %zu/%zu gates\n", pass ? "PASS" : "FAIL", c.id, c.title.c_str(),
                gates - failures.size(), gates);
    for (const auto& f : failures) std::printf("        %s\n", f.c_str());
    if (!error.empty()) std::printf("        error: %s\n", error.c_str());
    std::fflush(stdout);
  }
  return failed == 0 ? 0 : 1;
}
