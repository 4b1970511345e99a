#include "study.hpp"

#include <chrono>
#include <cmath>
#include <limits>

#include "cliffbie/errors.hpp"

namespace cliffbie {

void ExperimentConfig::validate() const {
  for (std::size_t k = 0; k < resolutions.size(); ++k) {
    const auto& r = resolutions[k];
    if (r.first <= 0 || r.second <= 0) throw UsageError("resolution must be positive: " + r.to_string());
    if (k > 0) {
      const auto& p = resolutions[k - 1];
      if (r.first <= p.first || r.second < p.second) {
        throw UsageError("resolution list must be strictly increasing");
      }
    }
  }
  for (double d : deltas) {
    if (!(d > 0.0)) throw UsageError("offsets must be positive");
  }
  if (!deltas.empty() && deltas.size() != 2) throw UsageError("boundary limits need exactly two offsets");
  if (deltas.size() == 2 && deltas[0] == deltas[1]) throw UsageError("offsets must differ");
  if (h && !(*h > 0.0)) throw UsageError("finite-difference step must be positive");
  if (surface == SurfaceKind::Torus) {
    const double R = params.contains("R") ? params.at("R") : 2.0;
    const double r = params.contains("r") ? params.at("r") : 1.0;
    if (!(R > r && r > 0.0)) throw UsageError("torus needs R > r > 0");
  }
}

SurfaceMesh build_surface(const ExperimentConfig& config, const Resolution& res) {
  switch (config.surface.value_or(SurfaceKind::Sphere)) {
    case SurfaceKind::Sphere: return build_sphere(res);
    case SurfaceKind::Torus: {
      const double R = config.params.contains("R") ? config.params.at("R") : 2.0;
      const double r = config.params.contains("r") ? config.params.at("r") : 1.0;
      return build_torus(R, r, res);
    }
    case SurfaceKind::Circle: return build_circle(res.first);
  }
  throw UsageError("unknown surface");
}

ExperimentReport convergence_study(const ExperimentConfig& config, const LevelFunction& level) {
  if (config.resolutions.size() < 2) throw UsageError("a convergence study needs at least two resolutions");
  return harness_detail::run_levels(config, level);
}

namespace harness_detail {

double tolerance(const ExperimentConfig& config, const std::string& gate, double fallback) {
  const auto it = config.tolerances.find(gate);
  return it == config.tolerances.end() ? fallback : it->second;
}

void gate_max(ExperimentReport& report, const ExperimentConfig& config, const std::string& name,
              const std::string& criterion, double observed, double threshold) {
  const double t = tolerance(config, name, threshold);
  report.gates.push_back({name, criterion, "max", t, observed, std::nullopt, observed <= t});
}

void gate_min(ExperimentReport& report, const ExperimentConfig& config, const std::string& name,
              const std::string& criterion, double observed, double threshold) {
  const double t = tolerance(config, name, threshold);
  report.gates.push_back({name, criterion, "min", t, observed, std::nullopt, observed >= t});
}

void gate_order(ExperimentReport& report, const ExperimentConfig& config,
                const std::string& residual, const std::string& criterion, double threshold) {
  const std::string name = residual + ".order";
  const double t = tolerance(config, name, threshold);
  std::vector<double> values;
  for (const auto& r : report.results) {
    const auto it = r.residuals.find(residual);
    if (it == r.residuals.end()) throw UsageError("no residual named " + residual);
    values.push_back(it->second);
  }
  if (values.size() < 2) throw UsageError("order gate needs at least two resolutions");
  const auto& last = report.results.back().orders;
  const auto it = last.find(residual);
  const double order = it == last.end() ? 0.0 : it->second;
  bool decreasing = true;
  for (std::size_t k = 1; k < values.size(); ++k) decreasing = decreasing && values[k] < values[k - 1];
  const bool pass = values.back() <= kRoundingFloor || (decreasing && order >= t);
  report.gates.push_back({name, criterion, "order", t, order, kRoundingFloor, pass});
}

void gate_finest(ExperimentReport& report, const ExperimentConfig& config,
                 const std::string& residual, const std::string& criterion, double threshold) {
  const auto& last = report.results.back().residuals;
  const auto it = last.find(residual);
  if (it == last.end()) throw UsageError("no residual named " + residual);
  gate_max(report, config, residual + ".finest", criterion, it->second, threshold);
}

std::vector<double> level_deltas(const ExperimentConfig& config, std::size_t level) {
  const double ratio = static_cast<double>(config.resolutions.back().first) /
                       static_cast<double>(config.resolutions.at(level).first);
  std::vector<double> out;
  for (double d : config.deltas) out.push_back(d * ratio);
  return out;
}

nlohmann::json config_to_json(const ExperimentConfig& config) {
  nlohmann::json j;
  j["experiment"] = config.experiment;
  j["surface"] = config.surface ? nlohmann::json(to_string(*config.surface)) : nlohmann::json();
  j["params"] = config.params;
  auto& res = j["resolutions"] = nlohmann::json::array();
  for (const auto& r : config.resolutions) res.push_back(r.to_string());
  j["densities"] = config.densities;
  j["deltas"] = config.deltas;
  j["h"] = config.h ? nlohmann::json(*config.h) : nlohmann::json();
  j["tolerance_overrides"] = config.tolerances;
  j["seed"] = config.seed;
  j["timings"] = config.timings;
  return j;
}

ExperimentReport run_levels(const ExperimentConfig& config, const LevelFunction& level) {
  ExperimentReport report;
  report.experiment = config.experiment;
  report.config = config_to_json(config);
  for (std::size_t k = 0; k < config.resolutions.size(); ++k) {
    const auto mesh = build_surface(config, config.resolutions[k]);
    const auto start = std::chrono::steady_clock::now();
    ResolutionResult row;
    row.resolution = config.resolutions[k];
    row.residuals = level(mesh, k);
    if (config.timings) {
      row.timing_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
    }
    if (k > 0) {
      const auto& prev = report.results.back();
      const double scale = std::log(static_cast<double>(config.resolutions[k].first) /
                                    static_cast<double>(config.resolutions[k - 1].first));
      for (const auto& [name, value] : row.residuals) {
        const auto it = prev.residuals.find(name);
        if (it == prev.residuals.end() || !(it->second > 0.0) || !(value > 0.0)) continue;
        row.orders[name] = std::log(it->second / value) / scale;
      }
    }
    report.results.push_back(std::move(row));
  }
  return report;
}

ExperimentReport single_result(const ExperimentConfig& config, Residuals residuals) {
  ExperimentReport report;
  report.experiment = config.experiment;
  report.config = config_to_json(config);
  ResolutionResult row;
  row.residuals = std::move(residuals);
  report.results.push_back(std::move(row));
  return report;
}

}  // namespace harness_detail
}  // namespace cliffbie
