#pragma once

#include <complex>
#include <cstdint>
#include <functional>
#include <iosfwd>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "cliffbie/geometry.hpp"
#include "json.hpp"

namespace cliffbie {

/// Everything an experiment run needs. Empty lists and unset options fall
/// back to the experiment's defaults; the report echoes the effective values.
struct ExperimentConfig {
  std::string experiment;
  std::optional<SurfaceKind> surface;
  std::map<std::string, double> params;     // torus R, r; seminorm alpha; probe count
  std::vector<Resolution> resolutions;      // strictly increasing
  std::vector<std::string> densities;
  std::vector<double> deltas;               // offsets at the finest resolution
  std::optional<double> h;                  // finite-difference step
  std::map<std::string, double> tolerances; // gate name -> threshold override
  std::uint64_t seed = 20240601;
  bool timings = false;

  /// Throws UsageError when an invariant is violated.
  void validate() const;
};

using Residuals = std::map<std::string, double>;

struct ResolutionResult {
  std::optional<Resolution> resolution;  // empty for mesh-free experiments
  Residuals residuals;
  Residuals orders;                      // against the previous resolution
  std::optional<double> timing_ms;
};

/// kind "max": pass iff observed <= threshold.
/// kind "min": pass iff observed >= threshold.
/// kind "order": observed is the order at the finest pair; pass iff it is at
/// least the threshold and the residual decreased at every refinement, or the
/// finest residual is at or below `floor`.
struct Gate {
  std::string name;
  std::string criterion;
  std::string kind;
  double threshold = 0.0;
  double observed = 0.0;
  std::optional<double> floor;
  bool pass = false;
};

struct ExperimentReport {
  int schema = 1;
  std::string experiment;
  nlohmann::json config;
  std::vector<ResolutionResult> results;
  std::vector<Gate> gates;

  bool passed() const;
};

std::vector<std::string> experiment_names();

/// Runs a registered experiment. Throws UsageError for unknown names or
/// unsupported surface/density combinations.
ExperimentReport run_experiment(const ExperimentConfig& config);

/// Evaluates `level` once per resolution of `config` (at least two) and fills
/// the residual table and the observed orders log(r_prev / r) / log(n / n_prev).
using LevelFunction = std::function<Residuals(const SurfaceMesh& mesh, std::size_t level)>;
ExperimentReport convergence_study(const ExperimentConfig& config, const LevelFunction& level);

enum class ReportFormat { Json, Csv };

nlohmann::json report_to_json(const ExperimentReport& report);
ExperimentReport report_from_json(const nlohmann::json& j);
/// One header line, then one row per (resolution, residual).
std::string report_to_csv(const ExperimentReport& report);
void emit_report(const ExperimentReport& report, ReportFormat format, std::ostream& out);
/// Throws std::runtime_error when the file cannot be written.
void emit_report(const ExperimentReport& report, ReportFormat format, const std::string& path);

/// (1 / pi i) p.v. int phi(zeta) / (zeta - t) dzeta at node t of the n-node
/// unit circle, by the subtraction-regularized trapezoid rule. The diagonal
/// term uses the spectral derivative of the samples. Requires n >= 8.
std::complex<double> complex_singular_circle(std::span<const std::complex<double>> phi,
                                             std::size_t t);

/// Mesh for one resolution of the configured surface.
SurfaceMesh build_surface(const ExperimentConfig& config, const Resolution& res);

}  // namespace cliffbie
