#pragma once

#include <string>
#include <vector>

#include "cliffbie/harness.hpp"

namespace cliffbie::harness_detail {

// Relative residuals at or below this are treated as converged to rounding by
// order gates.
inline constexpr double kRoundingFloor = 1e-12;

double tolerance(const ExperimentConfig& config, const std::string& gate, double fallback);

void gate_max(ExperimentReport& report, const ExperimentConfig& config, const std::string& name,
              const std::string& criterion, double observed, double threshold);
void gate_min(ExperimentReport& report, const ExperimentConfig& config, const std::string& name,
              const std::string& criterion, double observed, double threshold);
/// Order gate on residual `residual` of a convergence study: gate
/// "<residual>.order".
void gate_order(ExperimentReport& report, const ExperimentConfig& config,
                const std::string& residual, const std::string& criterion,
                double threshold = 1.0);
/// Gate "<residual>.finest" on the residual at the last resolution.
void gate_finest(ExperimentReport& report, const ExperimentConfig& config,
                 const std::string& residual, const std::string& criterion, double threshold);

/// Offsets for study level `level`: the configured (finest-level) offsets
/// scaled by the grid ratio to the finest resolution.
std::vector<double> level_deltas(const ExperimentConfig& config, std::size_t level);

nlohmann::json config_to_json(const ExperimentConfig& config);

/// convergence_study without the two-resolution minimum.
ExperimentReport run_levels(const ExperimentConfig& config, const LevelFunction& level);

/// Report with a single mesh-free result row.
ExperimentReport single_result(const ExperimentConfig& config, Residuals residuals);

}  // namespace cliffbie::harness_detail
