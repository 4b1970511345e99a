#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

#include "cliffbie/geometry.hpp"
#include "cliffbie/multivector.hpp"
#include "cliffbie/whitney.hpp"

namespace cliffbie {

// Quadrature conventions shared by every operator below:
//  * products are ordered kernel * normal * density (left-monogenic);
//  * the Cauchy-kernel layer of a singular operator is regularized by
//    subtracting the density at the target node and adding it back through
//    2 int E0(y - z) n(y) dy = 1 on the surface;
//  * the sum skips the target node; on surfaces in R^3 a local correction
//    (NearFieldRule) then replaces the contribution of a small disc around
//    the target by a polar-coordinate integral of a local polynomial model;
//  * sums run over nodes in index order, so results are bit-reproducible.

/// Local correction of singular and nearly singular boundary sums. The disc
/// has radius `cells` grid spacings (capped by the surface reach); the density
/// is fitted there by a least-squares polynomial of total degree `degree`,
/// rows weighted by rho^-focus so the fit is tightest at the centre, and
/// integrated with `radial` x `angular` polar points under a smooth cutoff.
/// Disabled, the sums reduce to plain node-skipping.
struct NearFieldRule {
  bool enabled = true;
  double cells = 16.0;
  int degree = 8;
  int radial = 16;
  int angular = 32;
  double focus = 4.0;
};
inline constexpr NearFieldRule kNearSurfaceRule{true, 16.0, 8, 32, 48, 4.0};

/// Value of a first-order operator at one node: the trace slot and the m
/// first-order slots.
struct WhitneyValue {
  Multivector value;
  std::vector<Multivector> partials;
};

/// Cauchy transform sum_i w_i E0(y_i - x) n(y_i) phi_i for x off the surface.
/// Throws NearSurfaceError inside the mesh guard band.
Multivector cauchy_transform(const SurfaceMesh& mesh, const NodeField& density,
                             std::span<const double> x);

/// Same transform with the density anchored at node `anchor`:
/// int E0 n (phi - phi_anchor) + chi(x) phi_anchor, chi = 1 inside, 0 outside.
/// Exact in exact arithmetic, far more accurate near the anchor; no guard band.
Multivector cauchy_transform_anchored(const SurfaceMesh& mesh, const NodeField& density,
                                      std::span<const double> x, std::size_t anchor,
                                      const NearFieldRule& rule = kNearSurfaceRule);

/// Principal-value singular transform 2 p.v. int E0(y - z) n(y) phi(y) dy at
/// node z.
Multivector singular_transform(const SurfaceMesh& mesh, const NodeField& density,
                               std::size_t z, const NearFieldRule& rule = {});
/// Singular transform at every node.
NodeField singular_transform(const SurfaceMesh& mesh, const NodeField& density,
                             const NearFieldRule& rule = {});

/// Order-one Cauchy transform
///   int E0(y - x) n(y) f0(y) dy - int E1(y - x) n(y) d(y) dy,
/// d the Dirac trace of the data. Needs m > 2.
Multivector bimonogenic_cauchy_transform(const SurfaceMesh& mesh, const WhitneyField& w,
                                         std::span<const double> x);
/// Anchored variant (Cauchy layer anchored at node `anchor`), no guard band.
Multivector bimonogenic_cauchy_transform_anchored(const SurfaceMesh& mesh, const WhitneyField& w,
                                                  std::span<const double> x,
                                                  std::size_t anchor,
                                                  const NearFieldRule& rule = kNearSurfaceRule);

/// Order-one singular operator at node z. Trace slot:
///   2 p.v. int E0 n f0 - 2 int E1 n d;
/// slot j:
///   2 int dE0/dz_j n R(y, z) - 2 int dE1/dz_j n D_y R(y, z) + f^(j)(z),
/// with kernels evaluated at y - z and differentiated in z.
WhitneyValue bimonogenic_singular_transform(const SurfaceMesh& mesh, const WhitneyField& w,
                                            std::size_t z, const NearFieldRule& rule = {});
/// The operator at every node, as Whitney data.
WhitneyField bimonogenic_singular_transform(const SurfaceMesh& mesh, const WhitneyField& w,
                                            const NearFieldRule& rule = {});

/// 2 p.v. int E0(y - z) n(y) (sum_j e_j f^(j)(y)) dy: the Dirac trace of the
/// order-one singular operator, computed through the order-zero one.
Multivector dirac_trace_of_singular(const SurfaceMesh& mesh, const WhitneyField& w,
                                    std::size_t z, const NearFieldRule& rule = {});

enum class HardySign { Plus, Minus };

/// (W +- S W) / 2 given a precomputed S W.
WhitneyField hardy_project(HardySign sign, const WhitneyField& w, const WhitneyField& sw);
/// (W +- S W) / 2.
WhitneyField hardy_project(HardySign sign, const SurfaceMesh& mesh, const WhitneyField& w,
                           const NearFieldRule& rule = {});

/// Dirac operator of the order-one Cauchy transform, evaluated as the
/// order-zero transform of the Dirac trace.
Multivector dirac_of_cauchy_transform(const SurfaceMesh& mesh, const WhitneyField& w,
                                      std::span<const double> x);
Multivector dirac_of_cauchy_transform_anchored(const SurfaceMesh& mesh, const WhitneyField& w,
                                               std::span<const double> x, std::size_t anchor,
                                               const NearFieldRule& rule = kNearSurfaceRule);

using PointEvaluator = std::function<Multivector(std::span<const double>)>;

/// Central second-difference Laplacian, componentwise.
Multivector laplacian_fd(const PointEvaluator& f, std::span<const double> x, double h);

struct BoundaryLimits {
  Multivector interior;
  Multivector exterior;
};

/// One-sided limits at a node from evaluations at two normal offsets,
/// linearly extrapolated to zero offset. `f` receives the probe point.
BoundaryLimits extrapolate_limits(const SurfaceMesh& mesh, std::size_t node, double delta1,
                                  double delta2, const PointEvaluator& f);

/// Deterministic subset of about `count` node indices spread over the grid.
std::vector<std::size_t> probe_nodes(const SurfaceMesh& mesh, std::size_t count);

struct JumpProbe {
  std::vector<std::size_t> nodes;
  double delta1 = 0.1;
  double delta2 = 0.05;
  std::vector<double> far_direction;        // normalized internally
  std::vector<double> far_radii{10.0, 20.0};
  bool check_sum = false;                   // also compare F+ + F- with S f
};

struct JumpReport {
  double value_jump = 0.0;     // max ||F+ - F- - f0||
  double dirac_jump = 0.0;     // max ||[DF]+ - [DF]- - d||
  double sum_residual = 0.0;   // max ||F+ + F- - [S f]^(0)|| when requested
  std::vector<double> far_value_norms;
  std::vector<double> far_dirac_norms;
  double value_decay_slope = 0.0;
  double dirac_decay_slope = 0.0;
};

/// Sectionally bimonogenic solution F of the jump problem: the order-one
/// Cauchy transform of the data.
class SectionalFunction {
 public:
  SectionalFunction(SurfaceMesh mesh, WhitneyField data);

  /// F(x), refusing near-surface points.
  Multivector operator()(std::span<const double> x) const;
  /// D F(x), refusing near-surface points.
  Multivector dirac(std::span<const double> x) const;

  const SurfaceMesh& mesh() const { return mesh_; }
  const WhitneyField& data() const { return data_; }

 private:
  SurfaceMesh mesh_;
  WhitneyField data_;
};

struct JumpSolution {
  SectionalFunction solution;
  JumpReport report;
};

/// Builds F and measures the jump and decay conditions at the probe points.
JumpSolution jump_solve(const SurfaceMesh& mesh, const WhitneyField& w, const JumpProbe& probe);

}  // namespace cliffbie
