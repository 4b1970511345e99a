#pragma once

#include <array>
#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "cliffbie/multivector.hpp"
#include "json.hpp"

namespace cliffbie {

enum class SurfaceKind { Sphere, Torus, Circle };
enum class PointClass { Interior, Exterior, NearSurface };

std::string to_string(SurfaceKind kind);
std::string to_string(PointClass c);

/// Grid sizes of a parametric product mesh. For the sphere (n_theta, n_phi),
/// for the torus (n_major, n_minor), for the circle (n, 1).
struct Resolution {
  int first = 0;
  int second = 1;

  std::string to_string() const;
  friend bool operator==(const Resolution&, const Resolution&) = default;
};

/// Direction of a parametric chart coordinate.
enum class ChartDirection { First, Second };

/// Quadrature discretization of a closed C^infinity surface in R^m on a
/// parametric product grid. Node index = i_first * n_second + i_second.
/// Immutable after construction.
class SurfaceMesh {
 public:
  int dimension() const { return m_; }
  SurfaceKind kind() const { return kind_; }
  const Resolution& resolution() const { return res_; }
  std::size_t size() const { return weights_.size(); }

  /// Sphere: radius (always 1). Torus: major R and minor r.
  double major_radius() const { return major_; }
  double minor_radius() const { return minor_; }

  std::span<const double> node(std::size_t i) const {
    return {nodes_.data() + i * m_, static_cast<std::size_t>(m_)};
  }
  std::span<const double> normal(std::size_t i) const {
    return {normals_.data() + i * m_, static_cast<std::size_t>(m_)};
  }
  double weight(std::size_t i) const { return weights_[i]; }
  std::span<const double> weights() const { return weights_; }

  /// Chart coordinates of the grid lines (theta/phi, u/v, or angle).
  std::span<const double> chart_coordinates(ChartDirection d) const {
    return d == ChartDirection::First ? first_coords_ : second_coords_;
  }
  /// Unnormalized chart tangent dy/du at node i.
  std::vector<double> chart_tangent(std::size_t i, ChartDirection d) const;

  /// Largest distance between neighbouring grid lines (ambient length).
  double spacing() const { return spacing_; }
  double guard_factor() const { return guard_factor_; }
  double guard_band() const { return guard_factor_ * spacing_; }
  /// Copy of the mesh with a different near-surface guard multiplier.
  SurfaceMesh with_guard_factor(double factor) const;

  /// Signed distance to the surface, negative inside.
  double signed_distance(std::span<const double> x) const;
  /// Largest offset along the normal that keeps the interior point well
  /// defined (sphere radius, torus tube radius).
  double reach() const;
  /// Exact surface measure of the continuous surface.
  double exact_area() const;

  /// Local charts exist for the two-dimensional surfaces in R^3. Around node
  /// `centre`, (a, b) are coordinates that are arc length to first order:
  /// tangent-plane projection on the sphere, scaled (u, v) offsets on the
  /// torus.
  bool has_local_charts() const { return m_ == 3; }
  /// Chart coordinates of `node` around `centre`; infinite when the node lies
  /// outside the chart domain.
  std::array<double, 2> local_coordinates(std::size_t centre, std::size_t node) const;
  std::vector<std::array<double, 2>> local_coordinates(std::size_t centre,
                                                       std::span<const std::size_t> nodes) const;
  struct ChartSample {
    std::array<double, 3> point;
    std::array<double, 3> normal;
    double jacobian;  // surface measure per da db
  };
  ChartSample local_chart(std::size_t centre, double a, double b) const;
  /// Batch form: one sample per (a, b) pair.
  std::vector<ChartSample> local_chart(std::size_t centre,
                                       std::span<const std::array<double, 2>> ab) const;

  std::size_t grid_index(int i_first, int i_second) const {
    return static_cast<std::size_t>(i_first) * res_.second + i_second;
  }

 private:
  friend SurfaceMesh build_sphere(Resolution);
  friend SurfaceMesh build_torus(double, double, Resolution);
  friend SurfaceMesh build_circle(int);

  SurfaceMesh() = default;
  void finish();

  int m_ = 0;
  SurfaceKind kind_ = SurfaceKind::Sphere;
  Resolution res_;
  double major_ = 1.0;
  double minor_ = 0.0;
  std::vector<double> nodes_;
  std::vector<double> normals_;
  std::vector<double> weights_;
  std::vector<double> first_coords_;
  std::vector<double> second_coords_;
  double spacing_ = 0.0;
  double guard_factor_ = 2.0;
};

/// Gauss-Legendre nodes (ascending) and weights on [-1, 1].
void gauss_legendre(int n, std::vector<double>& nodes, std::vector<double>& weights);

/// Unit sphere: Gauss-Legendre in cos(theta) times the periodic trapezoid
/// rule in phi. Requires n_theta >= 4 and an even n_phi >= 8.
SurfaceMesh build_sphere(Resolution res);

/// Torus ((R + r cos v) cos u, (R + r cos v) sin u, r sin v) with the product
/// trapezoid rule. Requires R > r > 0 and n_major, n_minor >= 8.
SurfaceMesh build_torus(double major, double minor, Resolution res);

/// n uniform nodes on the unit circle in R^2.
SurfaceMesh build_circle(int n);

PointClass classify_point(const SurfaceMesh& mesh, std::span<const double> x);

struct OffsetPair {
  std::size_t node = 0;
  double delta = 0.0;
  std::vector<double> interior;  // z - delta n(z)
  std::vector<double> exterior;  // z + delta n(z)
};

/// Interior/exterior points at each offset along the normal of one node.
std::vector<OffsetPair> offset_points(const SurfaceMesh& mesh, std::size_t node,
                                      std::span<const double> deltas);

/// Derivative of a node-sampled scalar field along the unit chart tangent of
/// `direction` at `node`. Periodic directions are differentiated spectrally;
/// the sphere's polar direction uses a 9-point stencil continued across the
/// poles.
double tangential_derivative(const SurfaceMesh& mesh, std::span<const double> field,
                             std::size_t node, ChartDirection direction);
Multivector tangential_derivative(const SurfaceMesh& mesh, std::span<const Multivector> field,
                                  std::size_t node, ChartDirection direction);

/// Surface gradient of a scalar node field at `node`, as an ambient vector.
std::vector<double> surface_gradient(const SurfaceMesh& mesh, std::span<const double> field,
                                     std::size_t node);

/// Diagnostics dump: kind, params, resolution, nodes, normals, weights.
nlohmann::json mesh_to_json(const SurfaceMesh& mesh);

}  // namespace cliffbie
