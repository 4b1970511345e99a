#include "cliffbie/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "cliffbie/errors.hpp"

namespace cliffbie {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr int kPolarStencil = 9;

double dot(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

// Row of the periodic spectral differentiation matrix applied to samples
// f(start + k*stride), k = 0..n-1, evaluated at sample j. Grid spacing 2pi/n.
double periodic_derivative(std::span<const double> field, std::size_t start,
                           std::size_t stride, int n, int j) {
  const double h = 2.0 * kPi / n;
  double d = 0.0;
  for (int k = 0; k < n; ++k) {
    if (k == j) continue;
    const int diff = j - k;
    const double sgn = (diff % 2 == 0) ? 0.5 : -0.5;
    const double arg = 0.5 * diff * h;
    const double w = (n % 2 == 0) ? sgn / std::tan(arg) : sgn / std::sin(arg);
    d += w * field[start + static_cast<std::size_t>(k) * stride];
  }
  return d;
}

// Weight of sample k in the derivative at x0 of the Lagrange interpolant
// through xs.
double lagrange_derivative_weight(std::span<const double> xs, std::size_t k, double x0) {
  double total = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (i == k) continue;
    double term = 1.0 / (xs[k] - xs[i]);
    for (std::size_t l = 0; l < xs.size(); ++l) {
      if (l == k || l == i) continue;
      term *= (x0 - xs[l]) / (xs[k] - xs[l]);
    }
    total += term;
  }
  return total;
}

// d/dtheta on the sphere grid, continuing each meridian through the poles onto
// the opposite meridian (phi + pi).
double polar_derivative(const SurfaceMesh& mesh, std::span<const double> field, int it,
                        int ip) {
  const auto theta = mesh.chart_coordinates(ChartDirection::First);
  const int nt = mesh.resolution().first;
  const int np = mesh.resolution().second;
  const int half = kPolarStencil / 2;
  double xs[kPolarStencil];
  double vs[kPolarStencil];
  for (int s = 0; s < kPolarStencil; ++s) {
    const int k = it - half + s;
    int row = k;
    int col = ip;
    double x = 0.0;
    if (k < 0) {
      row = -k - 1;
      col = (ip + np / 2) % np;
      x = -theta[row];
    } else if (k >= nt) {
      row = 2 * nt - 1 - k;
      col = (ip + np / 2) % np;
      x = 2.0 * kPi - theta[row];
    } else {
      x = theta[row];
    }
    xs[s] = x;
    vs[s] = field[mesh.grid_index(row, col)];
  }
  double d = 0.0;
  for (std::size_t s = 0; s < kPolarStencil; ++s) {
    d += lagrange_derivative_weight(xs, s, theta[it]) * vs[s];
  }
  return d;
}

// Derivative with respect to the raw chart parameter.
double chart_derivative(const SurfaceMesh& mesh, std::span<const double> field,
                        std::size_t node, ChartDirection direction) {
  const auto& res = mesh.resolution();
  const int i1 = static_cast<int>(node / res.second);
  const int i2 = static_cast<int>(node % res.second);
  if (mesh.kind() == SurfaceKind::Circle) {
    if (direction != ChartDirection::First) throw UsageError("the circle has one chart direction");
    return periodic_derivative(field, 0, 1, res.first, i1);
  }
  if (direction == ChartDirection::Second) {
    return periodic_derivative(field, mesh.grid_index(i1, 0), 1, res.second, i2);
  }
  if (mesh.kind() == SurfaceKind::Sphere) return polar_derivative(mesh, field, i1, i2);
  return periodic_derivative(field, static_cast<std::size_t>(i2), res.second, res.first, i1);
}

}  // namespace

std::string to_string(SurfaceKind kind) {
  switch (kind) {
    case SurfaceKind::Sphere: return "sphere";
    case SurfaceKind::Torus: return "torus";
    case SurfaceKind::Circle: return "circle";
  }
  return "unknown";
}

std::string to_string(PointClass c) {
  switch (c) {
    case PointClass::Interior: return "interior";
    case PointClass::Exterior: return "exterior";
    case PointClass::NearSurface: return "near-surface";
  }
  return "unknown";
}

std::string Resolution::to_string() const {
  if (second == 1) return std::to_string(first);
  return std::to_string(first) + "x" + std::to_string(second);
}

void gauss_legendre(int n, std::vector<double>& nodes, std::vector<double>& weights) {
  if (n < 1) throw UsageError("Gauss-Legendre order must be positive");
  nodes.assign(n, 0.0);
  weights.assign(n, 0.0);
  for (int i = 0; i < (n + 1) / 2; ++i) {
    double x = std::cos(kPi * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0;
      double p1 = x;
      for (int k = 2; k <= n; ++k) {
        const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      if (n == 1) p0 = 1.0;
      dp = n * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    // Recompute the derivative at the converged root.
    double p0 = 1.0;
    double p1 = x;
    for (int k = 2; k <= n; ++k) {
      const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
      p0 = p1;
      p1 = p2;
    }
    dp = n * (x * p1 - p0) / (x * x - 1.0);
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    nodes[i] = -x;
    nodes[n - 1 - i] = x;
    weights[i] = w;
    weights[n - 1 - i] = w;
  }
}

void SurfaceMesh::finish() {
  for (std::size_t i = 0; i < size(); ++i) {
    auto nrm = std::span<double>(normals_.data() + i * m_, m_);
    const double len = std::sqrt(dot(nrm, nrm));
    for (double& c : nrm) c /= len;
  }
}

SurfaceMesh SurfaceMesh::with_guard_factor(double factor) const {
  if (!(factor >= 0.0)) throw UsageError("guard factor must be nonnegative");
  SurfaceMesh copy = *this;
  copy.guard_factor_ = factor;
  return copy;
}

std::vector<double> SurfaceMesh::chart_tangent(std::size_t i, ChartDirection d) const {
  const double a = first_coords_[i / res_.second];
  switch (kind_) {
    case SurfaceKind::Circle:
      return {-std::sin(a), std::cos(a)};
    case SurfaceKind::Sphere: {
      const double p = second_coords_[i % res_.second];
      if (d == ChartDirection::First) {
        return {std::cos(a) * std::cos(p), std::cos(a) * std::sin(p), -std::sin(a)};
      }
      return {-std::sin(a) * std::sin(p), std::sin(a) * std::cos(p), 0.0};
    }
    case SurfaceKind::Torus: {
      const double v = second_coords_[i % res_.second];
      const double rho = major_ + minor_ * std::cos(v);
      if (d == ChartDirection::First) return {-rho * std::sin(a), rho * std::cos(a), 0.0};
      return {-minor_ * std::sin(v) * std::cos(a), -minor_ * std::sin(v) * std::sin(a),
              minor_ * std::cos(v)};
    }
  }
  return {};
}

double SurfaceMesh::signed_distance(std::span<const double> x) const {
  if (static_cast<int>(x.size()) != m_) throw UsageError("point dimension mismatch");
  switch (kind_) {
    case SurfaceKind::Sphere:
    case SurfaceKind::Circle:
      return std::sqrt(dot(x, x)) - 1.0;
    case SurfaceKind::Torus: {
      const double rho = std::hypot(x[0], x[1]);
      return std::hypot(rho - major_, x[2]) - minor_;
    }
  }
  return 0.0;
}

std::array<double, 2> SurfaceMesh::local_coordinates(std::size_t centre, std::size_t node) const {
  return local_coordinates(centre, std::span(&node, 1)).front();
}

std::vector<std::array<double, 2>> SurfaceMesh::local_coordinates(
    std::size_t centre, std::span<const std::size_t> nodes) const {
  if (!has_local_charts()) throw UnsupportedError("local charts need a surface in R^3");
  constexpr double kOutside = std::numeric_limits<double>::infinity();
  std::vector<std::array<double, 2>> out(nodes.size());
  if (kind_ == SurfaceKind::Sphere) {
    const auto z = node(centre);
    const auto t1 = chart_tangent(centre, ChartDirection::First);
    auto t2 = chart_tangent(centre, ChartDirection::Second);
    const double s = std::sqrt(dot(t2, t2));
    for (double& c : t2) c /= s;
    for (std::size_t p = 0; p < nodes.size(); ++p) {
      const auto y = node(nodes[p]);
      if (dot(z, y) <= 0.0) {
        out[p] = {kOutside, kOutside};
        continue;
      }
      double a = 0.0;
      double b = 0.0;
      for (int k = 0; k < 3; ++k) {
        a += (y[k] - z[k]) * t1[k];
        b += (y[k] - z[k]) * t2[k];
      }
      out[p] = {a, b};
    }
    return out;
  }
  auto wrap = [](double d) { return d - 2.0 * kPi * std::round(d / (2.0 * kPi)); };
  const double uz = first_coords_[centre / res_.second];
  const double vz = second_coords_[centre % res_.second];
  for (std::size_t p = 0; p < nodes.size(); ++p) {
    const double du = wrap(first_coords_[nodes[p] / res_.second] - uz);
    const double dv = wrap(second_coords_[nodes[p] % res_.second] - vz);
    out[p] = {(major_ + minor_ * std::cos(vz)) * du, minor_ * dv};
  }
  return out;
}

SurfaceMesh::ChartSample SurfaceMesh::local_chart(std::size_t centre, double a, double b) const {
  const std::array<double, 2> ab{a, b};
  return local_chart(centre, std::span(&ab, 1)).front();
}

std::vector<SurfaceMesh::ChartSample> SurfaceMesh::local_chart(
    std::size_t centre, std::span<const std::array<double, 2>> ab) const {
  if (!has_local_charts()) throw UnsupportedError("local charts need a surface in R^3");
  std::vector<ChartSample> out(ab.size());
  if (kind_ == SurfaceKind::Sphere) {
    const auto z = node(centre);
    const auto t1 = chart_tangent(centre, ChartDirection::First);
    auto t2 = chart_tangent(centre, ChartDirection::Second);
    const double n2 = std::sqrt(dot(t2, t2));
    for (double& c : t2) c /= n2;
    for (std::size_t p = 0; p < ab.size(); ++p) {
      const auto [a, b] = ab[p];
      const double h2 = 1.0 - a * a - b * b;
      if (h2 <= 0.0) throw UsageError("chart point outside the hemisphere");
      const double h = std::sqrt(h2);
      ChartSample& s = out[p];
      for (int k = 0; k < 3; ++k) {
        s.point[k] = h * z[k] + a * t1[k] + b * t2[k];
        s.normal[k] = s.point[k];
      }
      s.jacobian = 1.0 / h;
    }
    return out;
  }
  const double uz = first_coords_[centre / res_.second];
  const double vz = second_coords_[centre % res_.second];
  const double rz = major_ + minor_ * std::cos(vz);
  for (std::size_t p = 0; p < ab.size(); ++p) {
    const double u = uz + ab[p][0] / rz;
    const double v = vz + ab[p][1] / minor_;
    const double cu = std::cos(u);
    const double su = std::sin(u);
    const double cv = std::cos(v);
    const double rho = major_ + minor_ * cv;
    ChartSample& s = out[p];
    s.point = {rho * cu, rho * su, minor_ * std::sin(v)};
    s.normal = {cv * cu, cv * su, std::sin(v)};
    s.jacobian = rho / rz;
  }
  return out;
}

double SurfaceMesh::reach() const { return kind_ == SurfaceKind::Torus ? minor_ : 1.0; }

double SurfaceMesh::exact_area() const {
  switch (kind_) {
    case SurfaceKind::Sphere: return 4.0 * kPi;
    case SurfaceKind::Torus: return 4.0 * kPi * kPi * major_ * minor_;
    case SurfaceKind::Circle: return 2.0 * kPi;
  }
  return 0.0;
}

SurfaceMesh build_sphere(Resolution res) {
  if (res.first < 4 || res.second < 8 || res.second % 2 != 0) {
    throw UsageError("sphere resolution needs n_theta >= 4 and even n_phi >= 8, got " +
                     res.to_string());
  }
  SurfaceMesh mesh;
  mesh.m_ = 3;
  mesh.kind_ = SurfaceKind::Sphere;
  mesh.res_ = res;
  std::vector<double> t;
  std::vector<double> wt;
  gauss_legendre(res.first, t, wt);
  const int nt = res.first;
  const int np = res.second;
  mesh.first_coords_.resize(nt);
  std::vector<double> wtheta(nt);
  for (int k = 0; k < nt; ++k) {
    mesh.first_coords_[k] = std::acos(t[nt - 1 - k]);
    wtheta[k] = wt[nt - 1 - k];
  }
  mesh.second_coords_.resize(np);
  for (int l = 0; l < np; ++l) mesh.second_coords_[l] = 2.0 * kPi * l / np;
  const double dphi = 2.0 * kPi / np;
  for (int k = 0; k < nt; ++k) {
    const double th = mesh.first_coords_[k];
    for (int l = 0; l < np; ++l) {
      const double ph = mesh.second_coords_[l];
      const double y[3] = {std::sin(th) * std::cos(ph), std::sin(th) * std::sin(ph), std::cos(th)};
      mesh.nodes_.insert(mesh.nodes_.end(), y, y + 3);
      mesh.normals_.insert(mesh.normals_.end(), y, y + 3);
      mesh.weights_.push_back(wtheta[k] * dphi);
    }
  }
  double gap = 2.0 * mesh.first_coords_.front();
  for (int k = 1; k < nt; ++k) gap = std::max(gap, mesh.first_coords_[k] - mesh.first_coords_[k - 1]);
  mesh.spacing_ = std::max(gap, dphi);
  mesh.finish();
  return mesh;
}

SurfaceMesh build_torus(double major, double minor, Resolution res) {
  if (!(minor > 0.0) || !(major > minor)) throw UsageError("torus needs R > r > 0");
  if (res.first < 8 || res.second < 8) {
    throw UsageError("torus resolution needs n_major, n_minor >= 8, got " + res.to_string());
  }
  SurfaceMesh mesh;
  mesh.m_ = 3;
  mesh.kind_ = SurfaceKind::Torus;
  mesh.res_ = res;
  mesh.major_ = major;
  mesh.minor_ = minor;
  const double du = 2.0 * kPi / res.first;
  const double dv = 2.0 * kPi / res.second;
  for (int a = 0; a < res.first; ++a) mesh.first_coords_.push_back(a * du);
  for (int b = 0; b < res.second; ++b) mesh.second_coords_.push_back(b * dv);
  for (int a = 0; a < res.first; ++a) {
    const double u = mesh.first_coords_[a];
    for (int b = 0; b < res.second; ++b) {
      const double v = mesh.second_coords_[b];
      const double rho = major + minor * std::cos(v);
      const double y[3] = {rho * std::cos(u), rho * std::sin(u), minor * std::sin(v)};
      const double n[3] = {std::cos(v) * std::cos(u), std::cos(v) * std::sin(u), std::sin(v)};
      mesh.nodes_.insert(mesh.nodes_.end(), y, y + 3);
      mesh.normals_.insert(mesh.normals_.end(), n, n + 3);
      mesh.weights_.push_back(rho * minor * du * dv);
    }
  }
  mesh.spacing_ = std::max((major + minor) * du, minor * dv);
  mesh.finish();
  return mesh;
}

SurfaceMesh build_circle(int n) {
  if (n < 8) throw UsageError("circle needs at least 8 nodes");
  SurfaceMesh mesh;
  mesh.m_ = 2;
  mesh.kind_ = SurfaceKind::Circle;
  mesh.res_ = Resolution{n, 1};
  const double h = 2.0 * kPi / n;
  mesh.second_coords_ = {0.0};
  for (int k = 0; k < n; ++k) {
    const double a = k * h;
    mesh.first_coords_.push_back(a);
    const double y[2] = {std::cos(a), std::sin(a)};
    mesh.nodes_.insert(mesh.nodes_.end(), y, y + 2);
    mesh.normals_.insert(mesh.normals_.end(), y, y + 2);
    mesh.weights_.push_back(h);
  }
  mesh.spacing_ = h;
  mesh.finish();
  return mesh;
}

PointClass classify_point(const SurfaceMesh& mesh, std::span<const double> x) {
  const double d = mesh.signed_distance(x);
  if (std::abs(d) < mesh.guard_band()) return PointClass::NearSurface;
  return d < 0.0 ? PointClass::Interior : PointClass::Exterior;
}

std::vector<OffsetPair> offset_points(const SurfaceMesh& mesh, std::size_t node,
                                      std::span<const double> deltas) {
  if (node >= mesh.size()) throw UsageError("node index out of range");
  std::vector<OffsetPair> out;
  const auto z = mesh.node(node);
  const auto n = mesh.normal(node);
  for (double delta : deltas) {
    if (!(delta > 0.0)) throw UsageError("offset must be positive");
    if (delta >= mesh.reach()) {
      throw UsageError("offset " + std::to_string(delta) + " exceeds the surface reach");
    }
    OffsetPair p;
    p.node = node;
    p.delta = delta;
    for (int i = 0; i < mesh.dimension(); ++i) {
      p.interior.push_back(z[i] - delta * n[i]);
      p.exterior.push_back(z[i] + delta * n[i]);
    }
    out.push_back(std::move(p));
  }
  return out;
}

double tangential_derivative(const SurfaceMesh& mesh, std::span<const double> field,
                             std::size_t node, ChartDirection direction) {
  if (field.size() != mesh.size()) throw UsageError("field must have one value per node");
  const auto t = mesh.chart_tangent(node, direction);
  return chart_derivative(mesh, field, node, direction) / std::sqrt(dot(t, t));
}

Multivector tangential_derivative(const SurfaceMesh& mesh, std::span<const Multivector> field,
                                  std::size_t node, ChartDirection direction) {
  if (field.size() != mesh.size()) throw UsageError("field must have one value per node");
  const int m = field[0].dimension();
  Multivector out(m);
  std::vector<double> component(field.size());
  for (Blade b = 0; b < out.size(); ++b) {
    for (std::size_t i = 0; i < field.size(); ++i) component[i] = field[i][b];
    out[b] = tangential_derivative(mesh, component, node, direction);
  }
  return out;
}

std::vector<double> surface_gradient(const SurfaceMesh& mesh, std::span<const double> field,
                                     std::size_t node) {
  if (field.size() != mesh.size()) throw UsageError("field must have one value per node");
  const int m = mesh.dimension();
  std::vector<double> grad(m, 0.0);
  const auto t1 = mesh.chart_tangent(node, ChartDirection::First);
  const double d1 = chart_derivative(mesh, field, node, ChartDirection::First);
  if (mesh.kind() == SurfaceKind::Circle) {
    const double g = dot(t1, t1);
    for (int i = 0; i < m; ++i) grad[i] = d1 / g * t1[i];
    return grad;
  }
  const auto t2 = mesh.chart_tangent(node, ChartDirection::Second);
  const double d2 = chart_derivative(mesh, field, node, ChartDirection::Second);
  const double g11 = dot(t1, t1);
  const double g12 = dot(t1, t2);
  const double g22 = dot(t2, t2);
  const double det = g11 * g22 - g12 * g12;
  const double c1 = (g22 * d1 - g12 * d2) / det;
  const double c2 = (g11 * d2 - g12 * d1) / det;
  for (int i = 0; i < m; ++i) grad[i] = c1 * t1[i] + c2 * t2[i];
  return grad;
}

nlohmann::json mesh_to_json(const SurfaceMesh& mesh) {
  nlohmann::json j;
  j["kind"] = to_string(mesh.kind());
  j["params"] = nlohmann::json::object();
  if (mesh.kind() == SurfaceKind::Torus) {
    j["params"]["R"] = mesh.major_radius();
    j["params"]["r"] = mesh.minor_radius();
  }
  j["resolution"] = {mesh.resolution().first, mesh.resolution().second};
  auto nodes = nlohmann::json::array();
  auto normals = nlohmann::json::array();
  for (std::size_t i = 0; i < mesh.size(); ++i) {
    const auto y = mesh.node(i);
    const auto n = mesh.normal(i);
    nodes.push_back(std::vector<double>(y.begin(), y.end()));
    normals.push_back(std::vector<double>(n.begin(), n.end()));
  }
  j["nodes"] = std::move(nodes);
  j["normals"] = std::move(normals);
  j["weights"] = std::vector<double>(mesh.weights().begin(), mesh.weights().end());
  return j;
}

}  // namespace cliffbie
