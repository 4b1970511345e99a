#include "near_field.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "cliffbie/errors.hpp"

namespace cliffbie::detail {

namespace {
// Chart distances closer than this count as equal when picking bin nodes.
constexpr double kTie = 1e-12;
}  // namespace

double NearField::cutoff(double t) {
  if (t <= 0.0) return 1.0;
  if (t >= 1.0) return 0.0;
  return std::exp(2.0 * std::exp(-1.0 / t) / (t - 1.0));
}

NearField::NearField(const SurfaceMesh& mesh, const NearFieldRule& rule)
    : mesh_(&mesh), rule_(rule) {
  if (!mesh.has_local_charts()) throw UnsupportedError("near-field correction needs a surface in R^3");
  if (!(rule.cells > 0.0) || rule.degree < 1 || rule.degree > 12 || rule.radial < 2 ||
      rule.angular < 4 || !(rule.focus >= 0.0)) {
    throw UsageError("invalid near-field rule");
  }
  radius_ = std::min(rule.cells * mesh.spacing(), 0.8 * mesh.reach());
  reach_factor_ = 1.5;
  if (mesh.kind() == SurfaceKind::Torus) {
    const double R = mesh.major_radius();
    const double r = mesh.minor_radius();
    reach_factor_ = 1.01 * (R + r) / (R - r);
  }

  for (int total = 1; total <= rule.degree; ++total) {
    for (int q = 0; q <= total; ++q) exponents_.push_back({total - q, q});
  }

  std::vector<double> x;
  std::vector<double> wx;
  gauss_legendre(rule.radial, x, wx);
  const double da = 2.0 * std::numbers::pi / rule.angular;
  for (int k = 0; k < rule.radial; ++k) {
    const double t = 0.5 * (x[k] + 1.0);
    const double wt = 0.5 * wx[k] * t * cutoff(t) * da;
    for (int l = 0; l < rule.angular; ++l) {
      const double alpha = (l + 0.5) * da;
      polar_.push_back({t * std::cos(alpha), t * std::sin(alpha)});
      polar_weight_.push_back(wt);
    }
  }
  polar_basis_.resize(static_cast<Eigen::Index>(polar_.size()),
                      static_cast<Eigen::Index>(exponents_.size()));
  std::vector<double> row(exponents_.size());
  for (std::size_t k = 0; k < polar_.size(); ++k) {
    monomials(polar_[k][0], polar_[k][1], row.data());
    for (std::size_t c = 0; c < row.size(); ++c) {
      polar_basis_(static_cast<Eigen::Index>(k), static_cast<Eigen::Index>(c)) = row[c];
    }
  }
}

void NearField::monomials(double s, double t, double* row) const {
  double sp[16];
  double tp[16];
  sp[0] = tp[0] = 1.0;
  for (int k = 1; k <= rule_.degree; ++k) {
    sp[k] = sp[k - 1] * s;
    tp[k] = tp[k - 1] * t;
  }
  for (std::size_t k = 0; k < exponents_.size(); ++k) {
    row[k] = sp[exponents_[k][0]] * tp[exponents_[k][1]];
  }
}

NearField::Patch NearField::patch(std::size_t centre) const {
  Patch p;
  const SurfaceMesh& mesh = *mesh_;
  const auto z = mesh.node(centre);
  std::vector<std::size_t> candidates;
  for (std::size_t i = 0; i < mesh.size(); ++i) {
    if (i == centre) continue;
    const auto y = mesh.node(i);
    const double d2 = (y[0] - z[0]) * (y[0] - z[0]) + (y[1] - z[1]) * (y[1] - z[1]) +
                      (y[2] - z[2]) * (y[2] - z[2]);
    if (d2 < reach_factor_ * reach_factor_ * radius_ * radius_) candidates.push_back(i);
  }
  const auto ab = mesh.local_coordinates(centre, candidates);
  std::vector<std::array<double, 2>> coords;
  for (std::size_t k = 0; k < candidates.size(); ++k) {
    const double t = std::hypot(ab[k][0], ab[k][1]) / radius_;
    if (t >= 1.0) continue;
    p.nodes.push_back(candidates[k]);
    p.node_weight.push_back(mesh.weight(candidates[k]) * cutoff(t));
    coords.push_back({ab[k][0] / radius_, ab[k][1] / radius_});
  }
  const auto n_nodes = static_cast<Eigen::Index>(p.nodes.size());
  std::vector<double> rho(coords.size());
  for (std::size_t r = 0; r < coords.size(); ++r) rho[r] = std::hypot(coords[r][0], coords[r][1]);

  // Lower the degree on coarse meshes so the fit keeps twice as many nodes as
  // unknowns; on fine or clustered meshes only the nearest nodes enter it.
  int degree = rule_.degree;
  while (degree > 2 && (degree + 1) * (degree + 2) / 2 - 1 > n_nodes / 2) --degree;
  const Eigen::Index n_mono = (degree + 1) * (degree + 2) / 2 - 1;
  if (n_nodes < n_mono) throw UsageError("mesh too coarse for the near-field model");
  // Thin the fit nodes to about one per bin of a chart grid holding 4 n_mono
  // bins in the disc, keeping the node nearest the centre in each bin.
  const double bin = std::sqrt(std::numbers::pi / (4.0 * static_cast<double>(n_mono)));
  const int bins = static_cast<int>(std::ceil(2.0 / bin));
  std::vector<Eigen::Index> best(static_cast<std::size_t>(bins * bins), -1);
  for (Eigen::Index r = 0; r < n_nodes; ++r) {
    const int bs = std::clamp(static_cast<int>((coords[r][0] + 1.0) / bin), 0, bins - 1);
    const int bt = std::clamp(static_cast<int>((coords[r][1] + 1.0) / bin), 0, bins - 1);
    auto& slot = best[static_cast<std::size_t>(bs * bins + bt)];
    if (slot < 0 || rho[r] < rho[slot] - kTie ||
        (rho[r] <= rho[slot] + kTie && coords[r][1] > coords[slot][1])) {
      slot = r;
    }
  }
  p.fit_rows.clear();
  for (const Eigen::Index r : best) {
    if (r >= 0) p.fit_rows.push_back(r);
  }
  if (static_cast<Eigen::Index>(p.fit_rows.size()) < 2 * n_mono) {
    p.fit_rows.resize(static_cast<std::size_t>(n_nodes));
    for (Eigen::Index r = 0; r < n_nodes; ++r) p.fit_rows[static_cast<std::size_t>(r)] = r;
  }
  std::sort(p.fit_rows.begin(), p.fit_rows.end());
  const auto n_fit = static_cast<Eigen::Index>(p.fit_rows.size());

  p.basis.resize(n_nodes, n_mono);
  std::vector<double> row(exponents_.size());
  for (Eigen::Index r = 0; r < n_nodes; ++r) {
    monomials(coords[r][0], coords[r][1], row.data());
    for (Eigen::Index c = 0; c < n_mono; ++c) p.basis(r, c) = row[static_cast<std::size_t>(c)];
  }
  p.fit_weight.resize(n_fit);
  Eigen::MatrixXd weighted(n_fit, n_mono);
  for (Eigen::Index k = 0; k < n_fit; ++k) {
    const Eigen::Index r = p.fit_rows[static_cast<std::size_t>(k)];
    p.fit_weight[k] = std::pow(rho[r], -rule_.focus);
    weighted.row(k) = p.fit_weight[k] * p.basis.row(r);
  }
  p.fit.compute(weighted);

  std::vector<std::array<double, 2>> polar_ab(polar_.size());
  for (std::size_t k = 0; k < polar_.size(); ++k) {
    polar_ab[k] = {radius_ * polar_[k][0], radius_ * polar_[k][1]};
  }
  const auto samples = mesh.local_chart(centre, polar_ab);
  const double area = radius_ * radius_;
  p.point.reserve(polar_.size());
  p.normal.reserve(polar_.size());
  p.weight.reserve(polar_.size());
  for (std::size_t k = 0; k < polar_.size(); ++k) {
    p.point.push_back(samples[k].point);
    p.normal.push_back(samples[k].normal);
    p.weight.push_back(area * polar_weight_[k] * samples[k].jacobian);
  }
  return p;
}

void NearField::model(const Patch& p, const Eigen::MatrixXd& values, Eigen::MatrixXd& at_points,
                      Eigen::MatrixXd& at_nodes) const {
  const auto n_fit = static_cast<Eigen::Index>(p.fit_rows.size());
  Eigen::MatrixXd rhs(n_fit, values.cols());
  for (Eigen::Index k = 0; k < n_fit; ++k) {
    rhs.row(k) = p.fit_weight[k] * values.row(p.fit_rows[static_cast<std::size_t>(k)]);
  }
  const Eigen::MatrixXd coeffs = p.fit.solve(rhs);
  at_points.noalias() = polar_basis_.leftCols(coeffs.rows()) * coeffs;
  at_nodes.noalias() = p.basis * coeffs;
}

}  // namespace cliffbie::detail
