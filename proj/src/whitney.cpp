#include "cliffbie/whitney.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "cliffbie/errors.hpp"

namespace cliffbie {

WhitneyField::WhitneyField(NodeField value, std::vector<NodeField> partials,
                           std::optional<double> alpha)
    : m_(value.empty() ? 0 : value.front().dimension()),
      value_(std::move(value)),
      partials_(std::move(partials)),
      alpha_(alpha) {
  if (value_.empty()) throw UsageError("Whitney data needs at least one node");
  if (static_cast<int>(partials_.size()) != m_) {
    throw UsageError("Whitney data needs one first-order component per coordinate");
  }
  for (const auto& mv : value_) {
    if (mv.dimension() != m_) throw UsageError("Whitney trace has mixed dimensions");
  }
  for (const auto& field : partials_) {
    if (field.size() != value_.size()) throw UsageError("Whitney components differ in length");
    for (const auto& mv : field) {
      if (mv.dimension() != m_) throw UsageError("Whitney component has mixed dimensions");
    }
  }
  if (alpha_ && !(*alpha_ > 0.0 && *alpha_ <= 1.0)) throw UsageError("alpha must be in (0, 1]");
}

WhitneyField WhitneyField::zeros(int m, std::size_t nodes) {
  NodeField zero(nodes, Multivector(m));
  return WhitneyField(zero, std::vector<NodeField>(m, zero));
}

const Multivector& WhitneyField::at(std::size_t node, MultiIndex j) const {
  if (j.is_zero()) return value_.at(node);
  return partials_.at(j.coordinate()).at(node);
}

void WhitneyField::check_compatible(const WhitneyField& other) const {
  if (other.m_ != m_ || other.size() != size()) {
    throw UsageError("Whitney fields differ in dimension or node count");
  }
}

WhitneyField& WhitneyField::operator+=(const WhitneyField& other) {
  check_compatible(other);
  for (std::size_t i = 0; i < size(); ++i) value_[i] += other.value_[i];
  for (int j = 0; j < m_; ++j) {
    for (std::size_t i = 0; i < size(); ++i) partials_[j][i] += other.partials_[j][i];
  }
  return *this;
}

WhitneyField& WhitneyField::operator-=(const WhitneyField& other) {
  check_compatible(other);
  for (std::size_t i = 0; i < size(); ++i) value_[i] -= other.value_[i];
  for (int j = 0; j < m_; ++j) {
    for (std::size_t i = 0; i < size(); ++i) partials_[j][i] -= other.partials_[j][i];
  }
  return *this;
}

WhitneyField& WhitneyField::operator*=(double s) {
  for (auto& mv : value_) mv *= s;
  for (auto& field : partials_) {
    for (auto& mv : field) mv *= s;
  }
  return *this;
}

double max_norm(const WhitneyField& w) {
  double best = 0.0;
  for (const auto& mv : w.value()) best = std::max(best, norm(mv));
  for (const auto& field : w.partials()) {
    for (const auto& mv : field) best = std::max(best, norm(mv));
  }
  return best;
}

double max_norm_difference(const WhitneyField& a, const WhitneyField& b) {
  if (a.dimension() != b.dimension() || a.size() != b.size()) {
    throw UsageError("Whitney fields differ in dimension or node count");
  }
  double best = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    best = std::max(best, norm(a.value()[i] - b.value()[i]));
    for (int j = 0; j < a.dimension(); ++j) {
      best = std::max(best, norm(a.partial(j)[i] - b.partial(j)[i]));
    }
  }
  return best;
}

WhitneyField sample_whitney(const ReferenceFunction& ref, const SurfaceMesh& mesh) {
  if (ref.dimension != mesh.dimension()) {
    throw UsageError("density '" + ref.name + "' does not match the mesh dimension");
  }
  const int m = mesh.dimension();
  NodeField value;
  std::vector<NodeField> partials(m);
  value.reserve(mesh.size());
  for (std::size_t i = 0; i < mesh.size(); ++i) {
    const auto y = mesh.node(i);
    value.push_back(ref.value(y));
    for (int j = 0; j < m; ++j) partials[j].push_back(ref.partial(j, y));
  }
  return WhitneyField(std::move(value), std::move(partials));
}

Multivector remainder(const WhitneyField& w, const SurfaceMesh& mesh, std::size_t y,
                      std::size_t z) {
  const auto py = mesh.node(y);
  const auto pz = mesh.node(z);
  Multivector r = w.value()[y] - w.value()[z];
  for (int l = 0; l < w.dimension(); ++l) r -= w.partial(l)[z] * (py[l] - pz[l]);
  return r;
}

Multivector dirac_remainder(const WhitneyField& w, std::size_t y, std::size_t z) {
  const int m = w.dimension();
  Multivector out(m);
  for (int j = 0; j < m; ++j) {
    const Multivector ej = Multivector::basis_vector(m, j);
    accumulate_product(out, 1.0, ej, w.partial(j)[y] - w.partial(j)[z]);
  }
  return out;
}

NodeField dirac_trace(const WhitneyField& w) {
  const int m = w.dimension();
  NodeField out(w.size(), Multivector(m));
  for (int j = 0; j < m; ++j) {
    const Multivector ej = Multivector::basis_vector(m, j);
    for (std::size_t i = 0; i < w.size(); ++i) accumulate_product(out[i], 1.0, ej, w.partial(j)[i]);
  }
  return out;
}

double lipschitz_seminorm(const WhitneyField& w, const SurfaceMesh& mesh, double alpha,
                          const SeminormOptions& options) {
  if (!(alpha > 0.0 && alpha <= 1.0)) throw UsageError("alpha must be in (0, 1]");
  if (w.size() != mesh.size()) throw UsageError("Whitney data does not match the mesh");
  const int m = w.dimension();
  double best = max_norm(w);

  auto visit = [&](std::size_t x, std::size_t y) {
    const auto px = mesh.node(x);
    const auto py = mesh.node(y);
    double dist2 = 0.0;
    for (int i = 0; i < m; ++i) dist2 += (px[i] - py[i]) * (px[i] - py[i]);
    const double dist = std::sqrt(dist2);
    if (dist == 0.0) return;
    // R_0(x, y) is the trace remainder expanded about y.
    best = std::max(best, norm(remainder(w, mesh, x, y)) / std::pow(dist, 1.0 + alpha));
    for (int j = 0; j < m; ++j) {
      best = std::max(best, norm(w.partial(j)[x] - w.partial(j)[y]) / std::pow(dist, alpha));
    }
  };

  const std::size_t n = w.size();
  const double ordered_pairs = static_cast<double>(n) * static_cast<double>(n - 1);
  if (ordered_pairs <= static_cast<double>(options.max_pairs)) {
    for (std::size_t x = 0; x < n; ++x) {
      for (std::size_t y = 0; y < n; ++y) {
        if (x != y) visit(x, y);
      }
    }
    return best;
  }
  std::mt19937_64 rng(options.seed);
  std::uniform_int_distribution<std::size_t> pick(0, n - 1);
  for (std::size_t k = 0; k < options.max_pairs; ++k) {
    const std::size_t x = pick(rng);
    std::size_t y = pick(rng);
    while (y == x) y = pick(rng);
    visit(x, y);
  }
  return best;
}

std::vector<NodeField> recover_gradient(const NodeField& f0, const NodeField& d,
                                        const SurfaceMesh& mesh) {
  if (f0.size() != mesh.size() || d.size() != mesh.size()) {
    throw UsageError("recover_gradient needs node fields matching the mesh");
  }
  const int m = mesh.dimension();
  const std::size_t blades = std::size_t{1} << m;
  std::vector<NodeField> out(m, NodeField(mesh.size(), Multivector(m)));

  // Tangential gradient of every blade component.
  std::vector<std::vector<double>> components(blades, std::vector<double>(mesh.size()));
  for (std::size_t i = 0; i < mesh.size(); ++i) {
    for (Blade b = 0; b < blades; ++b) components[b][i] = f0[i][b];
  }
  for (Blade b = 0; b < blades; ++b) {
    bool nonzero = false;
    for (double c : components[b]) nonzero = nonzero || c != 0.0;
    if (!nonzero) continue;
    for (std::size_t i = 0; i < mesh.size(); ++i) {
      const auto grad = surface_gradient(mesh, components[b], i);
      for (int j = 0; j < m; ++j) out[j][i][b] = grad[j];
    }
  }

  for (std::size_t i = 0; i < mesh.size(); ++i) {
    Multivector tangential_dirac(m);
    for (int j = 0; j < m; ++j) {
      accumulate_product(tangential_dirac, 1.0, Multivector::basis_vector(m, j), out[j][i]);
    }
    const auto n = mesh.normal(i);
    // n^2 = -1, so n g = d - sum e_j T_j gives g = -n (d - sum e_j T_j).
    const Multivector g = -(embed_vector(n) * (d[i] - tangential_dirac));
    for (int j = 0; j < m; ++j) out[j][i] += g * n[j];
  }
  return out;
}

}  // namespace cliffbie
