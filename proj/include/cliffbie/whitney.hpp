#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "cliffbie/geometry.hpp"
#include "cliffbie/multi_index.hpp"
#include "cliffbie/multivector.hpp"

namespace cliffbie {

/// One multivector per mesh node.
using NodeField = std::vector<Multivector>;

/// First-order Whitney data on a surface: the trace f^(0) and the m first
/// order components f^(j), |j| = 1, all sampled at mesh nodes. The order is
/// fixed to k = 1.
class WhitneyField {
 public:
  WhitneyField(NodeField value, std::vector<NodeField> partials,
               std::optional<double> alpha = std::nullopt);

  /// All-zero data with `nodes` entries in R_{0,m}.
  static WhitneyField zeros(int m, std::size_t nodes);

  int dimension() const { return m_; }
  std::size_t size() const { return value_.size(); }
  std::optional<double> alpha() const { return alpha_; }

  const NodeField& value() const { return value_; }
  const NodeField& partial(int j) const { return partials_.at(j); }
  const std::vector<NodeField>& partials() const { return partials_; }

  /// f^(j)(node) for |j| <= 1.
  const Multivector& at(std::size_t node, MultiIndex j) const;

  NodeField& mutable_value() { return value_; }
  NodeField& mutable_partial(int j) { return partials_.at(j); }

  WhitneyField& operator+=(const WhitneyField& other);
  WhitneyField& operator-=(const WhitneyField& other);
  WhitneyField& operator*=(double s);
  friend WhitneyField operator+(WhitneyField a, const WhitneyField& b) { return a += b; }
  friend WhitneyField operator-(WhitneyField a, const WhitneyField& b) { return a -= b; }
  friend WhitneyField operator*(double s, WhitneyField a) { return a *= s; }

 private:
  void check_compatible(const WhitneyField& other) const;

  int m_;
  NodeField value_;
  std::vector<NodeField> partials_;
  std::optional<double> alpha_;
};

/// Max over nodes and components |j| <= 1 of the Clifford norm.
double max_norm(const WhitneyField& w);
/// Max over nodes and components of the Clifford norm of a - b.
double max_norm_difference(const WhitneyField& a, const WhitneyField& b);

/// Globally smooth R_{0,m}-valued test function with closed-form partials.
struct ReferenceFunction {
  std::string name;
  int dimension = 3;
  std::function<Multivector(std::span<const double>)> value;
  std::function<Multivector(int, std::span<const double>)> partial;
};

/// Samples f^(0) = ref and f^(j) = d_j ref at every node.
WhitneyField sample_whitney(const ReferenceFunction& ref, const SurfaceMesh& mesh);

/// R(y, z) = f^(0)(y) - f^(0)(z) - sum_l f^(l)(z) (y - z)_l, the remainder of
/// the trace expanded about z.
Multivector remainder(const WhitneyField& w, const SurfaceMesh& mesh, std::size_t y,
                      std::size_t z);

/// D_y R(y, z) = sum_j e_j (f^(j)(y) - f^(j)(z)).
Multivector dirac_remainder(const WhitneyField& w, std::size_t y, std::size_t z);

/// Per-node sum_j e_j f^(j).
NodeField dirac_trace(const WhitneyField& w);

struct SeminormOptions {
  std::size_t max_pairs = 10000;
  std::uint64_t seed = 20240601;
};

/// Estimate of the smallest M with ||f^(j)|| <= M and
/// ||R_j(x, y)|| <= M |x - y|^{1 + alpha - |j|} over sampled node pairs.
/// All pairs are used when there are at most `max_pairs` of them, otherwise a
/// fixed-seed random subsample.
double lipschitz_seminorm(const WhitneyField& w, const SurfaceMesh& mesh, double alpha,
                          const SeminormOptions& options = {});

/// Rebuilds f^(j) from the trace f^(0) and its Dirac trace d = sum e_j f^(j):
/// tangential parts come from chart differentiation of f0, the normal
/// derivative g from g = -n (d - sum_j e_j T_j).
std::vector<NodeField> recover_gradient(const NodeField& f0, const NodeField& d,
                                        const SurfaceMesh& mesh);

}  // namespace cliffbie
