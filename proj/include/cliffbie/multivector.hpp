#pragma once

#include <bit>
#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace cliffbie {

/// Bitmask over {e_1, ..., e_m}; bit i-1 set means e_i appears in the blade.
/// Blades are stored in canonical ascending order, b = 0 is the scalar.
using Blade = std::uint32_t;

inline constexpr int kMinDimension = 2;
inline constexpr int kMaxDimension = 8;

/// Sign of e_A e_B = sign * e_{A xor B} in R_{0,m}: one factor -1 per
/// transposition needed to sort the concatenated word, one per repeated
/// generator (e_i^2 = -1).
constexpr int blade_sign(Blade a, Blade b) {
  int swaps = 0;
  for (Blade x = a >> 1; x != 0; x >>= 1) swaps += std::popcount(x & b);
  swaps += std::popcount(a & b);
  return (swaps & 1) ? -1 : 1;
}

/// Cached (result blade, sign) for every blade pair of one dimension.
class BladeProductTable {
 public:
  /// Shared table for dimension m, built on first use.
  static const BladeProductTable& get(int m);

  int dimension() const { return m_; }
  std::size_t size() const { return size_; }
  Blade result(Blade a, Blade b) const { return a ^ b; }
  int sign(Blade a, Blade b) const { return signs_[a * size_ + b]; }

 private:
  explicit BladeProductTable(int m);

  int m_;
  std::size_t size_;
  std::vector<signed char> signs_;
};

/// Element of the real Clifford algebra R_{0,m}: 2^m coefficients indexed by
/// blade bitmask. The dimension is a runtime value in [2, 8].
class Multivector {
 public:
  /// Empty placeholder (dimension 0); only useful as a slot to assign into.
  Multivector() = default;
  /// Zero element of R_{0,m}.
  explicit Multivector(int m);
  Multivector(int m, std::vector<double> coefficients);

  static Multivector scalar(int m, double value);
  static Multivector blade(int m, Blade b, double value = 1.0);
  /// Generator e_{i+1} (0-based coordinate index i).
  static Multivector basis_vector(int m, int i);

  int dimension() const { return m_; }
  std::size_t size() const { return coeffs_.size(); }
  std::span<const double> coefficients() const { return coeffs_; }
  std::span<double> coefficients() { return coeffs_; }

  double operator[](Blade b) const { return coeffs_[b]; }
  double& operator[](Blade b) { return coeffs_[b]; }
  double scalar_part() const { return coeffs_.empty() ? 0.0 : coeffs_[0]; }
  bool is_zero() const;

  Multivector& operator+=(const Multivector& other);
  Multivector& operator-=(const Multivector& other);
  Multivector& operator*=(double s);

  friend Multivector operator+(Multivector a, const Multivector& b) { return a += b; }
  friend Multivector operator-(Multivector a, const Multivector& b) { return a -= b; }
  friend Multivector operator-(Multivector a) { return a *= -1.0; }
  friend Multivector operator*(Multivector a, double s) { return a *= s; }
  friend Multivector operator*(double s, Multivector a) { return a *= s; }
  /// Geometric product.
  friend Multivector operator*(const Multivector& a, const Multivector& b);

  friend bool operator==(const Multivector&, const Multivector&) = default;

 private:
  int m_ = 0;
  std::vector<double> coeffs_;
};

Multivector geometric_product(const Multivector& a, const Multivector& b);

/// out += scale * a * b without temporaries; all three share dimension m.
void accumulate_product(Multivector& out, double scale, const Multivector& a,
                        const Multivector& b);

/// x_1 e_1 + ... + x_m e_m.
Multivector embed_vector(std::span<const double> v);

/// Euclidean norm of the coefficient vector.
double norm(const Multivector& a);

/// Keeps only blades with popcount == k.
Multivector grade_project(const Multivector& a, int k);

/// Max-norm distance helper used by tests and diagnostics.
double max_abs_difference(const Multivector& a, const Multivector& b);

}  // namespace cliffbie
