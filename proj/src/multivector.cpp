#include "cliffbie/multivector.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <memory>
#include <mutex>
#include <string>

#include "cliffbie/errors.hpp"

namespace cliffbie {

namespace {

void check_dimension(int m) {
  if (m < kMinDimension || m > kMaxDimension) {
    throw UsageError("Clifford dimension must be in [2, 8], got " + std::to_string(m));
  }
}

void check_same(const Multivector& a, const Multivector& b) {
  if (a.dimension() != b.dimension()) {
    throw UsageError("multivector dimension mismatch: " + std::to_string(a.dimension()) +
                     " vs " + std::to_string(b.dimension()));
  }
}

}  // namespace

BladeProductTable::BladeProductTable(int m) : m_(m), size_(std::size_t{1} << m) {
  signs_.resize(size_ * size_);
  for (Blade a = 0; a < size_; ++a) {
    for (Blade b = 0; b < size_; ++b) {
      signs_[a * size_ + b] = static_cast<signed char>(blade_sign(a, b));
    }
  }
}

const BladeProductTable& BladeProductTable::get(int m) {
  check_dimension(m);
  static std::array<std::unique_ptr<BladeProductTable>, kMaxDimension + 1> tables;
  static std::array<std::once_flag, kMaxDimension + 1> flags;
  std::call_once(flags[m], [m] { tables[m].reset(new BladeProductTable(m)); });
  return *tables[m];
}

Multivector::Multivector(int m) : m_(m) {
  check_dimension(m);
  coeffs_.assign(std::size_t{1} << m, 0.0);
}

Multivector::Multivector(int m, std::vector<double> coefficients)
    : m_(m), coeffs_(std::move(coefficients)) {
  check_dimension(m);
  if (coeffs_.size() != (std::size_t{1} << m)) {
    throw UsageError("coefficient array must have length 2^m");
  }
}

Multivector Multivector::scalar(int m, double value) {
  Multivector a(m);
  a.coeffs_[0] = value;
  return a;
}

Multivector Multivector::blade(int m, Blade b, double value) {
  Multivector a(m);
  if (b >= a.size()) throw UsageError("blade index out of range");
  a.coeffs_[b] = value;
  return a;
}

Multivector Multivector::basis_vector(int m, int i) {
  if (i < 0 || i >= m) throw UsageError("basis vector index out of range");
  return blade(m, Blade{1} << i);
}

bool Multivector::is_zero() const {
  for (double c : coeffs_) {
    if (c != 0.0) return false;
  }
  return true;
}

Multivector& Multivector::operator+=(const Multivector& other) {
  check_same(*this, other);
  for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] += other.coeffs_[i];
  return *this;
}

Multivector& Multivector::operator-=(const Multivector& other) {
  check_same(*this, other);
  for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] -= other.coeffs_[i];
  return *this;
}

Multivector& Multivector::operator*=(double s) {
  for (double& c : coeffs_) c *= s;
  return *this;
}

void accumulate_product(Multivector& out, double scale, const Multivector& a,
                        const Multivector& b) {
  check_same(a, b);
  check_same(out, a);
  const auto& table = BladeProductTable::get(a.dimension());
  const auto n = static_cast<Blade>(a.size());
  for (Blade i = 0; i < n; ++i) {
    const double ai = a[i];
    if (ai == 0.0) continue;
    for (Blade j = 0; j < n; ++j) {
      const double bj = b[j];
      if (bj == 0.0) continue;
      out[i ^ j] += scale * table.sign(i, j) * ai * bj;
    }
  }
}

Multivector operator*(const Multivector& a, const Multivector& b) {
  check_same(a, b);
  Multivector out(a.dimension());
  accumulate_product(out, 1.0, a, b);
  return out;
}

Multivector geometric_product(const Multivector& a, const Multivector& b) { return a * b; }

Multivector embed_vector(std::span<const double> v) {
  const int m = static_cast<int>(v.size());
  Multivector a(m);
  for (int i = 0; i < m; ++i) a[Blade{1} << i] = v[i];
  return a;
}

double norm(const Multivector& a) {
  double s = 0.0;
  for (double c : a.coefficients()) s += c * c;
  return std::sqrt(s);
}

Multivector grade_project(const Multivector& a, int k) {
  if (k < 0 || k > a.dimension()) throw UsageError("grade out of range");
  Multivector out(a.dimension());
  for (Blade b = 0; b < a.size(); ++b) {
    if (std::popcount(b) == k) out[b] = a[b];
  }
  return out;
}

double max_abs_difference(const Multivector& a, const Multivector& b) {
  check_same(a, b);
  double d = 0.0;
  for (Blade i = 0; i < a.size(); ++i) d = std::max(d, std::abs(a[i] - b[i]));
  return d;
}

}  // namespace cliffbie
