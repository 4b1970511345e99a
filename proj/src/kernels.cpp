#include "cliffbie/kernels.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "cliffbie/errors.hpp"

namespace cliffbie {

namespace {

double checked_radius(std::span<const double> x) {
  double r2 = 0.0;
  for (double c : x) r2 += c * c;
  const double r = std::sqrt(r2);
  if (r < kKernelMinRadius) throw SingularityError("kernel evaluated at its pole");
  return r;
}

void check_unit(MultiIndex j, int m) {
  if (j.order() != 1 || j.coordinate() >= m) {
    throw UsageError("kernel partial needs a unit multi-index within the dimension");
  }
}

}  // namespace

KernelOrder::KernelOrder(int s) : s_(s) {
  if (s != 0 && s != 1) throw UsageError("kernel order must be 0 or 1");
}

double unit_sphere_area(int m) {
  if (m < 2) throw UsageError("unit sphere area needs m >= 2, got " + std::to_string(m));
  const double half = 0.5 * m;
  return 2.0 * std::exp(half * std::log(std::numbers::pi) - std::lgamma(half));
}

Multivector cauchy_kernel(std::span<const double> x) {
  const int m = static_cast<int>(x.size());
  const double r = checked_radius(x);
  Multivector e = embed_vector(x);
  e *= -1.0 / (unit_sphere_area(m) * std::pow(r, m));
  return e;
}

double laplace_kernel(std::span<const double> x) {
  const int m = static_cast<int>(x.size());
  if (m <= 2) throw UnsupportedError("Laplace kernel is only provided for m > 2");
  const double r = checked_radius(x);
  return 1.0 / ((m - 2) * unit_sphere_area(m) * std::pow(r, m - 2));
}

Multivector cauchy_kernel_partial(MultiIndex j, std::span<const double> x) {
  const int m = static_cast<int>(x.size());
  check_unit(j, m);
  const double r = checked_radius(x);
  const int c = j.coordinate();
  Multivector out = embed_vector(x);
  out *= -m * x[c];
  out[Blade{1} << c] += r * r;
  out *= -1.0 / (unit_sphere_area(m) * std::pow(r, m + 2));
  return out;
}

double laplace_kernel_partial(MultiIndex j, std::span<const double> x) {
  const int m = static_cast<int>(x.size());
  check_unit(j, m);
  if (m <= 2) throw UnsupportedError("Laplace kernel is only provided for m > 2");
  const double r = checked_radius(x);
  return -x[j.coordinate()] / (unit_sphere_area(m) * std::pow(r, m));
}

Multivector kernel(KernelOrder s, std::span<const double> x) {
  if (s.value() == 0) return cauchy_kernel(x);
  return Multivector::scalar(static_cast<int>(x.size()), laplace_kernel(x));
}

Multivector kernel_partial(KernelOrder s, MultiIndex j, std::span<const double> x) {
  if (s.value() == 0) return cauchy_kernel_partial(j, x);
  return Multivector::scalar(static_cast<int>(x.size()), laplace_kernel_partial(j, x));
}

}  // namespace cliffbie
