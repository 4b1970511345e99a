#pragma once

#include <span>

#include "cliffbie/multi_index.hpp"
#include "cliffbie/multivector.hpp"

namespace cliffbie {

/// Selects the kernel pair member: 0 for the Clifford-Cauchy kernel,
/// 1 for the Laplace fundamental solution.
class KernelOrder {
 public:
  explicit KernelOrder(int s);
  int value() const { return s_; }

 private:
  int s_;
};

/// Points closer to the pole than this raise SingularityError.
inline constexpr double kKernelMinRadius = 1e-13;

/// Surface area of the unit sphere in R^m, 2 pi^{m/2} / Gamma(m/2).
double unit_sphere_area(int m);

/// Clifford-Cauchy kernel -(1/sigma_m) x / |x|^m, a grade-1 multivector.
Multivector cauchy_kernel(std::span<const double> x);

/// Laplace fundamental solution 1 / ((m-2) sigma_m |x|^{m-2}), m > 2.
double laplace_kernel(std::span<const double> x);

/// d/dx_j of the Cauchy kernel:
/// -(1/sigma_m) (e_j |x|^2 - m x x_j) / |x|^{m+2}.
Multivector cauchy_kernel_partial(MultiIndex j, std::span<const double> x);

/// d/dx_j of the Laplace kernel: -x_j / (sigma_m |x|^m).
double laplace_kernel_partial(MultiIndex j, std::span<const double> x);

/// Either kernel as a multivector (the Laplace kernel as a scalar).
Multivector kernel(KernelOrder s, std::span<const double> x);
Multivector kernel_partial(KernelOrder s, MultiIndex j, std::span<const double> x);

}  // namespace cliffbie
