#include <cmath>
#include <numbers>
#include <random>
#include <vector>

#include "cliffbie/errors.hpp"
#include "cliffbie/kernels.hpp"
#include "doctest.h"

using namespace cliffbie;

namespace {

constexpr double kPi = std::numbers::pi;

std::vector<double> random_point(int m, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(-1.5, 1.5);
  std::vector<double> x(static_cast<std::size_t>(m));
  do {
    for (auto& c : x) c = u(rng);
  } while (std::sqrt(x[0] * x[0] + x[1] * x[1]) < 0.2);
  return x;
}

// Fourth-order central difference of a multivector-valued function.
template <class F>
Multivector fd_partial(F f, std::vector<double> x, int j, double h) {
  auto at = [&](double s) {
    auto p = x;
    p[static_cast<std::size_t>(j)] += s;
    return f(p);
  };
  return (8.0 * (at(h) - at(-h)) - (at(2 * h) - at(-2 * h))) * (1.0 / (12.0 * h));
}

}  // namespace

TEST_SUITE("kernels") {

TEST_CASE("unit sphere areas") {
  CHECK(unit_sphere_area(2) == doctest::Approx(2 * kPi).epsilon(1e-15));
  CHECK(unit_sphere_area(3) == doctest::Approx(4 * kPi).epsilon(1e-15));
  CHECK(unit_sphere_area(4) == doctest::Approx(2 * kPi * kPi).epsilon(1e-15));
  CHECK(unit_sphere_area(5) == doctest::Approx(8 * kPi * kPi / 3).epsilon(1e-15));
  CHECK_THROWS_AS(unit_sphere_area(1), UsageError);
}

TEST_CASE("closed-form kernel values") {
  const std::vector<double> e1{1.0, 0.0, 0.0};
  const auto k = cauchy_kernel(e1);
  CHECK(k[1] == doctest::Approx(-1.0 / (4 * kPi)));
  CHECK(norm(k) == doctest::Approx(1.0 / (4 * kPi)));
  const std::vector<double> x{0.0, 2.0, 0.0};
  CHECK(laplace_kernel(x) == doctest::Approx(1.0 / (8 * kPi)));
  const std::vector<double> y{0.0, 0.0, 0.0, 2.0};
  CHECK(laplace_kernel(y) == doctest::Approx(1.0 / (2 * 2 * kPi * kPi * 4)));
  CHECK(kernel(KernelOrder(1), x) == Multivector::scalar(3, laplace_kernel(x)));
  CHECK(kernel(KernelOrder(0), x) == cauchy_kernel(x));
}

TEST_CASE("the Dirac operator of E1 is E0") {
  std::mt19937_64 rng(1);
  for (int m = 3; m <= 5; ++m) {
    for (int trial = 0; trial < 20; ++trial) {
      const auto x = random_point(m, rng);
      Multivector closed(m);
      Multivector numeric(m);
      for (int j = 0; j < m; ++j) {
        const auto ej = Multivector::basis_vector(m, j);
        closed += ej * laplace_kernel_partial(MultiIndex::unit(j), x);
        const auto d = fd_partial([&](std::span<const double> p) { return Multivector::scalar(m, laplace_kernel(p)); },
                                  x, j, 1e-3);
        numeric += ej * d;
      }
      const auto e0 = cauchy_kernel(x);
      CHECK(max_abs_difference(closed, e0) <= 1e-13 * norm(e0));
      CHECK(max_abs_difference(numeric, e0) <= 1e-8 * norm(e0));
    }
  }
}

TEST_CASE("Dirac of E1 at a point with integer length") {
  // |x| = 3, so E0(x) = -x / (4 pi 27).
  const std::vector<double> x{1.0, 2.0, 2.0};
  Multivector d(3);
  for (int j = 0; j < 3; ++j) {
    d += Multivector::basis_vector(3, j) * laplace_kernel_partial(MultiIndex::unit(j), x);
  }
  for (int j = 0; j < 3; ++j) {
    CHECK(d[Blade{1} << j] == doctest::Approx(-x[static_cast<std::size_t>(j)] / (108 * kPi)).epsilon(1e-15));
  }
  std::vector<double> minus{-1.0, -2.0, -2.0};
  CHECK(laplace_kernel_partial(MultiIndex::unit(1), minus) == -laplace_kernel_partial(MultiIndex::unit(1), x));
}

TEST_CASE("closed-form partials match finite differences") {
  std::mt19937_64 rng(2);
  for (int m = 3; m <= 4; ++m) {
    const auto x = random_point(m, rng);
    for (int j = 0; j < m; ++j) {
      const auto fd = fd_partial([](std::span<const double> p) { return cauchy_kernel(p); }, x, j, 1e-3);
      const auto closed = cauchy_kernel_partial(MultiIndex::unit(j), x);
      CHECK(max_abs_difference(fd, closed) <= 1e-8 * norm(closed) + 1e-12);
      CHECK(kernel_partial(KernelOrder(0), MultiIndex::unit(j), x) == closed);
      CHECK(kernel_partial(KernelOrder(1), MultiIndex::unit(j), x)[0] ==
            laplace_kernel_partial(MultiIndex::unit(j), x));
    }
    CHECK_THROWS_AS(kernel_partial(KernelOrder(0), MultiIndex::zero(), x), UsageError);
  }
}

TEST_CASE("E0 is left monogenic") {
  std::mt19937_64 rng(3);
  for (int m = 2; m <= 6; ++m) {
    for (int trial = 0; trial < 10; ++trial) {
      const auto x = random_point(m, rng);
      Multivector d(m);
      for (int j = 0; j < m; ++j) {
        d += Multivector::basis_vector(m, j) * cauchy_kernel_partial(MultiIndex::unit(j), x);
      }
      CHECK(norm(d) <= 1e-13 * norm(cauchy_kernel_partial(MultiIndex::unit(0), x)));
    }
  }
}

TEST_CASE("E1 is harmonic away from the pole") {
  const std::vector<double> x{0.6, -0.48, 0.64};
  const double h = 1e-3;
  double lap = 0.0;
  for (std::size_t a = 0; a < 3; ++a) {
    auto p = x;
    p[a] += h;
    lap += laplace_kernel(p);
    p[a] -= 2 * h;
    lap += laplace_kernel(p);
  }
  lap = (lap - 6.0 * laplace_kernel(x)) / (h * h);
  CHECK(std::abs(lap) < 1e-4);
}

TEST_CASE("poles and unsupported orders raise") {
  const std::vector<double> zero{0.0, 0.0, 0.0};
  CHECK_THROWS_AS(cauchy_kernel(zero), SingularityError);
  CHECK_THROWS_AS(laplace_kernel(zero), SingularityError);
  const std::vector<double> plane{1.0, 0.0};
  CHECK_THROWS_AS(laplace_kernel(plane), UnsupportedError);
  CHECK_THROWS_AS(laplace_kernel_partial(MultiIndex::unit(0), plane), UnsupportedError);
  CHECK_NOTHROW(cauchy_kernel(plane));
  CHECK_THROWS_AS(KernelOrder(2), UsageError);
  const std::vector<double> one{1.0, 0.0, 0.0};
  CHECK_THROWS_AS(cauchy_kernel_partial(MultiIndex::unit(3), one), UsageError);
  CHECK_THROWS_AS(cauchy_kernel_partial(MultiIndex::zero(), one), UsageError);
}

}
