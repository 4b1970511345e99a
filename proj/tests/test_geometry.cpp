#include <cmath>
#include <numbers>
#include <vector>

#include "cliffbie/errors.hpp"
#include "cliffbie/geometry.hpp"
#include "doctest.h"

using namespace cliffbie;

namespace {

constexpr double kPi = std::numbers::pi;

double dot3(std::span<const double> a, std::span<const double> b) {
  return a[0] * b[0] + a[1] * b[1] + a[2] * b[2];
}

double integrate(const SurfaceMesh& mesh, double (*f)(std::span<const double>)) {
  double s = 0.0;
  for (std::size_t i = 0; i < mesh.size(); ++i) s += mesh.weight(i) * f(mesh.node(i));
  return s;
}

}  // namespace

TEST_SUITE("geometry") {

TEST_CASE("Gauss-Legendre integrates polynomials up to degree 2n-1") {
  for (int n : {1, 4, 9}) {
    std::vector<double> x;
    std::vector<double> w;
    gauss_legendre(n, x, w);
    REQUIRE(x.size() == static_cast<std::size_t>(n));
    for (int i = 1; i < n; ++i) CHECK(x[static_cast<std::size_t>(i)] > x[static_cast<std::size_t>(i - 1)]);
    for (int k = 0; k <= 2 * n - 1; ++k) {
      double s = 0.0;
      for (int i = 0; i < n; ++i) s += w[static_cast<std::size_t>(i)] * std::pow(x[static_cast<std::size_t>(i)], k);
      const double exact = k % 2 == 0 ? 2.0 / (k + 1) : 0.0;
      CHECK(s == doctest::Approx(exact).epsilon(1e-14).scale(1.0));
    }
  }
  std::vector<double> x;
  std::vector<double> w;
  CHECK_THROWS_AS(gauss_legendre(0, x, w), UsageError);
}

TEST_CASE("sphere mesh geometry and quadrature") {
  const auto mesh = build_sphere({16, 32});
  CHECK(mesh.size() == 512);
  CHECK(mesh.dimension() == 3);
  CHECK(mesh.kind() == SurfaceKind::Sphere);
  for (std::size_t i = 0; i < mesh.size(); ++i) {
    CHECK(dot3(mesh.node(i), mesh.node(i)) == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(dot3(mesh.normal(i), mesh.node(i)) == doctest::Approx(1.0).epsilon(1e-14));
  }
  CHECK(integrate(mesh, [](std::span<const double>) { return 1.0; }) == doctest::Approx(4 * kPi).epsilon(1e-13));
  CHECK(integrate(mesh, [](std::span<const double> y) { return y[2] * y[2]; }) ==
        doctest::Approx(4 * kPi / 3).epsilon(1e-13));
  CHECK(integrate(mesh, [](std::span<const double> y) { return y[0] * y[0] * y[1] * y[1]; }) ==
        doctest::Approx(4 * kPi / 15).epsilon(1e-13));
  CHECK(mesh.exact_area() == doctest::Approx(4 * kPi));
  CHECK(mesh.reach() == 1.0);
  CHECK(mesh.guard_band() == doctest::Approx(2.0 * mesh.spacing()));
  CHECK(mesh.with_guard_factor(0.25).guard_band() == doctest::Approx(0.25 * mesh.spacing()));
  CHECK(mesh.spacing() >= 2 * kPi / 32);
}

TEST_CASE("torus mesh geometry and quadrature") {
  const auto mesh = build_torus(2.0, 1.0, {32, 16});
  CHECK(mesh.size() == 512);
  CHECK(integrate(mesh, [](std::span<const double>) { return 1.0; }) ==
        doctest::Approx(4 * kPi * kPi * 2.0).epsilon(1e-13));
  // Volume by the divergence theorem: (1/3) int x . n = 2 pi^2 R r^2.
  double vol = 0.0;
  for (std::size_t i = 0; i < mesh.size(); ++i) vol += mesh.weight(i) * dot3(mesh.node(i), mesh.normal(i)) / 3.0;
  CHECK(vol == doctest::Approx(2 * kPi * kPi * 2.0).epsilon(1e-13));
  for (std::size_t i = 0; i < mesh.size(); i += 7) {
    CHECK(std::abs(mesh.signed_distance(mesh.node(i))) < 1e-14);
    CHECK(dot3(mesh.normal(i), mesh.normal(i)) == doctest::Approx(1.0));
    for (auto d : {ChartDirection::First, ChartDirection::Second}) {
      CHECK(std::abs(dot3(mesh.chart_tangent(i, d), mesh.normal(i))) < 1e-14);
    }
  }
  CHECK(mesh.reach() == 1.0);
  CHECK(mesh.exact_area() == doctest::Approx(8 * kPi * kPi));
  CHECK_THROWS_AS(build_torus(1.0, 1.0, {16, 8}), UsageError);
  CHECK_THROWS_AS(build_torus(2.0, 1.0, {16, 4}), UsageError);
}

TEST_CASE("circle mesh") {
  const auto mesh = build_circle(64);
  CHECK(mesh.dimension() == 2);
  CHECK(mesh.size() == 64);
  double total = 0.0;
  for (double w : mesh.weights()) total += w;
  CHECK(total == doctest::Approx(2 * kPi));
  CHECK_FALSE(mesh.has_local_charts());
  CHECK_THROWS_AS(mesh.local_coordinates(0, 1), UnsupportedError);
  CHECK_THROWS_AS(build_circle(4), UsageError);
}

TEST_CASE("invalid sphere resolutions") {
  CHECK_THROWS_AS(build_sphere({3, 8}), UsageError);
  CHECK_THROWS_AS(build_sphere({8, 9}), UsageError);
  CHECK_THROWS_AS(build_sphere({8, 6}), UsageError);
}

TEST_CASE("point classification") {
  const auto sphere = build_sphere({16, 32});
  const std::vector<double> origin{0.0, 0.0, 0.0};
  const std::vector<double> far{0.0, 0.0, 3.0};
  const std::vector<double> close{0.0, 0.0, 1.01};
  CHECK(sphere.signed_distance(origin) == doctest::Approx(-1.0));
  CHECK(classify_point(sphere, origin) == PointClass::Interior);
  CHECK(classify_point(sphere, far) == PointClass::Exterior);
  CHECK(classify_point(sphere, close) == PointClass::NearSurface);
  CHECK(to_string(PointClass::NearSurface) != to_string(PointClass::Interior));

  const auto torus = build_torus(2.0, 1.0, {32, 16});
  const std::vector<double> tube{2.0, 0.0, 0.0};
  CHECK(torus.signed_distance(tube) == doctest::Approx(-1.0));
  CHECK(torus.signed_distance(origin) == doctest::Approx(1.0));
  CHECK(classify_point(torus, tube) == PointClass::NearSurface);
  CHECK(classify_point(torus.with_guard_factor(0.5), tube) == PointClass::Interior);
  CHECK_THROWS_AS(sphere.signed_distance(std::vector<double>{1.0, 0.0}), UsageError);
}

TEST_CASE("offset points move along the normal") {
  const auto mesh = build_sphere({16, 32});
  const std::vector<double> deltas{0.1, 0.05};
  const auto pairs = offset_points(mesh, 37, deltas);
  REQUIRE(pairs.size() == 2);
  for (const auto& p : pairs) {
    CHECK(p.node == 37);
    CHECK(mesh.signed_distance(p.interior) == doctest::Approx(-p.delta));
    CHECK(mesh.signed_distance(p.exterior) == doctest::Approx(p.delta));
  }
  CHECK_THROWS_AS(offset_points(mesh, 37, std::vector<double>{1.5}), UsageError);
  CHECK_THROWS_AS(offset_points(mesh, 37, std::vector<double>{0.0}), UsageError);
  CHECK_THROWS_AS(offset_points(mesh, mesh.size(), deltas), UsageError);
}

TEST_CASE("tangential derivatives of coordinate functions") {
  for (const auto& mesh : {build_sphere({16, 32}), build_torus(2.0, 1.0, {32, 16})}) {
    std::vector<double> x3(mesh.size());
    std::vector<double> x1(mesh.size());
    for (std::size_t i = 0; i < mesh.size(); ++i) {
      x3[i] = mesh.node(i)[2];
      x1[i] = mesh.node(i)[0];
    }
    for (std::size_t i = 0; i < mesh.size(); i += 5) {
      for (auto d : {ChartDirection::First, ChartDirection::Second}) {
        auto t = mesh.chart_tangent(i, d);
        const double len = std::sqrt(dot3(t, t));
        CHECK(tangential_derivative(mesh, x3, i, d) == doctest::Approx(t[2] / len).epsilon(1e-7).scale(1.0));
        CHECK(tangential_derivative(mesh, x1, i, d) == doctest::Approx(t[0] / len).epsilon(1e-7).scale(1.0));
      }
      // grad x3 = e3 minus its normal part.
      const auto g = surface_gradient(mesh, x3, i);
      const auto n = mesh.normal(i);
      for (std::size_t a = 0; a < 3; ++a) {
        const double exact = (a == 2 ? 1.0 : 0.0) - n[2] * n[a];
        CHECK(g[a] == doctest::Approx(exact).epsilon(1e-7).scale(1.0));
      }
    }
  }
}

TEST_CASE("local charts reproduce nodes and surface measure") {
  for (const auto& mesh : {build_sphere({16, 32}), build_torus(2.0, 1.0, {32, 16})}) {
    for (std::size_t centre : {std::size_t{0}, std::size_t{100}, std::size_t{300}}) {
      for (std::size_t node : {centre + 1, centre + 33, centre + 64}) {
        const auto ab = mesh.local_coordinates(centre, node);
        const auto s = mesh.local_chart(centre, ab[0], ab[1]);
        for (std::size_t a = 0; a < 3; ++a) CHECK(s.point[a] == doctest::Approx(mesh.node(node)[a]).epsilon(1e-12).scale(1.0));
      }
      // Jacobian against the cross product of finite-difference tangents.
      const double a = 0.05;
      const double b = -0.03;
      const double h = 1e-5;
      const auto pa = mesh.local_chart(centre, a + h, b).point;
      const auto ma = mesh.local_chart(centre, a - h, b).point;
      const auto pb = mesh.local_chart(centre, a, b + h).point;
      const auto mb = mesh.local_chart(centre, a, b - h).point;
      std::array<double, 3> ta;
      std::array<double, 3> tb;
      for (std::size_t k = 0; k < 3; ++k) {
        ta[k] = (pa[k] - ma[k]) / (2 * h);
        tb[k] = (pb[k] - mb[k]) / (2 * h);
      }
      const std::array<double, 3> c{ta[1] * tb[2] - ta[2] * tb[1], ta[2] * tb[0] - ta[0] * tb[2],
                                    ta[0] * tb[1] - ta[1] * tb[0]};
      const auto s = mesh.local_chart(centre, a, b);
      CHECK(s.jacobian == doctest::Approx(std::sqrt(dot3(c, c))).epsilon(1e-8));
      CHECK(std::abs(mesh.signed_distance(s.point)) < 1e-14);
      CHECK(std::abs(dot3(s.normal, ta)) < 1e-8);
      CHECK(std::abs(dot3(s.normal, tb)) < 1e-8);
      CHECK(dot3(s.normal, s.normal) == doctest::Approx(1.0));
    }
  }
}

TEST_CASE("mesh dump") {
  const auto mesh = build_sphere({4, 8});
  const auto j = mesh_to_json(mesh);
  CHECK(j.at("kind") == "sphere");
  CHECK(j.at("nodes").size() == mesh.size());
  CHECK(j.at("weights").size() == mesh.size());
  CHECK(Resolution{16, 32}.to_string() == "16x32");
}

}
