#include <cmath>
#include <vector>

#include "cliffbie/densities.hpp"
#include "cliffbie/errors.hpp"
#include "cliffbie/whitney.hpp"
#include "doctest.h"

using namespace cliffbie;

TEST_SUITE("whitney") {

TEST_CASE("sampled data carries the closed-form partials") {
  const auto mesh = build_sphere({8, 16});
  const auto w = sample_whitney(make_density("x1sq", 3), mesh);
  CHECK(w.size() == mesh.size());
  CHECK(w.dimension() == 3);
  for (std::size_t i = 0; i < mesh.size(); ++i) {
    const auto y = mesh.node(i);
    CHECK(w.value()[i] == Multivector::scalar(3, y[0] * y[0]));
    CHECK(w.partial(0)[i] == Multivector::scalar(3, 2 * y[0]));
    CHECK(w.partial(1)[i].is_zero());
    CHECK(w.at(i, MultiIndex::zero()) == w.value()[i]);
    CHECK(w.at(i, MultiIndex::unit(0)) == w.partial(0)[i]);
  }
}

TEST_CASE("remainders vanish for linear data and are exact for quadratics") {
  const auto mesh = build_sphere({8, 16});
  const auto lin = sample_whitney(make_density("x1", 3), mesh);
  const auto quad = sample_whitney(make_density("x1sq", 3), mesh);
  for (std::size_t y = 0; y < mesh.size(); y += 3) {
    for (std::size_t z = 1; z < mesh.size(); z += 11) {
      CHECK(norm(remainder(lin, mesh, y, z)) < 1e-15);
      CHECK(dirac_remainder(lin, y, z).is_zero());
      const double d = mesh.node(y)[0] - mesh.node(z)[0];
      CHECK(remainder(quad, mesh, y, z)[0] == doctest::Approx(d * d).epsilon(1e-12).scale(1.0));
      const auto dr = dirac_remainder(quad, y, z);
      CHECK(dr[1] == doctest::Approx(2 * d).scale(1.0));
      CHECK(norm(dr) == doctest::Approx(std::abs(2 * d)).scale(1.0));
    }
  }
}

TEST_CASE("dirac trace") {
  const auto mesh = build_sphere({8, 16});
  const auto w = sample_whitney(make_density("x1", 3), mesh);
  for (const auto& d : dirac_trace(w)) CHECK(d == Multivector::basis_vector(3, 0));
}

TEST_CASE("linear combinations and compatibility") {
  const auto mesh = build_sphere({8, 16});
  const auto a = sample_whitney(make_density("x1sq", 3), mesh);
  const auto b = sample_whitney(make_density("x2", 3), mesh);
  const auto sum = a + b;
  CHECK(max_norm_difference(sum - b, a) < 1e-15);
  CHECK(max_norm_difference(2.0 * a, a + a) == 0.0);
  double biggest = 0.0;
  for (std::size_t i = 0; i < mesh.size(); ++i) biggest = std::max(biggest, 2.0 * std::abs(mesh.node(i)[0]));
  CHECK(max_norm(a) == doctest::Approx(biggest).epsilon(1e-15));
  const auto other = sample_whitney(make_density("x1", 3), build_sphere({4, 8}));
  CHECK_THROWS_AS(a + other, UsageError);
  const auto zero = WhitneyField::zeros(3, 5);
  CHECK(zero.size() == 5);
  CHECK(max_norm(zero) == 0.0);
  CHECK_THROWS_AS(WhitneyField(NodeField{}, std::vector<NodeField>(3)), UsageError);
  CHECK_THROWS_AS(WhitneyField(NodeField{Multivector(3)}, std::vector<NodeField>(2, NodeField{Multivector(3)})),
                  UsageError);
  CHECK_THROWS_AS(WhitneyField(NodeField{Multivector(3)}, std::vector<NodeField>(3, NodeField{Multivector(3)}), 1.5),
                  UsageError);
}

TEST_CASE("Lipschitz seminorm of a quadratic") {
  // For x1^2 the trace remainder is (x1 - y1)^2 <= |x - y|^2, the partial
  // differences are 2 |x1 - y1| <= 2 |x - y| and |f^(j)| <= 2, so with
  // alpha = 1 the seminorm is at most 2 and approaches 2.
  const auto mesh = build_sphere({8, 16});
  const auto w = sample_whitney(make_density("x1sq", 3), mesh);
  SeminormOptions all;
  all.max_pairs = 1000000;
  const double s = lipschitz_seminorm(w, mesh, 1.0, all);
  CHECK(s <= 2.0 + 1e-12);
  CHECK(s >= 1.9);
  SeminormOptions few;
  few.max_pairs = 100;
  CHECK(lipschitz_seminorm(w, mesh, 1.0, few) <= s);
  CHECK(lipschitz_seminorm(w, mesh, 1.0, few) == lipschitz_seminorm(w, mesh, 1.0, few));
  CHECK_THROWS_AS(lipschitz_seminorm(w, mesh, 0.0), UsageError);
  CHECK_THROWS_AS(lipschitz_seminorm(w, mesh, 1.5), UsageError);
}

TEST_CASE("gradient recovery from trace and Dirac trace") {
  for (const auto& mesh : {build_sphere({32, 64}), build_torus(2.0, 1.0, {64, 32})}) {
    for (const char* name : {"x1", "x1sq", "E1pole"}) {
      const auto w = sample_whitney(make_density(name, 3), mesh);
      const auto g = recover_gradient(w.value(), dirac_trace(w), mesh);
      REQUIRE(g.size() == 3);
      double err = 0.0;
      for (int j = 0; j < 3; ++j) {
        for (std::size_t i = 0; i < mesh.size(); ++i) err = std::max(err, norm(g[j][i] - w.partial(j)[i]));
      }
      CHECK(err < 1e-4);
    }
  }
}

TEST_CASE("density registry") {
  const std::vector<double> x{0.3, -0.4, 0.5};
  for (const auto& name : registry_densities()) {
    const auto f = make_density(name, 3);
    CHECK(f.dimension == 3);
    CHECK(f.value(x).dimension() == 3);
  }
  CHECK_THROWS_AS(make_density("nope", 3), UsageError);
  CHECK_THROWS_AS(make_density("x4", 3), UsageError);
  CHECK_THROWS_AS(make_density("E1pole", 2), UnsupportedError);
  CHECK(make_density("const:2.5", 3).value(x) == Multivector::scalar(3, 2.5));
}

TEST_CASE("harmonic and monogenic densities") {
  const std::vector<double> x{0.3, -0.4, 0.5};
  const double h = 1e-3;
  for (const char* name : {"harmonic:x1", "harmonic:x1x2", "harmonic:x1sq-x2sq", "harmonic:x1x2x3", "E1pole"}) {
    const auto f = make_density(name, 3);
    Multivector lap = -6.0 * f.value(x);
    for (std::size_t a = 0; a < 3; ++a) {
      auto p = x;
      p[a] += h;
      lap += f.value(p);
      p[a] -= 2 * h;
      lap += f.value(p);
    }
    CHECK(norm(lap) / (h * h) < 1e-5);
    // Closed-form partials against central differences.
    for (int j = 0; j < 3; ++j) {
      auto p = x;
      p[static_cast<std::size_t>(j)] += h;
      auto q = x;
      q[static_cast<std::size_t>(j)] -= h;
      const auto fd = (f.value(p) - f.value(q)) * (1.0 / (2 * h));
      CHECK(max_abs_difference(fd, f.partial(j, x)) < 1e-5);
    }
  }
  const auto z = make_density("monogenic:z", 3);
  Multivector d(3);
  for (int j = 0; j < 3; ++j) d += Multivector::basis_vector(3, j) * z.partial(j, x);
  CHECK(d.is_zero());
}

}
