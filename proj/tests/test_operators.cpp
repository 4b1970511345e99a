#include <cmath>
#include <vector>

#include "cliffbie/densities.hpp"
#include "cliffbie/errors.hpp"
#include "cliffbie/kernels.hpp"
#include "cliffbie/operators.hpp"
#include "doctest.h"

using namespace cliffbie;

namespace {

NodeField constant_field(const SurfaceMesh& mesh, double c) {
  return NodeField(mesh.size(), Multivector::scalar(mesh.dimension(), c));
}

NodeField sampled(const SurfaceMesh& mesh, const char* name) {
  const auto f = make_density(name, mesh.dimension());
  NodeField out;
  for (std::size_t i = 0; i < mesh.size(); ++i) out.push_back(f.value(mesh.node(i)));
  return out;
}

const SurfaceMesh& sphere16() {
  static const SurfaceMesh mesh = build_sphere({16, 32});
  return mesh;
}

const SurfaceMesh& sphere32() {
  static const SurfaceMesh mesh = build_sphere({32, 64});
  return mesh;
}

}  // namespace

TEST_SUITE("operators") {

TEST_CASE("Cauchy transform of one is the indicator") {
  const auto& mesh = sphere32();
  const auto one = constant_field(mesh, 1.0);
  for (const auto& x : {std::vector<double>{0.1, 0.2, -0.15}, std::vector<double>{0.0, 0.0, 0.0}}) {
    CHECK(norm(cauchy_transform(mesh, one, x) - Multivector::scalar(3, 1.0)) < 1e-8);
  }
  for (const auto& x : {std::vector<double>{0.0, 0.0, 1.6}, std::vector<double>{2.0, 1.0, -1.0}}) {
    CHECK(norm(cauchy_transform(mesh, one, x)) < 1e-8);
  }
  const std::vector<double> close{0.0, 0.0, 1.05};
  CHECK_THROWS_AS(cauchy_transform(mesh, one, close), NearSurfaceError);
  // The anchored form has no guard band and is exact for constants.
  const std::vector<double> inside{0.0, 0.0, 0.97};
  CHECK(norm(cauchy_transform_anchored(mesh, one, inside, 0) - Multivector::scalar(3, 1.0)) < 1e-14);
  CHECK(norm(cauchy_transform_anchored(mesh, one, close, 0)) < 1e-14);
}

TEST_CASE("singular transform of one is exactly one") {
  const auto& mesh = sphere16();
  const auto s = singular_transform(mesh, constant_field(mesh, 1.0));
  for (const auto& v : s) CHECK(norm(v - Multivector::scalar(3, 1.0)) <= 4 * 2.3e-16);
}

TEST_CASE("left-monogenic data is reproduced inside and on the surface") {
  // Cauchy's formula: C0 f = f inside, 0 outside, S0 f = f on the surface.
  const auto& mesh = sphere32();
  const auto f = make_density("monogenic:z", 3);
  const auto phi = sampled(mesh, "monogenic:z");
  const std::vector<double> x{0.2, -0.1, 0.3};
  CHECK(norm(cauchy_transform(mesh, phi, x) - f.value(x)) < 1e-8);
  const std::vector<double> out{0.0, 1.8, 0.4};
  CHECK(norm(cauchy_transform(mesh, phi, out)) < 1e-8);
  for (std::size_t z : probe_nodes(mesh, 40)) {
    CHECK(norm(singular_transform(mesh, phi, z) - phi[z]) < 1e-5);
  }
  // Close to the surface the anchored form keeps the accuracy.
  for (std::size_t z : probe_nodes(mesh, 10)) {
    std::vector<double> p(3);
    for (std::size_t a = 0; a < 3; ++a) p[a] = 0.98 * mesh.node(z)[a];
    CHECK(norm(cauchy_transform_anchored(mesh, phi, p, z) - f.value(p)) < 1e-5);
  }
}

TEST_CASE("interior harmonic data is fixed by the order-one operator") {
  const auto& mesh = sphere16();
  const auto h = make_density("harmonic:x1x2", 3);
  const auto w = sample_whitney(h, mesh);
  const auto s = bimonogenic_singular_transform(mesh, w);
  CHECK(max_norm_difference(s, w) < 1e-4 * max_norm(w));
  const std::vector<double> x{0.1, 0.3, -0.2};
  CHECK(norm(bimonogenic_cauchy_transform(mesh, w, x) - h.value(x)) < 1e-6);
  const std::vector<double> out{1.5, 1.5, 0.0};
  CHECK(norm(bimonogenic_cauchy_transform(mesh, w, out)) < 1e-6);
  // Single-node form agrees with the sweep.
  const auto one = bimonogenic_singular_transform(mesh, w, 77);
  CHECK(one.value == s.value()[77]);
  for (int j = 0; j < 3; ++j) CHECK(one.partials[static_cast<std::size_t>(j)] == s.partial(j)[77]);
}

TEST_CASE("exterior harmonic data changes sign") {
  const auto& mesh = sphere16();
  const auto g = make_density("E1pole", 3);
  const auto w = sample_whitney(g, mesh);
  const auto s = bimonogenic_singular_transform(mesh, w);
  CHECK(max_norm_difference(s, -1.0 * w) < 1e-4 * max_norm(w));
  const std::vector<double> far{0.0, 2.5, 0.0};
  CHECK(norm(bimonogenic_cauchy_transform(mesh, w, far) + g.value(far)) < 1e-6);
  const std::vector<double> inside{0.0, 0.0, -0.2};
  CHECK(norm(bimonogenic_cauchy_transform(mesh, w, inside)) < 1e-6);
}

TEST_CASE("Dirac trace of the order-one operator equals the order-zero operator") {
  const auto& mesh = sphere16();
  const auto w = sample_whitney(make_density("x1sq", 3), mesh);
  const auto s = bimonogenic_singular_transform(mesh, w);
  const auto d = dirac_trace(s);
  for (std::size_t z : probe_nodes(mesh, 20)) {
    CHECK(norm(d[z] - dirac_trace_of_singular(mesh, w, z)) < 1e-3);
  }
}

TEST_CASE("the near-field correction improves on node skipping") {
  const auto& mesh = sphere16();
  const auto w = sample_whitney(make_density("harmonic:x1", 3), mesh);
  NearFieldRule off;
  off.enabled = false;
  const double plain = max_norm_difference(bimonogenic_singular_transform(mesh, w, off), w);
  const double corrected = max_norm_difference(bimonogenic_singular_transform(mesh, w), w);
  CHECK(corrected < 1e-3 * plain);
  NearFieldRule bad;
  bad.degree = 0;
  CHECK_THROWS_AS(bimonogenic_singular_transform(mesh, w, bad), UsageError);
}

TEST_CASE("Hardy projections split the data") {
  const auto& mesh = sphere16();
  const auto w = sample_whitney(make_density("poly:7", 3), mesh);
  const auto s = bimonogenic_singular_transform(mesh, w);
  const auto plus = hardy_project(HardySign::Plus, w, s);
  const auto minus = hardy_project(HardySign::Minus, w, s);
  CHECK(max_norm_difference(plus + minus, w) <= 4 * 2.3e-16 * max_norm(w));
  CHECK(max_norm_difference(plus - minus, s) <= 4 * 2.3e-16 * max_norm(s));
}

TEST_CASE("operators are deterministic") {
  const auto& mesh = sphere16();
  const auto w = sample_whitney(make_density("x1sq", 3), mesh);
  const auto a = bimonogenic_singular_transform(mesh, w);
  const auto b = bimonogenic_singular_transform(mesh, w);
  CHECK(max_norm_difference(a, b) == 0.0);
}

TEST_CASE("finite-difference Laplacian") {
  const PointEvaluator r2 = [](std::span<const double> x) {
    return Multivector::scalar(3, x[0] * x[0] + x[1] * x[1] + x[2] * x[2]);
  };
  const std::vector<double> x{0.3, 0.1, -0.7};
  CHECK(laplacian_fd(r2, x, 1e-2)[0] == doctest::Approx(6.0).epsilon(1e-9));
  CHECK_THROWS_AS(laplacian_fd(r2, x, 0.0), UsageError);
}

TEST_CASE("boundary limits extrapolate linearly") {
  const auto& mesh = sphere16();
  // |x| is linear along the normal, so both limits are exactly 1.
  const PointEvaluator radius = [](std::span<const double> x) {
    return Multivector::scalar(3, std::sqrt(x[0] * x[0] + x[1] * x[1] + x[2] * x[2]));
  };
  const auto lim = extrapolate_limits(mesh, 40, 0.1, 0.05, radius);
  CHECK(lim.interior[0] == doctest::Approx(1.0).epsilon(1e-13));
  CHECK(lim.exterior[0] == doctest::Approx(1.0).epsilon(1e-13));
  CHECK_THROWS_AS(extrapolate_limits(mesh, 40, 0.1, 0.1, radius), UsageError);
}

TEST_CASE("probe nodes") {
  const auto& mesh = sphere16();
  const auto p = probe_nodes(mesh, 20);
  CHECK(p.size() >= 15);
  CHECK(p.size() <= 25);
  for (std::size_t k = 1; k < p.size(); ++k) CHECK(p[k] > p[k - 1]);
  CHECK(p.back() < mesh.size());
  CHECK(probe_nodes(mesh, mesh.size() + 3).size() == mesh.size());
  CHECK(probe_nodes(mesh, 0).empty());
}

TEST_CASE("jump problem for interior harmonic data") {
  const auto& mesh = sphere16();
  const auto h = make_density("harmonic:x1", 3);
  const auto w = sample_whitney(h, mesh);
  JumpProbe probe;
  probe.nodes = probe_nodes(mesh, 8);
  probe.delta1 = 0.02;
  probe.delta2 = 0.01;
  probe.far_direction = {1.0, 1.5, 2.0};
  probe.check_sum = true;
  const auto sol = jump_solve(mesh, w, probe);
  CHECK(sol.report.value_jump < 1e-3);
  CHECK(sol.report.dirac_jump < 1e-3);
  CHECK(sol.report.sum_residual < 1e-3);
  REQUIRE(sol.report.far_value_norms.size() == 2);
  // F vanishes outside, F = h inside.
  CHECK(sol.report.far_value_norms[0] < 1e-8);
  const std::vector<double> x{0.2, 0.1, 0.0};
  CHECK(norm(sol.solution(x) - h.value(x)) < 1e-6);
  CHECK(norm(sol.solution.dirac(x) - Multivector::basis_vector(3, 0)) < 1e-6);
}

TEST_CASE("zero data has the zero solution") {
  const auto& mesh = sphere16();
  JumpProbe probe;
  probe.nodes = {0, 100};
  const auto sol = jump_solve(mesh, WhitneyField::zeros(3, mesh.size()), probe);
  CHECK(sol.report.value_jump == 0.0);
  CHECK(sol.report.dirac_jump == 0.0);
  const std::vector<double> x{0.0, 0.0, 0.1};
  CHECK(sol.solution(x).is_zero());
}

TEST_CASE("order-one operators need m > 2") {
  const auto circle = build_circle(32);
  const auto w = WhitneyField::zeros(2, circle.size());
  const std::vector<double> x{0.1, 0.2};
  CHECK_THROWS_AS(bimonogenic_cauchy_transform(circle, w, x), UnsupportedError);
  CHECK_THROWS_AS(SectionalFunction(circle, w), UnsupportedError);
  CHECK_THROWS_AS(singular_transform(sphere16(), NodeField(3, Multivector(3)), 0), UsageError);
}

}
