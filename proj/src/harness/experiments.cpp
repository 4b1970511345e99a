#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <numbers>
#include <random>
#include <sstream>

#include "cliffbie/densities.hpp"
#include "cliffbie/errors.hpp"
#include "cliffbie/kernels.hpp"
#include "cliffbie/operators.hpp"
#include "study.hpp"

namespace cliffbie {

using namespace harness_detail;

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();

double safe_scale(double s) { return s > 0.0 ? s : 1.0; }

double field_max(const NodeField& f) {
  double s = 0.0;
  for (const auto& v : f) s = std::max(s, norm(v));
  return s;
}

double field_scale(const NodeField& f) { return safe_scale(field_max(f)); }

std::vector<double> offset(const SurfaceMesh& mesh, std::size_t node, double d) {
  const auto y = mesh.node(node);
  const auto n = mesh.normal(node);
  std::vector<double> x(y.size());
  for (std::size_t a = 0; a < x.size(); ++a) x[a] = y[a] + d * n[a];
  return x;
}

std::size_t probe_count(const ExperimentConfig& config, std::size_t fallback) {
  const auto it = config.params.find("probes");
  if (it == config.params.end()) return fallback;
  if (!(it->second >= 1.0)) throw UsageError("probes must be at least 1");
  return static_cast<std::size_t>(it->second);
}

double param(const ExperimentConfig& config, const std::string& key, double fallback) {
  const auto it = config.params.find(key);
  return it == config.params.end() ? fallback : it->second;
}

// Points inside at distance 0.5 and 0.75 times the reach from probe nodes.
std::vector<std::vector<double>> interior_points(const SurfaceMesh& mesh, std::size_t count) {
  std::vector<std::vector<double>> out;
  for (std::size_t z : probe_nodes(mesh, count)) {
    for (double f : {0.5, 0.75}) out.push_back(offset(mesh, z, -f * mesh.reach()));
  }
  return out;
}

// Fixed-distance probe points fall inside the default guard band on coarse
// meshes; a study should report their error there rather than stop.
SurfaceMesh relaxed(const SurfaceMesh& mesh) { return mesh.with_guard_factor(0.25); }

double bounding_radius(const SurfaceMesh& mesh) {
  return mesh.kind() == SurfaceKind::Torus ? mesh.major_radius() + mesh.minor_radius() : 1.0;
}

// Points at `factor` times the bounding radius in the directions of probe nodes.
std::vector<std::vector<double>> far_points(const SurfaceMesh& mesh, std::size_t count,
                                            double factor) {
  std::vector<std::vector<double>> out;
  for (std::size_t z : probe_nodes(mesh, count)) {
    const auto y = mesh.node(z);
    double len = 0.0;
    for (double c : y) len += c * c;
    len = std::sqrt(len);
    std::vector<double> x(y.size());
    for (std::size_t a = 0; a < x.size(); ++a) x[a] = factor * bounding_radius(mesh) * y[a] / len;
    out.push_back(std::move(x));
  }
  return out;
}

NodeField dirac_difference(const WhitneyField& a, const WhitneyField& b) {
  NodeField da = dirac_trace(a);
  const NodeField db = dirac_trace(b);
  for (std::size_t i = 0; i < da.size(); ++i) da[i] -= db[i];
  return da;
}

std::vector<double> pole_centre(const std::string& name, int m) {
  std::vector<double> c(static_cast<std::size_t>(m), 0.0);
  c.back() = 0.3;
  const auto colon = name.find(':');
  if (colon == std::string::npos) return c;
  std::stringstream ss(name.substr(colon + 1));
  std::string item;
  c.clear();
  while (std::getline(ss, item, ',')) c.push_back(std::stod(item));
  return c;
}

// ---------------------------------------------------------------- mesh-free

ExperimentReport algebra(const ExperimentConfig& config) {
  double assoc = 0.0;
  double anti = 0.0;
  double square = 0.0;
  std::mt19937_64 rng(config.seed);
  std::uniform_real_distribution<double> coord(-1.0, 1.0);
  for (int m = 2; m <= 4; ++m) {
    const Blade size = Blade{1} << m;
    for (Blade a = 0; a < size; ++a) {
      for (Blade b = 0; b < size; ++b) {
        const auto ab = Multivector::blade(m, a) * Multivector::blade(m, b);
        for (Blade c = 0; c < size; ++c) {
          const auto left = ab * Multivector::blade(m, c);
          const auto right = Multivector::blade(m, a) * (Multivector::blade(m, b) * Multivector::blade(m, c));
          assoc = std::max(assoc, max_abs_difference(left, right));
        }
      }
    }
    for (int i = 0; i < m; ++i) {
      for (int j = 0; j < m; ++j) {
        const auto ei = Multivector::basis_vector(m, i);
        const auto ej = Multivector::basis_vector(m, j);
        const auto expected = Multivector::scalar(m, i == j ? -2.0 : 0.0);
        anti = std::max(anti, max_abs_difference(ei * ej + ej * ei, expected));
      }
    }
    for (int k = 0; k < 1000; ++k) {
      std::vector<double> v(static_cast<std::size_t>(m));
      double len2 = 0.0;
      for (double& c : v) {
        c = coord(rng);
        len2 += c * c;
      }
      const auto x = embed_vector(v);
      const auto xx = x * x;
      square = std::max(square, max_abs_difference(xx, Multivector::scalar(m, -len2)) / len2);
    }
  }
  auto report = single_result(config, {{"associativity", assoc},
                                       {"anticommutation", anti},
                                       {"vector_square", square}});
  gate_max(report, config, "associativity", "algebra", assoc, 1e-14);
  gate_max(report, config, "anticommutation", "algebra", anti, 1e-14);
  gate_max(report, config, "vector_square", "algebra", square, 1e-14);
  return report;
}

ExperimentReport kernel_identities(const ExperimentConfig& config) {
  const int m = static_cast<int>(param(config, "m", 3));
  if (m < 3 || m > kMaxDimension) throw UnsupportedError("kernel identities need 3 <= m <= 8");
  const double h = config.h.value_or(1e-3);
  std::mt19937_64 rng(config.seed);
  std::normal_distribution<double> gauss;
  std::uniform_real_distribution<double> radius(0.5, 2.0);

  double dirac_e1 = 0.0;
  double dirac_e0 = 0.0;
  double lap = 0.0;
  for (int k = 0; k < 100; ++k) {
    std::vector<double> x(static_cast<std::size_t>(m));
    double len = 0.0;
    for (double& c : x) {
      c = gauss(rng);
      len += c * c;
    }
    len = std::sqrt(len);
    const double r = radius(rng);
    for (double& c : x) c *= r / len;

    Multivector de1(m);
    Multivector de0(m);
    double de0_scale = 0.0;
    for (int j = 0; j < m; ++j) {
      const auto ej = Multivector::basis_vector(m, j);
      de1 += ej * laplace_kernel_partial(MultiIndex::unit(j), x);
      const auto term = ej * cauchy_kernel_partial(MultiIndex::unit(j), x);
      de0_scale = std::max(de0_scale, norm(term));
      de0 += term;
    }
    const auto e0 = cauchy_kernel(x);
    dirac_e1 = std::max(dirac_e1, norm(de1 - e0) / norm(e0));
    dirac_e0 = std::max(dirac_e0, norm(de0) / de0_scale);

    for (double& c : x) c /= r;  // |x| = 1
    const auto l = laplacian_fd(
        [](std::span<const double> p) { return Multivector::scalar(static_cast<int>(p.size()), laplace_kernel(p)); },
        x, h);
    lap = std::max(lap, norm(l));
  }
  auto report = single_result(config, {{"dirac_E1", dirac_e1},
                                       {"dirac_E0", dirac_e0},
                                       {"laplacian_E1", lap}});
  gate_max(report, config, "dirac_E1", "kernel-identities", dirac_e1, 1e-12);
  gate_max(report, config, "dirac_E0", "kernel-identities", dirac_e0, 1e-12);
  gate_max(report, config, "laplacian_E1", "kernel-identities", lap, 1e-4);
  return report;
}

ExperimentReport circle_baseline(const ExperimentConfig& config) {
  using namespace std::complex_literals;
  if (config.resolutions.size() != 1) throw UsageError("circle-baseline takes a single resolution");
  const std::size_t n = static_cast<std::size_t>(config.resolutions.front().first);
  const double step = 2.0 * std::numbers::pi / static_cast<double>(n);
  auto samples = [&](auto f) {
    std::vector<std::complex<double>> v(n);
    for (std::size_t k = 0; k < n; ++k) v[k] = f(std::polar(1.0, step * static_cast<double>(k)));
    return v;
  };
  auto apply = [&](const std::vector<std::complex<double>>& phi) {
    std::vector<std::complex<double>> out(n);
    for (std::size_t t = 0; t < n; ++t) out[t] = complex_singular_circle(phi, t);
    return out;
  };
  auto max_diff = [](const auto& a, const auto& b, double sign) {
    double e = 0.0;
    for (std::size_t k = 0; k < a.size(); ++k) e = std::max(e, std::abs(a[k] - sign * b[k]));
    return e;
  };

  Residuals residuals;
  double powers = 0.0;
  for (int p = -3; p <= 3; ++p) {
    const auto phi = samples([p](std::complex<double> z) { return std::pow(z, p); });
    const double e = max_diff(apply(phi), phi, p >= 0 ? 1.0 : -1.0);
    residuals["zeta^" + std::to_string(p)] = e;
    powers = std::max(powers, e);
  }
  const auto mixed = samples([](std::complex<double> z) {
    return z * z + 1.0 / z + 0.5 / (z * z * z) + 0.25 + 0.1i * z;
  });
  const double involution = max_diff(apply(apply(mixed)), mixed, 1.0);
  residuals["involution"] = involution;

  ExperimentReport report;
  report.experiment = config.experiment;
  report.config = config_to_json(config);
  report.results.push_back({config.resolutions.front(), residuals, {}, std::nullopt});
  gate_max(report, config, "powers", "circle-baseline", powers, 1e-10);
  gate_max(report, config, "involution", "circle-baseline", involution, 1e-10);
  return report;
}

// ------------------------------------------------------------- mesh studies

ExperimentReport cauchy_constant(const ExperimentConfig& config) {
  auto report = run_levels(config, [&](const SurfaceMesh& mesh, std::size_t) {
    const int m = mesh.dimension();
    const NodeField one(mesh.size(), Multivector::scalar(m, 1.0));
    const auto probe = relaxed(mesh);
    double interior = 0.0;
    for (const auto& x : interior_points(mesh, 16)) {
      interior = std::max(interior, norm(cauchy_transform(probe, one, x) - Multivector::scalar(m, 1.0)));
    }
    double exterior = 0.0;
    std::vector<std::vector<double>> outside;
    for (std::size_t z : probe_nodes(mesh, 16)) outside.push_back(offset(mesh, z, 0.5 * mesh.reach()));
    for (auto& x : far_points(mesh, 16, 2.0)) outside.push_back(std::move(x));
    for (const auto& x : outside) exterior = std::max(exterior, norm(cauchy_transform(probe, one, x)));
    const auto s = singular_transform(mesh, one);
    double singular = 0.0;
    for (const auto& v : s) singular = std::max(singular, norm(v - Multivector::scalar(m, 1.0)));
    return Residuals{{"interior", interior}, {"exterior", exterior}, {"singular", singular}};
  });
  gate_finest(report, config, "interior", "cauchy-constant", 1e-8);
  gate_finest(report, config, "exterior", "cauchy-constant", 1e-8);
  gate_finest(report, config, "singular", "cauchy-constant", 4.0 * kEps);
  return report;
}

ExperimentReport plemelj0(const ExperimentConfig& config) {
  auto report = run_levels(config, [&](const SurfaceMesh& mesh, std::size_t level) {
    const auto deltas = level_deltas(config, level);
    Residuals out;
    for (const auto& name : config.densities) {
      const auto phi = sample_whitney(make_density(name, mesh.dimension()), mesh).value();
      const double scale = field_scale(phi);
      double interior = 0.0;
      double exterior = 0.0;
      for (std::size_t z : probe_nodes(mesh, probe_count(config, 64))) {
        const auto s = singular_transform(mesh, phi, z);
        const auto limits = extrapolate_limits(mesh, z, deltas[0], deltas[1], [&](auto x) {
          return cauchy_transform_anchored(mesh, phi, x, z);
        });
        interior = std::max(interior, norm(limits.interior - 0.5 * (phi[z] + s)));
        exterior = std::max(exterior, norm(limits.exterior - 0.5 * (s - phi[z])));
      }
      out[name + ".interior"] = interior / scale;
      out[name + ".exterior"] = exterior / scale;
    }
    return out;
  });
  for (const auto& name : config.densities) {
    for (const char* side : {".interior", ".exterior"}) {
      gate_finest(report, config, name + side, "plemelj0", 1e-3);
      if (report.results.size() > 1) gate_order(report, config, name + side, "plemelj0");
    }
  }
  return report;
}

ExperimentReport plemelj1(const ExperimentConfig& config) {
  auto report = run_levels(config, [&](const SurfaceMesh& mesh, std::size_t level) {
    const auto deltas = level_deltas(config, level);
    Residuals out;
    for (const auto& name : config.densities) {
      const auto w = sample_whitney(make_density(name, mesh.dimension()), mesh);
      const double scale = safe_scale(max_norm(w));
      double jump = 0.0;
      double sum = 0.0;
      for (std::size_t z : probe_nodes(mesh, probe_count(config, 64))) {
        const auto s = bimonogenic_singular_transform(mesh, w, z);
        const auto f = extrapolate_limits(mesh, z, deltas[0], deltas[1], [&](auto x) {
          return bimonogenic_cauchy_transform_anchored(mesh, w, x, z);
        });
        jump = std::max(jump, norm(f.interior - f.exterior - w.value()[z]));
        sum = std::max(sum, norm(f.interior + f.exterior - s.value));
      }
      out[name + ".jump"] = jump / scale;
      out[name + ".sum"] = sum / scale;
    }
    return out;
  });
  if (report.results.size() > 1) {
    for (const auto& name : config.densities) {
      gate_order(report, config, name + ".jump", "jump");
      gate_order(report, config, name + ".sum", "jump");
    }
  }
  return report;
}

ExperimentReport involution(const ExperimentConfig& config) {
  auto report = run_levels(config, [&](const SurfaceMesh& mesh, std::size_t) {
    Residuals out;
    for (const auto& name : config.densities) {
      const auto w = sample_whitney(make_density(name, mesh.dimension()), mesh);
      const auto s = bimonogenic_singular_transform(mesh, w);
      const auto s2 = bimonogenic_singular_transform(mesh, s);
      out[name] = max_norm_difference(s2, w) / safe_scale(max_norm(w));
      const double dirac_scale = safe_scale(std::max(field_max(dirac_trace(w)), max_norm(w)));
      out[name + ".dirac"] = field_max(dirac_difference(s2, w)) / dirac_scale;
    }
    return out;
  });
  for (const auto& name : config.densities) {
    gate_finest(report, config, name, "involution", 1e-2);
    if (report.results.size() > 1) {
      gate_order(report, config, name, "involution");
      gate_order(report, config, name + ".dirac", "involution");
    }
  }
  return report;
}

ExperimentReport idsj(const ExperimentConfig& config) {
  auto report = run_levels(config, [&](const SurfaceMesh& mesh, std::size_t) {
    Residuals out;
    for (const auto& name : config.densities) {
      const auto w = sample_whitney(make_density(name, mesh.dimension()), mesh);
      const auto slots = dirac_trace(bimonogenic_singular_transform(mesh, w));
      double e = 0.0;
      for (std::size_t z = 0; z < mesh.size(); ++z) {
        e = std::max(e, norm(slots[z] - dirac_trace_of_singular(mesh, w, z)));
      }
      out[name] = e / safe_scale(max_norm(w));
    }
    return out;
  });
  for (const auto& name : config.densities) gate_finest(report, config, name, "idsj", 1e-3);
  return report;
}

ExperimentReport projections(const ExperimentConfig& config) {
  auto report = run_levels(config, [&](const SurfaceMesh& mesh, std::size_t) {
    Residuals out;
    for (const auto& name : config.densities) {
      const auto w = sample_whitney(make_density(name, mesh.dimension()), mesh);
      const double scale = safe_scale(max_norm(w));
      const auto sw = bimonogenic_singular_transform(mesh, w);
      const auto s2w = bimonogenic_singular_transform(mesh, sw);
      const auto plus = hardy_project(HardySign::Plus, w, sw);
      const auto minus = hardy_project(HardySign::Minus, w, sw);
      // S is linear, so S P+ W and S P- W follow from S W and S^2 W.
      const auto s_plus = 0.5 * (sw + s2w);
      const auto s_minus = 0.5 * (sw - s2w);
      out[name + ".P+P+-P+"] =
          max_norm_difference(hardy_project(HardySign::Plus, plus, s_plus), plus) / scale;
      out[name + ".P-P--P-"] =
          max_norm_difference(hardy_project(HardySign::Minus, minus, s_minus), minus) / scale;
      out[name + ".P+P-"] = max_norm(hardy_project(HardySign::Plus, minus, s_minus)) / scale;
      out[name + ".P-P+"] = max_norm(hardy_project(HardySign::Minus, plus, s_plus)) / scale;
      out[name + ".P++P--I"] = max_norm_difference(plus + minus, w) / scale;
    }
    return out;
  });
  for (const auto& name : config.densities) {
    if (report.results.size() > 1) {
      for (const char* r : {".P+P+-P+", ".P-P--P-", ".P+P-", ".P-P+"}) {
        gate_order(report, config, name + r, "projections");
      }
    }
    gate_finest(report, config, name + ".P++P--I", "projections", 4.0 * kEps);
  }
  return report;
}

ExperimentReport hardy_plus(const ExperimentConfig& config) {
  auto report = run_levels(config, [&](const SurfaceMesh& mesh, std::size_t) {
    Residuals out;
    for (const auto& name : config.densities) {
      const auto ref = make_density(name, mesh.dimension());
      const auto w = sample_whitney(ref, mesh);
      const double scale = safe_scale(max_norm(w));
      const auto sw = bimonogenic_singular_transform(mesh, w);
      out[name + ".P+W-W"] = max_norm_difference(hardy_project(HardySign::Plus, w, sw), w) / scale;
      out[name + ".P-W"] = max_norm(hardy_project(HardySign::Minus, w, sw)) / scale;
      const auto probe = relaxed(mesh);
      double repro = 0.0;
      for (const auto& x : interior_points(mesh, 10)) {
        repro = std::max(repro, norm(bimonogenic_cauchy_transform(probe, w, x) - ref.value(x)));
      }
      out[name + ".interior"] = repro;
    }
    return out;
  });
  for (const auto& name : config.densities) {
    gate_finest(report, config, name + ".P+W-W", "hardy-plus", 1e-2);
    if (report.results.size() > 1) gate_order(report, config, name + ".P+W-W", "hardy-plus");
    gate_finest(report, config, name + ".interior", "hardy-plus", 1e-6);
  }
  return report;
}

ExperimentReport hardy_minus(const ExperimentConfig& config) {
  for (const auto& name : config.densities) {
    if (name.rfind("E1pole", 0) != 0) throw UsageError("hardy-minus takes E1pole densities");
  }
  auto report = run_levels(config, [&](const SurfaceMesh& mesh, std::size_t) {
    Residuals out;
    const int m = mesh.dimension();
    for (const auto& name : config.densities) {
      const auto ref = make_density(name, m);
      const auto centre = pole_centre(name, m);
      if (classify_point(mesh, centre) != PointClass::Interior) {
        throw UsageError("hardy-minus needs the pole inside the surface");
      }
      const auto w = sample_whitney(ref, mesh);
      const double scale = safe_scale(max_norm(w));
      const auto sw = bimonogenic_singular_transform(mesh, w);
      out[name + ".P-W-W"] = max_norm_difference(hardy_project(HardySign::Minus, w, sw), w) / scale;
      out[name + ".P+W"] = max_norm(hardy_project(HardySign::Plus, w, sw)) / scale;
      const auto probe = relaxed(mesh);
      double exterior = 0.0;
      for (double factor : {2.0, 3.0}) {
        for (const auto& x : far_points(mesh, 10, factor)) {
          exterior = std::max(exterior, norm(bimonogenic_cauchy_transform(probe, w, x) + ref.value(x)));
        }
      }
      double interior = 0.0;
      for (const auto& x : interior_points(mesh, 10)) {
        double d2 = 0.0;
        for (std::size_t a = 0; a < x.size(); ++a) d2 += (x[a] - centre[a]) * (x[a] - centre[a]);
        if (d2 < 0.2 * 0.2) continue;
        interior = std::max(interior, norm(bimonogenic_cauchy_transform(probe, w, x)));
      }
      out[name + ".exterior"] = exterior;
      out[name + ".interior"] = interior;
    }
    return out;
  });
  for (const auto& name : config.densities) {
    if (report.results.size() > 1) gate_order(report, config, name + ".P-W-W", "hardy-minus");
    gate_finest(report, config, name + ".exterior", "hardy-minus", 1e-6);
    gate_finest(report, config, name + ".interior", "hardy-minus", 1e-6);
  }
  return report;
}

std::vector<double> far_direction(int m) {
  std::vector<double> d(static_cast<std::size_t>(m));
  for (int a = 0; a < m; ++a) d[static_cast<std::size_t>(a)] = 1.0 + 0.5 * a;
  return d;
}

void decay_gates(ExperimentReport& report, const ExperimentConfig& config, const std::string& name) {
  for (const char* r : {".value_slope_error", ".dirac_slope_error"}) {
    double worst = 0.0;
    for (const auto& row : report.results) worst = std::max(worst, row.residuals.at(name + r));
    gate_max(report, config, name + r + ".max", "jump", worst, 0.1);
  }
  if (report.results.size() > 1) {
    for (const char* r : {".far_value", ".far_dirac"}) {
      const double a = report.results.back().residuals.at(name + r);
      const double b = report.results[report.results.size() - 2].residuals.at(name + r);
      gate_max(report, config, name + r + ".change", "jump", std::abs(a - b) / safe_scale(std::abs(a)), 1e-6);
    }
  }
}

void record_decay(Residuals& out, const std::string& name, const JumpReport& r, int m) {
  out[name + ".value_slope"] = r.value_decay_slope;
  out[name + ".dirac_slope"] = r.dirac_decay_slope;
  out[name + ".value_slope_error"] = std::abs(r.value_decay_slope - (2.0 - m));
  out[name + ".dirac_slope_error"] = std::abs(r.dirac_decay_slope - (1.0 - m));
  out[name + ".far_value"] = r.far_value_norms.back();
  out[name + ".far_dirac"] = r.far_dirac_norms.back();
}

ExperimentReport jump(const ExperimentConfig& config) {
  const double h = config.h.value_or(1e-2);
  auto report = run_levels(config, [&](const SurfaceMesh& mesh, std::size_t level) {
    const auto deltas = level_deltas(config, level);
    const int m = mesh.dimension();
    Residuals out;
    for (const auto& name : config.densities) {
      const auto w = sample_whitney(make_density(name, m), mesh);
      const double scale = safe_scale(max_norm(w));
      JumpProbe probe;
      probe.nodes = probe_nodes(mesh, probe_count(config, 64));
      probe.delta1 = deltas[0];
      probe.delta2 = deltas[1];
      probe.far_direction = far_direction(m);
      probe.far_radii = {param(config, "r1", 10.0), param(config, "r2", 20.0)};
      probe.check_sum = true;
      const auto solved = jump_solve(mesh, w, probe);
      out[name + ".value_jump"] = solved.report.value_jump / scale;
      out[name + ".dirac_jump"] = solved.report.dirac_jump / scale;
      out[name + ".sum"] = solved.report.sum_residual / scale;
      record_decay(out, name, solved.report, m);

      const auto loose = relaxed(mesh);
      const PointEvaluator f = [&](std::span<const double> p) {
        return bimonogenic_cauchy_transform(loose, w, p);
      };
      double lap = 0.0;
      for (const auto& x : interior_points(mesh, 10)) lap = std::max(lap, norm(laplacian_fd(f, x, h)));
      out[name + ".harmonicity"] = lap / scale;
    }
    return out;
  });
  for (const auto& name : config.densities) {
    if (report.results.size() > 1) {
      gate_order(report, config, name + ".value_jump", "jump");
      gate_order(report, config, name + ".dirac_jump", "jump");
      gate_order(report, config, name + ".sum", "jump");
    }
    decay_gates(report, config, name);
    gate_finest(report, config, name + ".harmonicity", "harmonicity", 1e-4);
  }
  return report;
}

ExperimentReport decay(const ExperimentConfig& config) {
  auto report = run_levels(config, [&](const SurfaceMesh& mesh, std::size_t) {
    const int m = mesh.dimension();
    Residuals out;
    for (const auto& name : config.densities) {
      const auto w = sample_whitney(make_density(name, m), mesh);
      JumpProbe probe;
      probe.far_direction = far_direction(m);
      probe.far_radii = {param(config, "r1", 10.0), param(config, "r2", 20.0)};
      record_decay(out, name, jump_solve(mesh, w, probe).report, m);
    }
    return out;
  });
  for (const auto& name : config.densities) decay_gates(report, config, name);
  return report;
}

ExperimentReport seminorm(const ExperimentConfig& config) {
  const double alpha = param(config, "alpha", 0.5);
  return run_levels(config, [&](const SurfaceMesh& mesh, std::size_t) {
    Residuals out;
    SeminormOptions options;
    options.seed = config.seed;
    for (const auto& name : config.densities) {
      const auto w = sample_whitney(make_density(name, mesh.dimension()), mesh);
      out[name] = lipschitz_seminorm(w, mesh, alpha, options);
    }
    return out;
  });
}

ExperimentReport gradient_recovery(const ExperimentConfig& config) {
  auto report = run_levels(config, [&](const SurfaceMesh& mesh, std::size_t) {
    Residuals out;
    for (const auto& name : config.densities) {
      const auto w = sample_whitney(make_density(name, mesh.dimension()), mesh);
      const auto rec = recover_gradient(w.value(), dirac_trace(w), mesh);
      double e = 0.0;
      for (int j = 0; j < w.dimension(); ++j) {
        for (std::size_t i = 0; i < mesh.size(); ++i) {
          e = std::max(e, norm(rec[static_cast<std::size_t>(j)][i] - w.partial(j)[i]));
        }
      }
      out[name] = e / safe_scale(max_norm(w));
    }
    return out;
  });
  for (const auto& name : config.densities) {
    gate_finest(report, config, name, "gradient-recovery", 1e-4);
    if (report.results.size() > 1) gate_order(report, config, name, "gradient-recovery");
  }
  return report;
}

// ----------------------------------------------------------------- registry

enum class Mesh { None, Circle, Surface };

struct Entry {
  const char* name;
  Mesh mesh;
  bool study;  // default is a refinement study rather than one resolution
  std::vector<std::string> densities;
  bool offsets;
  ExperimentReport (*run)(const ExperimentConfig&);
};

const std::vector<Entry>& registry() {
  static const std::vector<Entry> entries = {
      {"algebra", Mesh::None, false, {}, false, algebra},
      {"cauchy-constant", Mesh::Surface, false, {}, false, cauchy_constant},
      {"kernel-identities", Mesh::None, false, {}, false, kernel_identities},
      {"plemelj0", Mesh::Surface, true, {"x1sq"}, true, plemelj0},
      {"plemelj1", Mesh::Surface, true, {"x1sq"}, true, plemelj1},
      {"involution", Mesh::Surface, true, {"const", "x1", "x1sq", "E1pole", "harmonic:x1"}, false, involution},
      {"idsj", Mesh::Surface, false, registry_densities(), false, idsj},
      {"projections", Mesh::Surface, true, {"poly:7"}, false, projections},
      {"hardy-plus", Mesh::Surface, true, {"harmonic:x1"}, false, hardy_plus},
      {"hardy-minus", Mesh::Surface, true, {}, false, hardy_minus},
      {"jump", Mesh::Surface, true, {"x1sq"}, true, jump},
      {"decay", Mesh::Surface, true, {"x1sq"}, false, decay},
      {"seminorm", Mesh::Surface, true, {"x1sq"}, false, seminorm},
      {"circle-baseline", Mesh::Circle, false, {}, false, circle_baseline},
      {"gradient-recovery", Mesh::Surface, true, {"x1", "x1sq", "E1pole"}, false, gradient_recovery},
  };
  return entries;
}

std::vector<Resolution> default_levels(SurfaceKind kind, bool study) {
  switch (kind) {
    case SurfaceKind::Sphere:
      if (!study) return {{64, 128}};
      return {{16, 32}, {32, 64}, {64, 128}};
    case SurfaceKind::Torus:
      if (!study) return {{128, 64}};
      return {{32, 16}, {64, 32}, {128, 64}};
    case SurfaceKind::Circle: return {{64, 1}};
  }
  return {};
}

ExperimentConfig effective_config(const ExperimentConfig& config, const Entry& entry) {
  ExperimentConfig c = config;
  switch (entry.mesh) {
    case Mesh::None:
      c.surface.reset();
      if (!c.resolutions.empty()) throw UsageError(c.experiment + " takes no resolution");
      break;
    case Mesh::Circle:
      if (c.surface && *c.surface != SurfaceKind::Circle) throw UsageError(c.experiment + " runs on the circle");
      c.surface = SurfaceKind::Circle;
      break;
    case Mesh::Surface:
      if (!c.surface) c.surface = SurfaceKind::Sphere;
      if (*c.surface == SurfaceKind::Circle) {
        throw UnsupportedError(c.experiment + " needs a surface in R^3");
      }
      break;
  }
  if (c.surface == SurfaceKind::Torus) {
    c.params.try_emplace("R", 2.0);
    c.params.try_emplace("r", 1.0);
  }
  if (entry.mesh != Mesh::None && c.resolutions.empty()) {
    c.resolutions = default_levels(*c.surface, entry.study);
    if (std::string(entry.name) == "cauchy-constant") {
      c.resolutions = {c.surface == SurfaceKind::Torus ? Resolution{64, 32} : Resolution{32, 64}};
    }
  }
  if (c.densities.empty()) {
    c.densities = entry.densities;
    if (std::string(entry.name) == "hardy-minus") {
      c.densities = {c.surface == SurfaceKind::Torus ? "E1pole:2,0,0.3" : "E1pole:0,0,0.3"};
    }
  }
  if (entry.offsets && c.deltas.empty()) c.deltas = {0.1, 0.05};
  if (!entry.offsets && !c.deltas.empty()) throw UsageError(c.experiment + " takes no offsets");
  if (entry.offsets) {
    const double reach = c.surface == SurfaceKind::Torus ? c.params.at("r") : 1.0;
    for (std::size_t k = 0; k < c.resolutions.size(); ++k) {
      for (double d : level_deltas(c, k)) {
        if (d >= reach) throw UsageError("offset " + std::to_string(d) + " exceeds the surface reach");
      }
    }
  }
  c.validate();
  return c;
}

}  // namespace

std::vector<std::string> experiment_names() {
  std::vector<std::string> names;
  for (const auto& e : registry()) names.emplace_back(e.name);
  return names;
}

ExperimentReport run_experiment(const ExperimentConfig& config) {
  const auto& entries = registry();
  const auto it = std::find_if(entries.begin(), entries.end(),
                               [&](const Entry& e) { return config.experiment == e.name; });
  if (it == entries.end()) throw UsageError("unknown experiment '" + config.experiment + "'");
  return it->run(effective_config(config, *it));
}

}  // namespace cliffbie
