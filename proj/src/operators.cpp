#include "cliffbie/operators.hpp"

#include <cmath>
#include <optional>
#include <string>

#include "cliffbie/errors.hpp"
#include "cliffbie/kernels.hpp"
#include "fixed_algebra.hpp"
#include "near_field.hpp"

namespace cliffbie {

namespace {

using detail::FixedAlgebra;
using detail::int_pow;
using detail::NearField;
using detail::with_dimension;

// Packed node geometry for one dimension.
template <int M>
struct Nodes {
  using A = FixedAlgebra<M>;
  std::vector<typename A::Vector> y;
  std::vector<typename A::Vector> n;
  std::vector<double> w;

  explicit Nodes(const SurfaceMesh& mesh) : y(mesh.size()), n(mesh.size()), w(mesh.size()) {
    for (std::size_t i = 0; i < mesh.size(); ++i) {
      for (int a = 0; a < M; ++a) {
        y[i][a] = mesh.node(i)[a];
        n[i][a] = mesh.normal(i)[a];
      }
      w[i] = mesh.weight(i);
    }
  }
};

template <int M>
std::vector<typename FixedAlgebra<M>::Value> pack(const NodeField& field) {
  std::vector<typename FixedAlgebra<M>::Value> out(field.size());
  for (std::size_t i = 0; i < field.size(); ++i) out[i] = FixedAlgebra<M>::from(field[i]);
  return out;
}

template <int M>
typename FixedAlgebra<M>::Vector pack_point(std::span<const double> x) {
  if (static_cast<int>(x.size()) != M) throw UsageError("point dimension mismatch");
  typename FixedAlgebra<M>::Vector v;
  for (int a = 0; a < M; ++a) v[a] = x[a];
  return v;
}

// Whitney data plus the per-node products the order-one sweeps reuse.
template <int M>
struct PackedWhitney {
  using A = FixedAlgebra<M>;
  std::vector<typename A::Value> f0;
  std::vector<std::array<typename A::Value, M>> fj;
  std::vector<typename A::Value> d;   // sum_j e_j f^(j)
  std::vector<typename A::Value> nd;  // n(y) d(y)

  PackedWhitney(const WhitneyField& w, const Nodes<M>& g)
      : f0(pack<M>(w.value())), fj(w.size()), d(w.size()), nd(w.size()) {
    for (int j = 0; j < M; ++j) {
      for (std::size_t i = 0; i < w.size(); ++i) fj[i][j] = A::from(w.partial(j)[i]);
    }
    for (std::size_t i = 0; i < w.size(); ++i) {
      d[i] = typename A::Value{};
      for (int j = 0; j < M; ++j) {
        typename A::Vector ej{};
        ej[j] = 1.0;
        A::vector_mul_add(d[i], 1.0, ej, fj[i][j]);
      }
      nd[i] = typename A::Value{};
      A::vector_mul_add(nd[i], 1.0, g.n[i], d[i]);
    }
  }
};

void check_nodes(const SurfaceMesh& mesh, std::size_t count, int m) {
  if (count != mesh.size()) throw UsageError("density does not have one value per mesh node");
  if (m != mesh.dimension()) throw UsageError("density dimension does not match the mesh");
}

void check_guard(const SurfaceMesh& mesh, std::span<const double> x) {
  if (classify_point(mesh, x) == PointClass::NearSurface) {
    throw NearSurfaceError("evaluation point lies inside the near-surface guard band");
  }
}

// Returns chi(x): 1 inside, 0 outside. Points on the surface are rejected.
double indicator(const SurfaceMesh& mesh, std::span<const double> x) {
  const double d = mesh.signed_distance(x);
  if (std::abs(d) < 1e-12) throw NearSurfaceError("evaluation point lies on the surface");
  return d < 0.0 ? 1.0 : 0.0;
}

template <int M>
void require_order_one() {
  if constexpr (M < 3) {
    throw UnsupportedError("order-one operators need m > 2");
  }
}

// Integrand w E0(y - x) n(y) v of the Cauchy layer, v the density minus its
// anchor value.
template <int M>
struct CauchyTerm {
  using A = FixedAlgebra<M>;
  typename A::Vector x;
  double sigma = unit_sphere_area(M);
  typename A::Value acc{};

  void operator()(const typename A::Vector& y, const typename A::Vector& n, double w,
                  const std::array<typename A::Value, 1>& v) {
    typename A::Vector dv;
    double r2 = 0.0;
    for (int a = 0; a < M; ++a) {
      dv[a] = y[a] - x[a];
      r2 += dv[a] * dv[a];
    }
    const double r = std::sqrt(r2);
    if (r < kKernelMinRadius) throw SingularityError("evaluation point coincides with a node");
    A::even_mul_add(acc, -w / (sigma * int_pow(r, M)), A::vector_product(dv, n), v[0]);
  }
};

// Order-one Cauchy integrand at x: the Cauchy layer on v[0] = f0 - f0(anchor)
// and the Laplace layer -w E1(y - x) n(y) d(y) with d = v[1] + d(anchor).
template <int M>
struct BimonogenicTerm {
  using A = FixedAlgebra<M>;
  typename A::Vector x;
  typename A::Value d_anchor;
  double sigma = unit_sphere_area(M);
  typename A::Value acc{};

  void operator()(const typename A::Vector& y, const typename A::Vector& n, double w,
                  const std::array<typename A::Value, 2>& v) {
    typename A::Vector dv;
    double r2 = 0.0;
    for (int a = 0; a < M; ++a) {
      dv[a] = y[a] - x[a];
      r2 += dv[a] * dv[a];
    }
    const double r = std::sqrt(r2);
    if (r < kKernelMinRadius) throw SingularityError("evaluation point coincides with a node");
    const double inv_rm = 1.0 / (sigma * int_pow(r, M));
    A::even_mul_add(acc, -w * inv_rm, A::vector_product(dv, n), v[0]);
    typename A::Value d = v[1];
    A::axpy(d, 1.0, d_anchor);
    A::vector_mul_add(acc, -w * r2 * inv_rm / (M - 2), n, d);
  }
};

// Order-one singular integrands at node z with v[0] = f0 - f0(z) and
// v[1] = d - d(z). Trace slot: E0 n (f0 - f0(z)) - E1 n d. Slot j:
//   dE0/dz_j n R(y, z) - dE1/dz_j n D_y R(y, z), where
//   dE0/dz_j = (e_j r^2 - M (y - z)(y - z)_j) / (sigma r^{M+2}),
//   dE1/dz_j = (y - z)_j / (sigma r^M),
//   R = f0 - f0(z) - sum_l (y - z)_l f^(l)(z),  D_y R = d - d(z).
template <int M>
struct SingularOneTerm {
  using A = FixedAlgebra<M>;
  using Value = typename A::Value;
  typename A::Vector z;
  std::array<Value, M> fjz;
  Value dz;
  double sigma = unit_sphere_area(M);
  Value acc0{};
  std::array<Value, M> accj{};

  void operator()(const typename A::Vector& y, const typename A::Vector& n, double w,
                  const std::array<Value, 2>& v) {
    typename A::Vector dv;
    double r2 = 0.0;
    for (int a = 0; a < M; ++a) {
      dv[a] = y[a] - z[a];
      r2 += dv[a] * dv[a];
    }
    const double inv_rm = 1.0 / (sigma * int_pow(std::sqrt(r2), M));

    // (y - z) n v = (y - z) (n v) keeps every product vector-by-multivector.
    Value nv{};
    A::vector_mul_add(nv, 1.0, n, v[0]);
    A::vector_mul_add(acc0, -w * inv_rm, dv, nv);
    Value ndr{};
    A::vector_mul_add(ndr, 1.0, n, v[1]);
    A::axpy(acc0, -w * r2 * inv_rm / (M - 2), ndr);
    A::vector_mul_add(acc0, -w * r2 * inv_rm / (M - 2), n, dz);

    // (e_j r^2 - M (y - z)(y - z)_j) n R = r^2 e_j (n R) - M (y - z)_j (y - z)(n R).
    Value rem = v[0];
    for (int l = 0; l < M; ++l) A::axpy(rem, -dv[l], fjz[l]);
    Value u{};
    A::vector_mul_add(u, 1.0, n, rem);
    Value q{};
    A::vector_mul_add(q, 1.0, dv, u);

    const double s0 = w * inv_rm / r2;
    for (int j = 0; j < M; ++j) {
      A::basis_mul_add(accj[j], s0 * r2, j, u);
      A::axpy(accj[j], -s0 * M * dv[j], q);
      A::axpy(accj[j], -w * dv[j] * inv_rm, ndr);
    }
  }
};

template <int M, std::size_t K>
using FieldRefs = std::array<const std::vector<typename FixedAlgebra<M>::Value>*, K>;

// Sum of term(y_i, n_i, w_i, fields_i - fields_anchor) over all nodes except
// `skip`.
template <int M, std::size_t K, typename Term>
void node_sum(const Nodes<M>& g, const FieldRefs<M, K>& fields, std::size_t anchor,
              std::size_t skip, Term& term) {
  using A = FixedAlgebra<M>;
  std::array<typename A::Value, K> v;
  for (std::size_t i = 0; i < g.w.size(); ++i) {
    if (i == skip) continue;
    for (std::size_t k = 0; k < K; ++k) {
      v[k] = (*fields[k])[i];
      A::axpy(v[k], -1.0, (*fields[k])[anchor]);
    }
    term(g.y[i], g.n[i], g.w[i], v);
  }
}

// Near-field correction around `centre` (see near_field.hpp).
template <int M, std::size_t K, typename Term>
void near_field_correction(const NearField& nf, const Nodes<M>& g, const FieldRefs<M, K>& fields,
                           std::size_t centre, Term& term) {
  using A = FixedAlgebra<M>;
  constexpr int S = A::kSize;
  const auto patch = nf.patch(centre);

  const auto rows = static_cast<Eigen::Index>(patch.nodes.size());
  Eigen::MatrixXd values(rows, static_cast<Eigen::Index>(K * S));
  for (Eigen::Index r = 0; r < rows; ++r) {
    const std::size_t i = patch.nodes[static_cast<std::size_t>(r)];
    for (std::size_t k = 0; k < K; ++k) {
      for (int c = 0; c < S; ++c) {
        values(r, static_cast<Eigen::Index>(k * S + c)) =
            (*fields[k])[i][c] - (*fields[k])[centre][c];
      }
    }
  }
  Eigen::MatrixXd at_points;
  Eigen::MatrixXd at_nodes;
  nf.model(patch, values, at_points, at_nodes);

  std::array<typename A::Value, K> v;
  auto row_values = [&](const Eigen::MatrixXd& m, Eigen::Index r) {
    for (std::size_t k = 0; k < K; ++k) {
      for (int c = 0; c < S; ++c) v[k][c] = m(r, static_cast<Eigen::Index>(k * S + c));
    }
  };
  typename A::Vector y;
  typename A::Vector n;
  for (std::size_t p = 0; p < patch.point.size(); ++p) {
    for (int a = 0; a < M; ++a) {
      y[a] = patch.point[p][a];
      n[a] = patch.normal[p][a];
    }
    row_values(at_points, static_cast<Eigen::Index>(p));
    term(y, n, patch.weight[p], v);
  }
  for (Eigen::Index r = 0; r < rows; ++r) {
    const std::size_t i = patch.nodes[static_cast<std::size_t>(r)];
    row_values(at_nodes, r);
    term(g.y[i], g.n[i], -patch.node_weight[static_cast<std::size_t>(r)], v);
  }
}

std::optional<NearField> make_near_field(const SurfaceMesh& mesh, const NearFieldRule& rule) {
  if (!rule.enabled || !mesh.has_local_charts()) return std::nullopt;
  return NearField(mesh, rule);
}

// -sum_i w_i E1(y_i - x) n_i d_i
template <int M>
typename FixedAlgebra<M>::Value laplace_layer(const Nodes<M>& g, const PackedWhitney<M>& p,
                                              const typename FixedAlgebra<M>::Vector& x) {
  using A = FixedAlgebra<M>;
  const double sigma = unit_sphere_area(M);
  typename A::Value acc{};
  for (std::size_t i = 0; i < g.w.size(); ++i) {
    double r2 = 0.0;
    for (int a = 0; a < M; ++a) r2 += (g.y[i][a] - x[a]) * (g.y[i][a] - x[a]);
    const double r = std::sqrt(r2);
    if (r < kKernelMinRadius) throw SingularityError("evaluation point coincides with a node");
    A::axpy(acc, -g.w[i] / ((M - 2) * sigma * int_pow(r, M - 2)), p.nd[i]);
  }
  return acc;
}

// sum_i w_i E0(y_i - x) n_i phi_i, no correction (x away from the surface).
template <int M>
typename FixedAlgebra<M>::Value cauchy_sum(const Nodes<M>& g,
                                           const std::vector<typename FixedAlgebra<M>::Value>& phi,
                                           const typename FixedAlgebra<M>::Vector& x) {
  CauchyTerm<M> term{x};
  std::array<typename FixedAlgebra<M>::Value, 1> v;
  for (std::size_t i = 0; i < g.w.size(); ++i) {
    v[0] = phi[i];
    term(g.y[i], g.n[i], g.w[i], v);
  }
  return term.acc;
}

// int E0(y - x) n (phi - phi_anchor) with the near-field correction around
// the anchor.
template <int M>
typename FixedAlgebra<M>::Value anchored_cauchy(const Nodes<M>& g, const NearField* nf,
                                                const std::vector<typename FixedAlgebra<M>::Value>& phi,
                                                const typename FixedAlgebra<M>::Vector& x,
                                                std::size_t anchor) {
  CauchyTerm<M> term{x};
  const FieldRefs<M, 1> fields{&phi};
  node_sum<M, 1>(g, fields, anchor, g.w.size(), term);
  if (nf) near_field_correction<M, 1>(*nf, g, fields, anchor, term);
  return term.acc;
}

// 2 p.v. int E0(y - y_z) n (phi - phi_z) + phi_z
template <int M>
typename FixedAlgebra<M>::Value singular_at(const Nodes<M>& g, const NearField* nf,
                                            const std::vector<typename FixedAlgebra<M>::Value>& phi,
                                            std::size_t z) {
  using A = FixedAlgebra<M>;
  CauchyTerm<M> term{g.y[z]};
  const FieldRefs<M, 1> fields{&phi};
  node_sum<M, 1>(g, fields, z, z, term);
  if (nf) near_field_correction<M, 1>(*nf, g, fields, z, term);
  typename A::Value out = phi[z];
  A::axpy(out, 2.0, term.acc);
  return out;
}

template <int M>
void bimonogenic_singular_at(const Nodes<M>& g, const NearField* nf, const PackedWhitney<M>& p,
                             std::size_t z, typename FixedAlgebra<M>::Value& out0,
                             std::array<typename FixedAlgebra<M>::Value, M>& outj) {
  using A = FixedAlgebra<M>;
  SingularOneTerm<M> term{g.y[z], p.fj[z], p.d[z]};
  const FieldRefs<M, 2> fields{&p.f0, &p.d};
  node_sum<M, 2>(g, fields, z, z, term);
  if (nf) near_field_correction<M, 2>(*nf, g, fields, z, term);
  out0 = p.f0[z];
  A::axpy(out0, 2.0, term.acc0);
  for (int j = 0; j < M; ++j) {
    outj[j] = p.fj[z][j];
    A::axpy(outj[j], 2.0, term.accj[j]);
  }
}

}  // namespace

Multivector cauchy_transform(const SurfaceMesh& mesh, const NodeField& density,
                             std::span<const double> x) {
  check_nodes(mesh, density.size(), density.empty() ? 0 : density[0].dimension());
  check_guard(mesh, x);
  return with_dimension(mesh.dimension(), [&](auto dim) {
    constexpr int M = decltype(dim)::value;
    const Nodes<M> g(mesh);
    return FixedAlgebra<M>::to(cauchy_sum<M>(g, pack<M>(density), pack_point<M>(x)));
  });
}

Multivector cauchy_transform_anchored(const SurfaceMesh& mesh, const NodeField& density,
                                      std::span<const double> x, std::size_t anchor,
                                      const NearFieldRule& rule) {
  check_nodes(mesh, density.size(), density.empty() ? 0 : density[0].dimension());
  if (anchor >= mesh.size()) throw UsageError("anchor node out of range");
  const double chi = indicator(mesh, x);
  const auto nf = make_near_field(mesh, rule);
  return with_dimension(mesh.dimension(), [&](auto dim) {
    constexpr int M = decltype(dim)::value;
    using A = FixedAlgebra<M>;
    const Nodes<M> g(mesh);
    const auto phi = pack<M>(density);
    auto acc = anchored_cauchy<M>(g, nf ? &*nf : nullptr, phi, pack_point<M>(x), anchor);
    A::axpy(acc, chi, phi[anchor]);
    return A::to(acc);
  });
}

Multivector singular_transform(const SurfaceMesh& mesh, const NodeField& density, std::size_t z,
                               const NearFieldRule& rule) {
  check_nodes(mesh, density.size(), density.empty() ? 0 : density[0].dimension());
  if (z >= mesh.size()) throw UsageError("node index out of range");
  const auto nf = make_near_field(mesh, rule);
  return with_dimension(mesh.dimension(), [&](auto dim) {
    constexpr int M = decltype(dim)::value;
    const Nodes<M> g(mesh);
    return FixedAlgebra<M>::to(singular_at<M>(g, nf ? &*nf : nullptr, pack<M>(density), z));
  });
}

NodeField singular_transform(const SurfaceMesh& mesh, const NodeField& density,
                             const NearFieldRule& rule) {
  check_nodes(mesh, density.size(), density.empty() ? 0 : density[0].dimension());
  const auto nf = make_near_field(mesh, rule);
  return with_dimension(mesh.dimension(), [&](auto dim) {
    constexpr int M = decltype(dim)::value;
    const Nodes<M> g(mesh);
    const auto phi = pack<M>(density);
    NodeField out;
    out.reserve(mesh.size());
    for (std::size_t z = 0; z < mesh.size(); ++z) {
      out.push_back(FixedAlgebra<M>::to(singular_at<M>(g, nf ? &*nf : nullptr, phi, z)));
    }
    return out;
  });
}

Multivector bimonogenic_cauchy_transform(const SurfaceMesh& mesh, const WhitneyField& w,
                                         std::span<const double> x) {
  check_nodes(mesh, w.size(), w.dimension());
  check_guard(mesh, x);
  return with_dimension(mesh.dimension(), [&](auto dim) {
    constexpr int M = decltype(dim)::value;
    require_order_one<M>();
    using A = FixedAlgebra<M>;
    const Nodes<M> g(mesh);
    const PackedWhitney<M> p(w, g);
    const auto px = pack_point<M>(x);
    auto acc = cauchy_sum<M>(g, p.f0, px);
    A::axpy(acc, 1.0, laplace_layer<M>(g, p, px));
    return A::to(acc);
  });
}

Multivector bimonogenic_cauchy_transform_anchored(const SurfaceMesh& mesh, const WhitneyField& w,
                                                  std::span<const double> x, std::size_t anchor,
                                                  const NearFieldRule& rule) {
  check_nodes(mesh, w.size(), w.dimension());
  if (anchor >= mesh.size()) throw UsageError("anchor node out of range");
  const double chi = indicator(mesh, x);
  const auto nf = make_near_field(mesh, rule);
  return with_dimension(mesh.dimension(), [&](auto dim) {
    constexpr int M = decltype(dim)::value;
    require_order_one<M>();
    using A = FixedAlgebra<M>;
    const Nodes<M> g(mesh);
    const PackedWhitney<M> p(w, g);
    BimonogenicTerm<M> term{pack_point<M>(x), p.d[anchor]};
    const FieldRefs<M, 2> fields{&p.f0, &p.d};
    // The polar integral covers the anchor's own cell, so its node drops out.
    node_sum<M, 2>(g, fields, anchor, nf ? anchor : g.w.size(), term);
    if (nf) near_field_correction<M, 2>(*nf, g, fields, anchor, term);
    A::axpy(term.acc, chi, p.f0[anchor]);
    return A::to(term.acc);
  });
}

WhitneyValue bimonogenic_singular_transform(const SurfaceMesh& mesh, const WhitneyField& w,
                                            std::size_t z, const NearFieldRule& rule) {
  check_nodes(mesh, w.size(), w.dimension());
  if (z >= mesh.size()) throw UsageError("node index out of range");
  const auto nf = make_near_field(mesh, rule);
  return with_dimension(mesh.dimension(), [&](auto dim) {
    constexpr int M = decltype(dim)::value;
    require_order_one<M>();
    using A = FixedAlgebra<M>;
    const Nodes<M> g(mesh);
    const PackedWhitney<M> p(w, g);
    typename A::Value v0;
    std::array<typename A::Value, M> vj;
    bimonogenic_singular_at<M>(g, nf ? &*nf : nullptr, p, z, v0, vj);
    WhitneyValue out{A::to(v0), {}};
    for (int j = 0; j < M; ++j) out.partials.push_back(A::to(vj[j]));
    return out;
  });
}

WhitneyField bimonogenic_singular_transform(const SurfaceMesh& mesh, const WhitneyField& w,
                                            const NearFieldRule& rule) {
  check_nodes(mesh, w.size(), w.dimension());
  const auto nf = make_near_field(mesh, rule);
  return with_dimension(mesh.dimension(), [&](auto dim) {
    constexpr int M = decltype(dim)::value;
    require_order_one<M>();
    using A = FixedAlgebra<M>;
    const Nodes<M> g(mesh);
    const PackedWhitney<M> p(w, g);
    NodeField value;
    std::vector<NodeField> partials(M);
    value.reserve(mesh.size());
    typename A::Value v0;
    std::array<typename A::Value, M> vj;
    for (std::size_t z = 0; z < mesh.size(); ++z) {
      bimonogenic_singular_at<M>(g, nf ? &*nf : nullptr, p, z, v0, vj);
      value.push_back(A::to(v0));
      for (int j = 0; j < M; ++j) partials[j].push_back(A::to(vj[j]));
    }
    return WhitneyField(std::move(value), std::move(partials), w.alpha());
  });
}

Multivector dirac_trace_of_singular(const SurfaceMesh& mesh, const WhitneyField& w,
                                    std::size_t z, const NearFieldRule& rule) {
  return singular_transform(mesh, dirac_trace(w), z, rule);
}

WhitneyField hardy_project(HardySign sign, const WhitneyField& w, const WhitneyField& sw) {
  WhitneyField out = sign == HardySign::Plus ? w + sw : w - sw;
  out *= 0.5;
  return out;
}

WhitneyField hardy_project(HardySign sign, const SurfaceMesh& mesh, const WhitneyField& w,
                           const NearFieldRule& rule) {
  return hardy_project(sign, w, bimonogenic_singular_transform(mesh, w, rule));
}

Multivector dirac_of_cauchy_transform(const SurfaceMesh& mesh, const WhitneyField& w,
                                      std::span<const double> x) {
  return cauchy_transform(mesh, dirac_trace(w), x);
}

Multivector dirac_of_cauchy_transform_anchored(const SurfaceMesh& mesh, const WhitneyField& w,
                                               std::span<const double> x, std::size_t anchor,
                                               const NearFieldRule& rule) {
  return cauchy_transform_anchored(mesh, dirac_trace(w), x, anchor, rule);
}

Multivector laplacian_fd(const PointEvaluator& f, std::span<const double> x, double h) {
  if (!(h > 0.0)) throw UsageError("finite-difference step must be positive");
  std::vector<double> p(x.begin(), x.end());
  const Multivector centre = f(p);
  Multivector out(centre.dimension());
  for (std::size_t a = 0; a < p.size(); ++a) {
    p[a] = x[a] + h;
    Multivector plus = f(p);
    p[a] = x[a] - h;
    Multivector minus = f(p);
    p[a] = x[a];
    out += plus + minus - 2.0 * centre;
  }
  out *= 1.0 / (h * h);
  return out;
}

BoundaryLimits extrapolate_limits(const SurfaceMesh& mesh, std::size_t node, double delta1,
                                  double delta2, const PointEvaluator& f) {
  if (delta1 == delta2) throw UsageError("extrapolation needs two distinct offsets");
  const double offsets[2] = {delta1, delta2};
  const auto pairs = offset_points(mesh, node, offsets);
  auto extrapolate = [&](const Multivector& f1, const Multivector& f2) {
    return (delta1 * f2 - delta2 * f1) * (1.0 / (delta1 - delta2));
  };
  return {extrapolate(f(pairs[0].interior), f(pairs[1].interior)),
          extrapolate(f(pairs[0].exterior), f(pairs[1].exterior))};
}

std::vector<std::size_t> probe_nodes(const SurfaceMesh& mesh, std::size_t count) {
  std::vector<std::size_t> out;
  const std::size_t n = mesh.size();
  if (count == 0) return out;
  if (count >= n) {
    for (std::size_t i = 0; i < n; ++i) out.push_back(i);
    return out;
  }
  // An odd stride avoids aliasing with the power-of-two grid rows.
  std::size_t stride = std::max<std::size_t>(1, n / count);
  if (stride % 2 == 0) ++stride;
  for (std::size_t i = stride / 2; i < n; i += stride) out.push_back(i);
  return out;
}

SectionalFunction::SectionalFunction(SurfaceMesh mesh, WhitneyField data)
    : mesh_(std::move(mesh)), data_(std::move(data)) {
  check_nodes(mesh_, data_.size(), data_.dimension());
  if (mesh_.dimension() < 3) throw UnsupportedError("the jump problem needs m > 2");
}

Multivector SectionalFunction::operator()(std::span<const double> x) const {
  return bimonogenic_cauchy_transform(mesh_, data_, x);
}

Multivector SectionalFunction::dirac(std::span<const double> x) const {
  return dirac_of_cauchy_transform(mesh_, data_, x);
}

JumpSolution jump_solve(const SurfaceMesh& mesh, const WhitneyField& w, const JumpProbe& probe) {
  SectionalFunction solution(mesh, w);
  JumpReport report;
  const NodeField d = dirac_trace(w);

  for (std::size_t z : probe.nodes) {
    const auto f = extrapolate_limits(mesh, z, probe.delta1, probe.delta2, [&](auto x) {
      return bimonogenic_cauchy_transform_anchored(mesh, w, x, z);
    });
    const auto df = extrapolate_limits(mesh, z, probe.delta1, probe.delta2, [&](auto x) {
      return cauchy_transform_anchored(mesh, d, x, z);
    });
    report.value_jump = std::max(report.value_jump, norm(f.interior - f.exterior - w.value()[z]));
    report.dirac_jump = std::max(report.dirac_jump, norm(df.interior - df.exterior - d[z]));
    if (probe.check_sum) {
      const auto s = bimonogenic_singular_transform(mesh, w, z);
      report.sum_residual = std::max(report.sum_residual, norm(f.interior + f.exterior - s.value));
    }
  }

  if (!probe.far_direction.empty() && probe.far_radii.size() >= 2) {
    std::vector<double> dir = probe.far_direction;
    double len = 0.0;
    for (double c : dir) len += c * c;
    len = std::sqrt(len);
    if (len == 0.0 || static_cast<int>(dir.size()) != mesh.dimension()) {
      throw UsageError("far-field direction must be a nonzero point of the mesh dimension");
    }
    for (double& c : dir) c /= len;
    std::vector<double> x(dir.size());
    for (double radius : probe.far_radii) {
      for (std::size_t a = 0; a < x.size(); ++a) x[a] = radius * dir[a];
      report.far_value_norms.push_back(norm(solution(x)));
      report.far_dirac_norms.push_back(norm(solution.dirac(x)));
    }
    const double log_ratio = std::log(probe.far_radii.back() / probe.far_radii.front());
    report.value_decay_slope =
        std::log(report.far_value_norms.back() / report.far_value_norms.front()) / log_ratio;
    report.dirac_decay_slope =
        std::log(report.far_dirac_norms.back() / report.far_dirac_norms.front()) / log_ratio;
  }
  return {std::move(solution), report};
}

}  // namespace cliffbie
