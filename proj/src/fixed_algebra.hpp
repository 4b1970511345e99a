#pragma once

// Compile-time-dimension Clifford kernels for the quadrature inner loops. The
// public Multivector type carries m at runtime; sweeps convert node data into
// these packed arrays once and dispatch on m.

#include <array>
#include <bit>
#include <cstddef>
#include <type_traits>
#include <utility>

#include "cliffbie/errors.hpp"
#include "cliffbie/multivector.hpp"

namespace cliffbie::detail {

template <int M>
struct FixedAlgebra {
  static constexpr int kSize = 1 << M;
  using Value = std::array<double, kSize>;
  using Vector = std::array<double, M>;

  static constexpr std::array<std::array<signed char, kSize>, kSize> kSigns = [] {
    std::array<std::array<signed char, kSize>, kSize> s{};
    for (int a = 0; a < kSize; ++a) {
      for (int b = 0; b < kSize; ++b) {
        s[a][b] = static_cast<signed char>(blade_sign(static_cast<Blade>(a), static_cast<Blade>(b)));
      }
    }
    return s;
  }();

  static constexpr int kEvenCount = kSize / 2;
  static constexpr std::array<int, kEvenCount> kEven = [] {
    std::array<int, kEvenCount> e{};
    int k = 0;
    for (int b = 0; b < kSize; ++b) {
      if (std::popcount(static_cast<unsigned>(b)) % 2 == 0) e[k++] = b;
    }
    return e;
  }();

  static Value from(const Multivector& a) {
    if (a.dimension() != M) throw UsageError("multivector dimension mismatch");
    Value v;
    for (int i = 0; i < kSize; ++i) v[i] = a[static_cast<Blade>(i)];
    return v;
  }

  static Multivector to(const Value& v) {
    Multivector a(M);
    for (int i = 0; i < kSize; ++i) a[static_cast<Blade>(i)] = v[i];
    return a;
  }

  static void axpy(Value& out, double s, const Value& a) {
    for (int i = 0; i < kSize; ++i) out[i] += s * a[i];
  }

  /// Product of two vectors: -u.v + sum_{a<b} (u_a v_b - u_b v_a) e_a e_b.
  static Value vector_product(const Vector& u, const Vector& v) {
    Value r{};
    double dot = 0.0;
    for (int a = 0; a < M; ++a) dot += u[a] * v[a];
    r[0] = -dot;
    for (int a = 0; a < M; ++a) {
      for (int b = a + 1; b < M; ++b) r[(1 << a) | (1 << b)] = u[a] * v[b] - u[b] * v[a];
    }
    return r;
  }

  /// out += s * k * b for an even multivector k.
  static void even_mul_add(Value& out, double s, const Value& k, const Value& b) {
    if constexpr (kUnrolled) {
      unrolled_mul_add<kEven>(out, s, k, b, std::make_index_sequence<kEvenCount>{});
    } else {
      for (int e = 0; e < kEvenCount; ++e) {
        const int i = kEven[e];
        const double ki = s * k[i];
        for (int j = 0; j < kSize; ++j) out[i ^ j] += kSigns[i][j] * ki * b[j];
      }
    }
  }

  /// out += s * u * b for a vector u.
  static void vector_mul_add(Value& out, double s, const Vector& u, const Value& b) {
    if constexpr (kUnrolled) {
      Value k{};
      for (int a = 0; a < M; ++a) k[1 << a] = u[a];
      unrolled_mul_add<kVectorBlades>(out, s, k, b, std::make_index_sequence<M>{});
    } else {
      for (int a = 0; a < M; ++a) {
        const int i = 1 << a;
        const double ui = s * u[a];
        for (int j = 0; j < kSize; ++j) out[i ^ j] += kSigns[i][j] * ui * b[j];
      }
    }
  }

  /// out += s * e_j * b (j zero-based).
  static void basis_mul_add(Value& out, double s, int j, const Value& b) {
    const int i = 1 << j;
    for (int k = 0; k < kSize; ++k) out[i ^ k] += kSigns[i][k] * s * b[k];
  }

 private:
  // Small algebras get fully unrolled products with the signs folded in.
  static constexpr bool kUnrolled = M <= 4;
  static constexpr std::array<int, M> kVectorBlades = [] {
    std::array<int, M> v{};
    for (int a = 0; a < M; ++a) v[a] = 1 << a;
    return v;
  }();

  template <int I, std::size_t... J>
  static void row_mul_add(Value& out, double ki, const Value& b, std::index_sequence<J...>) {
    ((out[I ^ J] += kSigns[I][J] * ki * b[J]), ...);
  }

  template <const auto& Blades, std::size_t... E>
  static void unrolled_mul_add(Value& out, double s, const Value& k, const Value& b,
                               std::index_sequence<E...>) {
    (row_mul_add<Blades[E]>(out, s * k[Blades[E]], b, std::make_index_sequence<kSize>{}), ...);
  }
};

inline double int_pow(double r, int n) {
  double p = 1.0;
  for (int k = 0; k < n; ++k) p *= r;
  return p;
}

/// Calls f(std::integral_constant<int, M>{}) for the runtime dimension m.
template <typename F>
decltype(auto) with_dimension(int m, F&& f) {
  switch (m) {
    case 2: return f(std::integral_constant<int, 2>{});
    case 3: return f(std::integral_constant<int, 3>{});
    case 4: return f(std::integral_constant<int, 4>{});
    case 5: return f(std::integral_constant<int, 5>{});
    case 6: return f(std::integral_constant<int, 6>{});
    case 7: return f(std::integral_constant<int, 7>{});
    case 8: return f(std::integral_constant<int, 8>{});
    default: throw UsageError("unsupported Clifford dimension");
  }
}

}  // namespace cliffbie::detail
