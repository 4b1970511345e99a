#include "cliffbie/densities.hpp"

#include <random>
#include <sstream>
#include <string>

#include "cliffbie/errors.hpp"
#include "cliffbie/kernels.hpp"

namespace cliffbie {

namespace {

using ScalarFn = std::function<double(std::span<const double>)>;
using ScalarPartial = std::function<double(int, std::span<const double>)>;

ReferenceFunction scalar_density(std::string name, int m, ScalarFn f, ScalarPartial df) {
  ReferenceFunction ref;
  ref.name = std::move(name);
  ref.dimension = m;
  ref.value = [m, f](std::span<const double> x) { return Multivector::scalar(m, f(x)); };
  ref.partial = [m, df](int j, std::span<const double> x) {
    return Multivector::scalar(m, df(j, x));
  };
  return ref;
}

std::vector<double> parse_center(std::string_view args, int m) {
  std::vector<double> c;
  if (args.empty()) {
    c.assign(m, 0.0);
    c.back() = 0.3;
    return c;
  }
  std::stringstream ss{std::string(args)};
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      c.push_back(std::stod(item));
    } catch (const std::exception&) {
      throw UsageError("bad pole coordinate '" + item + "'");
    }
  }
  if (static_cast<int>(c.size()) != m) throw UsageError("pole centre must have m coordinates");
  return c;
}

std::vector<double> shifted(std::span<const double> x, const std::vector<double>& c) {
  std::vector<double> d(x.begin(), x.end());
  for (std::size_t i = 0; i < d.size(); ++i) d[i] -= c[i];
  return d;
}

int coordinate_index(std::string_view s, int m) {
  int i = 0;
  try {
    i = std::stoi(std::string(s));
  } catch (const std::exception&) {
    throw UsageError("bad coordinate '" + std::string(s) + "'");
  }
  if (i < 1 || i > m) throw UsageError("coordinate index out of range");
  return i - 1;
}

ReferenceFunction harmonic(std::string_view poly, int m) {
  const std::string name = "harmonic:" + std::string(poly);
  if (poly.size() == 2 && poly[0] == 'x') {
    const int i = coordinate_index(poly.substr(1), m);
    return scalar_density(name, m, [i](auto x) { return x[i]; },
                          [i](int j, auto) { return j == i ? 1.0 : 0.0; });
  }
  if (poly == "x1x2") {
    return scalar_density(name, m, [](auto x) { return x[0] * x[1]; }, [](int j, auto x) {
      return j == 0 ? x[1] : (j == 1 ? x[0] : 0.0);
    });
  }
  if (poly == "x1sq-x2sq") {
    return scalar_density(name, m, [](auto x) { return x[0] * x[0] - x[1] * x[1]; },
                          [](int j, auto x) {
                            return j == 0 ? 2.0 * x[0] : (j == 1 ? -2.0 * x[1] : 0.0);
                          });
  }
  if (poly == "x1x2x3") {
    if (m < 3) throw UsageError("harmonic:x1x2x3 needs m >= 3");
    return scalar_density(name, m, [](auto x) { return x[0] * x[1] * x[2]; }, [](int j, auto x) {
      switch (j) {
        case 0: return x[1] * x[2];
        case 1: return x[0] * x[2];
        case 2: return x[0] * x[1];
        default: return 0.0;
      }
    });
  }
  throw UsageError("unknown harmonic polynomial '" + std::string(poly) + "'");
}

ReferenceFunction random_polynomial(std::string_view seed_text, int m) {
  std::uint64_t seed = 0;
  try {
    seed = std::stoull(std::string(seed_text));
  } catch (const std::exception&) {
    throw UsageError("poly density needs an integer seed");
  }
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> coeff(-1.0, 1.0);
  auto random_mv = [&] {
    Multivector a(m);
    for (double& c : a.coefficients()) c = coeff(rng);
    return a;
  };
  Multivector constant = random_mv();
  std::vector<Multivector> linear;
  for (int i = 0; i < m; ++i) linear.push_back(random_mv());
  // quadratic[i * m + k] multiplies x_i x_k for i <= k.
  std::vector<Multivector> quadratic(m * m, Multivector(m));
  for (int i = 0; i < m; ++i) {
    for (int k = i; k < m; ++k) quadratic[i * m + k] = random_mv();
  }

  ReferenceFunction ref;
  ref.name = "poly:" + std::string(seed_text);
  ref.dimension = m;
  ref.value = [=](std::span<const double> x) {
    Multivector f = constant;
    for (int i = 0; i < m; ++i) {
      f += linear[i] * x[i];
      for (int k = i; k < m; ++k) f += quadratic[i * m + k] * (x[i] * x[k]);
    }
    return f;
  };
  ref.partial = [=](int j, std::span<const double> x) {
    Multivector f = linear[j];
    for (int i = 0; i < m; ++i) {
      for (int k = i; k < m; ++k) {
        const double d = (i == j ? x[k] : 0.0) + (k == j ? x[i] : 0.0);
        if (d != 0.0) f += quadratic[i * m + k] * d;
      }
    }
    return f;
  };
  return ref;
}

}  // namespace

ReferenceFunction make_density(std::string_view name, int m) {
  if (m < kMinDimension || m > kMaxDimension) throw UsageError("unsupported dimension");
  const auto colon = name.find(':');
  const std::string_view head = name.substr(0, colon);
  const std::string_view args = colon == std::string_view::npos ? "" : name.substr(colon + 1);

  if (head == "const") {
    double c = 1.0;
    if (!args.empty()) {
      try {
        c = std::stod(std::string(args));
      } catch (const std::exception&) {
        throw UsageError("bad constant '" + std::string(args) + "'");
      }
    }
    return scalar_density(std::string(name), m, [c](auto) { return c; },
                          [](int, auto) { return 0.0; });
  }
  if (head == "x1sq") {
    return scalar_density("x1sq", m, [](auto x) { return x[0] * x[0]; },
                          [](int j, auto x) { return j == 0 ? 2.0 * x[0] : 0.0; });
  }
  if (head.size() >= 2 && head[0] == 'x' && args.empty()) {
    const int i = coordinate_index(head.substr(1), m);
    return scalar_density(std::string(name), m, [i](auto x) { return x[i]; },
                          [i](int j, auto) { return j == i ? 1.0 : 0.0; });
  }
  if (head == "harmonic") return harmonic(args, m);
  if (head == "monogenic") {
    if (args != "z") throw UsageError("unknown monogenic density '" + std::string(args) + "'");
    ReferenceFunction ref;
    ref.name = "monogenic:z";
    ref.dimension = m;
    ref.value = [m](std::span<const double> x) {
      return Multivector::basis_vector(m, 0) * x[1] + Multivector::basis_vector(m, 1) * x[0];
    };
    ref.partial = [m](int j, std::span<const double>) {
      if (j == 0) return Multivector::basis_vector(m, 1);
      if (j == 1) return Multivector::basis_vector(m, 0);
      return Multivector(m);
    };
    return ref;
  }
  if (head == "E1pole") {
    if (m <= 2) throw UnsupportedError("E1pole needs m > 2");
    const auto c = parse_center(args, m);
    return scalar_density(
        std::string(name), m, [c](auto x) { return laplace_kernel(shifted(x, c)); },
        [c](int j, auto x) { return laplace_kernel_partial(MultiIndex::unit(j), shifted(x, c)); });
  }
  if (head == "E0pole") {
    const auto c = parse_center(args, m);
    ReferenceFunction ref;
    ref.name = std::string(name);
    ref.dimension = m;
    ref.value = [c](std::span<const double> x) { return cauchy_kernel(shifted(x, c)); };
    ref.partial = [c](int j, std::span<const double> x) {
      return cauchy_kernel_partial(MultiIndex::unit(j), shifted(x, c));
    };
    return ref;
  }
  if (head == "poly") return random_polynomial(args, m);
  throw UsageError("unknown density '" + std::string(name) + "'");
}

std::vector<std::string> registry_densities() {
  return {"const",       "x1",          "x1sq",   "harmonic:x1", "harmonic:x1x2",
          "monogenic:z", "E1pole",      "E0pole", "poly:7"};
}

}  // namespace cliffbie
