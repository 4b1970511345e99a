#include <cmath>
#include <numbers>

#include "cliffbie/errors.hpp"
#include "cliffbie/harness.hpp"

namespace cliffbie {

std::complex<double> complex_singular_circle(std::span<const std::complex<double>> phi,
                                             std::size_t t) {
  using namespace std::complex_literals;
  const std::size_t n = phi.size();
  if (n < 8) throw UsageError("the circle rule needs at least 8 nodes");
  if (t >= n) throw UsageError("node index out of range");
  const double step = 2.0 * std::numbers::pi / static_cast<double>(n);
  auto zeta = [&](std::size_t k) { return std::polar(1.0, step * static_cast<double>(k)); };

  // d phi / d theta at t from the discrete Fourier series; the Nyquist mode
  // has no derivative that is real on the grid and is dropped.
  std::complex<double> dphi = 0.0;
  const auto half = static_cast<long>(n / 2);
  for (long m = -half + 1; m < half; ++m) {
    if (m == 0) continue;
    std::complex<double> c = 0.0;
    for (std::size_t k = 0; k < n; ++k) c += phi[k] * std::polar(1.0, -step * m * static_cast<double>(k));
    c /= static_cast<double>(n);
    dphi += 1i * static_cast<double>(m) * c * std::polar(1.0, step * m * static_cast<double>(t));
  }

  const double dn = static_cast<double>(n);
  std::complex<double> sum = 0.0;
  const auto zt = zeta(t);
  for (std::size_t k = 0; k < n; ++k) {
    if (k == t) continue;
    const auto zk = zeta(k);
    sum += zk * (phi[k] - phi[t]) / (zk - zt);
  }
  return phi[t] + (2.0 / dn) * sum + 2.0 / (1i * dn) * dphi;
}

}  // namespace cliffbie
