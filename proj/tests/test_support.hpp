// Test-only helpers and independent reference computations. Nothing here
// calls into the transform or Bessel code it is used to check.
#pragma once

#include <cmath>
#include <complex>
#include <numbers>
#include <random>
#include <vector>

#include "ringxfer/ring_core.hpp"

namespace ringxfer::testing {

inline constexpr double kPi = std::numbers::pi;

inline WavePacket random_packet(std::size_t n, std::mt19937_64& rng) {
  std::normal_distribution<double> normal;
  std::vector<cplx> g(n);
  double norm = 0.0;
  for (auto& z : g) {
    z = {normal(rng), normal(rng)};
    norm += std::norm(z);
  }
  for (auto& z : g) z /= std::sqrt(norm);
  return WavePacket(std::move(g));
}

inline double max_deviation(const WavePacket& a, const WavePacket& b) {
  double worst = 0.0;
  for (std::size_t j = 0; j < a.size(); ++j) worst = std::max(worst, std::abs(a[j] - b[j]));
  return worst;
}

/// J_n(x) from the power series sum_k (-1)^k (x/2)^{n+2k} / (k! (n+k)!),
/// summed in long double until terms stop contributing. Reliable for x <= 20.
inline double bessel_series(int n, double x) {
  const long double half = static_cast<long double>(x) / 2.0L;
  long double term = 1.0L;
  for (int i = 1; i <= n; ++i) term *= half / static_cast<long double>(i);  // (x/2)^n / n!
  long double sum = term;
  for (int k = 1; k < 500; ++k) {
    term *= -half * half / (static_cast<long double>(k) * static_cast<long double>(n + k));
    sum += term;
    if (std::abs(term) < 1e-22L * std::abs(sum) && k > static_cast<int>(half)) break;
  }
  return static_cast<double>(sum);
}

/// Direct evaluation of sum_{j=-M}^{M} e^{iqj} / sqrt(2M+1).
inline double square_spectrum_direct(std::size_t half_width, double q) {
  const auto m = static_cast<long>(half_width);
  std::complex<long double> acc{0.0L, 0.0L};
  for (long j = -m; j <= m; ++j)
    acc += std::polar(1.0L, static_cast<long double>(q) * static_cast<long double>(j));
  return static_cast<double>(acc.real() / std::sqrt(static_cast<long double>(2 * m + 1)));
}

/// Maximum of a unimodal function on [lo, hi] by golden-section search.
template <class F>
double golden_max(F f, double lo, double hi, double tol = 1e-12) {
  const double r = 0.5 * (std::sqrt(5.0) - 1.0);
  double a = lo, b = hi, c = b - r * (b - a), d = a + r * (b - a);
  double fc = f(c), fd = f(d);
  while (b - a > tol * std::max(1.0, std::abs(b))) {
    if (fc > fd) {
      b = d, d = c, fd = fc, c = b - r * (b - a), fc = f(c);
    } else {
      a = c, c = d, fc = fd, d = a + r * (b - a), fd = f(d);
    }
  }
  return 0.5 * (a + b);
}

}  // namespace ringxfer::testing
