#include "ringxfer/analytic.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace ringxfer::analytic {

namespace {

constexpr double kRescaleAbove = 1e250;
constexpr double kRescaleBy = 1e-250;

void check_lambda(std::size_t lambda) {
  if (lambda < 3 || lambda % 2 == 0)
    throw std::invalid_argument("gaussian approximant needs odd lambda >= 3");
}

}  // namespace

double bessel_j(int order, double x) {
  if (order < 0 || order > 1000) throw std::out_of_range("bessel order outside [0, 1000]");
  if (!(x >= 0.0) || x > 1e4) throw std::out_of_range("bessel argument outside [0, 1e4]");
  if (x == 0.0) return order == 0 ? 1.0 : 0.0;

  // Start well above both the order and the turning point x so the
  // recessive solution dominates by the time the recurrence reaches `order`.
  const double top = std::max(static_cast<double>(order), x);
  int start = static_cast<int>(top + 30.0 + std::sqrt(60.0 * top));
  start += start % 2;

  const double two_over_x = 2.0 / x;
  double next = 0.0;     // J_{k+1}
  double current = 1.0;  // J_k, unnormalized
  double even_sum = 0.0;
  double wanted = 0.0;
  for (int k = start; k > 0; --k) {
    const double prev = static_cast<double>(k) * two_over_x * current - next;
    next = current;
    current = prev;  // now J_{k-1}
    if (std::abs(current) > kRescaleAbove) {
      current *= kRescaleBy;
      next *= kRescaleBy;
      even_sum *= kRescaleBy;
      wanted *= kRescaleBy;
    }
    if ((k - 1) % 2 == 0 && k - 1 > 0) even_sum += current;
    if (k - 1 == order) wanted = current;
  }
  // current = J_0; normalization J_0 + 2 sum_{k>=1} J_{2k} = 1.
  const double norm = current + 2.0 * even_sum;
  return wanted / norm;
}

double atomic_fidelity_limit(long d, double w, double t) {
  const double j = bessel_j(static_cast<int>(std::labs(d)), std::abs(2.0 * w * t));
  return j * j;
}

double GaussianApprox::operator()(double d) const {
  const double shift = d + drift;
  return amplitude * std::exp(-shift * shift / (2.0 * variance));
}

GaussianApprox gaussian_fidelity_approx(std::size_t lambda, double w, double theta,
                                        double t) {
  check_lambda(lambda);
  const double lam2m1 = static_cast<double>(lambda * lambda) - 1.0;
  const double c = std::cos(theta);
  const double spread = lam2m1 * lam2m1 + 144.0 * w * w * t * t * c * c;
  GaussianApprox g;
  g.amplitude = 3.0 * static_cast<double>(lambda * lambda) /
                (std::numbers::pi * std::sqrt(spread));
  g.variance = spread / (12.0 * lam2m1);
  g.drift = 2.0 * w * t * std::sin(theta);
  g.kind = ApproxKind::fidelity;
  return g;
}

GaussianApprox gaussian_probability_approx(std::size_t lambda, double w, double theta,
                                           double t) {
  check_lambda(lambda);
  const double lam2m1 = static_cast<double>(lambda * lambda) - 1.0;
  const double c = std::cos(theta);
  const double spread = lam2m1 * lam2m1 + 576.0 * w * w * t * t * c * c;
  GaussianApprox g;
  g.amplitude = 6.0 * static_cast<double>(lambda) / (std::numbers::pi * std::sqrt(spread));
  g.variance = spread / (24.0 * lam2m1);
  g.drift = 2.0 * w * t * std::sin(theta);
  g.kind = ApproxKind::probability;
  return g;
}

double gaussian_fidelity(std::size_t lambda, double d, double w, double theta, double t) {
  return gaussian_fidelity_approx(lambda, w, theta, t)(d);
}

double gaussian_probability(std::size_t lambda, double d, double w, double theta,
                            double t) {
  return gaussian_probability_approx(lambda, w, theta, t)(d);
}

double peak_time_theta0(std::size_t lambda, double d, double w) {
  const double lam2m1 = static_cast<double>(lambda * lambda) - 1.0;
  const double radicand = lam2m1 * (12.0 * d * d - lam2m1);
  if (!(radicand > 0.0))
    throw std::domain_error("receiver lies inside the initial packet (12 d^2 <= lambda^2 - 1)");
  return std::sqrt(radicand) / (12.0 * w);
}

double peak_time_linear(double d, double w) {
  if (!(w > 0.0)) throw std::invalid_argument("hopping must be positive");
  return d / (2.0 * w);
}

double group_velocity(double w, double theta) { return -2.0 * w * std::sin(theta); }

}  // namespace ringxfer::analytic
