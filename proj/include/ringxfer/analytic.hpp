#pragma once

#include <cstddef>

namespace ringxfer::analytic {

/// Bessel function of the first kind J_n(x), 0 <= n <= 1000, 0 <= x <= 1e4,
/// by Miller's downward recurrence normalized with J_0 + 2 sum J_2k = 1.
double bessel_j(int order, double x);

/// Large-ring limit of the atomic transfer fidelity, J_d(2wt)^2.
double atomic_fidelity_limit(long d, double w, double t);

enum class ApproxKind { fidelity, probability };

/// Gaussian envelope amplitude * exp(-(d + drift)^2 / (2 variance)) for a
/// square packet of lambda = 2M+1 sites, lambda >= 3.
struct GaussianApprox {
  double amplitude = 0.0;  // A(t) or B(t)
  double variance = 0.0;   // sigma_F^2 or sigma_P^2, in sites^2
  double drift = 0.0;      // 2 w t sin(theta)
  ApproxKind kind = ApproxKind::fidelity;

  double operator()(double d) const;
};

GaussianApprox gaussian_fidelity_approx(std::size_t lambda, double w, double theta,
                                        double t);
GaussianApprox gaussian_probability_approx(std::size_t lambda, double w, double theta,
                                           double t);

double gaussian_fidelity(std::size_t lambda, double d, double w, double theta, double t);
double gaussian_probability(std::size_t lambda, double d, double w, double theta,
                            double t);

/// Maximum of the theta = 0 fidelity approximant,
/// sqrt((lambda^2-1)(12 d^2 - lambda^2 + 1)) / (12 w).
/// Throws std::domain_error when 12 d^2 <= lambda^2 - 1.
double peak_time_theta0(std::size_t lambda, double d, double w);

/// d / (2w), the arrival time for linear dispersion at theta = -pi/2.
double peak_time_linear(double d, double w);

/// -2 w sin(theta)
double group_velocity(double w, double theta);

}  // namespace ringxfer::analytic
