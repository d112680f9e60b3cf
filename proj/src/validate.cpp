#include "ringxfer/validate.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include "ringxfer/analytic.hpp"
#include "ringxfer/observables.hpp"

namespace ringxfer {

namespace {

constexpr double kPi = std::numbers::pi;

CheckResult at_most(std::string name, double measured, double tolerance) {
  return {std::move(name), measured <= tolerance, measured, tolerance};
}

WavePacket random_packet(std::size_t n, std::mt19937_64& rng) {
  std::normal_distribution<double> normal;
  std::vector<cplx> g(n);
  double norm = 0.0;
  for (auto& z : g) {
    z = {normal(rng), normal(rng)};
    norm += std::norm(z);
  }
  const double scale = 1.0 / std::sqrt(norm);
  for (auto& z : g) z *= scale;
  return WavePacket(std::move(g));
}

double max_deviation(const WavePacket& a, const WavePacket& b) {
  double worst = 0.0;
  for (std::size_t j = 0; j < a.size(); ++j) worst = std::max(worst, std::abs(a[j] - b[j]));
  return worst;
}

// Golden-section search for the maximum of a unimodal f on [lo, hi].
template <class F>
double golden_max(F f, double lo, double hi) {
  const double ratio = 0.5 * (std::sqrt(5.0) - 1.0);
  double a = lo, b = hi;
  double c = b - ratio * (b - a), d = a + ratio * (b - a);
  double fc = f(c), fd = f(d);
  for (int i = 0; i < 200 && (b - a) > 1e-12 * std::max(1.0, std::abs(b)); ++i) {
    if (fc > fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - ratio * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + ratio * (b - a);
      fd = f(d);
    }
  }
  return 0.5 * (a + b);
}

SuiteResult oracle_agreement(const ValidationOptions& options) {
  SuiteResult suite{"oracle_agreement", {}};
  for (double theta : {0.0, -kPi / 4.0, -kPi / 2.0}) {
    const RingConfig config(64, 1.0, theta);
    const auto packet = prepare(config, Square{0, 5});
    const auto h = oracle::build_hamiltonian(config, options.fault);
    const auto spectral = evolve(config, packet, 10.0);
    const auto stepped = oracle::evolve_stepper(h, packet, 10.0, 1e-3);
    suite.checks.push_back(at_most("stepper_vs_spectral theta=" + std::to_string(theta),
                                   max_deviation(spectral, stepped), 1e-7));
  }
  for (std::size_t n : {4u, 8u, 50u}) {
    for (double theta : {0.0, 0.7, -kPi / 2.0}) {
      const RingConfig config(n, 1.0, theta);
      const auto h = oracle::build_hamiltonian(config, options.fault);
      auto dense = oracle::eigenvalues(h);
      std::vector<double> band(n);
      for (std::size_t k = 0; k < n; ++k) band[k] = dispersion(config, k);
      std::sort(band.begin(), band.end());
      double spectrum_err = 0.0;
      for (std::size_t k = 0; k < n; ++k)
        spectrum_err = std::max(spectrum_err, std::abs(dense[k] - band[k]));
      double mode_err = 0.0;
      for (std::size_t k = 0; k < n; ++k)
        mode_err = std::max(mode_err, oracle::plane_wave_residual(h, config, k));
      const std::string tag = " N=" + std::to_string(n) + " theta=" + std::to_string(theta);
      suite.checks.push_back(at_most("sorted_eigenvalues" + tag, spectrum_err, 1e-10));
      suite.checks.push_back(at_most("plane_wave_eigenpairs" + tag, mode_err, 1e-10));
    }
  }
  return suite;
}

SuiteResult bessel_identities() {
  SuiteResult suite{"bessel_identities", {}};
  double recurrence_err = 0.0;
  double sum_rule_err = 0.0;
  for (double x = 0.5; x <= 50.0 + 1e-12; x += 0.5) {
    for (int n = 1; n <= 100; ++n) {
      const double lhs = analytic::bessel_j(n - 1, x) + analytic::bessel_j(n + 1, x);
      const double rhs = 2.0 * n / x * analytic::bessel_j(n, x);
      recurrence_err = std::max(recurrence_err, std::abs(lhs - rhs));
    }
    const double j0 = analytic::bessel_j(0, x);
    double sum = j0 * j0;
    for (int n = 1; n <= static_cast<int>(x) + 60; ++n) {
      const double jn = analytic::bessel_j(n, x);
      sum += 2.0 * jn * jn;
    }
    sum_rule_err = std::max(sum_rule_err, std::abs(sum - 1.0));
  }
  suite.checks.push_back(at_most("three_term_recurrence", recurrence_err, 1e-9));
  suite.checks.push_back(at_most("sum_rule", sum_rule_err, 1e-9));
  return suite;
}

SuiteResult parseval_unitarity(const ValidationOptions& options) {
  SuiteResult suite{"parseval_unitarity", {}};
  std::mt19937_64 rng(options.seed);
  std::uniform_int_distribution<std::size_t> sites(2, 512);
  std::uniform_real_distribution<double> phase(-kPi, kPi), time(0.0, 100.0);
  double parseval_err = 0.0, roundtrip_err = 0.0, unitarity_err = 0.0;
  for (int trial = 0; trial < 20; ++trial) {
    const RingConfig config(sites(rng), 1.0, phase(rng));
    const auto packet = random_packet(config.n_sites(), rng);
    const auto spectrum = to_momentum(packet);
    parseval_err = std::max(parseval_err, std::abs(spectrum.parseval_sum() - 1.0));
    roundtrip_err = std::max(roundtrip_err, max_deviation(from_momentum(spectrum), packet));
    const auto evolved = evolve(config, packet, time(rng));
    unitarity_err = std::max(unitarity_err, std::abs(evolved.norm_squared() - 1.0));
  }
  suite.checks.push_back(at_most("parseval", parseval_err, 1e-12));
  suite.checks.push_back(at_most("transform_roundtrip", roundtrip_err, 1e-12));
  suite.checks.push_back(at_most("unitarity", unitarity_err, 1e-12));
  return suite;
}

SuiteResult peak_time_consistency() {
  SuiteResult suite{"peak_time_consistency", {}};
  constexpr std::size_t lambda = 11;
  for (double d : {20.0, 30.0, 60.0}) {
    const double predicted = analytic::peak_time_theta0(lambda, d, 1.0);
    const double found = golden_max(
        [&](double t) { return analytic::gaussian_fidelity(lambda, d, 1.0, 0.0, t); }, 0.0,
        3.0 * predicted);
    suite.checks.push_back(at_most("gaussian_argmax_theta0 d=" + std::to_string(int(d)),
                                   std::abs(found - predicted) / predicted, 1e-6));
  }
  const RingConfig config(500, 1.0, -kPi / 2.0);
  for (long d : {30L, 60L, 90L}) {
    const Preparation prep = Square{0, 5};
    const auto series = fidelity_series(config, prep, d,
                                        time_grid(no_wrap_horizon(config, prep, d), 0.05));
    const auto peak = first_peak(series);
    const double predicted = analytic::peak_time_linear(static_cast<double>(d), 1.0);
    suite.checks.push_back(at_most("linear_peak_time d=" + std::to_string(d),
                                   std::abs(peak.t_star - predicted) / predicted, 0.05));
  }
  return suite;
}

}  // namespace

bool SuiteResult::passed() const {
  return std::all_of(checks.begin(), checks.end(), [](const auto& c) { return c.passed; });
}

bool ValidationReport::passed() const {
  return std::all_of(suites.begin(), suites.end(), [](const auto& s) { return s.passed(); });
}

ValidationReport run_validation(const ValidationOptions& options) {
  ValidationReport report;
  report.suites.push_back(oracle_agreement(options));
  report.suites.push_back(bessel_identities());
  report.suites.push_back(parseval_unitarity(options));
  report.suites.push_back(peak_time_consistency());
  return report;
}

}  // namespace ringxfer
