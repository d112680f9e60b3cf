#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "ringxfer/analytic.hpp"
#include "ringxfer/observables.hpp"
#include "test_support.hpp"

using namespace ringxfer;
using namespace ringxfer::analytic;
using ringxfer::testing::bessel_series;
using ringxfer::testing::golden_max;
using ringxfer::testing::kPi;

TEST_CASE("bessel values") {
  CHECK(bessel_j(0, 0.0) == 1.0);
  for (int n : {1, 2, 10, 500}) CHECK(bessel_j(n, 0.0) == 0.0);

  // Series oracle value, also the tabulated J_1(1) = 0.4400505857449335.
  CHECK(std::abs(bessel_series(1, 1.0) - 0.4400505857449335) < 1e-15);
  CHECK(std::abs(bessel_j(1, 1.0) - 0.4400505857449335) < 1e-10);

  SUBCASE("agrees with the power series up to x = 20") {
    double worst = 0.0;
    for (double x = 0.05; x <= 20.0; x += 0.35)
      for (int n = 0; n <= 60; ++n) worst = std::max(worst, std::abs(bessel_j(n, x) - bessel_series(n, x)));
    CHECK(worst < 1e-10);
  }
  SUBCASE("large argument follows the Hankel asymptotic expansion") {
    for (double x : {2000.0, 1e4}) {
      for (int n : {0, 1, 5}) {
        const double mu = 4.0 * n * n;
        const double p = 1.0 - (mu - 1.0) * (mu - 9.0) / (2.0 * (8.0 * x) * (8.0 * x));
        const double q = (mu - 1.0) / (8.0 * x) - (mu - 1.0) * (mu - 9.0) * (mu - 25.0) / (6.0 * std::pow(8.0 * x, 3));
        const double chi = x - (0.5 * n + 0.25) * kPi;
        const double asym = std::sqrt(2.0 / (kPi * x)) * (p * std::cos(chi) - q * std::sin(chi));
        CHECK(std::abs(bessel_j(n, x) - asym) < 1e-10);
      }
    }
  }
  SUBCASE("domain") {
    CHECK_THROWS_AS(bessel_j(-1, 1.0), std::out_of_range);
    CHECK_THROWS_AS(bessel_j(1001, 1.0), std::out_of_range);
    CHECK_THROWS_AS(bessel_j(0, -0.1), std::out_of_range);
    CHECK_THROWS_AS(bessel_j(0, 1.0001e4), std::out_of_range);
    CHECK_NOTHROW(bessel_j(1000, 1e4));
  }
}

TEST_CASE("property: bessel recurrence and sum rule") {
  double recurrence = 0.0;
  for (double x = 0.5; x <= 50.0; x += 0.25)
    for (int n = 1; n <= 100; ++n)
      recurrence = std::max(recurrence, std::abs(bessel_j(n - 1, x) + bessel_j(n + 1, x) - 2.0 * n / x * bessel_j(n, x)));
  CHECK(recurrence < 1e-9);

  for (double x : {0.5, 3.0, 17.3, 50.0, 300.0}) {
    double sum = bessel_j(0, x) * bessel_j(0, x);
    for (int n = 1; n <= static_cast<int>(x) + 80; ++n) sum += 2.0 * bessel_j(n, x) * bessel_j(n, x);
    CHECK(std::abs(sum - 1.0) < 1e-9);
  }
}

TEST_CASE("atomic fidelity limit") {
  CHECK(atomic_fidelity_limit(0, 1.0, 0.0) == 1.0);
  CHECK(atomic_fidelity_limit(-3, 1.0, 2.0) == doctest::Approx(atomic_fidelity_limit(3, 1.0, 2.0)));

  // Dense scan of the series oracle: the d = 10 maximum is at x = j'_{10,1}.
  double best_t = 0.0, best = 0.0;
  for (double t = 0.0; t <= 10.0; t += 1e-4) {
    const double j = bessel_series(10, 2.0 * t);
    if (j * j > best) best = j * j, best_t = t;
  }
  CHECK(best_t == doctest::Approx(5.8853).epsilon(1e-4));
  const double argmax = golden_max([](double t) { return atomic_fidelity_limit(10, 1.0, t); }, 0.0, 10.0);
  CHECK(std::abs(argmax - best_t) < 2e-4);

  SUBCASE("matches the exact 500-site simulation") {
    const RingConfig config(500, 1.0, 0.0);
    const auto s = fidelity_series(config, Atomic{0}, 30, time_grid(40.0, 0.1));
    double worst = 0.0;
    for (std::size_t i = 0; i < s.times.size(); ++i)
      worst = std::max(worst, std::abs(s.values[i] - atomic_fidelity_limit(30, 1.0, s.times[i])));
    CHECK(worst <= 1e-3);
  }
}

TEST_CASE("gaussian fidelity approximant") {
  const double a0 = 3.0 * 121.0 / (120.0 * kPi);
  CHECK(a0 == doctest::Approx(0.96289).epsilon(1e-4));
  CHECK(gaussian_fidelity(11, 60.0, 1.0, -kPi / 2.0, 30.0) == doctest::Approx(a0).epsilon(1e-12));
  CHECK(gaussian_fidelity(11, 0.0, 1.0, 0.7, 0.0) == doctest::Approx(a0).epsilon(1e-12));

  const auto g0 = gaussian_fidelity_approx(11, 1.0, 0.0, 0.0);
  CHECK(std::sqrt(g0.variance) == doctest::Approx(std::sqrt(10.0)).epsilon(1e-14));
  CHECK(g0.kind == ApproxKind::fidelity);

  CHECK_THROWS_AS(gaussian_fidelity(1, 0.0, 1.0, 0.0, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(gaussian_fidelity(4, 0.0, 1.0, 0.0, 1.0), std::invalid_argument);

  SUBCASE("bounded by its amplitude, touching it on the drift line") {
    for (double theta : {0.0, -kPi / 4.0, -kPi / 2.0, 1.1}) {
      for (double t : {0.0, 5.0, 40.0}) {
        const auto g = gaussian_fidelity_approx(11, 1.0, theta, t);
        for (double d = -50.0; d <= 50.0; d += 2.5) CHECK(g(d) <= g.amplitude);
        CHECK(g(-2.0 * t * std::sin(theta)) == g.amplitude);
      }
    }
  }
  SUBCASE("variances grow unless cos(theta) = 0") {
    for (double theta : {0.0, -kPi / 4.0, 2.0}) {
      double prev_f = 0.0, prev_p = 0.0;
      for (double t = 0.0; t <= 100.0; t += 5.0) {
        const double vf = gaussian_fidelity_approx(9, 1.0, theta, t).variance;
        const double vp = gaussian_probability_approx(9, 1.0, theta, t).variance;
        CHECK(vf >= prev_f);
        CHECK(vp >= prev_p);
        prev_f = vf, prev_p = vp;
      }
    }
    for (double t : {0.0, 10.0, 100.0}) {
      CHECK(gaussian_fidelity_approx(9, 1.0, -kPi / 2.0, t).variance == doctest::Approx(80.0 / 12.0));
      CHECK(gaussian_fidelity_approx(9, 1.0, -kPi / 2.0, t).amplitude ==
            doctest::Approx(3.0 * 81.0 / (80.0 * kPi)).epsilon(1e-12));
    }
  }
}

TEST_CASE("gaussian probability approximant") {
  CHECK(gaussian_probability_approx(11, 1.0, 0.0, 0.0).variance == doctest::Approx(5.0).epsilon(1e-14));
  CHECK(gaussian_probability_approx(11, 1.0, 0.0, 0.0).kind == ApproxKind::probability);
  for (double t : {0.0, 10.0, 30.0}) {
    const auto g = gaussian_probability_approx(11, 1.0, -kPi / 2.0, t);
    CHECK(g.variance == doctest::Approx(5.0).epsilon(1e-12));
    CHECK(g(2.0 * t) == g.amplitude);
    CHECK(g.amplitude == doctest::Approx(66.0 / (120.0 * kPi)).epsilon(1e-12));
  }
  CHECK(gaussian_probability(11, 3.0, 1.0, 0.0, 12.0) < gaussian_probability(11, 0.0, 1.0, 0.0, 12.0));
  CHECK_THROWS_AS(gaussian_probability(2, 0.0, 1.0, 0.0, 1.0), std::invalid_argument);
}

TEST_CASE("peak times") {
  // sqrt(120 * (12 * 900 - 120)) / 12
  CHECK(peak_time_theta0(11, 30.0, 1.0) == doctest::Approx(std::sqrt(120.0 * 10680.0) / 12.0).epsilon(1e-15));
  CHECK(peak_time_theta0(11, 30.0, 1.0) == doctest::Approx(94.34).epsilon(1e-4));
  CHECK(peak_time_theta0(11, 10.0, 1.0) == doctest::Approx(30.0).epsilon(1e-15));
  CHECK(peak_time_theta0(11, 10.0, 2.0) == doctest::Approx(15.0).epsilon(1e-15));
  CHECK_THROWS_AS(peak_time_theta0(11, 3.0, 1.0), std::domain_error);

  const double slope = std::sqrt(120.0) / std::sqrt(12.0);
  CHECK(peak_time_theta0(11, 1e5, 1.0) / 1e5 == doctest::Approx(slope).epsilon(1e-9));

  CHECK(peak_time_linear(90.0, 1.0) == 45.0);
  CHECK(peak_time_linear(0.0, 1.0) == 0.0);
  CHECK_THROWS_AS(peak_time_linear(1.0, 0.0), std::invalid_argument);

  SUBCASE("theta = 0 formula is the approximant's stationary point") {
    for (double d : {5.0, 20.0, 30.0, 75.0}) {
      const double predicted = peak_time_theta0(11, d, 1.0);
      const double found = golden_max([&](double t) { return gaussian_fidelity(11, d, 1.0, 0.0, t); }, 0.0, 4.0 * predicted);
      CHECK(std::abs(found - predicted) / predicted < 1e-6);
    }
  }
}

TEST_CASE("group velocity") {
  CHECK(group_velocity(1.0, 0.0) == 0.0);
  CHECK(group_velocity(1.0, -kPi / 2.0) == doctest::Approx(2.0));
  CHECK(group_velocity(1.0, -kPi / 4.0) == doctest::Approx(std::sqrt(2.0)));
  CHECK(group_velocity(0.5, kPi / 2.0) == doctest::Approx(-1.0));
}
