#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "ringxfer/sweep.hpp"
#include "test_support.hpp"

using namespace ringxfer;
using ringxfer::testing::kPi;

namespace {

SweepSpec theta_spec(long d, std::vector<double> thetas, PeakRule rule = PeakRule::first_local) {
  SweepSpec spec;
  spec.config = RingConfig(500);
  spec.prep = Square{0, 5};
  spec.receiver = d;
  spec.thetas = std::move(thetas);
  spec.rule = rule;
  return spec;
}

SweepSpec width_spec(long d, double theta, std::vector<std::size_t> widths) {
  SweepSpec spec;
  spec.config = RingConfig(500, 1.0, theta);
  spec.receiver = d;
  spec.half_widths = std::move(widths);
  return spec;
}

}  // namespace

TEST_CASE("theta sweep") {
  SUBCASE("ordering of the three reference phases at d = 60") {
    const auto r = sweep_theta(theta_spec(60, {0.0, -kPi / 4.0, -kPi / 2.0}, PeakRule::global));
    REQUIRE(r.rows.size() == 3);
    CHECK(r.rows[2].f_star > r.rows[1].f_star);
    CHECK(r.rows[1].f_star > r.rows[0].f_star);
    CHECK(r.best == 2);
    CHECK(r.rows[1].parameter == -kPi / 4.0);
  }
  SUBCASE("d = 0 peaks at t = 0 with unit fidelity") {
    const auto r = sweep_theta(theta_spec(0, {0.0, -kPi / 4.0, -kPi / 2.0, 1.0}));
    for (const auto& row : r.rows) {
      CHECK(row.t_star == 0.0);
      CHECK(row.f_star == doctest::Approx(1.0).epsilon(1e-12));
    }
    // All rows tie; the smallest |theta| wins.
    CHECK(r.best == 0);
  }
  SUBCASE("dense grid argmax lies within one step of -pi/2") {
    std::vector<double> grid;
    for (int k = 0; k <= 32; ++k) grid.push_back(-kPi + kPi * k / 32.0);
    const auto r = sweep_theta(theta_spec(60, grid));
    const double step = kPi / 32.0;
    CHECK(std::abs(r.rows[r.best].parameter + kPi / 2.0) <= step + 1e-12);
    for (const auto& row : r.rows) {
      CHECK(row.f_star >= 0.0);
      CHECK(row.f_star <= 1.0);
    }
  }
  SUBCASE("ties prefer the smaller |theta|, then the earlier grid point") {
    const auto r = sweep_theta(theta_spec(0, {-1.0, 0.5, -0.5}));
    CHECK(r.best == 1);
    const auto r2 = sweep_theta(theta_spec(0, {-0.5, 0.5}));
    CHECK(r2.best == 0);
  }
  SUBCASE("mirror symmetry under theta -> -theta, d -> -d") {
    const std::vector<double> grid{0.0, -0.4, -kPi / 4.0, -kPi / 2.0, -2.5};
    std::vector<double> mirrored;
    for (double t : grid) mirrored.push_back(-t);
    const auto a = sweep_theta(theta_spec(45, grid));
    const auto b = sweep_theta(theta_spec(-45, mirrored));
    for (std::size_t i = 0; i < grid.size(); ++i) {
      CHECK(a.rows[i].f_star == doctest::Approx(b.rows[i].f_star).epsilon(1e-12));
      CHECK(a.rows[i].t_star == doctest::Approx(b.rows[i].t_star).epsilon(1e-9));
    }
  }
  SUBCASE("deterministic") {
    const auto spec = theta_spec(30, {0.0, -0.3, -0.9, -kPi / 2.0, -2.0});
    const auto a = sweep_theta(spec);
    const auto b = sweep_theta(spec);
    REQUIRE(a.rows.size() == b.rows.size());
    for (std::size_t i = 0; i < a.rows.size(); ++i) {
      CHECK(a.rows[i].t_star == b.rows[i].t_star);
      CHECK(a.rows[i].f_star == b.rows[i].f_star);
      CHECK(a.rows[i].kind == b.rows[i].kind);
    }
    CHECK(a.best == b.best);
  }
  SUBCASE("rows agree with standalone observables calls") {
    const auto spec = theta_spec(30, {0.0, -kPi / 4.0, -kPi / 2.0});
    const auto r = sweep_theta(spec);
    const double t_max = no_wrap_horizon(spec.config, spec.prep, 30);
    for (std::size_t i = 0; i < r.rows.size(); ++i) {
      const auto config = spec.config.with_phase(spec.thetas[i]);
      const auto direct = first_peak(
          fidelity_series(config, spec.prep, 30, time_grid(t_max, default_time_step(config))));
      CHECK(r.rows[i].t_star == direct.t_star);
      CHECK(r.rows[i].f_star == direct.f_star);
      CHECK(r.rows[i].f_star == doctest::Approx(fidelity(config, spec.prep, 30, r.rows[i].t_star)).epsilon(1e-14));
    }
  }
  SUBCASE("errors") {
    CHECK_THROWS_AS(sweep_theta(theta_spec(60, {})), std::invalid_argument);
    auto spec = theta_spec(60, {0.0});
    spec.window.t_max = 1000.0;
    CHECK_THROWS_AS(sweep_theta(spec), HorizonError);
    spec.window.wrap = WrapPolicy::allow;
    CHECK_NOTHROW(sweep_theta(spec));
    CHECK_THROWS_AS(sweep_theta(theta_spec(250, {0.0})), std::invalid_argument);
  }
}

TEST_CASE("width sweep") {
  SUBCASE("atomic rows are insensitive to the phase") {
    const auto a = sweep_width(width_spec(30, -kPi / 2.0, {0}));
    const auto b = sweep_width(width_spec(30, 0.0, {0}));
    CHECK(std::abs(a.rows[0].f_star - b.rows[0].f_star) <= 0.02);
  }
  SUBCASE("delocalization helps at -pi/2") {
    std::vector<std::size_t> widths;
    for (std::size_t m = 0; m <= 10; ++m) widths.push_back(m);
    const auto r = sweep_width(width_spec(60, -kPi / 2.0, widths));
    REQUIRE(r.rows.size() == 11);
    CHECK(r.rows[5].parameter == 5.0);
    CHECK(r.rows[5].f_star > r.rows[0].f_star);
    CHECK(r.rows[5].f_star >= 0.75);
    CHECK(r.rows[5].f_star <= 0.9);
    CHECK(r.best > 0);
    for (const auto& row : r.rows) CHECK(row.f_star <= r.rows[r.best].f_star);
  }
  SUBCASE("width rows agree with standalone observables calls") {
    const auto spec = width_spec(40, -kPi / 4.0, {2, 7});
    const auto r = sweep_width(spec);
    const double t_max = no_wrap_horizon(spec.config, Square{0, 7}, 40);
    for (std::size_t i = 0; i < 2; ++i) {
      const Square prep{0, spec.half_widths[i]};
      const auto direct = first_peak(fidelity_series(spec.config, prep, 40, time_grid(t_max, 0.05)));
      CHECK(r.rows[i].t_star == direct.t_star);
      CHECK(r.rows[i].f_star == direct.f_star);
    }
  }
  SUBCASE("errors") {
    CHECK_THROWS_AS(sweep_width(width_spec(60, 0.0, {})), std::invalid_argument);
    CHECK_THROWS_AS(sweep_width(width_spec(60, 0.0, {63})), std::invalid_argument);
    CHECK_NOTHROW(sweep_width(width_spec(60, 0.0, {62})));
  }
}
