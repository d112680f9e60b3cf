#include "ringxfer/sweep.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <functional>
#include <limits>
#include <mutex>
#include <thread>

namespace ringxfer {

namespace {

// Runs body(i) for i in [0, count) on a few worker threads. Each index writes
// only its own slot, so results do not depend on scheduling.
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& body) {
  const std::size_t workers =
      std::min<std::size_t>(count, std::max(1u, std::thread::hardware_concurrency()));
  if (workers <= 1) {
    for (std::size_t i = 0; i < count; ++i) body(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::mutex error_mutex;
  std::vector<std::jthread> pool;
  pool.reserve(workers);
  for (std::size_t w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < count; i = next++) {
        try {
          body(i);
        } catch (...) {
          std::lock_guard lock(error_mutex);
          if (!error) error = std::current_exception();
        }
      }
    });
  }
  pool.clear();  // join
  if (error) std::rethrow_exception(error);
}

long center_of(const Preparation& prep) {
  return std::visit([](const auto& p) { return p.center; }, prep);
}

SweepRow run_row(const RingConfig& config, const Preparation& prep, long d, double t_max,
                 const SweepSpec& spec, double parameter) {
  const double dt = spec.window.dt.value_or(default_time_step(config));
  const auto series = fidelity_series(config, prep, d, time_grid(t_max, dt), spec.window.wrap);
  const auto peak = first_peak(series, spec.rule);
  return {parameter, peak.t_star, peak.f_star, peak.kind};
}

}  // namespace

SweepResult sweep_theta(const SweepSpec& spec) {
  if (spec.thetas.empty()) throw std::invalid_argument("theta grid is empty");
  // The horizon does not depend on theta.
  const double t_max =
      spec.window.t_max.value_or(no_wrap_horizon(spec.config, spec.prep, spec.receiver));

  SweepResult result;
  result.rows.resize(spec.thetas.size());
  parallel_for(spec.thetas.size(), [&](std::size_t i) {
    const double theta = spec.thetas[i];
    result.rows[i] =
        run_row(spec.config.with_phase(theta), spec.prep, spec.receiver, t_max, spec, theta);
  });

  for (std::size_t i = 1; i < result.rows.size(); ++i) {
    const auto& cand = result.rows[i];
    const auto& best = result.rows[result.best];
    if (cand.f_star > best.f_star ||
        (cand.f_star == best.f_star && std::abs(cand.parameter) < std::abs(best.parameter)))
      result.best = i;
  }
  return result;
}

SweepResult sweep_width(const SweepSpec& spec) {
  if (spec.half_widths.empty()) throw std::invalid_argument("half-width grid is empty");
  const std::size_t n = spec.config.n_sites();
  const long center = center_of(spec.prep);
  std::size_t widest = 0;
  for (auto m : spec.half_widths) {
    if (4 * (2 * m + 1) > n) throw std::invalid_argument("half-width grid needs 2M+1 <= N/4");
    widest = std::max(widest, m);
  }
  const double t_max = spec.window.t_max.value_or(
      no_wrap_horizon(spec.config, Square{center, widest}, spec.receiver));

  SweepResult result;
  result.rows.resize(spec.half_widths.size());
  parallel_for(spec.half_widths.size(), [&](std::size_t i) {
    const auto m = spec.half_widths[i];
    result.rows[i] = run_row(spec.config, Square{center, m}, spec.receiver, t_max, spec,
                             static_cast<double>(m));
  });

  for (std::size_t i = 1; i < result.rows.size(); ++i)
    if (result.rows[i].f_star > result.rows[result.best].f_star) result.best = i;
  return result;
}

}  // namespace ringxfer
