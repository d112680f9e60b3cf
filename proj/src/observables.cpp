#include "ringxfer/observables.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <string>

namespace ringxfer {

std::vector<double> probability_distribution(const WavePacket& packet) {
  std::vector<double> p(packet.size());
  for (std::size_t j = 0; j < packet.size(); ++j) p[j] = std::norm(packet[j]);
  return p;
}

double no_wrap_horizon(const RingConfig& config, const Preparation& prep, long d) {
  const double span = 0.5 * static_cast<double>(config.n_sites()) -
                      static_cast<double>(std::labs(d)) -
                      static_cast<double>(half_extent(prep));
  return std::max(0.0, span / (2.0 * config.half_bandwidth()));
}

double default_time_step(const RingConfig& config) {
  return 0.05 / config.half_bandwidth();
}

void check_receiver(const RingConfig& config, long d) {
  if (2 * static_cast<std::size_t>(std::labs(d)) >= config.n_sites())
    throw std::invalid_argument("receiver offset must satisfy |d| < N/2");
}

TransferKernel::TransferKernel(const RingConfig& config, const Preparation& prep,
                               long d)
    : TransferKernel(config, prepare(config, prep), d) {}

TransferKernel::TransferKernel(const RingConfig& config, const WavePacket& packet, long d)
    : receiver_(d) {
  check_receiver(config, d);
  if (packet.size() != config.n_sites())
    throw std::invalid_argument("packet size does not match ring");
  const auto spectrum = to_momentum(packet);
  const std::size_t n = config.n_sites();
  const double inv_n = 1.0 / static_cast<double>(n);
  modes_.reserve(n);
  for (std::size_t k = 0; k < n; ++k) {
    // spectrum[N - k] multiplies e^{-i q_{N-k} j} = e^{+i q_k j}
    const double weight = std::norm(spectrum[(n - k) % n]) * inv_n;
    modes_.push_back({weight, config.momentum(k), dispersion(config, k)});
  }
}

cplx TransferKernel::amplitude(double t) const {
  const auto d = static_cast<double>(receiver_);
  cplx acc{0.0, 0.0};
  for (const auto& m : modes_) acc += m.weight * std::polar(1.0, m.momentum * d - m.energy * t);
  return acc;
}

TransferKernel::Derivatives TransferKernel::fidelity_derivatives(double t) const {
  const auto d = static_cast<double>(receiver_);
  cplx f{0.0, 0.0}, f1{0.0, 0.0}, f2{0.0, 0.0};
  for (const auto& m : modes_) {
    const cplx term = m.weight * std::polar(1.0, m.momentum * d - m.energy * t);
    f += term;
    f1 += cplx{0.0, -m.energy} * term;
    f2 += -m.energy * m.energy * term;
  }
  const double value = std::norm(f);
  const double first = 2.0 * std::real(std::conj(f) * f1);
  const double second = 2.0 * (std::norm(f1) + std::real(std::conj(f) * f2));
  return {value, first, second};
}

cplx transfer_amplitude(const RingConfig& config, const Preparation& prep, long d,
                        double t) {
  return TransferKernel(config, prep, d).amplitude(t);
}

double fidelity(const RingConfig& config, const Preparation& prep, long d, double t) {
  return std::norm(transfer_amplitude(config, prep, d, t));
}

std::vector<double> time_grid(double t_max, double dt) {
  if (!(dt > 0.0) || !std::isfinite(dt)) throw std::invalid_argument("dt must be positive");
  if (!(t_max >= 0.0) || !std::isfinite(t_max))
    throw std::invalid_argument("t_max must be non-negative");
  const auto steps = static_cast<std::size_t>(std::floor(t_max / dt * (1.0 + 1e-12) + 1e-6));
  std::vector<double> times(steps + 1);
  for (std::size_t i = 0; i <= steps; ++i) times[i] = static_cast<double>(i) * dt;
  return times;
}

FidelitySeries fidelity_series(const RingConfig& config, const Preparation& prep,
                               long d, std::vector<double> times, WrapPolicy wrap) {
  if (times.empty()) throw std::invalid_argument("empty time grid");
  for (std::size_t i = 1; i < times.size(); ++i)
    if (!(times[i] > times[i - 1]))
      throw std::invalid_argument("time grid must be strictly increasing");
  check_receiver(config, d);
  if (wrap == WrapPolicy::enforce) {
    const double horizon = no_wrap_horizon(config, prep, d);
    const double reach = std::max(std::abs(times.front()), std::abs(times.back()));
    if (reach > horizon * (1.0 + 1e-12) + 1e-12)
      throw HorizonError("time grid exceeds the no-wrap horizon t = " +
                         std::to_string(horizon));
  }

  const TransferKernel kernel(config, prep, d);
  FidelitySeries series;
  series.values.reserve(times.size());
  for (double t : times) series.values.push_back(kernel.fidelity(t));
  series.times = std::move(times);
  series.receiver = d;
  series.provenance = SeriesProvenance{config, prep};
  return series;
}

std::string_view to_string(PeakKind kind) {
  return kind == PeakKind::first_local_max ? "first-local-max" : "global-in-window";
}

std::string_view to_string(PeakRule rule) {
  return rule == PeakRule::first_local ? "first" : "global";
}

namespace {

struct Parabola {
  double t;
  double f;
};

// Vertex of the parabola through three (possibly unevenly spaced) samples.
Parabola parabolic_vertex(double t0, double f0, double t1, double f1, double t2,
                          double f2) {
  const double a = t1 - t0, b = t1 - t2;
  const double fa = f1 - f0, fb = f1 - f2;
  const double denom = a * fb - b * fa;
  if (denom == 0.0) return {t1, f1};
  double t = t1 - 0.5 * (a * a * fb - b * b * fa) / denom;
  t = std::clamp(t, t0, t2);
  // Lagrange form evaluated at the vertex.
  const double l0 = (t - t1) * (t - t2) / ((t0 - t1) * (t0 - t2));
  const double l1 = (t - t0) * (t - t2) / ((t1 - t0) * (t1 - t2));
  const double l2 = (t - t0) * (t - t1) / ((t2 - t0) * (t2 - t1));
  return {t, f0 * l0 + f1 * l1 + f2 * l2};
}

// Safeguarded Newton on dF/dt = 0 inside [lo, hi].
double polish_maximum(const TransferKernel& kernel, double guess, double lo, double hi) {
  double d_lo = kernel.fidelity_derivatives(lo).first;
  double d_hi = kernel.fidelity_derivatives(hi).first;
  if (!(d_lo > 0.0 && d_hi < 0.0)) return guess;
  double t = guess;
  for (int iter = 0; iter < 100; ++iter) {
    const auto der = kernel.fidelity_derivatives(t);
    if (der.first > 0.0) {
      lo = t;
    } else {
      hi = t;
    }
    double next = (der.second < 0.0) ? t - der.first / der.second : 0.5 * (lo + hi);
    if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
    const double step = std::abs(next - t);
    t = next;
    if (step < kPeakTimeTolerance || hi - lo < kPeakTimeTolerance) break;
  }
  return t;
}

}  // namespace

PeakResult first_peak(const FidelitySeries& series, PeakRule rule) {
  const auto& ts = series.times;
  const auto& fs = series.values;
  if (ts.size() < 3 || fs.size() != ts.size())
    throw std::invalid_argument("fidelity series needs at least 3 samples");

  std::size_t idx = fs.size();
  PeakKind kind = PeakKind::global_in_window;
  if (rule == PeakRule::first_local) {
    if (fs[0] > fs[1] && fs[0] > kPeakNoiseFloor) {
      idx = 0;
      kind = PeakKind::first_local_max;
    }
    for (std::size_t i = 1; idx == fs.size() && i + 1 < fs.size(); ++i) {
      if (fs[i] > fs[i - 1] && fs[i] > fs[i + 1] && fs[i] > kPeakNoiseFloor) {
        idx = i;
        kind = PeakKind::first_local_max;
        break;
      }
    }
  }
  if (idx == fs.size())
    idx = static_cast<std::size_t>(std::distance(fs.begin(), std::max_element(fs.begin(), fs.end())));

  PeakResult result{ts[idx], fs[idx], kind};
  if (idx == 0 || idx + 1 == fs.size()) return result;

  const auto vertex =
      parabolic_vertex(ts[idx - 1], fs[idx - 1], ts[idx], fs[idx], ts[idx + 1], fs[idx + 1]);
  result.t_star = vertex.t;
  result.f_star = vertex.f;
  if (series.provenance) {
    const TransferKernel kernel(series.provenance->config, series.provenance->prep,
                                series.receiver);
    result.t_star = polish_maximum(kernel, vertex.t, ts[idx - 1], ts[idx + 1]);
    result.f_star = kernel.fidelity(result.t_star);
  }
  return result;
}

std::vector<DistancePeak> max_fidelity_vs_distance(const RingConfig& config,
                                                   const Preparation& prep,
                                                   const std::vector<long>& d_list,
                                                   const TimeWindow& window, PeakRule rule) {
  const double dt = window.dt.value_or(default_time_step(config));
  std::vector<DistancePeak> out;
  out.reserve(d_list.size());
  for (long d : d_list) {
    const double t_max = window.t_max.value_or(no_wrap_horizon(config, prep, d));
    auto series = fidelity_series(config, prep, d, time_grid(t_max, dt), window.wrap);
    out.push_back({d, first_peak(series, rule)});
  }
  return out;
}

double center_of_mass(const std::vector<double>& probabilities, long reference) {
  const std::size_t n = probabilities.size();
  if (n < 2) throw std::invalid_argument("distribution needs at least 2 sites");
  double total = 0.0, far = 0.0, moment = 0.0;
  for (std::size_t j = 0; j < n; ++j) {
    const long off = signed_offset(site_index(static_cast<long>(j) - reference, n), n);
    const double p = probabilities[j];
    total += p;
    moment += static_cast<double>(off) * p;
    if (8 * static_cast<std::size_t>(std::labs(off)) >= 3 * n) far += p;
  }
  if (std::abs(total - 1.0) > 1e-9)
    throw std::invalid_argument("distribution does not sum to 1");
  if (far > 1e-6)
    throw std::domain_error("packet straddles the antipode; center of mass undefined");
  return moment;
}

}  // namespace ringxfer
