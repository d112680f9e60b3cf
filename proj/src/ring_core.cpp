#include "ringxfer/ring_core.hpp"

#include <fftw3.h>

#include <cmath>
#include <mutex>
#include <numbers>
#include <stdexcept>
#include <string>

namespace ringxfer {

namespace {

constexpr double kPi = std::numbers::pi;

// e^{sign * 2 pi i k / N}, k = 0..N-1
std::vector<cplx> twiddles(std::size_t n, int sign) {
  std::vector<cplx> tw(n);
  for (std::size_t k = 0; k < n; ++k) {
    const double angle = 2.0 * kPi * static_cast<double>(k) / static_cast<double>(n);
    tw[k] = {std::cos(angle), sign > 0 ? std::sin(angle) : -std::sin(angle)};
  }
  return tw;
}

// out_n = sum_j in_j e^{sign * 2 pi i n j / N}, j ascending.
std::vector<cplx> direct_dft(std::span<const cplx> in, int sign) {
  const std::size_t n = in.size();
  const auto tw = twiddles(n, sign);
  std::vector<cplx> out(n);
  for (std::size_t k = 0; k < n; ++k) {
    cplx acc{0.0, 0.0};
    std::size_t idx = 0;  // (k * j) mod n
    for (std::size_t j = 0; j < n; ++j) {
      acc += in[j] * tw[idx];
      idx += k;
      if (idx >= n) idx -= n;
    }
    out[k] = acc;
  }
  return out;
}

// FFTW planning is not thread-safe; execution on a private plan is.
std::mutex& fftw_planner_mutex() {
  static std::mutex m;
  return m;
}

std::vector<cplx> fast_dft(std::span<const cplx> in, int sign) {
  const std::size_t n = in.size();
  std::vector<cplx> buf(in.begin(), in.end());
  auto* data = reinterpret_cast<fftw_complex*>(buf.data());
  fftw_plan plan;
  {
    std::lock_guard lock(fftw_planner_mutex());
    plan = fftw_plan_dft_1d(static_cast<int>(n), data, data,
                            sign > 0 ? FFTW_BACKWARD : FFTW_FORWARD,
                            FFTW_ESTIMATE);
  }
  if (plan == nullptr) throw std::runtime_error("fftw: plan creation failed");
  fftw_execute(plan);
  {
    std::lock_guard lock(fftw_planner_mutex());
    fftw_destroy_plan(plan);
  }
  return buf;
}

std::vector<cplx> dft(std::span<const cplx> in, int sign, Transform path) {
  return path == Transform::fast ? fast_dft(in, sign) : direct_dft(in, sign);
}

double norm_squared(std::span<const cplx> v) {
  double s = 0.0;
  for (const auto& z : v) s += std::norm(z);
  return s;
}

}  // namespace

double reduce_phase(double theta) {
  if (!std::isfinite(theta)) throw std::invalid_argument("phase must be finite");
  double r = std::remainder(theta, 2.0 * kPi);  // [-pi, pi]
  if (r <= -kPi) r += 2.0 * kPi;
  return r;
}

long signed_offset(std::size_t j, std::size_t n_sites) {
  const auto n = static_cast<long>(n_sites);
  auto s = static_cast<long>(j % n_sites);
  const long lower = -(n / 2);
  const long upper = lower + n;  // exclusive: ceil(N/2)
  if (s >= upper) s -= n;
  return s;
}

std::size_t site_index(long offset, std::size_t n_sites) {
  const auto n = static_cast<long>(n_sites);
  long r = offset % n;
  if (r < 0) r += n;
  return static_cast<std::size_t>(r);
}

RingConfig::RingConfig(std::size_t n_sites, double half_bandwidth, double phase)
    : n_sites_(n_sites), half_bandwidth_(half_bandwidth), phase_(0.0) {
  if (n_sites < 2) throw std::invalid_argument("ring needs at least 2 sites");
  if (!(half_bandwidth > 0.0) || !std::isfinite(half_bandwidth))
    throw std::invalid_argument("half bandwidth must be positive and finite");
  phase_ = reduce_phase(phase);
}

double RingConfig::momentum(std::size_t n) const {
  return 2.0 * kPi * static_cast<double>(n) / static_cast<double>(n_sites_);
}

WavePacket::WavePacket(std::vector<cplx> amplitudes)
    : amplitudes_(std::move(amplitudes)) {
  if (amplitudes_.empty()) throw std::invalid_argument("empty wave packet");
  const double norm = norm_squared();
  if (std::abs(norm - 1.0) > kNormTolerance)
    throw std::invalid_argument("wave packet is not normalized (norm^2 = " +
                                std::to_string(norm) + ")");
}

WavePacket WavePacket::trusted(std::vector<cplx> amplitudes) {
  return WavePacket(std::move(amplitudes), Unchecked{});
}

double WavePacket::norm_squared() const {
  return ringxfer::norm_squared(amplitudes_);
}

MomentumAmplitudes::MomentumAmplitudes(std::vector<cplx> amplitudes)
    : amplitudes_(std::move(amplitudes)) {
  if (amplitudes_.empty()) throw std::invalid_argument("empty spectrum");
  const double sum = parseval_sum();
  if (std::abs(sum - 1.0) > kNormTolerance)
    throw std::invalid_argument("spectrum violates Parseval normalization");
}

MomentumAmplitudes MomentumAmplitudes::trusted(std::vector<cplx> amplitudes) {
  return MomentumAmplitudes(std::move(amplitudes), Unchecked{});
}

double MomentumAmplitudes::parseval_sum() const {
  return norm_squared(amplitudes_) / static_cast<double>(amplitudes_.size());
}

std::size_t half_extent(const Preparation& prep) {
  struct Visitor {
    std::size_t operator()(const Atomic&) const { return 0; }
    std::size_t operator()(const Square& s) const { return s.half_width; }
    std::size_t operator()(const Gaussian& g) const {
      return static_cast<std::size_t>(std::ceil(3.0 * g.width));
    }
  };
  return std::visit(Visitor{}, prep);
}

void validate(const Preparation& prep, std::size_t n_sites) {
  if (const auto* s = std::get_if<Square>(&prep)) {
    if (2 * s->half_width + 1 > n_sites)
      throw std::invalid_argument("square packet wider than ring");
  } else if (const auto* g = std::get_if<Gaussian>(&prep)) {
    if (!(g->width > 0.0) || !std::isfinite(g->width))
      throw std::invalid_argument("gaussian width must be positive");
    if (!(g->width < static_cast<double>(n_sites) / 4.0))
      throw std::invalid_argument("gaussian packet wider than ring (need sigma < N/4)");
  }
}

double dispersion(const RingConfig& config, std::size_t n) {
  if (n >= config.n_sites())
    throw std::out_of_range("momentum index out of range");
  return -2.0 * config.half_bandwidth() * std::cos(config.momentum(n) - config.phase());
}

double component_energy(const RingConfig& config, std::size_t n) {
  const std::size_t n_sites = config.n_sites();
  if (n >= n_sites) throw std::out_of_range("momentum index out of range");
  return dispersion(config, (n_sites - n) % n_sites);
}

double square_form_factor(std::size_t lambda, double q) {
  if (lambda % 2 == 0) throw std::invalid_argument("square packet width must be odd");
  if (!std::isfinite(q)) throw std::invalid_argument("momentum must be finite");
  const double lam = static_cast<double>(lambda);
  const double s = std::sin(0.5 * q);
  if (std::abs(s) < 1e-300) return std::sqrt(lam);
  return std::sin(0.5 * lam * q) / (std::sqrt(lam) * s);
}

WavePacket prepare(const RingConfig& config, const Preparation& prep) {
  const std::size_t n = config.n_sites();
  validate(prep, n);
  std::vector<cplx> g(n, cplx{0.0, 0.0});

  if (const auto* a = std::get_if<Atomic>(&prep)) {
    g[site_index(a->center, n)] = 1.0;
  } else if (const auto* s = std::get_if<Square>(&prep)) {
    const auto m = static_cast<long>(s->half_width);
    const double amp = 1.0 / std::sqrt(static_cast<double>(2 * m + 1));
    for (long l = -m; l <= m; ++l) g[site_index(s->center + l, n)] = amp;
  } else {
    const auto& gauss = std::get<Gaussian>(prep);
    const double inv = 1.0 / (4.0 * gauss.width * gauss.width);
    double norm = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
      const auto x = static_cast<double>(
          signed_offset(site_index(static_cast<long>(j) - gauss.center, n), n));
      const double v = std::exp(-x * x * inv);
      g[j] = v;
      norm += v * v;
    }
    const double scale = 1.0 / std::sqrt(norm);
    for (auto& z : g) z *= scale;
  }
  return WavePacket(std::move(g));
}

MomentumAmplitudes to_momentum(const WavePacket& packet, Transform path) {
  return MomentumAmplitudes::trusted(dft(packet.amplitudes(), +1, path));
}

WavePacket from_momentum(const MomentumAmplitudes& spectrum, Transform path) {
  auto g = dft(spectrum.amplitudes(), -1, path);
  const double inv_n = 1.0 / static_cast<double>(g.size());
  for (auto& z : g) z *= inv_n;
  return WavePacket::trusted(std::move(g));
}

WavePacket evolve(const RingConfig& config, const WavePacket& packet, double t,
                  Transform path) {
  if (!std::isfinite(t)) throw std::invalid_argument("time must be finite");
  if (packet.size() != config.n_sites())
    throw std::invalid_argument("packet size does not match ring");
  if (t == 0.0) return packet;
  std::vector<cplx> spec = dft(packet.amplitudes(), +1, path);
  for (std::size_t n = 0; n < spec.size(); ++n)
    spec[n] *= std::polar(1.0, -component_energy(config, n) * t);
  return from_momentum(MomentumAmplitudes::trusted(std::move(spec)), path);
}

double mean_energy(const RingConfig& config, const MomentumAmplitudes& spectrum) {
  if (spectrum.size() != config.n_sites())
    throw std::invalid_argument("spectrum size does not match ring");
  double e = 0.0;
  for (std::size_t n = 0; n < spectrum.size(); ++n)
    e += std::norm(spectrum[n]) * component_energy(config, n);
  return e / static_cast<double>(spectrum.size());
}

WavePacket translate(const WavePacket& packet, long d) {
  const std::size_t n = packet.size();
  std::vector<cplx> out(n);
  for (std::size_t j = 0; j < n; ++j)
    out[site_index(static_cast<long>(j) + d, n)] = packet[j];
  return WavePacket::trusted(std::move(out));
}

cplx inner_product(const WavePacket& a, const WavePacket& b) {
  if (a.size() != b.size()) throw std::invalid_argument("packet sizes differ");
  cplx acc{0.0, 0.0};
  for (std::size_t j = 0; j < a.size(); ++j) acc += std::conj(a[j]) * b[j];
  return acc;
}

}  // namespace ringxfer
