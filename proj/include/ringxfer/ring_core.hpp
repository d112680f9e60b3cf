#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <variant>
#include <vector>

namespace ringxfer {

using cplx = std::complex<double>;

/// Tolerance on the unit-norm invariant of packets and spectra.
inline constexpr double kNormTolerance = 1e-12;

/// Reduce an angle to (-pi, pi].
double reduce_phase(double theta);

/// Signed ring coordinate of site `j` in [-floor(N/2), ceil(N/2)).
long signed_offset(std::size_t j, std::size_t n_sites);

/// Site index in [0, N) of a signed (or arbitrarily large) ring coordinate.
std::size_t site_index(long offset, std::size_t n_sites);

/// Static problem definition: an N-site ring with hopping w and a phase
/// theta on every bond. hbar = 1 and the lattice constant is 1.
class RingConfig {
 public:
  explicit RingConfig(std::size_t n_sites, double half_bandwidth = 1.0,
                      double phase = 0.0);

  std::size_t n_sites() const { return n_sites_; }
  double half_bandwidth() const { return half_bandwidth_; }
  /// Phase reduced to (-pi, pi].
  double phase() const { return phase_; }

  RingConfig with_phase(double phase) const {
    return RingConfig(n_sites_, half_bandwidth_, phase);
  }

  /// q = 2 pi n / N.
  double momentum(std::size_t n) const;

 private:
  std::size_t n_sites_;
  double half_bandwidth_;
  double phase_;
};

/// Complex site amplitudes g_j, j = 0..N-1, with unit norm.
class WavePacket {
 public:
  /// Throws std::invalid_argument unless sum |g_j|^2 = 1 within kNormTolerance.
  explicit WavePacket(std::vector<cplx> amplitudes);

  std::size_t size() const { return amplitudes_.size(); }
  std::span<const cplx> amplitudes() const { return amplitudes_; }
  const cplx& operator[](std::size_t j) const { return amplitudes_[j]; }
  /// Amplitude at a signed ring coordinate.
  const cplx& at_offset(long offset) const {
    return amplitudes_[site_index(offset, amplitudes_.size())];
  }
  double norm_squared() const;

  // Results of unitary maps on valid packets; the norm is not re-checked.
  static WavePacket trusted(std::vector<cplx> amplitudes);

 private:
  struct Unchecked {};
  WavePacket(std::vector<cplx> amplitudes, Unchecked)
      : amplitudes_(std::move(amplitudes)) {}

  std::vector<cplx> amplitudes_;
};

/// Momentum amplitudes gt_n = sum_j g_j e^{i q_n j}, with Parseval reading
/// (1/N) sum_n |gt_n|^2 = 1.
class MomentumAmplitudes {
 public:
  explicit MomentumAmplitudes(std::vector<cplx> amplitudes);

  std::size_t size() const { return amplitudes_.size(); }
  std::span<const cplx> amplitudes() const { return amplitudes_; }
  const cplx& operator[](std::size_t n) const { return amplitudes_[n]; }
  /// (1/N) sum |gt_n|^2
  double parseval_sum() const;

  static MomentumAmplitudes trusted(std::vector<cplx> amplitudes);

 private:
  struct Unchecked {};
  MomentumAmplitudes(std::vector<cplx> amplitudes, Unchecked)
      : amplitudes_(std::move(amplitudes)) {}

  std::vector<cplx> amplitudes_;
};

// Initial-condition families. Centers are signed ring coordinates.
struct Atomic {
  long center = 0;
};
struct Square {
  long center = 0;
  std::size_t half_width = 0;  // lambda = 2M + 1 occupied sites
};
struct Gaussian {
  long center = 0;
  double width = 1.0;  // sigma_g, in sites
};
using Preparation = std::variant<Atomic, Square, Gaussian>;

/// Half-extent in sites used for the no-wrap horizon: 0 for atomic, M for a
/// square packet and ceil(3 sigma_g) for a Gaussian.
std::size_t half_extent(const Preparation& prep);

/// Throws std::invalid_argument if the packet does not fit the ring.
void validate(const Preparation& prep, std::size_t n_sites);

/// Band energy -2w cos(q_n - theta) of the plane wave e^{i q_n j}.
double dispersion(const RingConfig& config, std::size_t n);

/// Square-packet form factor sin(lambda q/2) / (sqrt(lambda) sin(q/2)),
/// equal to sqrt(lambda) at q = 0. Even lambda is rejected.
double square_form_factor(std::size_t lambda, double q);

WavePacket prepare(const RingConfig& config, const Preparation& prep);

/// How the site/momentum transforms are carried out. `direct` is the O(N^2)
/// sum in ascending index order; `fast` goes through FFTW.
enum class Transform { direct, fast };

MomentumAmplitudes to_momentum(const WavePacket& packet,
                               Transform path = Transform::direct);
WavePacket from_momentum(const MomentumAmplitudes& spectrum,
                         Transform path = Transform::direct);

/// Exact evolution e^{-iHt} of `packet`, with H the ring Hamiltonian
/// (H psi)_j = -w e^{-i theta} psi_{j+1} - w e^{+i theta} psi_{j-1}.
/// Negative t evolves backwards. Throws std::invalid_argument for non-finite t.
WavePacket evolve(const RingConfig& config, const WavePacket& packet, double t,
                  Transform path = Transform::direct);

/// Energy of the momentum component gt_n. gt_n multiplies e^{-i q_n j}, the
/// plane wave of wavevector -q_n, so this is dispersion(config, N - n).
double component_energy(const RingConfig& config, std::size_t n);

/// Mean energy (1/N) sum_n |gt_n|^2 E_n, with E_n from component_energy.
double mean_energy(const RingConfig& config, const MomentumAmplitudes& spectrum);

/// Rigid translation by d sites: out_j = in_{j-d}.
WavePacket translate(const WavePacket& packet, long d);

/// <a|b> = sum_j conj(a_j) b_j
cplx inner_product(const WavePacket& a, const WavePacket& b);

}  // namespace ringxfer
