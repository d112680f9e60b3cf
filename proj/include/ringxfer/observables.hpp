#pragma once

#include <optional>
#include <stdexcept>
#include <string_view>
#include <vector>

#include "ringxfer/ring_core.hpp"

namespace ringxfer {

/// Raised when a requested time window runs past the no-wrap horizon.
class HorizonError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// P_j = |g_j|^2
std::vector<double> probability_distribution(const WavePacket& packet);

/// Latest time before the fastest components (speed 2w) of a packet of
/// half-extent M reach the receiver from the far side of the ring:
/// (N/2 - |d| - M) / (2w). Clamped at zero.
double no_wrap_horizon(const RingConfig& config, const Preparation& prep, long d);

/// Default sampling step, 0.05 / w.
double default_time_step(const RingConfig& config);

/// Momentum-space representation of f_d(t) = <psi_d|psi_0(t)>, where psi_d
/// is the prepared packet rigidly translated by d sites:
///   f_d(t) = (1/N) sum_n |c_n|^2 e^{i(q_n d - eps_n t)},
/// c_n being the coefficient of the plane wave e^{i q_n j}. Spectral weights
/// and energies are computed once; evaluation sums in ascending n.
class TransferKernel {
 public:
  TransferKernel(const RingConfig& config, const Preparation& prep, long d);
  /// Same, for an arbitrary initial packet.
  TransferKernel(const RingConfig& config, const WavePacket& packet, long d);

  long receiver() const { return receiver_; }

  cplx amplitude(double t) const;
  double fidelity(double t) const { return std::norm(amplitude(t)); }

  struct Derivatives {
    double value;   // F
    double first;   // dF/dt
    double second;  // d2F/dt2
  };
  Derivatives fidelity_derivatives(double t) const;

 private:
  struct Mode {
    double weight;       // |c_n|^2 / N
    double momentum;     // q_n
    double energy;       // eps(q_n)
  };
  std::vector<Mode> modes_;
  long receiver_;
};

/// Throws std::invalid_argument unless |d| < N/2.
void check_receiver(const RingConfig& config, long d);

cplx transfer_amplitude(const RingConfig& config, const Preparation& prep,
                        long d, double t);
double fidelity(const RingConfig& config, const Preparation& prep, long d,
                double t);

struct SeriesProvenance {
  RingConfig config;
  Preparation prep;
};

struct FidelitySeries {
  std::vector<double> times;
  std::vector<double> values;
  long receiver = 0;
  std::optional<SeriesProvenance> provenance;
};

/// Uniform grid 0, dt, 2dt, ... up to and including t_max (within dt/1e6).
std::vector<double> time_grid(double t_max, double dt);

enum class WrapPolicy { enforce, allow };

/// Samples F_d on `times`. With WrapPolicy::enforce, a grid reaching past
/// no_wrap_horizon throws HorizonError.
FidelitySeries fidelity_series(const RingConfig& config, const Preparation& prep,
                               long d, std::vector<double> times,
                               WrapPolicy wrap = WrapPolicy::enforce);

enum class PeakRule { first_local, global };

enum class PeakKind { first_local_max, global_in_window };

std::string_view to_string(PeakKind kind);
std::string_view to_string(PeakRule rule);

struct PeakResult {
  double t_star = 0.0;
  double f_star = 0.0;
  PeakKind kind = PeakKind::first_local_max;
};

/// Values below this never count as a first local maximum.
inline constexpr double kPeakNoiseFloor = 1e-6;
/// Stopping tolerance on t for peak refinement.
inline constexpr double kPeakTimeTolerance = 1e-9;

/// Selects the first local maximum above kPeakNoiseFloor (falling back to the
/// global maximum of the window), or the global maximum when rule == global.
/// A series that opens on a descent counts its first sample as that maximum. Interior maxima are refined from the parabola through the
/// three bracketing samples; with provenance, the estimate is then polished by
/// Newton iteration on dF/dt and f_star is the exact fidelity at t_star.
PeakResult first_peak(const FidelitySeries& series,
                      PeakRule rule = PeakRule::first_local);

struct TimeWindow {
  std::optional<double> t_max;  // default: no-wrap horizon
  std::optional<double> dt;     // default: default_time_step
  WrapPolicy wrap = WrapPolicy::enforce;
};

struct DistancePeak {
  long d = 0;
  PeakResult peak;
};

std::vector<DistancePeak> max_fidelity_vs_distance(
    const RingConfig& config, const Preparation& prep, const std::vector<long>& d_list,
    const TimeWindow& window = {}, PeakRule rule = PeakRule::first_local);

/// Mean signed offset from `reference`. Throws std::domain_error when more
/// than 1e-6 of the probability sits in the quarter of the ring opposite the
/// reference, where the signed offset is ambiguous.
double center_of_mass(const std::vector<double>& probabilities, long reference = 0);

}  // namespace ringxfer
