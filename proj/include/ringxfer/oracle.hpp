#pragma once

#include <Eigen/Dense>

#include <vector>

#include "ringxfer/ring_core.hpp"

namespace ringxfer::oracle {

/// Largest ring the dense oracle accepts.
inline constexpr std::size_t kMaxDenseSites = 4096;

/// Fault injection for self-tests of the validation suite.
struct BuildOptions {
  /// Build the hopping with the opposite phase convention (theta -> -theta).
  bool flip_phase_sign = false;
};

/// Site-space ring Hamiltonian
///   (H psi)_j = -w e^{-i theta} psi_{j+1} - w e^{+i theta} psi_{j-1}
/// stored as a dense N x N matrix. Immutable after construction.
class DenseHamiltonian {
 public:
  std::size_t n_sites() const { return static_cast<std::size_t>(matrix_.rows()); }
  double half_bandwidth() const { return half_bandwidth_; }
  const Eigen::MatrixXcd& matrix() const { return matrix_; }

 private:
  friend DenseHamiltonian build_hamiltonian(const RingConfig&, BuildOptions);
  DenseHamiltonian(Eigen::MatrixXcd matrix, double half_bandwidth)
      : matrix_(std::move(matrix)), half_bandwidth_(half_bandwidth) {}

  Eigen::MatrixXcd matrix_;
  double half_bandwidth_;
};

/// Throws std::invalid_argument for N > kMaxDenseSites.
DenseHamiltonian build_hamiltonian(const RingConfig& config, BuildOptions options = {});

/// Eigenvalues in ascending order, from a Hermitian eigensolver.
std::vector<double> eigenvalues(const DenseHamiltonian& h);

/// max_j |(H v)_j - E v_j| for the plane wave v_j = e^{i q_n j}, with E the
/// band energy dispersion(config, n). Zero when the matrix and the band agree
/// mode by mode, which sorted spectra alone cannot establish.
double plane_wave_residual(const DenseHamiltonian& h, const RingConfig& config,
                           std::size_t n);

/// Default stepper increment, 1e-3 / w.
double default_step(const DenseHamiltonian& h);

/// Classical fourth-order Runge-Kutta integration of i d/dt psi = H psi up to
/// time t, using ceil(|t|/dt) equal steps. No renormalization is applied, so
/// the norm drift of the result measures the integration error.
/// Requires dt <= 0.01/w and |t|/dt <= 1e7.
WavePacket evolve_stepper(const DenseHamiltonian& h, const WavePacket& packet, double t,
                          double dt);

}  // namespace ringxfer::oracle
