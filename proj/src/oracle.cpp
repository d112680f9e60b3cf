#include "ringxfer/oracle.hpp"

#include <Eigen/Eigenvalues>

#include <cmath>
#include <stdexcept>

namespace ringxfer::oracle {

DenseHamiltonian build_hamiltonian(const RingConfig& config, BuildOptions options) {
  const std::size_t n = config.n_sites();
  if (n > kMaxDenseSites) throw std::invalid_argument("ring too large for the dense oracle");
  const double w = config.half_bandwidth();
  const double theta = options.flip_phase_sign ? -config.phase() : config.phase();
  const cplx forward = -w * std::polar(1.0, -theta);  // couples j to j+1
  const cplx backward = std::conj(forward);           // couples j to j-1

  const auto dim = static_cast<Eigen::Index>(n);
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(dim, dim);
  for (Eigen::Index j = 0; j < dim; ++j) {
    const Eigen::Index up = (j + 1) % dim;
    const Eigen::Index down = (j + dim - 1) % dim;
    m(j, up) += forward;
    m(j, down) += backward;
  }
  return DenseHamiltonian(std::move(m), w);
}

std::vector<double> eigenvalues(const DenseHamiltonian& h) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(h.matrix(), Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) throw std::runtime_error("eigensolver failed");
  const auto& ev = solver.eigenvalues();
  return {ev.data(), ev.data() + ev.size()};
}

double plane_wave_residual(const DenseHamiltonian& h, const RingConfig& config,
                           std::size_t n) {
  const auto dim = static_cast<Eigen::Index>(h.n_sites());
  const double q = config.momentum(n);
  Eigen::VectorXcd v(dim);
  for (Eigen::Index j = 0; j < dim; ++j) v(j) = std::polar(1.0, q * static_cast<double>(j));
  const double energy = dispersion(config, n);
  const Eigen::VectorXcd r = h.matrix() * v - energy * v;
  return r.cwiseAbs().maxCoeff();
}

double default_step(const DenseHamiltonian& h) { return 1e-3 / h.half_bandwidth(); }

WavePacket evolve_stepper(const DenseHamiltonian& h, const WavePacket& packet, double t,
                          double dt) {
  if (!std::isfinite(t)) throw std::invalid_argument("time must be finite");
  if (!(dt > 0.0) || dt > 0.01 / h.half_bandwidth() * (1.0 + 1e-12))
    throw std::invalid_argument("stepper requires 0 < dt <= 0.01/w");
  if (std::abs(t) / dt > 1e7) throw std::invalid_argument("too many stepper steps (t/dt > 1e7)");
  if (packet.size() != h.n_sites()) throw std::invalid_argument("packet size does not match ring");

  const auto dim = static_cast<Eigen::Index>(h.n_sites());
  Eigen::VectorXcd psi(dim);
  for (Eigen::Index j = 0; j < dim; ++j) psi(j) = packet[static_cast<std::size_t>(j)];
  if (t == 0.0) return packet;

  const auto steps = static_cast<long>(std::ceil(std::abs(t) / dt));
  const double step = t / static_cast<double>(steps);
  const cplx minus_i_h{0.0, -step};
  const Eigen::MatrixXcd& m = h.matrix();

  Eigen::VectorXcd k1(dim), k2(dim), k3(dim), k4(dim);
  for (long s = 0; s < steps; ++s) {
    k1.noalias() = minus_i_h * (m * psi);
    k2.noalias() = minus_i_h * (m * (psi + 0.5 * k1));
    k3.noalias() = minus_i_h * (m * (psi + 0.5 * k2));
    k4.noalias() = minus_i_h * (m * (psi + k3));
    psi += (k1 + 2.0 * k2 + 2.0 * k3 + k4) / 6.0;
  }

  std::vector<cplx> out(psi.data(), psi.data() + dim);
  return WavePacket::trusted(std::move(out));
}

}  // namespace ringxfer::oracle
