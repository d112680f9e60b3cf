#pragma once

#include <vector>

#include "ringxfer/observables.hpp"

namespace ringxfer {

/// Scan over the phase (sweep_theta) or the square-packet half-width
/// (sweep_width) at a fixed receiver offset.
struct SweepSpec {
  RingConfig config{500};
  Preparation prep = Square{0, 5};  // sweep_theta only
  long receiver = 0;
  std::vector<double> thetas;             // sweep_theta grid, radians
  std::vector<std::size_t> half_widths;   // sweep_width grid
  TimeWindow window;
  PeakRule rule = PeakRule::first_local;
};

struct SweepRow {
  double parameter = 0.0;  // theta or M
  double t_star = 0.0;
  double f_star = 0.0;
  PeakKind kind = PeakKind::first_local_max;
};

struct SweepResult {
  std::vector<SweepRow> rows;  // in grid order
  std::size_t best = 0;        // index into rows
};

/// Peak fidelity per phase. The best row maximizes f_star; exact ties go to
/// the smaller |theta|, then to the earlier grid point.
SweepResult sweep_theta(const SweepSpec& spec);

/// Peak fidelity per half-width with the phase of spec.config, using
/// Square{center of spec.prep, M}. Requires 2M+1 <= N/4 for every M.
SweepResult sweep_width(const SweepSpec& spec);

}  // namespace ringxfer
