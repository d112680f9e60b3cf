#pragma once

#include <string>
#include <vector>

#include "ringxfer/oracle.hpp"

namespace ringxfer {

struct CheckResult {
  std::string name;
  bool passed = false;
  double measured = 0.0;
  double tolerance = 0.0;
};

struct SuiteResult {
  std::string name;
  std::vector<CheckResult> checks;
  bool passed() const;
};

struct ValidationReport {
  std::vector<SuiteResult> suites;
  bool passed() const;
};

struct ValidationOptions {
  /// Forwarded to every dense Hamiltonian the oracle suites build.
  oracle::BuildOptions fault;
  unsigned seed = 20240517;
};

/// Runs the self-consistency suites: oracle_agreement, bessel_identities,
/// parseval_unitarity and peak_time_consistency.
ValidationReport run_validation(const ValidationOptions& options = {});

}  // namespace ringxfer
