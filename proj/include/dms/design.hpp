#pragma once

#include "dms/core.hpp"

#include <string>
#include <vector>

namespace dms {

/// Superpositions reachable with a single generalised pi pulse.
struct DesignTarget {
  enum class Kind {
    EqualAllFromGround,     ///< start in ground i, end in 1/N on every ground state (needs a = -1)
    EqualAllExceptInitial,  ///< start in ground i, end in 1/(N-1) on the others (needs a = -1)
    EqualAllFromExcited,    ///< start in the excited state, end in 1/N on every ground state (needs a = 0)
  };

  Kind kind = Kind::EqualAllFromGround;
  Index n_states = 2;
  Index initial = 0;
  /// +1 or -1: selects chi_i = (sqrt(N) ± 1) chi_0 for EqualAllFromGround.
  int branch = +1;

  void validate() const;
  /// Starting basis index (N for the excited state).
  Index start_index() const;
  /// Required value of the Cayley-Klein parameter a.
  double required_a() const;
  /// Target final populations.
  Eigen::VectorXd populations() const;
};

const char* to_string(DesignTarget::Kind kind);

/// Couplings with rms chi_total realising the target.
CouplingSet design_couplings(const DesignTarget& target, double chi_total);

/// Individual resonant pulse areas A_n for the l-th generalised pi pulse.
Eigen::VectorXd resonance_areas(const DesignTarget& target, int l);

struct RzRoot {
  double delta0_T = 0.0;
  double residual = 0.0;  ///< |a + 1|
};

/// Nonnegative detunings Delta0 T with a = -1 for the Rosen-Zener model at chi T = 2l.
struct RzRootReport {
  int l = 0;
  std::vector<RzRoot> roots;
};

/// Roots of sum_{k<l} 2 atan(x / (2k+1)) = (l - 1 - 2j) pi, j = 0, 1, ...
/// Negative roots follow by symmetry and are not listed.
RzRootReport rz_minus_one_detunings(int l);

struct DesignCheck {
  PopulationDistribution populations;
  double max_deviation = 0.0;
  bool passed = false;
  std::string report;
};

/// Realised populations for (chis, ck) against the target. A tolerance breach
/// is reported in the result, not thrown.
DesignCheck verify_design(const DesignTarget& target, const CouplingSet& chis, const CayleyKlein& ck,
                          double tolerance = 1e-6);

}  // namespace dms
