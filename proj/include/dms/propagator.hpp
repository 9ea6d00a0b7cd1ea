#pragma once

#include "dms/core.hpp"

#include <vector>

namespace dms {

/// Full (N+1)-state transition matrix W U_MS W^T:
///   ground block  delta_mn + (a - 1) chi_m chi_n / chi^2
///   last column   b chi_n / chi
///   last row      -b* chi_n / chi
///   corner        a*
/// The excited amplitude is expressed in the frame rotating with the
/// accumulated detuning phase, where the two-state propagator is SU(2).
Propagator assemble_propagator(const CouplingSet& chis, const CayleyKlein& ck);

/// U applied to an arbitrary state. Inputs that are not a single basis state
/// (up to phase) are refused when b is not analytically known.
StateVector propagate(const Propagator& u, const StateVector& initial);

/// Final populations when starting in ground state i.
PopulationDistribution populations_from_ground(const CouplingSet& chis, const CayleyKlein& ck, Index i);

/// Final populations when starting in the excited state.
PopulationDistribution populations_from_excited(const CouplingSet& chis, const CayleyKlein& ck);

/// Dispatches on `initial` (N means the excited state).
PopulationDistribution populations(const CouplingSet& chis, const CayleyKlein& ck, Index initial);

/// P_m / P_n = chi_m^2 / chi_n^2 for m, n != i.
double population_ratio(const CouplingSet& chis, Index m, Index n, Index i);

/// Lambda = pi chi^2 / (4 C).
double lz_parameter(double chi, double chirp);

/// Degenerate Landau-Zener propagator for a = exp(-Lambda); b uses the
/// -i sqrt(1 - a^2) convention.
Propagator lz_propagator_entries(const CouplingSet& chis, double lambda);

PopulationDistribution lz_populations(const CouplingSet& chis, double lambda, Index initial);

/// Demkov-Osherov grid: one slanted level crossing N parallel nondegenerate
/// levels, labelled by increasing energy, with a positive slope.
class DOGrid {
 public:
  DOGrid(double chirp, CouplingSet chis, std::vector<double> energies);

  Index size() const { return chis_.size(); }
  /// No-transition probability at crossing n: exp(-pi chi_n^2 / 2C).
  double q(Index n) const { return q_[static_cast<std::size_t>(n)]; }
  double p(Index n) const { return 1.0 - q(n); }
  double chirp() const { return chirp_; }
  const std::vector<double>& energies() const { return energies_; }

 private:
  double chirp_;
  CouplingSet chis_;
  std::vector<double> energies_;
  std::vector<double> q_;
};

/// P_{from -> to}; indices 0..N-1 are parallel levels, N the slanted one.
double do_probability(const DOGrid& grid, Index from, Index to);

}  // namespace dms
