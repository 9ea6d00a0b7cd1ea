#pragma once

#include "dms/core.hpp"

#include <vector>

namespace dms {

struct IntegrationConfig {
  enum class Method { DormandPrince, FixedRk4 };

  double t_start = -1.0;
  double t_end = 1.0;
  double rel_tol = 1e-11;
  double abs_tol = 1e-13;
  double max_step = 1.0;
  /// Uniform output grid over the window (endpoints included) unless
  /// `sample_times` is given.
  int samples = 2;
  std::vector<double> sample_times;
  Method method = Method::DormandPrince;
  double fixed_step = 1e-3;
  /// Prepare the initial state and read the final state in the instantaneous
  /// eigenbasis of H at the window ends. Needed for unbounded detunings,
  /// where diabatic amplitudes converge only as 1/t.
  bool asymptotic_basis = false;

  void validate() const;
  std::vector<double> output_grid() const;
};

struct TrajectoryRecord {
  std::vector<double> times;
  /// One row per output time, N+1 columns.
  Eigen::MatrixXd populations;
  Eigen::MatrixXcd amplitudes;
  /// max_t P_{N+1}(t) over every accepted step.
  double peak_excited = 0.0;
  /// Final state (mapped through the asymptotic basis if requested).
  StateVector final_state;
  /// max_t | |C(t)| - 1 | over every accepted step.
  double norm_drift = 0.0;
  long steps = 0;

  Eigen::VectorXd final_populations() const { return final_state.cwiseAbs2(); }
};

/// Window and tolerances suited to a model: sech pulses on [-25T, 25T],
/// rectangular pulses exactly on their support, Landau-Zener on
/// [-W, W] with W = lz_window_factor * max(1/sqrt(C), chi/C).
IntegrationConfig default_config(const ModelSpec& model, double lz_window_factor = 30.0);

/// Integrates i dC/dt = H(t) C with the full (N+1)-state Hamiltonian.
TrajectoryRecord integrate(const CouplingSet& chis, const PulseShape& shape, const DetuningProfile& detuning,
                           const StateVector& initial, const IntegrationConfig& cfg);

/// Integrates the bright/excited two-state problem of a model and returns
/// (a, b) in the frame rotating with the detuning phase.
CayleyKlein oracle_cayley_klein(const ModelSpec& model, const IntegrationConfig& cfg);

double peak_excited_population(const CouplingSet& chis, const PulseShape& shape, const DetuningProfile& detuning,
                               const StateVector& initial, const IntegrationConfig& cfg);

}  // namespace dms
