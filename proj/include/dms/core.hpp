#pragma once

#include <Eigen/Dense>

#include <complex>
#include <initializer_list>
#include <stdexcept>
#include <string>
#include <vector>

/// Degenerate multistate excitation: N degenerate ground states coupled to a
/// single excited state by pulses sharing one time dependence.
///
/// Conventions used throughout the library:
///  - frequencies are angular (rad/time) with hbar = 1, so the Hamiltonian
///    carries the usual 1/2 prefactor on couplings;
///  - ground states are indexed 0..N-1 and the excited state is index N;
///  - couplings are real and nonnegative.
namespace dms {

using Index = Eigen::Index;
using Complex = std::complex<double>;
using StateVector = Eigen::VectorXcd;

/// Base class of all errors raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A numerical procedure failed (step underflow, non-finite values).
class NumericalError : public Error {
 public:
  using Error::Error;
};

/// A requested design target cannot be realised.
class DesignError : public Error {
 public:
  using Error::Error;
};

/// Peak Rabi amplitudes chi_n of the N ground-excited couplings.
///
/// All-zero sets are representable (an undriven system); operations that need
/// a bright state reject them.
class CouplingSet {
 public:
  explicit CouplingSet(Eigen::VectorXd chis);
  CouplingSet(std::initializer_list<double> chis);

  Index size() const { return chis_.size(); }
  double operator[](Index n) const { return chis_[n]; }
  const Eigen::VectorXd& values() const { return chis_; }

  /// Root-mean-square coupling chi = sqrt(sum chi_n^2).
  double rms() const { return rms_; }

  /// Cumulative norms X_n = sqrt(sum_{k<=n} chi_k^2); entry n holds the norm
  /// of the first n+1 couplings, so the last entry equals rms().
  Eigen::VectorXd partial_norms() const;

  /// Same direction, rescaled so that rms() == chi_total.
  CouplingSet scaled_to(double chi_total) const;

 private:
  Eigen::VectorXd chis_;
  double rms_;
};

/// Dimensionless pulse envelope f(t) shared by every coupling.
class PulseShape {
 public:
  enum class Kind { Sech, Rect, ConstUnit, Custom };

  static PulseShape sech(double width);
  static PulseShape rect(double half_width);
  static PulseShape const_unit();
  /// Piecewise-linear envelope through (times[k], values[k]); zero outside.
  static PulseShape custom(std::vector<double> times, std::vector<double> values);

  template <typename F>
  static PulseShape sampled(F&& envelope, double t0, double t1, int samples) {
    std::vector<double> ts(samples), fs(samples);
    for (int k = 0; k < samples; ++k) {
      ts[k] = t0 + (t1 - t0) * k / (samples - 1);
      fs[k] = envelope(ts[k]);
    }
    return custom(std::move(ts), std::move(fs));
  }

  Kind kind() const { return kind_; }
  double width() const { return width_; }

  double operator()(double t) const;

  /// Integral of f over the real line; throws for ConstUnit.
  double area() const;

  /// Envelope evaluated on the cumulative-area scale: integral of f from -inf to t.
  double cumulative_area(double t) const;

  /// Times where f is (effectively) nonzero, used to pick default windows.
  std::pair<double, double> support() const;

 private:
  PulseShape(Kind kind, double width) : kind_(kind), width_(width) {}

  Kind kind_;
  double width_ = 0.0;
  std::vector<double> times_;
  std::vector<double> values_;
};

/// Single-photon detuning Delta(t), shared by every coupling.
class DetuningProfile {
 public:
  enum class Kind { Zero, Constant, Linear, Tanh };

  static DetuningProfile zero();
  static DetuningProfile constant(double delta0);
  static DetuningProfile linear(double chirp);
  static DetuningProfile tanh(double delta0, double sweep, double width);

  Kind kind() const { return kind_; }

  double operator()(double t) const;

  /// Accumulated phase theta(t) = integral_0^t Delta.
  double phase(double t) const;

  double offset() const { return delta0_; }
  double sweep() const { return sweep_; }
  double chirp() const { return chirp_; }

 private:
  explicit DetuningProfile(Kind kind) : kind_(kind) {}

  Kind kind_;
  double delta0_ = 0.0;
  double sweep_ = 0.0;
  double chirp_ = 0.0;
  double width_ = 1.0;
};

enum class ModelKind { Resonance, Rabi, LandauZener, RosenZener, AllenEberly, DemkovKunike };

const char* to_string(ModelKind kind);

/// One of the exactly soluble two-state models, with its raw parameters.
///
/// chi is the rms peak coupling, T the pulse width, delta0 the static
/// detuning, sweep the tanh chirp amplitude B, and chirp the linear rate C.
struct ModelSpec {
  ModelKind kind = ModelKind::Resonance;
  double chi = 0.0;
  double T = 1.0;
  double delta0 = 0.0;
  double sweep = 0.0;
  double chirp = 0.0;
  double area = 0.0;
  PulseShape shape = PulseShape::sech(1.0);

  /// Resonant pulse of rms area A; the envelope only sets the time scale.
  static ModelSpec resonance(double area, PulseShape shape = PulseShape::sech(1.0));
  static ModelSpec rabi(double chi, double half_width, double delta0);
  static ModelSpec landau_zener(double chi, double chirp);
  static ModelSpec rosen_zener(double chi, double width, double delta0);
  static ModelSpec allen_eberly(double chi, double width, double sweep);
  static ModelSpec demkov_kunike(double chi, double width, double delta0, double sweep);

  double alpha() const { return 0.5 * chi * T; }
  double beta() const { return 0.5 * sweep * T; }
  double delta() const { return 0.5 * delta0 * T; }

  /// The peak rms coupling realised in the time domain (for Resonance this
  /// is area / shape.area()).
  double peak_coupling() const;
  PulseShape pulse() const;
  DetuningProfile detuning() const;

  /// Throws std::invalid_argument when parameters are outside the model's domain.
  void validate() const;
};

/// Two-state propagator [[a, b], [-b*, a*]].
struct CayleyKlein {
  Complex a{1.0, 0.0};
  Complex b{0.0, 0.0};
  /// True when b (including its phase) is known, not reconstructed from |a|.
  bool b_phase_exact = true;

  double unitarity_defect() const { return std::abs(std::norm(a) + std::norm(b) - 1.0); }
};

/// (N+1)x(N+1) transition matrix in the original basis.
struct Propagator {
  Eigen::MatrixXcd matrix;
  bool b_phase_exact = true;

  Index dim() const { return matrix.rows(); }
};

/// Final populations after starting in basis state `initial` (N = excited).
struct PopulationDistribution {
  Eigen::VectorXd probs;
  Index initial = 0;

  Index dim() const { return probs.size(); }
  double total() const { return probs.sum(); }
};

StateVector basis_state(Index dim, Index k);

/// A_n = chi_n * integral f.
double pulse_area(const CouplingSet& chis, const PulseShape& shape, Index n);

/// A = chi * integral f.
double rms_area(const CouplingSet& chis, const PulseShape& shape);

/// Real symmetric Hamiltonian at one instant: couplings chi_n f / 2 in the
/// last row and column, Delta on the excited diagonal.
Eigen::MatrixXd hamiltonian(const CouplingSet& chis, double f, double delta);

}  // namespace dms
