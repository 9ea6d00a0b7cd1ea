#include "dms/dynamics.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <sstream>

namespace dms {

namespace {

constexpr Complex kI{0.0, 1.0};

void require(bool ok, const char* what) {
  if (!ok) throw std::invalid_argument(what);
}

// Right-hand side of i dC/dt = H C for the ground/excited arrow Hamiltonian.
class Schrodinger {
 public:
  Schrodinger(const CouplingSet& chis, const PulseShape& shape, const DetuningProfile& detuning)
      : chi_(chis.values()), shape_(shape), detuning_(detuning), n_(chis.size()) {}

  void operator()(double t, const StateVector& y, StateVector& dy) const {
    const double half_f = 0.5 * shape_(t);
    const double delta = detuning_(t);
    const Complex excited = y[n_];
    dy.head(n_) = (-kI * half_f * excited) * chi_.cast<Complex>();
    dy[n_] = -kI * (half_f * chi_.cast<Complex>().dot(y.head(n_)) + delta * excited);
  }

  double detuning(double t) const { return detuning_(t); }

 private:
  const Eigen::VectorXd& chi_;
  const PulseShape& shape_;
  const DetuningProfile& detuning_;
  Index n_;
};

// Orthogonal map from the instantaneous eigenbasis of H(t) to the diabatic
// labels: dark directions are kept, the bright-like eigenvector is sent to its
// (normalised) ground part and the excited-like one to the excited state.
Eigen::MatrixXd adiabatic_to_diabatic(const CouplingSet& chis, double f, double delta) {
  const Index n = chis.size();
  const Eigen::MatrixXd h = hamiltonian(chis, f, delta);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(h);
  const Eigen::MatrixXd& v = es.eigenvectors();

  Eigen::VectorXd weight = v.row(n).cwiseAbs2().transpose();
  Index excited_like = 0;
  weight.maxCoeff(&excited_like);
  weight[excited_like] = -1.0;
  Index bright_like = 0;
  weight.maxCoeff(&bright_like);

  Eigen::VectorXd ve = v.col(excited_like);
  if (ve[n] < 0.0) ve = -ve;
  Eigen::VectorXd vb = v.col(bright_like);
  Eigen::VectorXd g = vb;
  g[n] = 0.0;
  const double g_norm = g.norm();
  if (n == 0 || g_norm == 0.0) return Eigen::MatrixXd::Identity(n + 1, n + 1);
  g /= g_norm;

  Eigen::MatrixXd m = Eigen::MatrixXd::Identity(n + 1, n + 1) - vb * vb.transpose() - ve * ve.transpose();
  m += g * vb.transpose();
  m.row(n) += ve.transpose();
  return m;
}

struct StepperState {
  double peak_excited = 0.0;
  double norm_drift = 0.0;
  long steps = 0;

  void observe(const StateVector& y) {
    peak_excited = std::max(peak_excited, std::norm(y[y.size() - 1]));
    norm_drift = std::max(norm_drift, std::abs(y.norm() - 1.0));
    ++steps;
  }
};

void check_finite(const StateVector& y, double t) {
  if (!y.allFinite()) {
    std::ostringstream os;
    os << "non-finite amplitude at t = " << t;
    throw NumericalError(os.str());
  }
}

double step_cap(const IntegrationConfig& cfg, const Schrodinger& rhs, double t) {
  const double d = std::abs(rhs.detuning(t));
  return d > 0.0 ? std::min(cfg.max_step, 0.1 / d) : cfg.max_step;
}

// Dormand-Prince 5(4) tableau.
constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
constexpr double a21 = 1.0 / 5;
constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561, a54 = -212.0 / 729;
constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247, a64 = 49.0 / 176,
                 a65 = -5103.0 / 18656;
constexpr double a71 = 35.0 / 384, a73 = 500.0 / 1113, a74 = 125.0 / 192, a75 = -2187.0 / 6784, a76 = 11.0 / 84;
constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920, e5 = -17253.0 / 339200,
                 e6 = 22.0 / 525, e7 = -1.0 / 40;

class DormandPrince {
 public:
  DormandPrince(const Schrodinger& rhs, const IntegrationConfig& cfg, Index dim)
      : rhs_(rhs), cfg_(cfg), k1_(dim), k2_(dim), k3_(dim), k4_(dim), k5_(dim), k6_(dim), k7_(dim),
        tmp_(dim), y_new_(dim), err_(dim) {}

  // Advances y from t to t_target exactly.
  void advance(double& t, StateVector& y, double t_target, StepperState& stats) {
    if (!first_eval_done_) {
      rhs_(t, y, k1_);
      first_eval_done_ = true;
      h_ = std::min(step_cap(cfg_, rhs_, t), 1e-2 * (cfg_.t_end - cfg_.t_start));
    }
    while (t < t_target) {
      const double cap = step_cap(cfg_, rhs_, t);
      double h = std::min({h_, cap, t_target - t});
      // Stretch by a hair rather than leave a sliver short of the target.
      if (t + 1.01 * h >= t_target) h = t_target - t;
      const bool lands = h >= t_target - t;
      if (!lands && h < 1e-13 * std::max(1.0, std::abs(t))) {
        std::ostringstream os;
        os << "step size underflow at t = " << t << " (h = " << h << ")";
        throw NumericalError(os.str());
      }

      tmp_ = y + h * (a21 * k1_);
      rhs_(t + c2 * h, tmp_, k2_);
      tmp_ = y + h * (a31 * k1_ + a32 * k2_);
      rhs_(t + c3 * h, tmp_, k3_);
      tmp_ = y + h * (a41 * k1_ + a42 * k2_ + a43 * k3_);
      rhs_(t + c4 * h, tmp_, k4_);
      tmp_ = y + h * (a51 * k1_ + a52 * k2_ + a53 * k3_ + a54 * k4_);
      rhs_(t + c5 * h, tmp_, k5_);
      tmp_ = y + h * (a61 * k1_ + a62 * k2_ + a63 * k3_ + a64 * k4_ + a65 * k5_);
      rhs_(t + h, tmp_, k6_);
      y_new_ = y + h * (a71 * k1_ + a73 * k3_ + a74 * k4_ + a75 * k5_ + a76 * k6_);
      const double t_new = lands ? t_target : t + h;
      rhs_(t_new, y_new_, k7_);
      err_ = h * (e1 * k1_ + e3 * k3_ + e4 * k4_ + e5 * k5_ + e6 * k6_ + e7 * k7_);

      double acc = 0.0;
      for (Index k = 0; k < y.size(); ++k) {
        const double scale = cfg_.abs_tol + cfg_.rel_tol * std::max(std::abs(y[k]), std::abs(y_new_[k]));
        const double r = std::abs(err_[k]) / scale;
        acc += r * r;
      }
      const double err = std::sqrt(acc / static_cast<double>(y.size()));

      if (err <= 1.0) {
        check_finite(y_new_, t_new);
        t = t_new;
        y = y_new_;
        k1_ = k7_;
        stats.observe(y);
        const double e = std::max(err, 1e-10);
        double fac = 0.9 * std::pow(e, -0.7 / 5.0) * std::pow(err_prev_, 0.4 / 5.0);
        fac = std::clamp(fac, 0.2, 5.0);
        err_prev_ = e;
        // A step shortened to land on an output time says nothing about h_.
        if (!lands || h >= h_) h_ = h * fac;
      } else {
        if (!std::isfinite(err)) {
          h_ = 0.1 * h;
        } else {
          h_ = h * std::max(0.2, 0.9 * std::pow(err, -0.2));
        }
      }
    }
  }

 private:
  const Schrodinger& rhs_;
  const IntegrationConfig& cfg_;
  StateVector k1_, k2_, k3_, k4_, k5_, k6_, k7_, tmp_, y_new_, err_;
  double h_ = 0.0;
  double err_prev_ = 1e-4;
  bool first_eval_done_ = false;
};

class FixedRk4 {
 public:
  FixedRk4(const Schrodinger& rhs, const IntegrationConfig& cfg, Index dim)
      : rhs_(rhs), cfg_(cfg), k1_(dim), k2_(dim), k3_(dim), k4_(dim), tmp_(dim) {}

  void advance(double& t, StateVector& y, double t_target, StepperState& stats) {
    while (t < t_target) {
      const double h = std::min(cfg_.fixed_step, t_target - t);
      rhs_(t, y, k1_);
      tmp_ = y + 0.5 * h * k1_;
      rhs_(t + 0.5 * h, tmp_, k2_);
      tmp_ = y + 0.5 * h * k2_;
      rhs_(t + 0.5 * h, tmp_, k3_);
      tmp_ = y + h * k3_;
      rhs_(t + h, tmp_, k4_);
      y += (h / 6.0) * (k1_ + 2.0 * k2_ + 2.0 * k3_ + k4_);
      t = (h >= t_target - t) ? t_target : t + h;
      check_finite(y, t);
      stats.observe(y);
    }
  }

 private:
  const Schrodinger& rhs_;
  const IntegrationConfig& cfg_;
  StateVector k1_, k2_, k3_, k4_, tmp_;
};

template <typename Stepper>
TrajectoryRecord run(const CouplingSet& chis, const PulseShape& shape, const DetuningProfile& detuning,
                     const StateVector& initial, const IntegrationConfig& cfg) {
  const Index dim = chis.size() + 1;
  const Schrodinger rhs(chis, shape, detuning);
  Stepper stepper(rhs, cfg, dim);

  StateVector y = initial;
  if (cfg.asymptotic_basis)
    y = adiabatic_to_diabatic(chis, shape(cfg.t_start), detuning(cfg.t_start)).transpose() * initial;

  TrajectoryRecord rec;
  rec.times = cfg.output_grid();
  const auto rows = static_cast<Index>(rec.times.size());
  rec.populations.resize(rows, dim);
  rec.amplitudes.resize(rows, dim);

  StepperState stats;
  stats.peak_excited = std::norm(y[dim - 1]);
  stats.norm_drift = std::abs(y.norm() - 1.0);
  double t = cfg.t_start;
  for (Index r = 0; r < rows; ++r) {
    stepper.advance(t, y, rec.times[static_cast<std::size_t>(r)], stats);
    rec.amplitudes.row(r) = y.transpose();
    rec.populations.row(r) = y.cwiseAbs2().transpose();
  }
  stepper.advance(t, y, cfg.t_end, stats);

  rec.final_state = y;
  if (cfg.asymptotic_basis) rec.final_state = adiabatic_to_diabatic(chis, shape(t), detuning(t)) * y;
  rec.peak_excited = stats.peak_excited;
  rec.norm_drift = stats.norm_drift;
  rec.steps = stats.steps;
  return rec;
}

}  // namespace

void IntegrationConfig::validate() const {
  require(std::isfinite(t_start) && std::isfinite(t_end) && t_start < t_end, "integration window must be finite and increasing");
  require(rel_tol > 0.0 && rel_tol <= 1e-3 && abs_tol > 0.0 && abs_tol <= 1e-3, "tolerances must lie in (0, 1e-3]");
  require(max_step > 0.0, "max_step must be positive");
  require(method != Method::FixedRk4 || fixed_step > 0.0, "fixed step must be positive");
  if (sample_times.empty()) {
    require(samples >= 1, "need at least one output sample");
  } else {
    for (std::size_t k = 0; k < sample_times.size(); ++k) {
      require(sample_times[k] >= t_start && sample_times[k] <= t_end, "sample times must lie in the window");
      if (k > 0) require(sample_times[k] >= sample_times[k - 1], "sample times must be sorted");
    }
  }
}

std::vector<double> IntegrationConfig::output_grid() const {
  if (!sample_times.empty()) return sample_times;
  if (samples == 1) return {t_end};
  std::vector<double> grid(static_cast<std::size_t>(samples));
  for (int k = 0; k < samples; ++k) grid[static_cast<std::size_t>(k)] = t_start + (t_end - t_start) * k / (samples - 1);
  grid.back() = t_end;
  return grid;
}

IntegrationConfig default_config(const ModelSpec& model, double lz_window_factor) {
  model.validate();
  IntegrationConfig cfg;
  if (model.kind == ModelKind::LandauZener) {
    const double c = model.chirp;
    const double w = lz_window_factor * std::max(1.0 / std::sqrt(c), model.chi / c);
    cfg.t_start = -w;
    cfg.t_end = w;
    cfg.asymptotic_basis = true;
    cfg.max_step = 0.1 / std::sqrt(c);
    return cfg;
  }
  const auto [lo, hi] = model.pulse().support();
  cfg.t_start = lo;
  cfg.t_end = hi;
  cfg.max_step = 0.05 * (hi - lo);
  return cfg;
}

TrajectoryRecord integrate(const CouplingSet& chis, const PulseShape& shape, const DetuningProfile& detuning,
                           const StateVector& initial, const IntegrationConfig& cfg) {
  cfg.validate();
  require(initial.size() == chis.size() + 1, "initial state dimension must be N+1");
  require(std::abs(initial.norm() - 1.0) <= 1e-12, "initial state must be normalised");
  if (cfg.method == IntegrationConfig::Method::FixedRk4) return run<FixedRk4>(chis, shape, detuning, initial, cfg);
  return run<DormandPrince>(chis, shape, detuning, initial, cfg);
}

CayleyKlein oracle_cayley_klein(const ModelSpec& model, const IntegrationConfig& cfg) {
  model.validate();
  const CouplingSet single{model.peak_coupling()};
  const PulseShape shape = model.pulse();
  const DetuningProfile detuning = model.detuning();

  const TrajectoryRecord from_bright = integrate(single, shape, detuning, basis_state(2, 0), cfg);
  const TrajectoryRecord from_excited = integrate(single, shape, detuning, basis_state(2, 1), cfg);

  CayleyKlein ck;
  ck.a = from_bright.final_state[0];
  // Excited amplitudes in the frame rotating with theta(t) = integral_0^t Delta.
  ck.b = from_excited.final_state[0] * std::exp(-kI * detuning.phase(cfg.t_start));
  // The Landau-Zener off-diagonal phase drifts logarithmically with the window.
  ck.b_phase_exact = model.kind != ModelKind::LandauZener;
  return ck;
}

double peak_excited_population(const CouplingSet& chis, const PulseShape& shape, const DetuningProfile& detuning,
                               const StateVector& initial, const IntegrationConfig& cfg) {
  return integrate(chis, shape, detuning, initial, cfg).peak_excited;
}

}  // namespace dms
