#include "dms/core.hpp"

#include <algorithm>
#include <limits>
#include <cmath>
#include <numbers>

namespace dms {

namespace {

void require(bool ok, const char* what) {
  if (!ok) throw std::invalid_argument(what);
}

double sech_area_until(double t, double width) {
  // integral_{-inf}^{t} sech(s/T) ds = 2T atan(exp(t/T))
  return 2.0 * width * std::atan(std::exp(t / width));
}

}  // namespace

CouplingSet::CouplingSet(Eigen::VectorXd chis) : chis_(std::move(chis)) {
  require(chis_.size() >= 1, "coupling set needs at least one coupling");
  for (Index n = 0; n < chis_.size(); ++n)
    require(std::isfinite(chis_[n]) && chis_[n] >= 0.0, "couplings must be finite and nonnegative");
  rms_ = chis_.norm();
}

CouplingSet::CouplingSet(std::initializer_list<double> chis)
    : CouplingSet(Eigen::Map<const Eigen::VectorXd>(chis.begin(), static_cast<Index>(chis.size()))) {}

Eigen::VectorXd CouplingSet::partial_norms() const {
  Eigen::VectorXd x(chis_.size());
  double acc = 0.0;
  for (Index n = 0; n < chis_.size(); ++n) {
    acc += chis_[n] * chis_[n];
    x[n] = std::sqrt(acc);
  }
  // Pin the last entry so X_N == chi bit-for-bit.
  x[x.size() - 1] = rms_;
  return x;
}

CouplingSet CouplingSet::scaled_to(double chi_total) const {
  require(rms_ > 0.0, "cannot rescale an all-zero coupling set");
  require(std::isfinite(chi_total) && chi_total >= 0.0, "rms coupling must be finite and nonnegative");
  return CouplingSet(Eigen::VectorXd(chis_ * (chi_total / rms_)));
}

PulseShape PulseShape::sech(double width) {
  require(std::isfinite(width) && width > 0.0, "sech width must be positive");
  return PulseShape(Kind::Sech, width);
}

PulseShape PulseShape::rect(double half_width) {
  require(std::isfinite(half_width) && half_width > 0.0, "rect half-width must be positive");
  return PulseShape(Kind::Rect, half_width);
}

PulseShape PulseShape::const_unit() { return PulseShape(Kind::ConstUnit, 0.0); }

PulseShape PulseShape::custom(std::vector<double> times, std::vector<double> values) {
  require(times.size() == values.size() && times.size() >= 2, "custom envelope needs matching samples");
  for (std::size_t k = 0; k < times.size(); ++k) {
    require(std::isfinite(times[k]) && std::isfinite(values[k]), "custom envelope samples must be finite");
    require(values[k] >= 0.0, "custom envelope must be nonnegative");
    if (k > 0) require(times[k] > times[k - 1], "custom envelope times must increase");
  }
  PulseShape p(Kind::Custom, times.back() - times.front());
  p.times_ = std::move(times);
  p.values_ = std::move(values);
  return p;
}

double PulseShape::operator()(double t) const {
  switch (kind_) {
    case Kind::Sech:
      return 1.0 / std::cosh(t / width_);
    case Kind::Rect:
      return std::abs(t) <= width_ ? 1.0 : 0.0;
    case Kind::ConstUnit:
      return 1.0;
    case Kind::Custom: {
      if (t < times_.front() || t > times_.back()) return 0.0;
      auto it = std::upper_bound(times_.begin(), times_.end(), t);
      if (it == times_.end()) return values_.back();
      const auto k = static_cast<std::size_t>(it - times_.begin());
      const double w = (t - times_[k - 1]) / (times_[k] - times_[k - 1]);
      return (1.0 - w) * values_[k - 1] + w * values_[k];
    }
  }
  return 0.0;
}

double PulseShape::area() const {
  switch (kind_) {
    case Kind::Sech:
      return std::numbers::pi * width_;
    case Kind::Rect:
      return 2.0 * width_;
    case Kind::ConstUnit:
      throw std::invalid_argument("area undefined for a constant envelope");
    case Kind::Custom: {
      double s = 0.0;
      for (std::size_t k = 1; k < times_.size(); ++k)
        s += 0.5 * (values_[k] + values_[k - 1]) * (times_[k] - times_[k - 1]);
      return s;
    }
  }
  return 0.0;
}

double PulseShape::cumulative_area(double t) const {
  switch (kind_) {
    case Kind::Sech:
      return sech_area_until(t, width_);
    case Kind::Rect:
      return std::clamp(t + width_, 0.0, 2.0 * width_);
    case Kind::ConstUnit:
      throw std::invalid_argument("area undefined for a constant envelope");
    case Kind::Custom: {
      double s = 0.0;
      for (std::size_t k = 1; k < times_.size() && times_[k - 1] < t; ++k) {
        const double hi = std::min(t, times_[k]);
        const double f_hi = (*this)(hi);
        s += 0.5 * (values_[k - 1] + f_hi) * (hi - times_[k - 1]);
      }
      return s;
    }
  }
  return 0.0;
}

std::pair<double, double> PulseShape::support() const {
  switch (kind_) {
    case Kind::Sech:
      // sech(25) ~ 3e-11: negligible truncated area at the 1e-6 population level.
      return {-25.0 * width_, 25.0 * width_};
    case Kind::Rect:
      return {-width_, width_};
    case Kind::ConstUnit:
      return {-std::numeric_limits<double>::infinity(), std::numeric_limits<double>::infinity()};
    case Kind::Custom:
      return {times_.front(), times_.back()};
  }
  return {0.0, 0.0};
}

DetuningProfile DetuningProfile::zero() { return DetuningProfile(Kind::Zero); }

DetuningProfile DetuningProfile::constant(double delta0) {
  require(std::isfinite(delta0), "detuning must be finite");
  DetuningProfile d(Kind::Constant);
  d.delta0_ = delta0;
  return d;
}

DetuningProfile DetuningProfile::linear(double chirp) {
  require(std::isfinite(chirp), "chirp must be finite");
  DetuningProfile d(Kind::Linear);
  d.chirp_ = chirp;
  return d;
}

DetuningProfile DetuningProfile::tanh(double delta0, double sweep, double width) {
  require(std::isfinite(delta0) && std::isfinite(sweep), "detuning must be finite");
  require(std::isfinite(width) && width > 0.0, "tanh width must be positive");
  DetuningProfile d(Kind::Tanh);
  d.delta0_ = delta0;
  d.sweep_ = sweep;
  d.width_ = width;
  return d;
}

double DetuningProfile::operator()(double t) const {
  switch (kind_) {
    case Kind::Zero:
      return 0.0;
    case Kind::Constant:
      return delta0_;
    case Kind::Linear:
      return chirp_ * t;
    case Kind::Tanh:
      return delta0_ + sweep_ * std::tanh(t / width_);
  }
  return 0.0;
}

double DetuningProfile::phase(double t) const {
  switch (kind_) {
    case Kind::Zero:
      return 0.0;
    case Kind::Constant:
      return delta0_ * t;
    case Kind::Linear:
      return 0.5 * chirp_ * t * t;
    case Kind::Tanh: {
      // log cosh(x) without overflow for large |x|
      const double x = std::abs(t / width_);
      const double log_cosh = x + std::log1p(std::exp(-2.0 * x)) - std::numbers::ln2;
      return delta0_ * t + sweep_ * width_ * log_cosh;
    }
  }
  return 0.0;
}

const char* to_string(ModelKind kind) {
  switch (kind) {
    case ModelKind::Resonance:
      return "resonance";
    case ModelKind::Rabi:
      return "rabi";
    case ModelKind::LandauZener:
      return "landau_zener";
    case ModelKind::RosenZener:
      return "rosen_zener";
    case ModelKind::AllenEberly:
      return "allen_eberly";
    case ModelKind::DemkovKunike:
      return "demkov_kunike";
  }
  return "unknown";
}

ModelSpec ModelSpec::resonance(double area, PulseShape shape) {
  ModelSpec m;
  m.kind = ModelKind::Resonance;
  m.area = area;
  m.shape = std::move(shape);
  m.T = m.shape.width();
  m.validate();
  m.chi = m.peak_coupling();
  return m;
}

ModelSpec ModelSpec::rabi(double chi, double half_width, double delta0) {
  ModelSpec m;
  m.kind = ModelKind::Rabi;
  m.chi = chi;
  m.T = half_width;
  m.delta0 = delta0;
  m.shape = PulseShape::rect(half_width);
  m.validate();
  return m;
}

ModelSpec ModelSpec::landau_zener(double chi, double chirp) {
  ModelSpec m;
  m.kind = ModelKind::LandauZener;
  m.chi = chi;
  m.chirp = chirp;
  m.shape = PulseShape::const_unit();
  m.validate();
  return m;
}

ModelSpec ModelSpec::rosen_zener(double chi, double width, double delta0) {
  ModelSpec m;
  m.kind = ModelKind::RosenZener;
  m.chi = chi;
  m.T = width;
  m.delta0 = delta0;
  m.shape = PulseShape::sech(width);
  m.validate();
  return m;
}

ModelSpec ModelSpec::allen_eberly(double chi, double width, double sweep) {
  ModelSpec m;
  m.kind = ModelKind::AllenEberly;
  m.chi = chi;
  m.T = width;
  m.sweep = sweep;
  m.shape = PulseShape::sech(width);
  m.validate();
  return m;
}

ModelSpec ModelSpec::demkov_kunike(double chi, double width, double delta0, double sweep) {
  ModelSpec m;
  m.kind = ModelKind::DemkovKunike;
  m.chi = chi;
  m.T = width;
  m.delta0 = delta0;
  m.sweep = sweep;
  m.shape = PulseShape::sech(width);
  m.validate();
  return m;
}

double ModelSpec::peak_coupling() const {
  if (kind == ModelKind::Resonance) return area / shape.area();
  return chi;
}

PulseShape ModelSpec::pulse() const { return shape; }

DetuningProfile ModelSpec::detuning() const {
  switch (kind) {
    case ModelKind::Resonance:
      return DetuningProfile::zero();
    case ModelKind::Rabi:
    case ModelKind::RosenZener:
      return DetuningProfile::constant(delta0);
    case ModelKind::LandauZener:
      return DetuningProfile::linear(chirp);
    case ModelKind::AllenEberly:
      return DetuningProfile::tanh(0.0, sweep, T);
    case ModelKind::DemkovKunike:
      return DetuningProfile::tanh(delta0, sweep, T);
  }
  return DetuningProfile::zero();
}

void ModelSpec::validate() const {
  auto finite_nonneg = [](double v) { return std::isfinite(v) && v >= 0.0; };
  switch (kind) {
    case ModelKind::Resonance:
      require(finite_nonneg(area), "resonance: pulse area must be finite and nonnegative");
      require(shape.kind() != PulseShape::Kind::ConstUnit, "resonance: pulse needs a finite area");
      require(shape.area() > 0.0, "resonance: pulse envelope has zero area");
      return;
    case ModelKind::Rabi:
      require(finite_nonneg(chi), "rabi: chi must be finite and nonnegative");
      require(std::isfinite(T) && T > 0.0, "rabi: half-width T must be positive");
      require(finite_nonneg(delta0), "rabi: detuning must be finite and nonnegative");
      return;
    case ModelKind::LandauZener:
      require(finite_nonneg(chi), "landau_zener: chi must be finite and nonnegative");
      require(std::isfinite(chirp) && chirp > 0.0, "landau_zener: chirp rate C must be positive");
      return;
    case ModelKind::RosenZener:
    case ModelKind::AllenEberly:
    case ModelKind::DemkovKunike:
      require(finite_nonneg(chi), "sech models: chi must be finite and nonnegative");
      require(std::isfinite(T) && T > 0.0, "sech models: width T must be positive");
      require(finite_nonneg(delta0), "sech models: static detuning must be finite and nonnegative");
      require(finite_nonneg(sweep), "sech models: sweep B must be finite and nonnegative");
      return;
  }
}

StateVector basis_state(Index dim, Index k) {
  require(k >= 0 && k < dim, "basis index out of range");
  StateVector v = StateVector::Zero(dim);
  v[k] = 1.0;
  return v;
}

double pulse_area(const CouplingSet& chis, const PulseShape& shape, Index n) {
  require(n >= 0 && n < chis.size(), "coupling index out of range");
  return chis[n] * shape.area();
}

double rms_area(const CouplingSet& chis, const PulseShape& shape) { return chis.rms() * shape.area(); }

Eigen::MatrixXd hamiltonian(const CouplingSet& chis, double f, double delta) {
  const Index n = chis.size();
  Eigen::MatrixXd h = Eigen::MatrixXd::Zero(n + 1, n + 1);
  h.col(n).head(n) = 0.5 * f * chis.values();
  h.row(n).head(n) = h.col(n).head(n).transpose();
  h(n, n) = delta;
  return h;
}

}  // namespace dms
