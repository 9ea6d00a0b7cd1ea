#include "dms/propagator.hpp"

#include <cmath>
#include <numbers>

namespace dms {

namespace {

void require(bool ok, const char* what) {
  if (!ok) throw std::invalid_argument(what);
}

void require_bright(const CouplingSet& chis) {
  require(chis.rms() > 0.0, "no bright state: all couplings vanish");
}

}  // namespace

Propagator assemble_propagator(const CouplingSet& chis, const CayleyKlein& ck) {
  require_bright(chis);
  const Index n = chis.size();
  const Eigen::VectorXd u = chis.values() / chis.rms();

  Propagator p;
  p.b_phase_exact = ck.b_phase_exact;
  p.matrix.resize(n + 1, n + 1);
  p.matrix.topLeftCorner(n, n) = ((ck.a - 1.0) * (u * u.transpose()).cast<Complex>());
  p.matrix.topLeftCorner(n, n).diagonal().array() += 1.0;
  p.matrix.col(n).head(n) = ck.b * u.cast<Complex>();
  p.matrix.row(n).head(n) = -std::conj(ck.b) * u.transpose().cast<Complex>();
  p.matrix(n, n) = std::conj(ck.a);
  return p;
}

StateVector propagate(const Propagator& u, const StateVector& initial) {
  require(initial.size() == u.dim(), "state dimension does not match propagator");
  if (!u.b_phase_exact) {
    Index nonzero = 0;
    for (Index k = 0; k < initial.size(); ++k)
      if (initial[k] != Complex(0.0, 0.0)) ++nonzero;
    if (nonzero > 1) throw std::invalid_argument("b phase not analytic: use the dynamics oracle for superposition inputs");
  }
  return u.matrix * initial;
}

PopulationDistribution populations_from_ground(const CouplingSet& chis, const CayleyKlein& ck, Index i) {
  require_bright(chis);
  const Index n = chis.size();
  require(i >= 0 && i < n, "initial ground index out of range");
  const double chi2 = chis.rms() * chis.rms();
  const double wi = chis[i] * chis[i] / chi2;
  const double am1 = std::norm(ck.a - 1.0);

  PopulationDistribution d;
  d.initial = i;
  d.probs.resize(n + 1);
  for (Index m = 0; m < n; ++m) d.probs[m] = am1 * wi * chis[m] * chis[m] / chi2;
  d.probs[i] = std::norm(1.0 + (ck.a - 1.0) * wi);
  d.probs[n] = (1.0 - std::norm(ck.a)) * wi;
  return d;
}

PopulationDistribution populations_from_excited(const CouplingSet& chis, const CayleyKlein& ck) {
  require_bright(chis);
  const Index n = chis.size();
  const double chi2 = chis.rms() * chis.rms();
  const double b2 = 1.0 - std::norm(ck.a);

  PopulationDistribution d;
  d.initial = n;
  d.probs.resize(n + 1);
  d.probs.head(n) = b2 * chis.values().array().square() / chi2;
  d.probs[n] = std::norm(ck.a);
  return d;
}

PopulationDistribution populations(const CouplingSet& chis, const CayleyKlein& ck, Index initial) {
  if (initial == chis.size()) return populations_from_excited(chis, ck);
  return populations_from_ground(chis, ck, initial);
}

double population_ratio(const CouplingSet& chis, Index m, Index n, Index i) {
  const Index size = chis.size();
  require(m >= 0 && m < size && n >= 0 && n < size && i >= 0 && i < size, "ground index out of range");
  require(m != i && n != i, "ratio is defined for states other than the initial one");
  if (chis[n] == 0.0) throw std::invalid_argument("ratio undefined: reference coupling is zero");
  return (chis[m] * chis[m]) / (chis[n] * chis[n]);
}

double lz_parameter(double chi, double chirp) {
  require(chirp > 0.0, "chirp rate C must be positive");
  return std::numbers::pi * chi * chi / (4.0 * chirp);
}

Propagator lz_propagator_entries(const CouplingSet& chis, double lambda) {
  require(std::isfinite(lambda) && lambda >= 0.0, "Lambda must be finite and nonnegative");
  CayleyKlein ck;
  ck.a = std::exp(-lambda);
  // 1 - e^{-2 Lambda} without cancellation for small Lambda
  ck.b = Complex(0.0, -std::sqrt(-std::expm1(-2.0 * lambda)));
  ck.b_phase_exact = false;
  return assemble_propagator(chis, ck);
}

PopulationDistribution lz_populations(const CouplingSet& chis, double lambda, Index initial) {
  require(std::isfinite(lambda) && lambda >= 0.0, "Lambda must be finite and nonnegative");
  require_bright(chis);
  const Index n = chis.size();
  require(initial >= 0 && initial <= n, "initial index out of range");
  const double chi2 = chis.rms() * chis.rms();
  const Eigen::ArrayXd w = chis.values().array().square() / chi2;
  const double one_minus_a = -std::expm1(-lambda);
  const double one_minus_a2 = -std::expm1(-2.0 * lambda);

  PopulationDistribution d;
  d.initial = initial;
  d.probs.resize(n + 1);
  if (initial == n) {
    d.probs.head(n) = w * one_minus_a2;
    d.probs[n] = std::exp(-2.0 * lambda);
    return d;
  }
  const double wi = w[initial];
  d.probs.head(n) = w * wi * one_minus_a * one_minus_a;
  const double stay = 1.0 - wi * one_minus_a;
  d.probs[initial] = stay * stay;
  d.probs[n] = wi * one_minus_a2;
  return d;
}

DOGrid::DOGrid(double chirp, CouplingSet chis, std::vector<double> energies)
    : chirp_(chirp), chis_(std::move(chis)), energies_(std::move(energies)) {
  require(std::isfinite(chirp_) && chirp_ > 0.0, "slanted-level slope must be positive");
  require(static_cast<Index>(energies_.size()) == chis_.size(), "one energy per parallel level");
  for (std::size_t k = 1; k < energies_.size(); ++k)
    require(energies_[k] > energies_[k - 1], "parallel level energies must strictly increase");
  q_.resize(energies_.size());
  for (Index n = 0; n < chis_.size(); ++n)
    q_[static_cast<std::size_t>(n)] = std::exp(-std::numbers::pi * chis_[n] * chis_[n] / (2.0 * chirp_));
}

double do_probability(const DOGrid& grid, Index from, Index to) {
  const Index n = grid.size();
  require(from >= 0 && from <= n && to >= 0 && to <= n, "state index out of range");
  auto q_run = [&](Index lo, Index hi) {  // q_lo * ... * q_{hi-1}
    double prod = 1.0;
    for (Index k = lo; k < hi; ++k) prod *= grid.q(k);
    return prod;
  };
  if (from == n && to == n) return q_run(0, n);
  if (from == n) return q_run(0, to) * grid.p(to);
  if (to == n) return grid.p(from) * q_run(from + 1, n);
  if (from == to) return grid.q(from);
  if (from > to) return 0.0;
  return grid.p(from) * q_run(from + 1, to) * grid.p(to);
}

}  // namespace dms
