#include "dms/design.hpp"

#include "dms/models.hpp"
#include "dms/propagator.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

namespace dms {

namespace {

constexpr double kPi = std::numbers::pi;

double rz_phase(double x, int l) {
  double s = 0.0;
  for (int k = 0; k < l; ++k) s += 2.0 * std::atan(x / (2.0 * k + 1.0));
  return s;
}

double rz_phase_slope(double x, int l) {
  double s = 0.0;
  for (int k = 0; k < l; ++k) {
    const double o = 2.0 * k + 1.0;
    s += 2.0 * o / (o * o + x * x);
  }
  return s;
}

// Solves rz_phase(x) = level on [0, hi] where the phase is strictly increasing.
double solve_phase(int l, double level, double hi) {
  double lo = 0.0;
  for (int it = 0; it < 200 && hi - lo > 1e-13 * std::max(1.0, hi); ++it) {
    const double mid = 0.5 * (lo + hi);
    (rz_phase(mid, l) < level ? lo : hi) = mid;
  }
  double x = 0.5 * (lo + hi);
  for (int it = 0; it < 3; ++it) {
    const double step = (rz_phase(x, l) - level) / rz_phase_slope(x, l);
    if (!std::isfinite(step)) break;
    x -= step;
  }
  return x;
}

}  // namespace

void DesignTarget::validate() const {
  if (n_states < 1) throw DesignError("design target needs N >= 1");
  if (kind == Kind::EqualAllExceptInitial && n_states < 2)
    throw DesignError("equal superposition of the other ground states needs N >= 2");
  if (kind != Kind::EqualAllFromExcited && (initial < 0 || initial >= n_states))
    throw DesignError("initial ground index out of range");
  if (branch != 1 && branch != -1) throw DesignError("branch must be +1 or -1");
  if (kind == Kind::EqualAllFromGround && branch == -1 && n_states == 1)
    throw DesignError("the minus branch needs N >= 2");
}

Index DesignTarget::start_index() const { return kind == Kind::EqualAllFromExcited ? n_states : initial; }

double DesignTarget::required_a() const { return kind == Kind::EqualAllFromExcited ? 0.0 : -1.0; }

Eigen::VectorXd DesignTarget::populations() const {
  validate();
  Eigen::VectorXd p = Eigen::VectorXd::Zero(n_states + 1);
  const double n = static_cast<double>(n_states);
  switch (kind) {
    case Kind::EqualAllFromGround:
    case Kind::EqualAllFromExcited:
      p.head(n_states).setConstant(1.0 / n);
      break;
    case Kind::EqualAllExceptInitial:
      p.head(n_states).setConstant(1.0 / (n - 1.0));
      p[initial] = 0.0;
      break;
  }
  return p;
}

const char* to_string(DesignTarget::Kind kind) {
  switch (kind) {
    case DesignTarget::Kind::EqualAllFromGround:
      return "equal_all_from_ground";
    case DesignTarget::Kind::EqualAllExceptInitial:
      return "equal_all_except_initial";
    case DesignTarget::Kind::EqualAllFromExcited:
      return "equal_all_from_excited";
  }
  return "unknown";
}

CouplingSet design_couplings(const DesignTarget& target, double chi_total) {
  target.validate();
  if (!(std::isfinite(chi_total) && chi_total > 0.0)) throw DesignError("rms coupling must be positive");
  const Index n_states = target.n_states;
  const double n = static_cast<double>(n_states);
  const double root_n = std::sqrt(n);
  Eigen::VectorXd chi(n_states);
  switch (target.kind) {
    case DesignTarget::Kind::EqualAllFromGround: {
      const double sign = target.branch;
      const double chi0 = chi_total / std::sqrt(2.0 * (n + sign * root_n));
      chi.setConstant(chi0);
      chi[target.initial] = (root_n + sign) * chi0;
      break;
    }
    case DesignTarget::Kind::EqualAllExceptInitial: {
      const double chi0 = chi_total / std::sqrt(2.0 * (n - 1.0));
      chi.setConstant(chi0);
      chi[target.initial] = chi0 * std::sqrt(n - 1.0);
      break;
    }
    case DesignTarget::Kind::EqualAllFromExcited:
      chi.setConstant(chi_total / root_n);
      break;
  }
  return CouplingSet(chi);
}

Eigen::VectorXd resonance_areas(const DesignTarget& target, int l) {
  target.validate();
  if (l < 0) throw DesignError("pulse index l must be nonnegative");
  const double n = static_cast<double>(target.n_states);
  const double root_n = std::sqrt(n);
  const double odd_pi = (2.0 * l + 1.0) * kPi;
  Eigen::VectorXd areas(target.n_states);
  switch (target.kind) {
    case DesignTarget::Kind::EqualAllFromExcited:
      areas.setConstant(odd_pi / root_n);
      break;
    case DesignTarget::Kind::EqualAllFromGround: {
      const double sign = target.branch;
      areas.setConstant(std::sqrt(2.0 / (n + sign * root_n)) * odd_pi);
      areas[target.initial] = std::sqrt(2.0 * (root_n + sign) / root_n) * odd_pi;
      break;
    }
    case DesignTarget::Kind::EqualAllExceptInitial:
      areas.setConstant(std::sqrt(2.0 / (n - 1.0)) * odd_pi);
      areas[target.initial] = std::sqrt(2.0) * odd_pi;
      break;
  }
  return areas;
}

RzRootReport rz_minus_one_detunings(int l) {
  if (l < 1) throw DesignError("Rosen-Zener root search needs l >= 1");
  RzRootReport report;
  report.l = l;
  // Each atan term exceeds pi/2 - (2k+1)/x, so phase(x) > l pi - 2 l^2 / x.
  const double hi = 4.0 * l * l / kPi + 1.0;
  for (int level = (l - 1) % 2; level <= l - 1; level += 2) {
    const double x = level == 0 ? 0.0 : solve_phase(l, level * kPi, hi);
    report.roots.push_back({x, std::abs(rz_integer_alpha_a(l, x) + 1.0)});
  }
  return report;
}

DesignCheck verify_design(const DesignTarget& target, const CouplingSet& chis, const CayleyKlein& ck,
                          double tolerance) {
  target.validate();
  if (chis.size() != target.n_states) throw DesignError("coupling count does not match the target");
  DesignCheck check;
  check.populations = populations(chis, ck, target.start_index());
  const Eigen::VectorXd want = target.populations();
  check.max_deviation = (check.populations.probs - want).cwiseAbs().maxCoeff();
  check.passed = check.max_deviation <= tolerance;
  std::ostringstream os;
  os << to_string(target.kind) << " N=" << target.n_states << ": max deviation " << check.max_deviation
     << (check.passed ? " <= " : " > ") << "tolerance " << tolerance;
  check.report = os.str();
  return check;
}

}  // namespace dms
