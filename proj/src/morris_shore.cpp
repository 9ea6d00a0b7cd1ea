#include "dms/morris_shore.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace dms {

namespace {

// Dark states in closed form; requires partial norms X_n > 0 for n >= 2.
std::vector<Eigen::VectorXd> canonical_dark_states(const Eigen::VectorXd& chi) {
  const Index n = chi.size();
  std::vector<Eigen::VectorXd> dark;
  dark.reserve(static_cast<std::size_t>(std::max<Index>(n - 1, 0)));
  double prefix_sq = chi[0] * chi[0];
  for (Index k = 1; k < n; ++k) {
    const double x_prev = std::sqrt(prefix_sq);
    const double x_next = std::sqrt(prefix_sq + chi[k] * chi[k]);
    Eigen::VectorXd v = Eigen::VectorXd::Zero(n + 1);
    if (k == 1) {
      v[0] = chi[1];
      v[1] = -chi[0];
      v /= x_next;
    } else {
      v.head(k) = chi.head(k) * chi[k];
      v[k] = -prefix_sq;
      v /= x_prev * x_next;
    }
    dark.push_back(std::move(v));
    prefix_sq += chi[k] * chi[k];
  }
  return dark;
}

}  // namespace

MsBasis build_ms_basis(const CouplingSet& chis) {
  if (!(chis.rms() > 0.0)) throw std::invalid_argument("no bright state: all couplings vanish");
  const Index n = chis.size();
  const Eigen::VectorXd& chi = chis.values();

  // X_n for n >= 2 vanishes only when the first two couplings are zero.
  const bool closed_form = n < 2 || chi[0] > 0.0 || chi[1] > 0.0;

  std::vector<Index> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), Index{0});
  if (!closed_form)
    std::stable_partition(order.begin(), order.end(), [&](Index k) { return chi[k] > 0.0; });

  Eigen::VectorXd permuted(n);
  for (Index k = 0; k < n; ++k) permuted[k] = chi[order[static_cast<std::size_t>(k)]];

  MsBasis basis;
  for (auto& v : canonical_dark_states(permuted)) {
    Eigen::VectorXd back = Eigen::VectorXd::Zero(n + 1);
    for (Index k = 0; k < n; ++k) back[order[static_cast<std::size_t>(k)]] = v[k];
    basis.dark.push_back(std::move(back));
  }

  basis.bright = Eigen::VectorXd::Zero(n + 1);
  basis.bright.head(n) = chi / chis.rms();

  basis.W = Eigen::MatrixXd::Zero(n + 1, n + 1);
  for (std::size_t k = 0; k < basis.dark.size(); ++k) basis.W.col(static_cast<Index>(k)) = basis.dark[k];
  basis.W.col(n - 1) = basis.bright;
  basis.W(n, n) = 1.0;
  return basis;
}

Eigen::MatrixXd transform_hamiltonian(const CouplingSet& chis, double f, double delta) {
  const MsBasis basis = build_ms_basis(chis);
  return basis.W.transpose() * hamiltonian(chis, f, delta) * basis.W;
}

Eigen::VectorXd EigenvalueSet::sorted() const {
  Eigen::VectorXd v(zeros + 2);
  v.setZero();
  v[zeros] = lambda_plus;
  v[zeros + 1] = lambda_minus;
  std::sort(v.begin(), v.end());
  return v;
}

EigenvalueSet eigenvalues(const CouplingSet& chis, double f, double delta) {
  const double omega = chis.rms() * f;
  const double root = std::hypot(delta, omega);
  EigenvalueSet ev;
  ev.zeros = chis.size() - 1;
  ev.lambda_plus = 0.5 * (delta + root);
  ev.lambda_minus = 0.5 * (delta - root);
  return ev;
}

}  // namespace dms
