#pragma once

#include "dms/core.hpp"

#include <vector>

namespace dms {

/// Dark/bright decomposition of the ground manifold.
///
/// Columns of W are [dark_0 .. dark_{N-2}, bright, excited]; all dark and
/// bright vectors have a zero excited component.
struct MsBasis {
  std::vector<Eigen::VectorXd> dark;
  Eigen::VectorXd bright;
  Eigen::MatrixXd W;
};

/// Builds the canonical dark states
///   dark_k ∝ [chi_1 chi_{k+1}, ..., chi_k chi_{k+1}, -X_k^2, 0, ...]
/// and bright = chi / |chi|. If some leading partial norm vanishes, the
/// construction runs on a stable reordering with nonzero couplings first and
/// the result is permuted back.
MsBasis build_ms_basis(const CouplingSet& chis);

/// W^T H W at one instant; only the trailing 2x2 block [[0, Omega/2], [Omega/2, Delta]]
/// is nonzero.
Eigen::MatrixXd transform_hamiltonian(const CouplingSet& chis, double f, double delta);

struct EigenvalueSet {
  Index zeros = 0;
  double lambda_plus = 0.0;
  double lambda_minus = 0.0;

  /// All N+1 eigenvalues in ascending order.
  Eigen::VectorXd sorted() const;
};

/// N-1 zero eigenvalues and lambda_± = (Delta ± sqrt(Delta^2 + Omega^2)) / 2.
EigenvalueSet eigenvalues(const CouplingSet& chis, double f, double delta);

}  // namespace dms
