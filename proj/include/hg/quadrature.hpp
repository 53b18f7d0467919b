#pragma once

#include "hg/core.hpp"

#include <vector>

namespace hg {

/// Gauss rule for the Jacobi probability measure on [-1,1], proportional to
/// (1-x)^alpha (1+x)^beta dx.
struct QuadratureRule {
  double alpha = 0.0;
  double beta = 0.0;
  std::vector<double> nodes;
  std::vector<double> weights;
  /// Polynomials up to this degree are integrated exactly.
  int exactness = -1;

  Index size() const { return nodes.size(); }
};

/// Nodes are the eigenvalues of the Jacobi matrix (Golub-Welsch). Weights sum
/// to one. Requires alpha, beta > -1 and m >= 1.
QuadratureRule gauss_jacobi_rule(double alpha, double beta, Index m);

/// Gauss rule of a probability measure from its symmetric Jacobi matrix:
/// eigenvalues polished by Newton steps on the orthonormal recurrence, weights
/// from the Christoffel function. alpha and beta are left at their defaults.
QuadratureRule gauss_rule_from_jacobi_matrix(const Eigen::VectorXd& diag,
                                             const Eigen::VectorXd& off);

} // namespace hg
