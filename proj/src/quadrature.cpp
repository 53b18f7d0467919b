#include "hg/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace hg {

QuadratureRule gauss_jacobi_rule(double a, double b, Index m) {
  if (!(a > -1.0) || !(b > -1.0)) throw ParameterError("Jacobi parameters must exceed -1");
  if (m == 0) throw ParameterError("quadrature needs at least one node");

  const auto n = static_cast<Eigen::Index>(m);
  Eigen::VectorXd diag(n), off(std::max<Eigen::Index>(n - 1, 0));
  const double ab = a + b;
  for (Eigen::Index k = 0; k < n; ++k) {
    if (k == 0) {
      diag[k] = (b - a) / (ab + 2.0);
    } else {
      const double s = 2.0 * k + ab;
      diag[k] = (b * b - a * a) / (s * (s + 2.0));
    }
  }
  for (Eigen::Index k = 1; k < n; ++k) {
    double v;
    if (k == 1) {
      v = 4.0 * (1.0 + a) * (1.0 + b) / ((2.0 + ab) * (2.0 + ab) * (3.0 + ab));
    } else {
      const double s = 2.0 * k + ab;
      v = 4.0 * k * (k + a) * (k + b) * (k + ab) / (s * s * (s + 1.0) * (s - 1.0));
    }
    off[k - 1] = std::sqrt(v);
  }

  QuadratureRule q = gauss_rule_from_jacobi_matrix(diag, off);
  q.alpha = a;
  q.beta = b;
  return q;
}

QuadratureRule gauss_rule_from_jacobi_matrix(const Eigen::VectorXd& diag,
                                             const Eigen::VectorXd& off) {
  const Eigen::Index n = diag.size();
  if (n == 0) throw ParameterError("quadrature needs at least one node");
  if (off.size() != n - 1) throw DimensionMismatch("Jacobi matrix off-diagonal has wrong length");

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es;
  es.computeFromTridiagonal(diag, off, Eigen::EigenvaluesOnly);
  if (es.info() != Eigen::Success) throw Error("Jacobi matrix eigen-decomposition failed");

  // Orthonormal recurrence x p_k = off_k p_{k+1} + diag_k p_k + off_{k-1} p_{k-1}
  // with p_0 = 1. Returns the scaled p_n (same zeros as p_n), its derivative
  // and sum_{k<n} p_k^2.
  struct Eval {
    double value, derivative, christoffel;
  };
  auto eval = [&](double x) {
    double p_prev = 0.0, p = 1.0, d_prev = 0.0, d = 0.0, sum = 0.0;
    for (Eigen::Index k = 0; k < n; ++k) {
      sum += p * p;
      const double lower = k > 0 ? off[k - 1] : 0.0;
      double p_next = (x - diag[k]) * p - lower * p_prev;
      double d_next = p + (x - diag[k]) * d - lower * d_prev;
      if (k + 1 < n) {
        p_next /= off[k];
        d_next /= off[k];
      }
      p_prev = p;
      p = p_next;
      d_prev = d;
      d = d_next;
    }
    return Eval{p, d, sum};
  };

  QuadratureRule q;
  q.exactness = static_cast<int>(2 * n - 1);
  q.nodes.resize(static_cast<Index>(n));
  q.weights.resize(static_cast<Index>(n));
  for (Eigen::Index j = 0; j < n; ++j) {
    // Newton polish of the eigenvalue; the weight is the Christoffel number
    // 1 / sum_k p_k(x)^2, accurate even where eigenvector entries are not.
    double x = es.eigenvalues()[j];
    for (int it = 0; it < 3; ++it) {
      const Eval e = eval(x);
      if (e.derivative == 0.0) break;
      const double step = e.value / e.derivative;
      if (!std::isfinite(step) || std::abs(step) > 1e-8 * (1.0 + std::abs(x))) break;
      x -= step;
      if (std::abs(step) <= 1e-17 * (1.0 + std::abs(x))) break;
    }
    q.nodes[static_cast<Index>(j)] = x;
    q.weights[static_cast<Index>(j)] = 1.0 / eval(x).christoffel;
  }
  const double total = std::accumulate(q.weights.begin(), q.weights.end(), 0.0);
  for (double& w : q.weights) w /= total;
  return q;
}

} // namespace hg
