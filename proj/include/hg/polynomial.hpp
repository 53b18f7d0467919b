#pragma once

// Polynomial hypergroups on N_0 from orthogonal polynomials normalized by
// R_n(1) = 1, with structure constants given by linearization coefficients
// R_m R_n = sum_k g(m,n;k) R_k.

#include "hg/oracle.hpp"
#include "hg/quadrature.hpp"

#include <map>
#include <memory>
#include <shared_mutex>

namespace hg {

/// x R_n(x) = a_n R_{n+1}(x) + b_n R_n(x) + c_n R_{n-1}(x), a_n + b_n + c_n = 1.
class PolynomialRecurrence {
public:
  /// Jacobi order (alpha, beta) with alpha >= beta > -1 and alpha + beta + 1 >= 0.
  static PolynomialRecurrence jacobi(double alpha, double beta);
  static PolynomialRecurrence chebyshev() { return jacobi(-0.5, -0.5); }
  static PolynomialRecurrence legendre() { return jacobi(0.0, 0.0); }
  /// Explicit coefficients; c[0] is ignored. Requires a_n > 0, c_n > 0 for
  /// n >= 1 and a_n + b_n + c_n = 1.
  static PolynomialRecurrence from_coefficients(std::vector<double> a, std::vector<double> b,
                                                std::vector<double> c);

  bool is_jacobi() const { return jacobi_; }
  double alpha() const { return alpha_; }
  double beta() const { return beta_; }
  /// Largest n for which the recurrence can produce R_{n+1}.
  Index max_degree() const;

  double a(Index n) const;
  double b(Index n) const;
  double c(Index n) const;

  /// R_0(x), ..., R_N(x).
  std::vector<double> evaluate(double x, Index N) const;

private:
  bool jacobi_ = false;
  double alpha_ = 0.0, beta_ = 0.0;
  std::vector<double> a_, b_, c_;
};

/// Closed-form Haar weight
///   h(n) = (2n+alpha+beta+1) (alpha+beta+1)_n (alpha+1)_n
///          / ((alpha+beta+1) n! (beta+1)_n).
/// Throws ParameterError at alpha + beta + 1 = 0, where the quadrature route
/// must be used instead.
double jacobi_haar(double alpha, double beta, Index n);

/// Linearization coefficients g(m,n;k) = h(k) int R_m R_n R_k dpi by Gauss
/// quadrature for the orthogonality measure, cached per (m,n).
class PolynomialOracle : public StructureOracle {
public:
  /// quad must integrate the orthogonality measure exactly to degree 2N+2.
  PolynomialOracle(PolynomialRecurrence rec, Index N, QuadratureRule quad);

  std::string family() const override;
  bool is_discrete() const override { return true; }
  Index bound() const override { return bound_; }
  std::vector<Mass> constants(Index m, Index n) const override;
  /// 1 / int R_n^2 dpi = 1 / g(n,n;0).
  double haar(Index n) const override;

  bool has_character() const override { return true; }
  /// R_n(point) by the recurrence; valid beyond the truncation bound.
  double character(double point, Index n) const override;
  /// Jacobi measures are absolutely continuous, so every point has mass 0.
  std::optional<double> atom_mass(double point) const override;

  const PolynomialRecurrence& recurrence() const { return rec_; }
  const QuadratureRule& quadrature() const { return quad_; }

private:
  PolynomialRecurrence rec_;
  Index bound_;
  QuadratureRule quad_;
  /// values_[j][n] = R_n(x_j).
  std::vector<std::vector<double>> values_;
  std::vector<double> haar_;

  mutable std::shared_mutex mutex_;
  mutable std::map<std::pair<Index, Index>, std::vector<Mass>> cache_;
};

/// Gauss rule for the orthogonality measure of any recurrence, from the
/// symmetrized tridiagonal matrix with off-diagonal sqrt(a_{n-1} c_n).
QuadratureRule gauss_rule_from_recurrence(const PolynomialRecurrence& rec, Index m);

/// Default rule: 2N + 16 Gauss-Jacobi nodes.
std::shared_ptr<PolynomialOracle> polynomial_hypergroup(const PolynomialRecurrence& rec, Index N);
std::shared_ptr<PolynomialOracle> polynomial_hypergroup(const PolynomialRecurrence& rec, Index N,
                                                        const QuadratureRule& quad);

/// Thrown when a linearization coefficient is negative beyond -1e-12.
class NegativeLinearization : public ParameterError {
public:
  using ParameterError::ParameterError;
};

} // namespace hg
