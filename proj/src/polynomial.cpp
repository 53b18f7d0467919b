#include "hg/polynomial.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <mutex>
#include <numeric>
#include <sstream>

namespace hg {

constexpr double kNegativeTolerance = 1e-12;

double StructureOracle::character(double, Index) const {
  throw ParameterError(family() + " has no character evaluator");
}

std::optional<double> StructureOracle::atom_mass(double) const { return std::nullopt; }

// ---------------------------------------------------------------- recurrence

PolynomialRecurrence PolynomialRecurrence::jacobi(double alpha, double beta) {
  if (!(alpha >= beta) || !(beta > -1.0) || !(alpha + beta + 1.0 >= -1e-15))
    throw ParameterError("Jacobi order needs alpha >= beta > -1 and alpha + beta + 1 >= 0");
  PolynomialRecurrence r;
  r.jacobi_ = true;
  r.alpha_ = alpha;
  r.beta_ = beta;
  return r;
}

PolynomialRecurrence PolynomialRecurrence::from_coefficients(std::vector<double> a,
                                                             std::vector<double> b,
                                                             std::vector<double> c) {
  if (a.empty() || a.size() != b.size() || a.size() != c.size())
    throw DimensionMismatch("recurrence coefficient vectors must share a positive length");
  for (std::size_t n = 0; n < a.size(); ++n) {
    if (n == 0) c[0] = 0.0;
    if (!(a[n] > 0.0) || (n > 0 && !(c[n] > 0.0)))
      throw ParameterError("recurrence needs a_n > 0 and c_n > 0");
    if (std::abs(a[n] + b[n] + c[n] - 1.0) > 1e-12)
      throw ParameterError("recurrence must satisfy a_n + b_n + c_n = 1");
  }
  PolynomialRecurrence r;
  r.alpha_ = r.beta_ = std::numeric_limits<double>::quiet_NaN();
  r.a_ = std::move(a);
  r.b_ = std::move(b);
  r.c_ = std::move(c);
  return r;
}

Index PolynomialRecurrence::max_degree() const {
  return jacobi_ ? std::numeric_limits<Index>::max() : a_.size() - 1;
}

double PolynomialRecurrence::a(Index n) const {
  if (!jacobi_) return a_.at(n);
  const double ab = alpha_ + beta_;
  if (n == 0) return 2.0 * (alpha_ + 1.0) / (ab + 2.0);
  const double s = 2.0 * n + ab;
  return 2.0 * (n + ab + 1.0) * (n + alpha_ + 1.0) / ((s + 1.0) * (s + 2.0));
}

double PolynomialRecurrence::c(Index n) const {
  if (!jacobi_) return n == 0 ? 0.0 : c_.at(n);
  if (n == 0) return 0.0;
  const double s = 2.0 * n + alpha_ + beta_;
  return 2.0 * n * (n + beta_) / (s * (s + 1.0));
}

double PolynomialRecurrence::b(Index n) const {
  if (!jacobi_) return b_.at(n);
  return 1.0 - a(n) - c(n);
}

std::vector<double> PolynomialRecurrence::evaluate(double x, Index N) const {
  if (!jacobi_ && N > a_.size()) throw ParameterError("recurrence coefficients too short");
  std::vector<double> r(N + 1);
  r[0] = 1.0;
  if (N == 0) return r;
  r[1] = (x - b(0)) / a(0);
  for (Index n = 1; n < N; ++n) r[n + 1] = ((x - b(n)) * r[n] - c(n) * r[n - 1]) / a(n);
  return r;
}

double jacobi_haar(double alpha, double beta, Index n) {
  const double s = alpha + beta + 1.0;
  if (std::abs(s) < 1e-14)
    throw ParameterError("closed-form Haar weight is singular at alpha + beta + 1 = 0");
  if (n == 0) return 1.0;
  double h = (2.0 * n + s) / s;
  for (Index k = 0; k < n; ++k)
    h *= (s + k) * (alpha + 1.0 + k) / ((k + 1.0) * (beta + 1.0 + k));
  return h;
}

QuadratureRule gauss_rule_from_recurrence(const PolynomialRecurrence& rec, Index m) {
  if (m == 0) throw ParameterError("quadrature needs at least one node");
  if (rec.is_jacobi()) return gauss_jacobi_rule(rec.alpha(), rec.beta(), m);
  if (m > rec.max_degree() + 1) throw ParameterError("recurrence coefficients too short");
  const auto n = static_cast<Eigen::Index>(m);
  Eigen::VectorXd diag(n), off(n - 1);
  for (Eigen::Index k = 0; k < n; ++k) diag[k] = rec.b(static_cast<Index>(k));
  for (Eigen::Index k = 1; k < n; ++k)
    off[k - 1] = std::sqrt(rec.a(static_cast<Index>(k - 1)) * rec.c(static_cast<Index>(k)));
  QuadratureRule q = gauss_rule_from_jacobi_matrix(diag, off);
  q.alpha = q.beta = std::numeric_limits<double>::quiet_NaN();
  return q;
}

// ---------------------------------------------------------------- oracle

PolynomialOracle::PolynomialOracle(PolynomialRecurrence rec, Index N, QuadratureRule quad)
    : rec_(std::move(rec)), bound_(N), quad_(std::move(quad)) {
  if (quad_.exactness < static_cast<int>(2 * N + 2))
    throw ParameterError("quadrature exact to degree " + std::to_string(quad_.exactness) +
                         ", need " + std::to_string(2 * N + 2));
  if (rec_.is_jacobi() &&
      (std::abs(quad_.alpha - rec_.alpha()) > 1e-15 || std::abs(quad_.beta - rec_.beta()) > 1e-15))
    throw ParameterError("quadrature rule does not match the Jacobi order");
  values_.reserve(quad_.size());
  for (const double x : quad_.nodes) values_.push_back(rec_.evaluate(x, N));
  haar_.resize(N + 1);
  for (Index n = 0; n <= N; ++n) {
    double s = 0.0;
    for (Index j = 0; j < quad_.size(); ++j) s += quad_.weights[j] * values_[j][n] * values_[j][n];
    haar_[n] = 1.0 / s;
  }
  haar_[0] = 1.0;
}

std::string PolynomialOracle::family() const {
  if (!rec_.is_jacobi()) return "polynomial";
  std::ostringstream os;
  os.precision(17);
  os << "jacobi(" << rec_.alpha() << "," << rec_.beta() << ")";
  return os.str();
}

double PolynomialOracle::haar(Index n) const {
  if (n > bound_) throw std::out_of_range("Haar weight beyond the truncation bound");
  return haar_[n];
}

std::vector<Mass> PolynomialOracle::constants(Index m, Index n) const {
  if (m > n) std::swap(m, n);
  if (m + n > bound_) throw std::out_of_range("linearization beyond the truncation bound");
  {
    std::shared_lock lock(mutex_);
    if (const auto it = cache_.find({m, n}); it != cache_.end()) return it->second;
  }
  std::vector<Mass> row;
  double total = 0.0;
  bool clamped = false;
  for (Index k = n - m; k <= n + m; ++k) {
    double s = 0.0;
    for (Index j = 0; j < quad_.size(); ++j)
      s += quad_.weights[j] * values_[j][m] * values_[j][n] * values_[j][k];
    double g = haar_[k] * s;
    if (g < 0.0) {
      if (g < -kNegativeTolerance)
        throw NegativeLinearization("g(" + std::to_string(m) + "," + std::to_string(n) + ";" +
                                    std::to_string(k) + ") = " + std::to_string(g) +
                                    " is negative");
      g = 0.0;
      clamped = true;
    }
    if (g != 0.0) row.push_back({k, g});
    total += g;
  }
  if (clamped)
    for (Mass& e : row) e.p /= total;
  std::unique_lock lock(mutex_);
  return cache_.emplace(std::make_pair(m, n), std::move(row)).first->second;
}

double PolynomialOracle::character(double point, Index n) const {
  if (!(point >= -1.0 && point <= 1.0)) throw ParameterError("character point must lie in [-1,1]");
  return rec_.evaluate(point, n)[n];
}

std::optional<double> PolynomialOracle::atom_mass(double) const {
  if (rec_.is_jacobi()) return 0.0;
  return std::nullopt;
}

std::shared_ptr<PolynomialOracle> polynomial_hypergroup(const PolynomialRecurrence& rec, Index N) {
  return polynomial_hypergroup(rec, N, gauss_rule_from_recurrence(rec, 2 * N + 16));
}

std::shared_ptr<PolynomialOracle> polynomial_hypergroup(const PolynomialRecurrence& rec, Index N,
                                                        const QuadratureRule& quad) {
  return std::make_shared<PolynomialOracle>(rec, N, quad);
}

} // namespace hg
