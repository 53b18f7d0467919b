#pragma once

// Finite commutative hypergroups as validated structure-constant tensors,
// together with the measure-algebra operations on L^1(K).

#include <Eigen/Dense>

#include <complex>
#include <cstddef>
#include <memory>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace hg {

using Index = std::size_t;
using Complex = std::complex<double>;
using ComplexVector = Eigen::VectorXcd;
using ComplexMatrix = Eigen::MatrixXcd;

inline constexpr double kDefaultTolerance = 1e-12;

class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

class DimensionMismatch : public Error {
public:
  using Error::Error;
};

class ParameterError : public Error {
public:
  using Error::Error;
};

class SingularSystem : public Error {
public:
  using Error::Error;
};

/// Mass placed on element z by one product p(x,y).
struct Mass {
  Index z;
  double p;
};

/// Raw structure constants p(x,y)({z}) in compressed row form, one sparse row
/// per ordered pair (x,y). Carries identity and involution but makes no claim
/// that the hypergroup axioms hold; see check_axioms.
class StructureTensor {
public:
  StructureTensor() = default;

  /// rows[x * n + y] lists the masses of p(x,y). Entries are sorted by z,
  /// duplicate z are summed and exact zeros are dropped.
  static StructureTensor from_rows(Index size, Index identity, std::vector<Index> involution,
                                   std::vector<std::vector<Mass>> rows);

  /// dense[(x * n + y) * n + z] = p(x,y)({z}).
  static StructureTensor from_dense(Index size, Index identity, std::vector<Index> involution,
                                    std::span<const double> dense);

  Index size() const { return size_; }
  Index identity() const { return identity_; }
  Index involution(Index x) const { return involution_.at(x); }
  const std::vector<Index>& involution() const { return involution_; }

  std::span<const Mass> row(Index x, Index y) const {
    const Index r = x * size_ + y;
    return {masses_.data() + offsets_[r], masses_.data() + offsets_[r + 1]};
  }
  double prob(Index x, Index y, Index z) const;
  std::size_t nonzeros() const { return masses_.size(); }

  /// Returns a copy with p(x,y)({z}) replaced by value (and p(y,x)({z}) too
  /// when symmetric is set).
  StructureTensor with_entry(Index x, Index y, Index z, double value, bool symmetric) const;

private:
  Index size_ = 0;
  Index identity_ = 0;
  std::vector<Index> involution_;
  std::vector<std::size_t> offsets_{0};
  std::vector<Mass> masses_;
};

/// Maximum absolute defect per hypergroup axiom.
struct AxiomReport {
  double probability = 0.0;
  double commutativity = 0.0;
  double identity = 0.0;
  double support = 0.0;
  double involution = 0.0;
  double associativity = 0.0;
  double tolerance = kDefaultTolerance;

  bool pass_probability() const { return probability <= tolerance; }
  bool pass_commutativity() const { return commutativity <= tolerance; }
  bool pass_identity() const { return identity <= tolerance; }
  bool pass_support() const { return support <= tolerance; }
  bool pass_involution() const { return involution <= tolerance; }
  bool pass_associativity() const { return associativity <= tolerance; }
  bool pass() const {
    return pass_probability() && pass_commutativity() && pass_identity() && pass_support() &&
           pass_involution() && pass_associativity();
  }
  double max_residual() const;
  std::string summary() const;
};

class AxiomViolation : public Error {
public:
  AxiomViolation(const std::string& what, AxiomReport report)
      : Error(what), report_(report) {}
  const AxiomReport& report() const { return report_; }

private:
  AxiomReport report_;
};

class HypergroupTable;
using TablePtr = std::shared_ptr<const HypergroupTable>;

/// Immutable validated hypergroup: structure constants plus the Haar weights w
/// in compact normalization (sum w = 1).
class HypergroupTable {
public:
  const StructureTensor& tensor() const { return tensor_; }
  Index size() const { return tensor_.size(); }
  Index identity() const { return tensor_.identity(); }
  Index involution(Index x) const { return tensor_.involution(x); }
  std::span<const Mass> row(Index x, Index y) const { return tensor_.row(x, y); }
  double prob(Index x, Index y, Index z) const { return tensor_.prob(x, y, z); }

  const std::vector<double>& haar() const { return haar_; }
  double haar(Index x) const { return haar_[x]; }
  /// h(x) = w(x) / w(e), the normalization with h(e) = 1.
  std::vector<double> discrete_haar() const;

  const std::string& label() const { return label_; }

  /// Factors when this table was produced by product_hypergroup.
  const TablePtr& left_factor() const { return left_; }
  const TablePtr& right_factor() const { return right_; }
  bool is_product() const { return left_ != nullptr; }

private:
  friend TablePtr build_hypergroup(StructureTensor, double, std::string);
  friend TablePtr product_hypergroup(const TablePtr&, const TablePtr&);

  HypergroupTable(StructureTensor tensor, std::vector<double> haar, std::string label)
      : tensor_(std::move(tensor)), haar_(std::move(haar)), label_(std::move(label)) {}

  StructureTensor tensor_;
  std::vector<double> haar_;
  std::string label_;
  TablePtr left_;
  TablePtr right_;
};

/// Validates every axiom at tol and computes the Haar weights. Throws
/// AxiomViolation (carrying the report) when an axiom fails.
TablePtr build_hypergroup(StructureTensor tensor, double tol = kDefaultTolerance,
                          std::string label = {});

AxiomReport check_axioms(const StructureTensor& tensor, double tol = kDefaultTolerance);
inline AxiomReport check_axioms(const HypergroupTable& table, double tol = kDefaultTolerance) {
  return check_axioms(table.tensor(), tol);
}

/// Unique probability vector w with sum_x w(x) p(y,x)({z}) = w(z) for all y,z.
/// Solved as the stationary vector of the averaged translation chain by
/// GTH elimination, which keeps full relative accuracy on tiny weights.
/// Throws SingularSystem when the fixed point is not unique or not invariant.
std::vector<double> solve_haar_weights(const StructureTensor& tensor,
                                       double tol = kDefaultTolerance);

/// max_{y,z} |sum_x w(x) p(y,x)({z}) - w(z)|.
double haar_invariance_residual(const StructureTensor& tensor, std::span<const double> w);

/// Cross-check weights h(x) = 1 / p(x, x~)({e}) valid for discrete tables.
std::vector<double> haar_from_identity_mass(const StructureTensor& tensor);

/// Element of L^1(K): the function values f(x).
class AlgebraElement {
public:
  AlgebraElement(TablePtr base, ComplexVector coeffs);

  static AlgebraElement zero(const TablePtr& base);
  /// The algebra unit u = delta_e / w(e), whose Fourier transform is 1.
  static AlgebraElement unit(const TablePtr& base);
  /// Density of the point measure delta_x, i.e. 1/w(x) at x.
  static AlgebraElement point_mass(const TablePtr& base, Index x);
  static AlgebraElement indicator(const TablePtr& base, Index x);

  const TablePtr& base() const { return base_; }
  Index size() const { return static_cast<Index>(coeffs_.size()); }
  const ComplexVector& coeffs() const { return coeffs_; }
  ComplexVector& coeffs() { return coeffs_; }
  Complex operator[](Index x) const { return coeffs_[static_cast<Eigen::Index>(x)]; }

  AlgebraElement& operator+=(const AlgebraElement& other);
  AlgebraElement& operator-=(const AlgebraElement& other);
  AlgebraElement& operator*=(Complex s);

private:
  TablePtr base_;
  ComplexVector coeffs_;
};

AlgebraElement operator+(AlgebraElement a, const AlgebraElement& b);
AlgebraElement operator-(AlgebraElement a, const AlgebraElement& b);
AlgebraElement operator*(Complex s, AlgebraElement a);

/// (T_x f)(y) = sum_t p(x,y)({t}) f(t).
AlgebraElement translate(Index x, const AlgebraElement& f);
/// (f*g)(x) = sum_y w(y) f(y) (T_{y~} g)(x).
AlgebraElement convolve(const AlgebraElement& f, const AlgebraElement& g);
/// f*(x) = conj(f(x~)).
AlgebraElement involute(const AlgebraElement& f);

/// ||f||_1 = sum_x w(x) |f(x)|.
double norm_l1(const AlgebraElement& f);
/// <f, g> = sum_x w(x) f(x) conj(g(x)).
Complex inner(const AlgebraElement& f, const AlgebraElement& g);
double max_abs(const ComplexVector& v);

/// Cartesian product K1 x K2 with p((x1,x2),(y1,y2)) = p(x1,y1) (x) p(x2,y2).
/// Element (x1,x2) has index x1 * |K2| + x2; Haar weights multiply.
TablePtr product_hypergroup(const TablePtr& k1, const TablePtr& k2);

/// Element of L^1(K1 x K2) stored as the matrix F(x1, x2).
class TensorElement {
public:
  TensorElement(TablePtr product, ComplexMatrix coeffs);

  const TablePtr& base() const { return base_; }
  const TablePtr& left() const { return base_->left_factor(); }
  const TablePtr& right() const { return base_->right_factor(); }
  const ComplexMatrix& coeffs() const { return coeffs_; }
  ComplexMatrix& coeffs() { return coeffs_; }

  /// View as a function on the product table (row-major flattening).
  AlgebraElement flatten() const;
  static TensorElement unflatten(const AlgebraElement& f);

private:
  TablePtr base_;
  ComplexMatrix coeffs_;
};

enum class Side { Left, Right };

/// pi_1(f)(x,y) = f(x) u(y) and pi_2(f)(x,y) = u(x) f(y) on K x K.
TensorElement embed(const AlgebraElement& f, Side side, const TablePtr& product);

TensorElement convolve(const TensorElement& f, const TensorElement& g);
double norm_l1(const TensorElement& f);

/// The convolution map pi: L^1(K x K) -> L^1(K), extending f (x) g -> f * g.
AlgebraElement convolution_map(const TensorElement& f);

} // namespace hg
