#pragma once

// Dual object of a finite commutative hypergroup: characters, Plancherel
// weights and the Fourier transform.

#include "hg/core.hpp"

#include <cstdint>
#include <memory>
#include <vector>

namespace hg {

/// Raised when the joint eigenbasis cannot be separated within tolerance.
class DiagonalizationFailure : public Error {
public:
  DiagonalizationFailure(const std::string& what, std::vector<double> residuals)
      : Error(what), residuals_(std::move(residuals)) {}
  const std::vector<double>& residuals() const { return residuals_; }

private:
  std::vector<double> residuals_;
};

/// All n hermitian characters of a finite table, row i holding alpha_i(x).
/// Row 0 is the constant character; the rest follow lexicographically by
/// their values rounded to 1e-9.
class CharacterTable {
public:
  CharacterTable(TablePtr base, ComplexMatrix values);

  const TablePtr& base() const { return base_; }
  Index size() const { return static_cast<Index>(values_.rows()); }
  const ComplexMatrix& values() const { return values_; }
  Complex value(Index i, Index x) const {
    return values_(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(x));
  }
  AlgebraElement character(Index i) const;

  /// ||alpha_i||_2^2 = sum_x w(x) |alpha_i(x)|^2.
  double norm_sq(Index i) const { return norm_sq_[i]; }
  const std::vector<double>& norms_sq() const { return norm_sq_; }
  double plancherel(Index i) const { return plancherel_[i]; }
  const std::vector<double>& plancherel() const { return plancherel_; }
  /// max_{x,y} |sum_z p(x,y)({z}) alpha_i(z) - alpha_i(x) alpha_i(y)|.
  double residual(Index i) const { return residual_[i]; }
  const std::vector<double>& residuals() const { return residual_; }
  double max_residual() const;
  /// All imaginary parts vanish below the construction tolerance.
  bool real_dual() const { return real_dual_; }

private:
  friend std::shared_ptr<const CharacterTable> character_table(const TablePtr&, double,
                                                               std::uint64_t);

  TablePtr base_;
  ComplexMatrix values_;
  std::vector<double> norm_sq_;
  std::vector<double> plancherel_;
  std::vector<double> residual_;
  bool real_dual_ = false;
};

using DualPtr = std::shared_ptr<const CharacterTable>;

/// Joint diagonalization of the translation operators, symmetrized by the Haar
/// weights, through one random hermitian combination drawn from seed.
/// Throws DiagonalizationFailure when the multiplicativity residual exceeds tol
/// after redraws and cluster refinement.
DualPtr character_table(const TablePtr& table, double tol = 1e-9, std::uint64_t seed = 42);

/// pi_i = 1 / ||alpha_i||_2^2.
std::vector<double> plancherel_weights(const CharacterTable& chars);

/// Multiplicativity defect of an arbitrary candidate character.
double character_residual(const HypergroupTable& table, const ComplexVector& alpha);

struct FourierCoeffs {
  DualPtr dual;
  ComplexVector values;
};

/// f^(alpha_i) = sum_x w(x) f(x) conj(alpha_i(x)).
FourierCoeffs fourier(const DualPtr& dual, const AlgebraElement& f);
/// f(x) = sum_i pi_i f^(alpha_i) alpha_i(x).
AlgebraElement inverse_fourier(const FourierCoeffs& coeffs);

/// max_{x,i} |(T_x alpha_i) - alpha_i(x) alpha_i| in sup norm: the defect of
/// the character basis diagonalizing every translation.
double joint_eigenbasis_residual(const CharacterTable& chars);

} // namespace hg
