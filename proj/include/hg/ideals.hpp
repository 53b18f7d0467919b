#pragma once

// Ideals of L^1(K) for finite commutative K, indexed by subsets of the dual.

#include "hg/spectra.hpp"

#include <vector>

namespace hg {

/// The ideal I_P spanned by the characters alpha_i, i in P.
struct IdealDescriptor {
  DualPtr dual;
  std::vector<Index> dual_set;

  Index dimension() const { return dual_set.size(); }
  std::vector<AlgebraElement> basis() const;
  /// f lies in I_P when its Fourier transform vanishes off P, relative to
  /// ||f^||_inf.
  bool contains(const AlgebraElement& f, double rel_tol = 1e-9) const;
};

/// Sorts and deduplicates P; throws std::out_of_range for a bad index.
IdealDescriptor ideal_from_dual_subset(const DualPtr& dual, std::vector<Index> subset);

/// {i : |f^(alpha_i)| > rel_tol * ||f^||_inf}. The zero element has empty hull.
std::vector<Index> hull(const AlgebraElement& f, const DualPtr& dual, double rel_tol = 1e-9);

/// The n one-dimensional ideals C alpha_i.
std::vector<IdealDescriptor> minimal_ideals(const DualPtr& dual);

/// u_P = inverse Fourier transform of the indicator of P: the identity of I_P.
/// Throws ParameterError for empty P.
AlgebraElement ideal_identity(const DualPtr& dual, const std::vector<Index>& subset);

// Subspace helpers, used to validate the dual-set description against
// explicit spanning sets.

/// Columns f * delta_x for every x; they span the ideal generated by f.
ComplexMatrix generated_ideal_span(const AlgebraElement& f);
/// Columns are the basis characters of the ideal.
ComplexMatrix ideal_span(const IdealDescriptor& ideal);
/// Rank after scaling rows by sqrt(w), singular values cut at rel_tol * max.
Index numerical_rank(const HypergroupTable& table, const ComplexMatrix& cols,
                     double rel_tol = 1e-9);
bool same_subspace(const HypergroupTable& table, const ComplexMatrix& a, const ComplexMatrix& b,
                   double rel_tol = 1e-9);

} // namespace hg
