#pragma once

// The compact countable hypergroup H_a on N_0 u {inf} and its discrete dual.

#include "hg/core.hpp"
#include "hg/oracle.hpp"

namespace hg {

/// Truncation on {0, ..., N} with N standing for the identity inf:
///   delta_n * delta_m = delta_min(n,m)        (n != m),
///   delta_n * delta_n = (1-2a)/(1-a) at n, a^k at n+k < N,
///                       a^(N-n)/(1-a) at N  (the lumped tail).
/// Requires 0 < a <= 1/2 and N >= 2.
StructureTensor dunkl_ramirez_tensor(double a, Index N);
TablePtr dunkl_ramirez(double a, Index N, double tol = kDefaultTolerance);

/// Closed forms on the truncation, where element N is the identity.
/// w(n) = (1-a) a^n for n < N, w(N) = a^N.
double dunkl_ramirez_weight(double a, Index N, Index n);
/// chi_k(n) = 0 for n < k-1, -a/(1-a) at n = k-1, 1 for n >= k.
double dunkl_ramirez_character(double a, Index k, Index n);
/// (1-a)/a^k, with 1 at k = 0.
double dunkl_ramirez_plancherel(double a, Index k);

/// H_a itself, with structure constants up to the truncation bound. The
/// identity sits at index bound(), so this is a compact model.
class DunklRamirezOracle : public StructureOracle {
public:
  DunklRamirezOracle(double a, Index N);
  std::string family() const override;
  bool is_discrete() const override { return false; }
  Index bound() const override { return N_; }
  bool has_constants(Index m, Index n) const override { return m <= N_ && n <= N_; }
  std::vector<Mass> constants(Index m, Index n) const override;
  /// Normalized so that the identity has weight 1: h(n) = w(n) / w(N).
  double haar(Index n) const override;
  bool has_character() const override { return true; }
  /// Point k labels chi_k.
  double character(double point, Index n) const override;
  /// Plancherel mass (1-a)/a^k of chi_k.
  std::optional<double> atom_mass(double point) const override;
  double a() const { return a_; }

private:
  double a_;
  Index N_;
};

/// The discrete dual of H_a: N_0 with identity 0,
///   delta_j * delta_k = delta_max(j,k)        (j != k),
///   delta_k * delta_k = a^k/(1-a) at 0, a^(k-l) at 1 <= l < k, (1-2a)/(1-a) at k.
/// h(k) = (1-a)/a^k. Its characters are labelled by points n of H_a and
/// infinity for the constant character.
class DunklRamirezDualOracle : public StructureOracle {
public:
  DunklRamirezDualOracle(double a, Index bound);
  std::string family() const override;
  bool is_discrete() const override { return true; }
  Index bound() const override { return bound_; }
  bool has_constants(Index m, Index n) const override { return m <= bound_ && n <= bound_; }
  std::vector<Mass> constants(Index m, Index n) const override;
  double haar(Index k) const override;
  bool has_character() const override { return true; }
  /// 1 for k <= n, -a/(1-a) at k = n+1, 0 beyond; point = inf gives 1.
  double character(double point, Index k) const override;
  /// Haar mass of the point in H_a: (1-a) a^n, and 0 at inf.
  std::optional<double> atom_mass(double point) const override;
  double a() const { return a_; }

private:
  double a_;
  Index bound_;
};

} // namespace hg
