#pragma once

// Diagonals of the convolution algebra and amenability verdicts.

#include "hg/oracle.hpp"
#include "hg/polynomial.hpp"
#include "hg/spectra.hpp"

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

namespace hg {

// ---------------------------------------------------------------- exact diagonal

/// M(x,y) = sum_m pi_m^2 alpha_m(x) alpha_m(y) on K x K. product must be
/// product_hypergroup(K, K) for the dual's base K.
TensorElement exact_diagonal(const DualPtr& dual, const TablePtr& product);
TensorElement exact_diagonal(const DualPtr& dual);

/// F^(alpha_i, alpha_j) over the product characters alpha_i (x) alpha_j.
ComplexMatrix tensor_fourier(const DualPtr& dual, const TensorElement& f);

struct ExactDiagonalCheck {
  /// max_{i,j} |M^(alpha_i,alpha_j) - delta_ij|.
  double fourier = 0.0;
  /// ||pi(M) - u||_1.
  double unit = 0.0;
  /// max over samples of ||pi_1(f) * M - M * pi_2(f)||_1.
  double commutation = 0.0;
  /// ||M||_1 under the product Haar weights.
  double norm = 0.0;
};

/// Element identities are measured in L^1(w): the entries of M grow like
/// pi_max^2 while the weights they meet shrink like w_min^2.
ExactDiagonalCheck check_exact_diagonal(const DualPtr& dual, Index samples = 10,
                                        std::uint64_t seed = 7);

// ---------------------------------------------------------------- series

enum class Kernel { PartialSum, Fejer };

Kernel parse_kernel(const std::string& name);
std::string to_string(Kernel k);

/// Coefficients a_m^n, m = 0..min(stage, size-1): pi_m for the partial sum,
/// (1 - m/(stage+1)) pi_m for Fejer.
std::vector<double> approx_identity(std::span<const double> plancherel, Index stage, Kernel kernel);
std::vector<double> approx_identity(const CharacterTable& dual, Index stage, Kernel kernel);
/// Uses the oracle Haar weights, which are the Plancherel weights of the
/// characters R_m of the compact dual.
std::vector<double> approx_identity(const StructureOracle& oracle, Index stage, Kernel kernel);

/// M_n = sum_m (a_m^n)^2 alpha_m (x) alpha_m over a list of stages.
struct DiagonalSeries {
  std::string family;
  Kernel kernel = Kernel::Fejer;
  std::vector<Index> stages;
  std::vector<std::vector<double>> coefficients;
  std::vector<double> norms;
  std::vector<double> sup_coeff;
  /// Relative sup-norm gap between pi(M_n)^ and (e_n^)^2.
  std::vector<double> pi_mn_residual;
};

/// Finite table: exact summation over K x K.
DiagonalSeries diagonal_norm_series(const DualPtr& dual, std::span<const Index> stages,
                                    Kernel kernel);
/// Compact dual of a polynomial hypergroup, i.e. [-1,1] with its
/// orthogonality measure, by tensor Gauss quadrature. Without a rule, stage n
/// uses 2n + 16 nodes. Throws ParameterError when quad is exact below 2n + 2.
DiagonalSeries diagonal_norm_series(const PolynomialOracle& oracle, std::span<const Index> stages,
                                    Kernel kernel,
                                    const std::optional<QuadratureRule>& quad = std::nullopt);

// ---------------------------------------------------------------- verdicts

enum class Verdict { Amenable, NotAmenable, NotAlphaLeftAmenable, Inconclusive };
std::string to_string(Verdict v);

struct AmenabilityReport {
  Verdict verdict = Verdict::Inconclusive;
  std::string family;
  double sup_weight = 0.0;
  Index horizon = 0;
  /// Closed form of the diverging weights or of the decaying character.
  std::string witness;
  std::vector<Index> witness_indices;
  std::optional<DiagonalSeries> growth;
  std::vector<std::pair<std::string, double>> parameters;
  std::vector<std::string> notes;

  std::string to_json() const;
};

/// Compact hypergroups whose dual weights are known in closed form.
struct JacobiDual {
  double alpha, beta;
};
struct DunklRamirezFamily {
  double a;
};
struct FiniteFamily {
  DualPtr dual;
};
using CompactFamily = std::variant<JacobiDual, DunklRamirezFamily, FiniteFamily>;

/// L^1(K) of a compact K is amenable exactly when the Plancherel weights of
/// its dual are bounded. Amenable needs a closed-form bound, NotAmenable a
/// closed-form diverging witness.
AmenabilityReport amenability_verdict(const CompactFamily& family, Index horizon = 400,
                                      bool with_growth = true);
/// Bare numeric weights certify nothing; the report carries their sup.
AmenabilityReport amenability_verdict(std::span<const double> plancherel);

struct ObstructionThresholds {
  Index horizon = 400;
  /// Decay when the late window maximum is at most early / factor.
  double decay_factor = 2.0;
};

/// Windowed C_0 test of the character at point over [0, horizon] plus its
/// Plancherel atom: decay with atom 0 gives NotAlphaLeftAmenable, decay with
/// a positive atom NotAmenable, no decay Inconclusive.
AmenabilityReport alpha_obstruction(const StructureOracle& oracle, double point,
                                    const ObstructionThresholds& thresholds = {});

} // namespace hg
