#include "hg/amenability.hpp"

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>

namespace hg {

namespace {

double uniform_pm1(std::mt19937_64& rng) {
  return 2.0 * (static_cast<double>(rng() >> 11) * 0x1.0p-53) - 1.0;
}

ComplexVector random_coeffs(Index n, std::mt19937_64& rng) {
  ComplexVector v(static_cast<Eigen::Index>(n));
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    const double re = uniform_pm1(rng);
    v[i] = Complex(re, uniform_pm1(rng));
  }
  return v;
}

Eigen::VectorXd haar_vector(const HypergroupTable& k) {
  return Eigen::Map<const Eigen::VectorXd>(k.haar().data(),
                                           static_cast<Eigen::Index>(k.size()));
}

// Sum_m c_m alpha_m(x) alpha_m(y) over the first c.size() characters.
ComplexMatrix diagonal_form(const CharacterTable& dual, const std::vector<double>& c) {
  const auto m = static_cast<Eigen::Index>(c.size());
  const ComplexMatrix a = dual.values().topRows(m);
  const Eigen::VectorXd cv = Eigen::Map<const Eigen::VectorXd>(c.data(), m);
  return a.transpose() * cv.cast<Complex>().asDiagonal() * a;
}

// pi(F)(z) = (1/w(z)) sum_{x,y} w(x) w(y) F(x,y) p(x,y)({z}).
ComplexVector convolution_map_matrix(const HypergroupTable& k, const ComplexMatrix& f) {
  const Index n = k.size();
  ComplexVector out = ComplexVector::Zero(static_cast<Eigen::Index>(n));
  for (Index x = 0; x < n; ++x)
    for (Index y = 0; y < n; ++y) {
      const Complex c =
          k.haar(x) * k.haar(y) * f(static_cast<Eigen::Index>(x), static_cast<Eigen::Index>(y));
      for (const Mass& m : k.row(x, y)) out[static_cast<Eigen::Index>(m.z)] += c * m.p;
    }
  for (Index z = 0; z < n; ++z) out[static_cast<Eigen::Index>(z)] /= k.haar(z);
  return out;
}

double weighted_l1(const HypergroupTable& k, const ComplexMatrix& f) {
  const Eigen::VectorXd w = haar_vector(k);
  return (w.asDiagonal() * f.cwiseAbs() * w.asDiagonal()).sum();
}

double relative_gap(const ComplexVector& a, const ComplexVector& b) {
  const double scale = std::max(max_abs(b), 1e-300);
  return max_abs(a - b) / scale;
}

std::string format_number(double v) {
  std::ostringstream os;
  os.precision(6);
  os << v;
  return os.str();
}

} // namespace

// ---------------------------------------------------------------- exact diagonal

TensorElement exact_diagonal(const DualPtr& dual, const TablePtr& product) {
  if (!product->is_product() || product->left_factor() != dual->base() ||
      product->right_factor() != dual->base())
    throw DimensionMismatch("exact diagonal needs the product of the dual's base with itself");
  std::vector<double> c(dual->size());
  for (Index m = 0; m < dual->size(); ++m) c[m] = dual->plancherel(m) * dual->plancherel(m);
  return {product, diagonal_form(*dual, c)};
}

TensorElement exact_diagonal(const DualPtr& dual) {
  return exact_diagonal(dual, product_hypergroup(dual->base(), dual->base()));
}

ComplexMatrix tensor_fourier(const DualPtr& dual, const TensorElement& f) {
  if (f.left() != dual->base() || f.right() != dual->base())
    throw DimensionMismatch("tensor element does not live on K x K for this dual");
  const Eigen::VectorXd w = haar_vector(*dual->base());
  const ComplexMatrix cw = dual->values().conjugate() * w.cast<Complex>().asDiagonal();
  return cw * f.coeffs() * cw.transpose();
}

ExactDiagonalCheck check_exact_diagonal(const DualPtr& dual, Index samples, std::uint64_t seed) {
  const auto& base = dual->base();
  const auto product = product_hypergroup(base, base);
  const auto m = exact_diagonal(dual, product);

  ExactDiagonalCheck r;
  const ComplexMatrix mh = tensor_fourier(dual, m);
  r.fourier = (mh - ComplexMatrix::Identity(mh.rows(), mh.cols())).cwiseAbs().maxCoeff();
  r.unit = norm_l1(convolution_map(m) - AlgebraElement::unit(base));
  r.norm = norm_l1(m);

  std::mt19937_64 rng(seed);
  for (Index s = 0; s < samples; ++s) {
    const AlgebraElement f(base, random_coeffs(base->size(), rng));
    const auto left = convolve(embed(f, Side::Left, product), m);
    const auto right = convolve(m, embed(f, Side::Right, product));
    r.commutation = std::max(r.commutation, norm_l1(left.flatten() - right.flatten()));
  }
  return r;
}

// ---------------------------------------------------------------- series

Kernel parse_kernel(const std::string& name) {
  if (name == "fejer") return Kernel::Fejer;
  if (name == "partial-sum" || name == "partial") return Kernel::PartialSum;
  throw ParameterError("unknown kernel " + name + " (expected fejer or partial-sum)");
}

std::string to_string(Kernel k) { return k == Kernel::Fejer ? "fejer" : "partial-sum"; }

std::vector<double> approx_identity(std::span<const double> plancherel, Index stage,
                                    Kernel kernel) {
  const Index top = std::min<Index>(stage + 1, plancherel.size());
  std::vector<double> a(top);
  for (Index m = 0; m < top; ++m) {
    const double damp =
        kernel == Kernel::Fejer ? 1.0 - static_cast<double>(m) / static_cast<double>(stage + 1)
                                : 1.0;
    a[m] = damp * plancherel[m];
  }
  return a;
}

std::vector<double> approx_identity(const CharacterTable& dual, Index stage, Kernel kernel) {
  return approx_identity(dual.plancherel(), stage, kernel);
}

std::vector<double> approx_identity(const StructureOracle& oracle, Index stage, Kernel kernel) {
  std::vector<double> pi(stage + 1);
  for (Index m = 0; m <= stage; ++m) pi[m] = oracle.haar(m);
  return approx_identity(pi, stage, kernel);
}

DiagonalSeries diagonal_norm_series(const DualPtr& dual, std::span<const Index> stages,
                                    Kernel kernel) {
  const auto& k = *dual->base();
  DiagonalSeries s;
  s.family = k.label();
  s.kernel = kernel;
  for (const Index stage : stages) {
    const auto a = approx_identity(*dual, stage, kernel);
    std::vector<double> a2(a.size());
    for (std::size_t m = 0; m < a.size(); ++m) a2[m] = a[m] * a[m];
    const ComplexMatrix mn = diagonal_form(*dual, a2);

    // e_n^(alpha_m) = a_m ||alpha_m||^2, so pi(M_n) = e_n * e_n reads
    // pi(M_n)^ = (e_n^)^2 in Fourier coordinates.
    ComplexVector en = ComplexVector::Zero(static_cast<Eigen::Index>(dual->size()));
    for (std::size_t m = 0; m < a.size(); ++m)
      en += a[m] * dual->values().row(static_cast<Eigen::Index>(m)).transpose();
    const auto en_hat = fourier(dual, AlgebraElement(dual->base(), en)).values;
    const auto pi_hat =
        fourier(dual, AlgebraElement(dual->base(), convolution_map_matrix(k, mn))).values;

    s.stages.push_back(stage);
    s.coefficients.push_back(a);
    s.norms.push_back(weighted_l1(k, mn));
    s.sup_coeff.push_back(a.empty() ? 0.0 : *std::max_element(a.begin(), a.end()));
    s.pi_mn_residual.push_back(relative_gap(pi_hat, en_hat.array().square().matrix()));
  }
  return s;
}

DiagonalSeries diagonal_norm_series(const PolynomialOracle& oracle, std::span<const Index> stages,
                                    Kernel kernel, const std::optional<QuadratureRule>& quad) {
  DiagonalSeries s;
  s.family = oracle.family();
  s.kernel = kernel;
  const auto& rec = oracle.recurrence();
  for (const Index stage : stages) {
    if (stage > oracle.bound())
      throw ParameterError("stage " + std::to_string(stage) + " exceeds the oracle bound " +
                           std::to_string(oracle.bound()));
    const QuadratureRule q = quad ? *quad : gauss_rule_from_recurrence(rec, 2 * stage + 16);
    if (q.exactness < static_cast<int>(2 * stage + 2))
      throw ParameterError("quadrature exact to degree " + std::to_string(q.exactness) +
                           ", stage " + std::to_string(stage) + " needs " +
                           std::to_string(2 * stage + 2));
    const auto a = approx_identity(oracle, stage, kernel);
    const auto nodes = static_cast<Eigen::Index>(q.size());
    const auto terms = static_cast<Eigen::Index>(a.size());

    // v(j, m) = R_m(x_j).
    Eigen::MatrixXd v(nodes, terms);
    for (Eigen::Index j = 0; j < nodes; ++j) {
      const auto r = rec.evaluate(q.nodes[static_cast<Index>(j)], stage);
      for (Eigen::Index m = 0; m < terms; ++m) v(j, m) = r[static_cast<Index>(m)];
    }
    Eigen::VectorXd a2(terms), av(terms);
    for (Eigen::Index m = 0; m < terms; ++m) {
      av[m] = a[static_cast<Index>(m)];
      a2[m] = av[m] * av[m];
    }
    const Eigen::Map<const Eigen::VectorXd> w(q.weights.data(), nodes);
    const Eigen::MatrixXd mn = v * a2.asDiagonal() * v.transpose();
    const double norm = (w.asDiagonal() * mn.cwiseAbs() * w.asDiagonal()).sum();

    // Gram matrix g(m,k) = int R_m R_k dpi under this rule:
    // pi(M_n)^(R_k) = sum_m a_m^2 g(m,k)^2 and e_n^(R_k) = sum_m a_m g(m,k).
    const Eigen::MatrixXd g = v.transpose() * w.asDiagonal() * v;
    const Eigen::VectorXd pi_hat = g.cwiseAbs2().transpose() * a2;
    const Eigen::VectorXd en_hat = g.transpose() * av;
    const Eigen::VectorXd en2 = en_hat.cwiseAbs2();
    const double scale = std::max(en2.cwiseAbs().maxCoeff(), 1e-300);

    s.stages.push_back(stage);
    s.coefficients.push_back(a);
    s.norms.push_back(norm);
    s.sup_coeff.push_back(av.maxCoeff());
    s.pi_mn_residual.push_back((pi_hat - en2).cwiseAbs().maxCoeff() / scale);
  }
  return s;
}

// ---------------------------------------------------------------- verdicts

std::string to_string(Verdict v) {
  switch (v) {
  case Verdict::Amenable: return "Amenable";
  case Verdict::NotAmenable: return "NotAmenable";
  case Verdict::NotAlphaLeftAmenable: return "NotAlphaLeftAmenable";
  case Verdict::Inconclusive: return "Inconclusive";
  }
  return "Inconclusive";
}

std::string AmenabilityReport::to_json() const {
  nlohmann::ordered_json j;
  j["verdict"] = to_string(verdict);
  j["family"] = family;
  j["sup_weight"] = sup_weight;
  j["horizon"] = horizon;
  j["witness"] = witness;
  j["witness_indices"] = witness_indices;
  auto& p = j["parameters"] = nlohmann::ordered_json::object();
  for (const auto& [k, v] : parameters) p[k] = v;
  if (growth) {
    auto& g = j["growth"];
    g["kernel"] = to_string(growth->kernel);
    g["stages"] = growth->stages;
    g["norms"] = growth->norms;
    g["sup_coeff"] = growth->sup_coeff;
    g["pi_Mn_residual"] = growth->pi_mn_residual;
  }
  j["notes"] = notes;
  return j.dump(2);
}

namespace {

std::vector<Index> doubling_indices(Index horizon) {
  std::vector<Index> idx;
  for (Index k = 1; k <= horizon; k *= 2) idx.push_back(k);
  if (idx.empty() || idx.back() != horizon) idx.push_back(horizon);
  return idx;
}

AmenabilityReport jacobi_verdict(const JacobiDual& f, Index horizon, bool with_growth) {
  AmenabilityReport r;
  std::ostringstream name;
  name.precision(17);
  name << "jacobi(" << f.alpha << "," << f.beta << ")";
  r.family = name.str();
  r.horizon = horizon;
  r.parameters = {{"alpha", f.alpha}, {"beta", f.beta}};
  (void)PolynomialRecurrence::jacobi(f.alpha, f.beta);

  const bool chebyshev = std::abs(f.alpha + 0.5) < 1e-15 && std::abs(f.beta + 0.5) < 1e-15;
  if (chebyshev) {
    r.verdict = Verdict::Amenable;
    r.sup_weight = 2.0;
    r.witness = "h(0)=1, h(n)=2 for n>=1";
    r.notes.push_back(
        "Plancherel weights 1/||T_n||_2^2 = 2 under the probability orthogonality measure; the "
        "value 1/2 corresponds to the reciprocal normalization");
  } else {
    // alpha >= beta and alpha + beta + 1 >= 0 force alpha > -1/2 here, so
    // h(n) grows like n^(2 alpha + 1).
    const double s = f.alpha + f.beta + 1.0;
    std::vector<double> h(horizon + 1);
    if (std::abs(s) < 1e-14) {
      const auto oracle = polynomial_hypergroup(PolynomialRecurrence::jacobi(f.alpha, f.beta),
                                                horizon);
      for (Index n = 0; n <= horizon; ++n) h[n] = oracle->haar(n);
      r.notes.push_back("alpha+beta+1 = 0: weights from quadrature");
    } else {
      for (Index n = 0; n <= horizon; ++n) h[n] = jacobi_haar(f.alpha, f.beta, n);
    }
    r.sup_weight = *std::max_element(h.begin(), h.end());
    r.verdict = Verdict::NotAmenable;
    if (f.alpha == 0.0 && f.beta == 0.0) {
      r.witness = "h(n)=2n+1";
    } else {
      r.witness = "h(n) ~ c n^" + format_number(2.0 * f.alpha + 1.0);
    }
    r.witness_indices = doubling_indices(horizon);
    const bool monotone = std::is_sorted(h.begin() + 1, h.end());
    r.notes.push_back(std::string("weights ") + (monotone ? "increase" : "are not monotone") +
                      " on [1, horizon]");
  }
  if (with_growth) {
    const std::vector<Index> stages = {8, 16, 32, 64};
    const auto oracle =
        polynomial_hypergroup(PolynomialRecurrence::jacobi(f.alpha, f.beta), stages.back());
    r.growth = diagonal_norm_series(*oracle, stages, Kernel::Fejer);
  }
  return r;
}

AmenabilityReport dunkl_ramirez_verdict(const DunklRamirezFamily& f, Index horizon) {
  if (!(f.a > 0.0 && f.a <= 0.5)) throw ParameterError("Dunkl-Ramirez parameter a must lie in (0, 1/2]");
  AmenabilityReport r;
  r.family = "dunkl-ramirez(a=" + format_number(f.a) + ")";
  r.horizon = horizon;
  r.parameters = {{"a", f.a}};
  r.verdict = Verdict::NotAmenable;
  r.sup_weight = (1.0 - f.a) / std::pow(f.a, static_cast<double>(horizon));
  r.witness = "pi(k)=(1-a)/a^k";
  r.witness_indices = doubling_indices(horizon);
  return r;
}

AmenabilityReport finite_verdict(const FiniteFamily& f) {
  AmenabilityReport r;
  r.family = f.dual->base()->label();
  r.horizon = f.dual->size();
  const auto& pi = f.dual->plancherel();
  r.sup_weight = *std::max_element(pi.begin(), pi.end());
  r.verdict = Verdict::Amenable;
  r.witness = "finite dual";
  r.notes.push_back("the dual has " + std::to_string(f.dual->size()) +
                    " characters, so the weights are bounded by their maximum");
  return r;
}

} // namespace

AmenabilityReport amenability_verdict(const CompactFamily& family, Index horizon,
                                      bool with_growth) {
  if (horizon == 0) throw ParameterError("horizon must be positive");
  return std::visit(
      [&](const auto& f) -> AmenabilityReport {
        using T = std::decay_t<decltype(f)>;
        if constexpr (std::is_same_v<T, JacobiDual>) return jacobi_verdict(f, horizon, with_growth);
        else if constexpr (std::is_same_v<T, DunklRamirezFamily>)
          return dunkl_ramirez_verdict(f, horizon);
        else return finite_verdict(f);
      },
      family);
}

AmenabilityReport amenability_verdict(std::span<const double> plancherel) {
  AmenabilityReport r;
  r.family = "numeric weights";
  r.horizon = plancherel.size();
  r.verdict = Verdict::Inconclusive;
  r.sup_weight = plancherel.empty() ? 0.0 : *std::max_element(plancherel.begin(), plancherel.end());
  r.notes.push_back("no closed-form bound or witness for a bare weight sequence");
  return r;
}

AmenabilityReport alpha_obstruction(const StructureOracle& oracle, double point,
                                    const ObstructionThresholds& t) {
  if (!oracle.has_character()) throw ParameterError(oracle.family() + " has no character evaluator");
  if (!oracle.is_discrete())
    throw ParameterError("the obstruction test needs a discrete hypergroup");
  if (t.horizon < 32) throw ParameterError("obstruction horizon must be at least 32");

  AmenabilityReport r;
  r.family = oracle.family();
  r.horizon = t.horizon;
  r.parameters = {{"point", point}, {"decay_factor", t.decay_factor},
                  {"horizon", static_cast<double>(t.horizon)}};

  const Index half = t.horizon / 2;
  double early = 0.0, late = 0.0;
  Index late_arg = half;
  for (Index n = 0; n <= t.horizon; ++n) {
    const double v = std::abs(oracle.character(point, n));
    if (n < half) {
      early = std::max(early, v);
    } else if (v >= late) {
      late = v;
      late_arg = n;
    }
  }
  r.parameters.emplace_back("early_max", early);
  r.parameters.emplace_back("late_max", late);
  const bool decays = late <= early / t.decay_factor;
  const auto atom = oracle.atom_mass(point);
  if (atom) {
    r.sup_weight = *atom;
    r.parameters.emplace_back("atom_mass", *atom);
  }

  if (!decays) {
    r.verdict = Verdict::Inconclusive;
    r.notes.push_back("no decay of the character over the horizon");
  } else if (!atom) {
    r.verdict = Verdict::Inconclusive;
    r.notes.push_back("character decays but its Plancherel atom is unknown");
  } else {
    r.verdict = *atom == 0.0 ? Verdict::NotAlphaLeftAmenable : Verdict::NotAmenable;
    r.witness = "max |alpha(n)| drops from " + format_number(early) + " to " + format_number(late);
    r.witness_indices = {late_arg};
    r.notes.push_back(*atom == 0.0 ? "character in C_0 with zero Plancherel mass"
                                   : "character in C_0 with positive Plancherel mass");
  }
  return r;
}

} // namespace hg
