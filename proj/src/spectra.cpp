#include "hg/spectra.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

namespace hg {

namespace {

constexpr double kGapThreshold = 1e-8;
constexpr int kRedraws = 8;
constexpr int kRefineDepth = 4;

struct Entry {
  Index y, t;
  double s;
};

// S_x = D^{1/2} T_x D^{-1/2} written without the weights: by the Haar
// relation w(y) p(x,y)({t}) = w(t) p(x~,t)({y}) the entries are
// sqrt(p(x,y)({t}) p(x~,t)({y})), and S_x^T = S_{x~}.
std::vector<std::vector<Entry>> symmetrized_translations(const HypergroupTable& k) {
  const Index n = k.size();
  std::vector<std::vector<Entry>> s(n);
  for (Index x = 0; x < n; ++x) {
    const Index xi = k.involution(x);
    for (Index y = 0; y < n; ++y)
      for (const Mass& m : k.row(x, y)) {
        const double back = k.prob(xi, m.z, y);
        if (back > 0.0) s[x].push_back({y, m.z, std::sqrt(m.p * back)});
      }
  }
  return s;
}

double uniform_pm1(std::mt19937_64& rng) {
  // Explicit mapping so the draws do not depend on the library's distributions.
  return 2.0 * (static_cast<double>(rng() >> 11) * 0x1.0p-53) - 1.0;
}

ComplexMatrix random_combination(const std::vector<std::vector<Entry>>& s, std::mt19937_64& rng) {
  const auto n = static_cast<Eigen::Index>(s.size());
  ComplexMatrix b = ComplexMatrix::Zero(n, n);
  for (const auto& sx : s) {
    const double c = uniform_pm1(rng);
    const double d = uniform_pm1(rng);
    // c (S + S^T)/2 - i d (S - S^T)/2 is hermitian.
    const Complex lo(0.5 * c, -0.5 * d), hi(0.5 * c, 0.5 * d);
    for (const Entry& e : sx) {
      b(static_cast<Eigen::Index>(e.y), static_cast<Eigen::Index>(e.t)) += e.s * lo;
      b(static_cast<Eigen::Index>(e.t), static_cast<Eigen::Index>(e.y)) += e.s * hi;
    }
  }
  return b;
}

double min_gap(const Eigen::VectorXd& ev) {
  double g = std::numeric_limits<double>::infinity();
  for (Eigen::Index i = 1; i < ev.size(); ++i) g = std::min(g, ev[i] - ev[i - 1]);
  return g;
}

// Splits each near-degenerate eigenvalue cluster with a fresh combination
// restricted to the cluster subspace.
void refine_clusters(ComplexMatrix& v, Eigen::VectorXd& ev,
                     const std::vector<std::vector<Entry>>& s, std::mt19937_64& rng, int depth) {
  const Eigen::Index n = ev.size();
  Eigen::Index start = 0;
  while (start < n) {
    Eigen::Index end = start + 1;
    while (end < n && ev[end] - ev[end - 1] < kGapThreshold) ++end;
    const Eigen::Index k = end - start;
    if (k > 1 && depth > 0) {
      const ComplexMatrix q = v.middleCols(start, k);
      const ComplexMatrix b = random_combination(s, rng);
      const ComplexMatrix r = q.adjoint() * b * q;
      Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(0.5 * (r + r.adjoint()));
      ComplexMatrix qv = q * es.eigenvectors();
      Eigen::VectorXd sub = es.eigenvalues();
      refine_clusters(qv, sub, s, rng, depth - 1);
      v.middleCols(start, k) = qv;
      // Spread the cluster out so the caller sees it as resolved.
      for (Eigen::Index j = 0; j < k; ++j) ev[start + j] = ev[start] + 2.0 * kGapThreshold * j;
    }
    start = end;
  }
}

ComplexMatrix rayleigh_values(const ComplexMatrix& v, const std::vector<std::vector<Entry>>& s) {
  const Eigen::Index n = v.cols();
  ComplexMatrix alpha = ComplexMatrix::Zero(n, static_cast<Eigen::Index>(s.size()));
  for (std::size_t x = 0; x < s.size(); ++x) {
    auto col = alpha.col(static_cast<Eigen::Index>(x));
    for (const Entry& e : s[x])
      col += e.s * (v.row(static_cast<Eigen::Index>(e.y)).adjoint().array() *
                    v.row(static_cast<Eigen::Index>(e.t)).transpose().array())
                       .matrix();
  }
  return alpha;
}

std::vector<long long> sort_key(const ComplexMatrix& a, Eigen::Index i) {
  std::vector<long long> key;
  key.reserve(static_cast<std::size_t>(2 * a.cols()));
  for (Eigen::Index x = 0; x < a.cols(); ++x) {
    key.push_back(std::llround(a(i, x).real() * 1e9));
    key.push_back(std::llround(a(i, x).imag() * 1e9));
  }
  return key;
}

} // namespace

CharacterTable::CharacterTable(TablePtr base, ComplexMatrix values)
    : base_(std::move(base)), values_(std::move(values)) {
  if (!base_) throw DimensionMismatch("character table needs a base table");
  const Index n = base_->size();
  if (static_cast<Index>(values_.cols()) != n || static_cast<Index>(values_.rows()) != n)
    throw DimensionMismatch("character table must be n x n");
  norm_sq_.resize(n);
  plancherel_.resize(n);
  residual_.resize(n);
  real_dual_ = (values_.imag().array().abs() < 1e-9).all();
  for (Index i = 0; i < n; ++i) {
    double s = 0.0;
    for (Index x = 0; x < n; ++x) s += base_->haar(x) * std::norm(value(i, x));
    norm_sq_[i] = s;
    plancherel_[i] = 1.0 / s;
    residual_[i] = character_residual(*base_, values_.row(static_cast<Eigen::Index>(i)).transpose());
  }
}

AlgebraElement CharacterTable::character(Index i) const {
  return {base_, values_.row(static_cast<Eigen::Index>(i)).transpose()};
}

double CharacterTable::max_residual() const {
  return residual_.empty() ? 0.0 : *std::max_element(residual_.begin(), residual_.end());
}

double character_residual(const HypergroupTable& k, const ComplexVector& alpha) {
  const Index n = k.size();
  if (static_cast<Index>(alpha.size()) != n) throw DimensionMismatch("character length differs");
  double r = 0.0;
  for (Index x = 0; x < n; ++x)
    for (Index y = x; y < n; ++y) {
      Complex s = 0.0;
      for (const Mass& m : k.row(x, y)) s += m.p * alpha[static_cast<Eigen::Index>(m.z)];
      r = std::max(r, std::abs(s - alpha[static_cast<Eigen::Index>(x)] *
                                       alpha[static_cast<Eigen::Index>(y)]));
    }
  return r;
}

DualPtr character_table(const TablePtr& table, double tol, std::uint64_t seed) {
  const auto& k = *table;
  const Index n = k.size();
  const auto s = symmetrized_translations(k);
  std::mt19937_64 rng(seed);

  ComplexMatrix v;
  Eigen::VectorXd ev;
  double best_gap = -1.0;
  for (int attempt = 0; attempt <= kRedraws; ++attempt) {
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(random_combination(s, rng));
    if (es.info() != Eigen::Success) continue;
    const double g = min_gap(es.eigenvalues());
    if (g > best_gap) {
      best_gap = g;
      v = es.eigenvectors();
      ev = es.eigenvalues();
    }
    if (g >= kGapThreshold) break;
  }
  if (best_gap < 0.0) throw DiagonalizationFailure("eigensolver did not converge", {});
  if (best_gap < kGapThreshold) refine_clusters(v, ev, s, rng, kRefineDepth);

  ComplexMatrix alpha = rayleigh_values(v, s);
  const auto e = static_cast<Eigen::Index>(k.identity());
  for (Eigen::Index i = 0; i < alpha.rows(); ++i) alpha.row(i) /= alpha(i, e);

  // Canonical order: constant character first, then lexicographic.
  std::vector<Eigen::Index> order(n);
  std::iota(order.begin(), order.end(), 0);
  Eigen::Index constant = 0;
  double best = std::numeric_limits<double>::infinity();
  for (Eigen::Index i = 0; i < alpha.rows(); ++i) {
    const double d = (alpha.row(i).array() - 1.0).abs().maxCoeff();
    if (d < best) {
      best = d;
      constant = i;
    }
  }
  std::vector<std::vector<long long>> keys(n);
  for (Index i = 0; i < n; ++i) keys[i] = sort_key(alpha, static_cast<Eigen::Index>(i));
  std::stable_sort(order.begin(), order.end(), [&](Eigen::Index a, Eigen::Index b) {
    if (a == constant || b == constant) return a == constant && b != constant;
    return keys[static_cast<Index>(a)] < keys[static_cast<Index>(b)];
  });
  ComplexMatrix sorted(alpha.rows(), alpha.cols());
  for (Index i = 0; i < n; ++i) sorted.row(static_cast<Eigen::Index>(i)) = alpha.row(order[i]);

  bool real = true;
  for (Eigen::Index i = 0; i < sorted.rows(); ++i)
    for (Eigen::Index x = 0; x < sorted.cols(); ++x)
      if (std::abs(sorted(i, x).imag()) >= tol) real = false;
  if (real) sorted = sorted.real().cast<Complex>();

  auto dual = std::make_shared<CharacterTable>(table, std::move(sorted));
  dual->real_dual_ = real;

  if (dual->max_residual() > tol)
    throw DiagonalizationFailure("characters fail multiplicativity beyond tolerance",
                                 dual->residuals());
  for (Index i = 0; i < n; ++i)
    for (Index j = i + 1; j < n; ++j) {
      const double dist =
          (dual->values().row(static_cast<Eigen::Index>(i)) -
           dual->values().row(static_cast<Eigen::Index>(j)))
              .norm();
      if (dist <= tol)
        throw DiagonalizationFailure("duplicate characters in the computed dual",
                                     dual->residuals());
    }
  return dual;
}

std::vector<double> plancherel_weights(const CharacterTable& chars) { return chars.plancherel(); }

FourierCoeffs fourier(const DualPtr& dual, const AlgebraElement& f) {
  if (f.base() != dual->base()) throw DimensionMismatch("element and dual live on different tables");
  const auto& k = *f.base();
  ComplexVector wf(f.coeffs());
  for (Index x = 0; x < k.size(); ++x) wf[static_cast<Eigen::Index>(x)] *= k.haar(x);
  return {dual, dual->values().conjugate() * wf};
}

AlgebraElement inverse_fourier(const FourierCoeffs& c) {
  const auto& dual = *c.dual;
  if (static_cast<Index>(c.values.size()) != dual.size())
    throw DimensionMismatch("Fourier coefficient vector has the wrong length");
  ComplexVector pf(c.values);
  for (Index i = 0; i < dual.size(); ++i) pf[static_cast<Eigen::Index>(i)] *= dual.plancherel(i);
  return {dual.base(), dual.values().transpose() * pf};
}

double joint_eigenbasis_residual(const CharacterTable& chars) {
  const auto& k = *chars.base();
  const Index n = k.size();
  double r = 0.0;
  for (Index i = 0; i < chars.size(); ++i)
    for (Index x = 0; x < n; ++x) {
      const Complex ax = chars.value(i, x);
      for (Index y = 0; y < n; ++y) {
        Complex s = 0.0;
        for (const Mass& m : k.row(x, y)) s += m.p * chars.value(i, m.z);
        r = std::max(r, std::abs(s - ax * chars.value(i, y)));
      }
    }
  return r;
}

} // namespace hg
