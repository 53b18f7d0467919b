#pragma once

// Shared fixtures and independent oracles for the test suites. The oracles
// recompute expected values from first principles without going through the
// library code under test.

#include "hg/core.hpp"
#include "hg/dunkl_ramirez.hpp"
#include "hg/groups.hpp"
#include "hg/spectra.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numeric>
#include <random>
#include <string>
#include <utility>
#include <vector>

namespace hg::test {

struct NamedTable {
  std::string name;
  TablePtr table;
};

inline TablePtr cyclic_table(Index n) { return group_hypergroup(builtin_group("Z" + std::to_string(n))); }

/// Z_n (n <= 12), conjugacy tables of S3, S4, S5, D4, Q8 and the
/// Dunkl-Ramirez truncations a in {0.3, 0.5}, N in {8, 16, 32}.
inline std::vector<NamedTable> finite_matrix(bool with_cyclic = true, bool with_large = true) {
  std::vector<NamedTable> out;
  if (with_cyclic)
    for (Index n = 1; n <= 12; ++n) out.push_back({"Z" + std::to_string(n), cyclic_table(n)});
  for (const char* g : {"S3", "S4", "S5", "D4", "Q8"})
    out.push_back({std::string("conj ") + g, conjugacy_hypergroup(builtin_group(g))});
  for (const double a : {0.3, 0.5})
    for (const Index N : {Index{8}, Index{16}, Index{32}}) {
      if (!with_large && N == 32) continue;
      out.push_back({"DR a=" + std::to_string(a).substr(0, 3) + " N=" + std::to_string(N),
                     dunkl_ramirez(a, N)});
    }
  return out;
}

inline double uniform_pm1(std::mt19937_64& rng) {
  return std::uniform_real_distribution<double>(-1.0, 1.0)(rng);
}

inline AlgebraElement random_element(const TablePtr& k, std::mt19937_64& rng) {
  ComplexVector v(static_cast<Eigen::Index>(k->size()));
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    const double re = uniform_pm1(rng);
    v[i] = Complex(re, uniform_pm1(rng));
  }
  return {k, v};
}

inline double sup_norm(const AlgebraElement& f) { return max_abs(f.coeffs()); }

// ---------------------------------------------------------------- permutations

using Perm = std::vector<int>;

inline std::vector<Perm> all_perms(int d) {
  std::vector<Perm> out;
  Perm p(static_cast<std::size_t>(d));
  std::iota(p.begin(), p.end(), 0);
  do out.push_back(p);
  while (std::next_permutation(p.begin(), p.end()));
  return out;
}

inline Perm compose(const Perm& g, const Perm& h) {
  Perm c(g.size());
  for (std::size_t i = 0; i < g.size(); ++i) c[i] = g[static_cast<std::size_t>(h[i])];
  return c;
}

inline Perm invert(const Perm& g) {
  Perm c(g.size());
  for (std::size_t i = 0; i < g.size(); ++i) c[static_cast<std::size_t>(g[i])] = static_cast<int>(i);
  return c;
}

inline int fixed_points(const Perm& g) {
  int f = 0;
  for (std::size_t i = 0; i < g.size(); ++i) f += g[i] == static_cast<int>(i);
  return f;
}

inline int sign(const Perm& g) {
  int inv = 0;
  for (std::size_t i = 0; i < g.size(); ++i)
    for (std::size_t j = i + 1; j < g.size(); ++j) inv += g[i] > g[j];
  return inv % 2 ? -1 : 1;
}

/// Group given by explicit elements and an index-valued product.
struct BruteGroup {
  Index n = 0;
  std::vector<Index> mul;
  Index e = 0;
  std::vector<Index> inv;
  /// Class functions evaluated on elements for the S_n-specific characters.
  std::vector<int> fix, sgn;
};

inline BruteGroup brute_symmetric(int d) {
  const auto perms = all_perms(d);
  BruteGroup g;
  g.n = perms.size();
  auto index_of = [&](const Perm& p) {
    return static_cast<Index>(std::find(perms.begin(), perms.end(), p) - perms.begin());
  };
  g.mul.resize(g.n * g.n);
  for (Index a = 0; a < g.n; ++a)
    for (Index b = 0; b < g.n; ++b) g.mul[a * g.n + b] = index_of(compose(perms[a], perms[b]));
  g.e = 0;
  for (Index a = 0; a < g.n; ++a) {
    g.inv.push_back(index_of(invert(perms[a])));
    g.fix.push_back(fixed_points(perms[a]));
    g.sgn.push_back(sign(perms[a]));
  }
  return g;
}

/// Dihedral group of the square as symmetries of the vertices 0..3.
inline BruteGroup brute_dihedral4() {
  std::vector<Perm> perms;
  const Perm r = {1, 2, 3, 0}, s = {0, 3, 2, 1};
  Perm p = {0, 1, 2, 3};
  for (int k = 0; k < 4; ++k) {
    perms.push_back(p);
    perms.push_back(compose(p, s));
    p = compose(r, p);
  }
  std::sort(perms.begin(), perms.end());
  BruteGroup g;
  g.n = perms.size();
  auto index_of = [&](const Perm& q) {
    return static_cast<Index>(std::find(perms.begin(), perms.end(), q) - perms.begin());
  };
  g.mul.resize(g.n * g.n);
  for (Index a = 0; a < g.n; ++a)
    for (Index b = 0; b < g.n; ++b) g.mul[a * g.n + b] = index_of(compose(perms[a], perms[b]));
  for (Index a = 0; a < g.n; ++a) g.inv.push_back(index_of(invert(perms[a])));
  return g;
}

/// Quaternion group as 2x2 complex matrices generated by i and j.
inline BruteGroup brute_quaternion() {
  using M = std::array<Complex, 4>;
  const Complex I(0, 1);
  const M one = {1, 0, 0, 1}, qi = {I, 0, 0, -I}, qj = {0, 1, -1, 0};
  auto mm = [](const M& a, const M& b) {
    return M{a[0] * b[0] + a[1] * b[2], a[0] * b[1] + a[1] * b[3], a[2] * b[0] + a[3] * b[2],
             a[2] * b[1] + a[3] * b[3]};
  };
  auto same = [](const M& a, const M& b) {
    for (int i = 0; i < 4; ++i)
      if (std::abs(a[static_cast<std::size_t>(i)] - b[static_cast<std::size_t>(i)]) > 1e-12)
        return false;
    return true;
  };
  std::vector<M> elems = {one};
  for (bool grew = true; grew;) {
    grew = false;
    const auto snapshot = elems;
    for (const auto& a : snapshot)
      for (const auto& gen : {qi, qj}) {
        const M c = mm(a, gen);
        if (std::none_of(elems.begin(), elems.end(), [&](const M& x) { return same(x, c); })) {
          elems.push_back(c);
          grew = true;
        }
      }
  }
  BruteGroup g;
  g.n = elems.size();
  auto index_of = [&](const M& q) {
    for (Index i = 0; i < elems.size(); ++i)
      if (same(elems[i], q)) return i;
    return Index{elems.size()};
  };
  g.mul.resize(g.n * g.n);
  for (Index a = 0; a < g.n; ++a)
    for (Index b = 0; b < g.n; ++b) g.mul[a * g.n + b] = index_of(mm(elems[a], elems[b]));
  for (Index a = 0; a < g.n; ++a)
    for (Index b = 0; b < g.n; ++b)
      if (g.mul[a * g.n + b] == 0) g.inv.push_back(b);
  return g;
}

struct BruteClasses {
  std::vector<std::vector<Index>> classes;
  std::vector<Index> class_of;
};

inline BruteClasses brute_classes(const BruteGroup& g) {
  BruteClasses c;
  c.class_of.assign(g.n, g.n);
  for (Index x = 0; x < g.n; ++x) {
    if (c.class_of[x] != g.n) continue;
    std::vector<Index> cls;
    for (Index h = 0; h < g.n; ++h) {
      const Index y = g.mul[g.mul[h * g.n + x] * g.n + g.inv[h]];
      if (c.class_of[y] == g.n) {
        c.class_of[y] = c.classes.size();
        cls.push_back(y);
      }
    }
    c.classes.push_back(cls);
  }
  return c;
}

/// Dense structure constants by counting products of class members.
inline std::vector<double> brute_class_tensor(const BruteGroup& g, const BruteClasses& c) {
  const Index k = c.classes.size();
  std::vector<double> t(k * k * k, 0.0);
  for (Index i = 0; i < k; ++i)
    for (Index j = 0; j < k; ++j) {
      for (const Index x : c.classes[i])
        for (const Index y : c.classes[j]) t[(i * k + j) * k + c.class_of[g.mul[x * g.n + y]]] += 1.0;
      const double d = static_cast<double>(c.classes[i].size() * c.classes[j].size());
      for (Index z = 0; z < k; ++z) t[(i * k + j) * k + z] /= d;
    }
  return t;
}

/// Irreducible characters on classes: linear characters by exhaustive search
/// over sign patterns, the permutation characters fix-1 and (fix-1)sgn when
/// available, and one remaining irreducible from the regular character.
/// Each entry is (degree, values on classes).
inline std::vector<std::pair<int, std::vector<double>>> brute_irreducibles(const BruteGroup& g,
                                                                           const BruteClasses& c) {
  const Index k = c.classes.size();
  std::vector<std::pair<int, std::vector<double>>> irr;
  // Real linear characters: values +-1 constant on classes and multiplicative.
  for (Index mask = 0; mask < (Index{1} << k); ++mask) {
    std::vector<double> chi(k);
    for (Index i = 0; i < k; ++i) chi[i] = (mask >> i) & 1 ? -1.0 : 1.0;
    if (chi[c.class_of[g.e]] != 1.0) continue;
    bool ok = true;
    for (Index a = 0; a < g.n && ok; ++a)
      for (Index b = 0; b < g.n && ok; ++b)
        ok = chi[c.class_of[g.mul[a * g.n + b]]] == chi[c.class_of[a]] * chi[c.class_of[b]];
    if (ok) irr.push_back({1, chi});
  }
  if (!g.fix.empty() && g.n > 2) {
    std::vector<double> st(k), st_sgn(k);
    for (Index i = 0; i < k; ++i) {
      const Index x = c.classes[i].front();
      st[i] = g.fix[x] - 1.0;
      st_sgn[i] = st[i] * g.sgn[x];
    }
    const int d = static_cast<int>(st[c.class_of[g.e]]);
    irr.push_back({d, st});
    if (st != st_sgn) irr.push_back({d, st_sgn});
  }
  int used = 0;
  for (const auto& [d, chi] : irr) used += d * d;
  const int rest = static_cast<int>(g.n) - used;
  if (rest > 0) {
    const int d = static_cast<int>(std::lround(std::sqrt(rest)));
    if (d * d != rest) return {};
    // The regular character is |G| at e and 0 elsewhere.
    std::vector<double> chi(k, 0.0);
    chi[c.class_of[g.e]] = static_cast<double>(g.n);
    for (const auto& [di, psi] : irr)
      for (Index i = 0; i < k; ++i) chi[i] -= di * psi[i];
    for (double& v : chi) v /= d;
    irr.push_back({d, chi});
  }
  return irr;
}

/// Haar weights from a dense least-squares solve of
/// sum_x w(x) p(y,x)({z}) = w(z) for all y, z with sum w = 1.
inline std::vector<double> dense_haar(const StructureTensor& t) {
  const Index n = t.size();
  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(n * n + 1),
                                            static_cast<Eigen::Index>(n));
  for (Index y = 0; y < n; ++y)
    for (Index z = 0; z < n; ++z) {
      const auto r = static_cast<Eigen::Index>(y * n + z);
      for (Index x = 0; x < n; ++x) a(r, static_cast<Eigen::Index>(x)) += t.prob(y, x, z);
      a(r, static_cast<Eigen::Index>(z)) -= 1.0;
    }
  a.row(static_cast<Eigen::Index>(n * n)).setOnes();
  Eigen::VectorXd b = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(n * n + 1));
  b[static_cast<Eigen::Index>(n * n)] = 1.0;
  const Eigen::VectorXd w = a.colPivHouseholderQr().solve(b);
  return {w.data(), w.data() + w.size()};
}

/// Moments of t = (1+x)/2 under the normalized Jacobi measure, which is the
/// Beta(beta+1, alpha+1) law in t:
///   int ((1+x)/2)^k dpi = B(beta+k+1, alpha+1) / B(beta+1, alpha+1).
inline double jacobi_moment(double alpha, double beta, int k) {
  return std::beta(beta + k + 1.0, alpha + 1.0) / std::beta(beta + 1.0, alpha + 1.0);
}

/// Index in dual of the character closest to target, with the distance.
inline std::pair<Index, double> closest_character(const CharacterTable& dual,
                                                  const std::vector<Complex>& target) {
  Index best = 0;
  double dist = 1e300;
  for (Index i = 0; i < dual.size(); ++i) {
    double d = 0.0;
    for (Index x = 0; x < target.size(); ++x) d = std::max(d, std::abs(dual.value(i, x) - target[x]));
    if (d < dist) {
      dist = d;
      best = i;
    }
  }
  return {best, dist};
}

} // namespace hg::test
