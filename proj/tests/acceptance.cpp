// Acceptance gate: one PASS/FAIL line per criterion, nonzero exit on any FAIL.

#include "support.hpp"

#include "hg/amenability.hpp"
#include "hg/ideals.hpp"
#include "hg/polynomial.hpp"

#include <chrono>
#include <cstdio>
#include <functional>
#include <set>
#include <sstream>

using namespace hg;
using namespace hg::test;

namespace {

struct Outcome {
  bool pass;
  std::string detail;
};

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::string fmt(const char* f, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, v);
  return buf;
}

// 1. Axiom residuals on the full finite matrix, including construction time.
Outcome axiom_suite() {
  const auto t0 = std::chrono::steady_clock::now();
  double worst = 0.0;
  std::string worst_name;
  bool all = true;
  for (const auto& [name, table] : finite_matrix()) {
    const auto r = check_axioms(*table);
    if (r.max_residual() > worst) {
      worst = r.max_residual();
      worst_name = name;
    }
    all = all && r.pass() && r.max_residual() < 1e-12;
  }
  const double secs = seconds_since(t0);
  return {all && secs < 30.0, "max residual " + fmt("%.3g", worst) +
                                  (worst_name.empty() ? "" : " (" + worst_name + ")") + ", " +
                                  fmt("%.2f", secs) + " s"};
}

// 2. Dunkl-Ramirez Plancherel atoms against (1-a)/a^k.
Outcome dunkl_ramirez_plancherel_atoms() {
  const double a = 0.4;
  const Index N = 24;
  const auto dual = character_table(dunkl_ramirez(a, N));
  double worst = 0.0;
  bool matched = true;
  for (Index k = 1; k + 2 <= N; ++k) {
    std::vector<Complex> target(N + 1);
    for (Index n = 0; n <= N; ++n) target[n] = n == N ? 1.0 : dunkl_ramirez_character(a, k, n);
    const auto [i, dist] = closest_character(*dual, target);
    matched = matched && dist < 1e-6;
    const double expected = (1.0 - a) / std::pow(a, static_cast<double>(k));
    worst = std::max(worst, std::abs(dual->plancherel(i) - expected) / expected);
  }
  const double pi0 = dual->plancherel(0);
  return {matched && worst < 1e-6 && std::abs(pi0 - 1.0) < 1e-12,
          "max rel err " + fmt("%.3g", worst) + ", pi(1) = " + fmt("%.17g", pi0)};
}

// 3. Quadrature linearization against the closed-form Jacobi Haar weights.
Outcome jacobi_haar_cross_check() {
  double worst = 0.0;
  for (const auto& [al, be] : {std::pair{0.0, 0.0}, {1.0, 0.0}, {2.0, 1.0}}) {
    const auto oracle = polynomial_hypergroup(PolynomialRecurrence::jacobi(al, be), 40);
    for (Index n = 0; n <= 20; ++n) {
      const auto row = oracle->constants(n, n);
      const double g0 = row.front().z == 0 ? row.front().p : 0.0;
      const double closed = jacobi_haar(al, be, n);
      worst = std::max(worst, std::abs(1.0 / g0 - closed) / closed);
    }
  }
  const auto legendre = polynomial_hypergroup(PolynomialRecurrence::legendre(), 40);
  const auto row = legendre->constants(1, 1);
  const double h1 = 1.0 / row.front().p;
  const double err1 = std::abs(h1 - 3.0);
  return {worst < 1e-8 && err1 < 1e-12,
          "max rel err " + fmt("%.3g", worst) + ", |h(1)-3| = " + fmt("%.3g", err1)};
}

// 4. Verdict enums.
Outcome verdicts() {
  const auto cheb = amenability_verdict(JacobiDual{-0.5, -0.5}, 400, false);
  const auto leg = amenability_verdict(JacobiDual{0.0, 0.0}, 400, false);
  const auto j10 = amenability_verdict(JacobiDual{1.0, 0.0}, 400, false);
  const auto ha = amenability_verdict(DunklRamirezFamily{0.4}, 400, false);
  const auto oracle = polynomial_hypergroup(PolynomialRecurrence::legendre(), 2);
  const auto alpha = alpha_obstruction(*oracle, 0.3);
  const bool ok = cheb.verdict == Verdict::Amenable && leg.verdict == Verdict::NotAmenable &&
                  j10.verdict == Verdict::NotAmenable && ha.verdict == Verdict::NotAmenable &&
                  alpha.verdict == Verdict::NotAlphaLeftAmenable;
  return {ok, "chebyshev " + to_string(cheb.verdict) + ", jacobi(0,0) " + to_string(leg.verdict) +
                  ", jacobi(1,0) " + to_string(j10.verdict) + ", H_a " + to_string(ha.verdict) +
                  ", legendre@0.3 " + to_string(alpha.verdict)};
}

// 5. Exact diagonal on every finite table.
Outcome exact_diagonal_invariants() {
  double f = 0.0, u = 0.0, c = 0.0;
  for (const auto& [name, table] : finite_matrix()) {
    const auto r = check_exact_diagonal(character_table(table), 10, 7);
    f = std::max(f, r.fourier);
    u = std::max(u, r.unit);
    c = std::max(c, r.commutation);
  }
  return {f < 1e-10 && u < 1e-10 && c < 1e-10, "fourier " + fmt("%.3g", f) + ", unit " +
                                                   fmt("%.3g", u) + ", commutation " +
                                                   fmt("%.3g", c)};
}

// 6. Diagonal growth trend by tensor quadrature.
Outcome diagonal_growth() {
  const auto t0 = std::chrono::steady_clock::now();
  const std::vector<Index> stages = {8, 16, 32, 64};
  const auto cheb = diagonal_norm_series(
      *polynomial_hypergroup(PolynomialRecurrence::chebyshev(), 64), stages, Kernel::Fejer);
  const auto leg = diagonal_norm_series(
      *polynomial_hypergroup(PolynomialRecurrence::legendre(), 64), stages, Kernel::Fejer);
  const double secs = seconds_since(t0);
  const auto [lo, hi] = std::minmax_element(cheb.norms.begin(), cheb.norms.end());
  const double cheb_ratio = *hi / *lo;
  const double leg_ratio = leg.norms.back() / leg.norms.front();
  return {cheb_ratio <= 1.5 && leg_ratio >= 2.0 && secs < 60.0,
          "chebyshev max/min " + fmt("%.4f", cheb_ratio) + ", legendre M64/M8 " +
              fmt("%.4f", leg_ratio) + ", " + fmt("%.2f", secs) + " s"};
}

// 7. Fourier layer on 20 seeded elements per table.
Outcome fourier_layer() {
  double plan = 0.0, conv = 0.0, trip = 0.0;
  std::mt19937_64 rng(2024);
  for (const auto& [name, table] : finite_matrix()) {
    const auto dual = character_table(table);
    for (int s = 0; s < 20; ++s) {
      const auto f = random_element(table, rng);
      const auto g = random_element(table, rng);
      const auto fh = fourier(dual, f).values;
      const auto gh = fourier(dual, g).values;
      double rhs = 0.0;
      for (Index i = 0; i < dual->size(); ++i)
        rhs += dual->plancherel(i) * std::norm(fh[static_cast<Eigen::Index>(i)]);
      plan = std::max(plan, std::abs(inner(f, f).real() - rhs));
      const auto fgh = fourier(dual, convolve(f, g)).values;
      conv = std::max(conv, max_abs(fgh - fh.cwiseProduct(gh)));
      trip = std::max(trip, max_abs(inverse_fourier(fourier(dual, f)).coeffs() - f.coeffs()));
    }
  }
  return {plan < 1e-12 && conv < 1e-12 && trip < 1e-12, "plancherel " + fmt("%.3g", plan) +
                                                            ", convolution " + fmt("%.3g", conv) +
                                                            ", round trip " + fmt("%.3g", trip)};
}

// 8. Ideal lattice.
Outcome ideal_lattice() {
  bool counts = true, hulls = true;
  double worst = 0.0;
  std::mt19937_64 rng(99);
  for (const auto& [name, table] : finite_matrix()) {
    const auto dual = character_table(table);
    const Index n = dual->size();
    const auto mins = minimal_ideals(dual);
    counts = counts && mins.size() == n;
    for (const auto& m : mins) counts = counts && m.dimension() == 1;

    const Index wanted = n >= 5 ? 20 : (Index{1} << n) - 1;
    std::set<std::vector<Index>> subsets;
    while (subsets.size() < wanted) {
      std::vector<Index> p;
      for (Index i = 0; i < n; ++i)
        if (rng() & 1) p.push_back(i);
      if (!p.empty()) subsets.insert(p);
    }
    std::set<std::vector<Index>> seen;
    for (const auto& p : subsets) {
      const auto u = ideal_identity(dual, p);
      for (const auto& g : ideal_from_dual_subset(dual, p).basis())
        worst = std::max(worst, max_abs((convolve(u, g) - g).coeffs()) / max_abs(g.coeffs()));
      const auto h = hull(u, dual);
      hulls = hulls && h == p && seen.insert(h).second;
    }
  }
  return {counts && hulls && worst < 1e-10,
          std::string("minimal ideals ") + (counts ? "ok" : "wrong") + ", identity residual " +
              fmt("%.3g", worst) + ", hulls " + (hulls ? "distinct" : "collide")};
}

// 9. Conjugacy Plancherel weights against squared irreducible degrees.
Outcome conjugacy_plancherel() {
  double worst = 0.0;
  bool shapes = true;
  std::ostringstream detail;
  const std::vector<std::pair<std::string, BruteGroup>> groups = {
      {"S3", brute_symmetric(3)}, {"S4", brute_symmetric(4)},
      {"D4", brute_dihedral4()},  {"Q8", brute_quaternion()}};
  for (const auto& [name, g] : groups) {
    const auto cls = brute_classes(g);
    const auto irr = brute_irreducibles(g, cls);
    std::vector<double> expected;
    for (const auto& [d, chi] : irr) expected.push_back(static_cast<double>(d * d));
    const auto dual = character_table(conjugacy_hypergroup(builtin_group(name)));
    auto got = dual->plancherel();
    std::sort(expected.begin(), expected.end());
    std::sort(got.begin(), got.end());
    if (got.size() != expected.size()) {
      shapes = false;
      continue;
    }
    for (std::size_t i = 0; i < got.size(); ++i) worst = std::max(worst, std::abs(got[i] - expected[i]));
  }
  std::vector<double> norms;
  for (const char* g : {"S3", "S4", "S5"})
    norms.push_back(norm_l1(exact_diagonal(character_table(conjugacy_hypergroup(builtin_group(g))))));
  const bool increasing = norms[0] < norms[1] && norms[1] < norms[2];
  detail << "max |pi - d^2| " << fmt("%.3g", worst) << ", ||M||_1 S3,S4,S5 = " << fmt("%.6g", norms[0])
         << ", " << fmt("%.6g", norms[1]) << ", " << fmt("%.6g", norms[2]);
  return {shapes && worst < 1e-9 && increasing, detail.str()};
}

} // namespace

int main() {
  const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria = {
      {"axiom suite", axiom_suite},
      {"Dunkl-Ramirez Plancherel atoms", dunkl_ramirez_plancherel_atoms},
      {"Jacobi Haar cross-check", jacobi_haar_cross_check},
      {"amenability verdicts", verdicts},
      {"exact diagonal invariants", exact_diagonal_invariants},
      {"diagonal growth trend", diagonal_growth},
      {"Fourier layer", fourier_layer},
      {"ideal lattice", ideal_lattice},
      {"conjugacy Plancherel weights", conjugacy_plancherel},
  };
  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    failures += !o.pass;
    std::printf("%s %zu %s: %s\n", o.pass ? "PASS" : "FAIL", i + 1, criteria[i].first,
                o.detail.c_str());
    std::fflush(stdout);
  }
  return failures == 0 ? 0 : 1;
}
