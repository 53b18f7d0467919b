#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "support.hpp"

#include <numbers>

using namespace hg;
using namespace hg::test;

TEST_CASE("S3 conjugacy dual") {
  const auto dual = character_table(conjugacy_hypergroup(builtin_group("S3")));
  REQUIRE(dual->size() == 3);
  const std::vector<std::vector<double>> expected = {{1, 1, 1}, {1, -1, 1}, {1, 0, -0.5}};
  const std::vector<double> pi = {1, 1, 4};
  for (Index i = 0; i < 3; ++i) {
    for (Index x = 0; x < 3; ++x) CHECK(std::abs(dual->value(i, x) - expected[i][x]) < 1e-12);
    CHECK(dual->plancherel(i) == doctest::Approx(pi[i]).epsilon(1e-12));
  }
  CHECK(dual->real_dual());
}

TEST_CASE("cyclic duals are the discrete Fourier characters") {
  for (Index n = 1; n <= 12; ++n) {
    CAPTURE(n);
    const auto dual = character_table(cyclic_table(n));
    REQUIRE(dual->size() == n);
    std::vector<bool> hit(n, false);
    for (Index j = 0; j < n; ++j) {
      std::vector<Complex> chi(n);
      for (Index x = 0; x < n; ++x)
        chi[x] = std::polar(1.0, 2.0 * std::numbers::pi * static_cast<double>(j * x) / static_cast<double>(n));
      const auto [i, dist] = closest_character(*dual, chi);
      CHECK(dist < 1e-12);
      hit[i] = true;
      CHECK(dual->plancherel(i) == doctest::Approx(1.0).epsilon(1e-12));
    }
    CHECK(std::all_of(hit.begin(), hit.end(), [](bool b) { return b; }));
    CHECK(dual->real_dual() == (n <= 2));
  }
}

TEST_CASE("conjugacy characters are normalized group characters") {
  const std::vector<std::pair<std::string, BruteGroup>> groups = {
      {"S3", brute_symmetric(3)}, {"S4", brute_symmetric(4)}, {"D4", brute_dihedral4()}, {"Q8", brute_quaternion()}};
  for (const auto& [name, g] : groups) {
    CAPTURE(name);
    const auto cls = brute_classes(g);
    const auto irr = brute_irreducibles(g, cls);
    REQUIRE(irr.size() == cls.classes.size());
    // Row orthogonality of the oracle table: sum_C |C| chi(C) psi(C) = |G| delta.
    for (std::size_t i = 0; i < irr.size(); ++i)
      for (std::size_t j = 0; j < irr.size(); ++j) {
        double s = 0.0;
        for (Index c = 0; c < cls.classes.size(); ++c) s += cls.classes[c].size() * irr[i].second[c] * irr[j].second[c];
        CHECK(s == doctest::Approx(i == j ? static_cast<double>(g.n) : 0.0));
      }
    // Same element indexing on both sides, so both order classes alike.
    const auto dual = character_table(conjugacy_hypergroup(GroupTable(g.n, g.mul)));
    for (const auto& [d, chi] : irr) {
      std::vector<Complex> target(chi.size());
      for (Index c = 0; c < chi.size(); ++c) target[c] = chi[c] / d;
      const auto [i, dist] = closest_character(*dual, target);
      CHECK(dist < 1e-10);
      CHECK(dual->plancherel(i) == doctest::Approx(d * d).epsilon(1e-10));
    }
  }
}

TEST_CASE("character invariants on the finite matrix") {
  for (const auto& [name, k] : finite_matrix()) {
    CAPTURE(name);
    const auto dual = character_table(k);
    const Index n = dual->size();
    REQUIRE(n == k->size());
    CHECK(dual->max_residual() < 1e-10);
    CHECK(joint_eigenbasis_residual(*dual) < 1e-10);
    for (Index x = 0; x < n; ++x) CHECK(std::abs(dual->value(0, x) - 1.0) < 1e-12);
    for (Index i = 0; i < n; ++i) {
      CHECK(std::abs(dual->value(i, k->identity()) - 1.0) < 1e-12);
      // Hermitian: alpha(x~) = conj(alpha(x)).
      for (Index x = 0; x < n; ++x) CHECK(std::abs(dual->value(i, k->involution(x)) - std::conj(dual->value(i, x))) < 1e-10);
      for (Index j = i + 1; j < n; ++j) CHECK((dual->values().row(static_cast<Eigen::Index>(i)) - dual->values().row(static_cast<Eigen::Index>(j))).norm() > 1e-9);
    }
    const auto pw = plancherel_weights(*dual);
    for (Index i = 0; i < n; ++i) CHECK(pw[i] == doctest::Approx(1.0 / dual->norm_sq(i)).epsilon(1e-14));
  }
}

TEST_CASE("spectral idempotents") {
  for (const char* g : {"S4", "Q8"}) {
    const auto dual = character_table(conjugacy_hypergroup(builtin_group(g)));
    for (Index i = 0; i < dual->size(); ++i)
      for (Index j = 0; j < dual->size(); ++j) {
        const auto c = convolve(dual->character(i), dual->character(j));
        const auto expect = i == j ? Complex(dual->norm_sq(i)) * dual->character(i) : AlgebraElement::zero(dual->base());
        CHECK(max_abs((c - expect).coeffs()) < 1e-10);
      }
  }
  const auto dual = character_table(dunkl_ramirez(0.3, 16));
  for (Index i = 0; i < dual->size(); i += 5) {
    const auto c = convolve(dual->character(i), dual->character(i));
    CHECK(max_abs((c - Complex(dual->norm_sq(i)) * dual->character(i)).coeffs()) < 1e-10);
  }
}

TEST_CASE("Fourier transform of special elements") {
  const auto k = conjugacy_hypergroup(builtin_group("S4"));
  const auto dual = character_table(k);
  const Index n = dual->size();
  const auto uh = fourier(dual, AlgebraElement::unit(k)).values;
  for (Index i = 0; i < n; ++i) CHECK(std::abs(uh[static_cast<Eigen::Index>(i)] - 1.0) < 1e-13);
  const auto u = inverse_fourier({dual, ComplexVector::Ones(static_cast<Eigen::Index>(n))});
  CHECK(max_abs((u - AlgebraElement::unit(k)).coeffs()) < 1e-12);
  for (Index i = 0; i < n; ++i) {
    ComplexVector e = ComplexVector::Zero(static_cast<Eigen::Index>(n));
    e[static_cast<Eigen::Index>(i)] = 1.0;
    const auto f = inverse_fourier({dual, e});
    CHECK(max_abs((f - Complex(dual->plancherel(i)) * dual->character(i)).coeffs()) < 1e-12);
  }
}

TEST_CASE("seeds change the draw, not the canonical table") {
  const auto k = dunkl_ramirez(0.5, 16);
  const auto a = character_table(k, 1e-9, 42);
  const auto b = character_table(k, 1e-9, 1234567);
  CHECK((a->values() - b->values()).cwiseAbs().maxCoeff() < 1e-9);
  CHECK(character_table(k, 1e-9, 42)->values() == a->values());
}

TEST_CASE("non-characters are rejected") {
  const auto k = conjugacy_hypergroup(builtin_group("S3"));
  ComplexVector v(3);
  v << 1.0, 0.5, 0.5;
  CHECK(character_residual(*k, v) > 0.1);
  v << 1.0, -1.0, 1.0;
  CHECK(character_residual(*k, v) < 1e-15);
}
