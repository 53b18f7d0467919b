#include "hg/dunkl_ramirez.hpp"

#include <cmath>
#include <sstream>

namespace hg {

namespace {

void check_a(double a) {
  if (!(a > 0.0 && a <= 0.5)) throw ParameterError("Dunkl-Ramirez parameter a must lie in (0, 1/2]");
}

Index point_index(double point) {
  if (!(point >= 0.0) || std::floor(point) != point)
    throw ParameterError("Dunkl-Ramirez character point must be a nonnegative integer");
  return static_cast<Index>(point);
}

std::string label(const char* what, double a, Index n) {
  std::ostringstream os;
  os.precision(17);
  os << what << "(a=" << a << ",N=" << n << ")";
  return os.str();
}

} // namespace

StructureTensor dunkl_ramirez_tensor(double a, Index N) {
  check_a(a);
  if (N < 2) throw ParameterError("Dunkl-Ramirez truncation needs N >= 2");
  const Index n = N + 1;
  std::vector<std::vector<Mass>> rows(n * n);
  for (Index x = 0; x < n; ++x)
    for (Index y = 0; y < n; ++y) {
      auto& r = rows[x * n + y];
      if (x != y || x == N) {
        r.push_back({std::min(x, y), 1.0});
        continue;
      }
      r.push_back({x, (1.0 - 2.0 * a) / (1.0 - a)});
      double ak = 1.0;
      for (Index z = x + 1; z < N; ++z) {
        ak *= a;
        r.push_back({z, ak});
      }
      r.push_back({N, std::pow(a, static_cast<double>(N - x)) / (1.0 - a)});
    }
  std::vector<Index> inv(n);
  for (Index i = 0; i < n; ++i) inv[i] = i;
  return StructureTensor::from_rows(n, N, std::move(inv), std::move(rows));
}

TablePtr dunkl_ramirez(double a, Index N, double tol) {
  return build_hypergroup(dunkl_ramirez_tensor(a, N), tol, label("dunkl-ramirez", a, N));
}

double dunkl_ramirez_weight(double a, Index N, Index n) {
  if (n > N) throw std::out_of_range("element beyond the truncation");
  if (n == N) return std::pow(a, static_cast<double>(N));
  return (1.0 - a) * std::pow(a, static_cast<double>(n));
}

double dunkl_ramirez_character(double a, Index k, Index n) {
  if (k == 0 || n >= k) return 1.0;
  if (n + 1 == k) return -a / (1.0 - a);
  return 0.0;
}

double dunkl_ramirez_plancherel(double a, Index k) {
  return k == 0 ? 1.0 : (1.0 - a) / std::pow(a, static_cast<double>(k));
}

// ---------------------------------------------------------------- H_a

DunklRamirezOracle::DunklRamirezOracle(double a, Index N) : a_(a), N_(N) {
  check_a(a);
  if (N < 2) throw ParameterError("Dunkl-Ramirez truncation needs N >= 2");
}

std::string DunklRamirezOracle::family() const { return label("dunkl-ramirez", a_, N_); }

std::vector<Mass> DunklRamirezOracle::constants(Index m, Index n) const {
  if (m > N_ || n > N_) throw std::out_of_range("element beyond the truncation");
  const auto t = dunkl_ramirez_tensor(a_, N_);
  const auto r = t.row(m, n);
  return {r.begin(), r.end()};
}

double DunklRamirezOracle::haar(Index n) const {
  return dunkl_ramirez_weight(a_, N_, n) / dunkl_ramirez_weight(a_, N_, N_);
}

double DunklRamirezOracle::character(double point, Index n) const {
  if (n > N_) throw std::out_of_range("element beyond the truncation");
  return dunkl_ramirez_character(a_, point_index(point), n);
}

std::optional<double> DunklRamirezOracle::atom_mass(double point) const {
  return dunkl_ramirez_plancherel(a_, point_index(point));
}

// ---------------------------------------------------------------- dual N_0

DunklRamirezDualOracle::DunklRamirezDualOracle(double a, Index bound) : a_(a), bound_(bound) {
  check_a(a);
}

std::string DunklRamirezDualOracle::family() const {
  return label("dunkl-ramirez-dual", a_, bound_);
}

std::vector<Mass> DunklRamirezDualOracle::constants(Index j, Index k) const {
  if (j > bound_ || k > bound_) throw std::out_of_range("element beyond the truncation bound");
  if (j != k) return {{std::max(j, k), 1.0}};
  if (k == 0) return {{0, 1.0}};
  std::vector<Mass> r;
  r.push_back({0, std::pow(a_, static_cast<double>(k)) / (1.0 - a_)});
  for (Index l = 1; l < k; ++l) r.push_back({l, std::pow(a_, static_cast<double>(k - l))});
  r.push_back({k, (1.0 - 2.0 * a_) / (1.0 - a_)});
  return r;
}

double DunklRamirezDualOracle::haar(Index k) const { return dunkl_ramirez_plancherel(a_, k); }

double DunklRamirezDualOracle::character(double point, Index k) const {
  if (std::isinf(point) && point > 0) return 1.0;
  const Index n = point_index(point);
  if (k <= n) return 1.0;
  if (k == n + 1) return -a_ / (1.0 - a_);
  return 0.0;
}

std::optional<double> DunklRamirezDualOracle::atom_mass(double point) const {
  if (std::isinf(point) && point > 0) return 0.0;
  return (1.0 - a_) * std::pow(a_, static_cast<double>(point_index(point)));
}

} // namespace hg
