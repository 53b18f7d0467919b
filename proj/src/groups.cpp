#include "hg/groups.hpp"

#include <algorithm>
#include <cctype>
#include <numeric>
#include <regex>
#include <sstream>

namespace hg {

namespace {

using Perm = std::vector<Index>;

// Permutation groups act on {0..d-1}; (g h)(i) = g(h(i)).
GroupTable from_permutations(std::vector<Perm> perms, const std::string& name) {
  std::sort(perms.begin(), perms.end());
  const Index n = perms.size();
  std::vector<Index> mul(n * n);
  std::vector<std::string> labels(n);
  for (Index a = 0; a < n; ++a) {
    std::ostringstream os;
    os << '[';
    for (std::size_t i = 0; i < perms[a].size(); ++i) os << (i ? " " : "") << perms[a][i];
    os << ']';
    labels[a] = os.str();
    for (Index b = 0; b < n; ++b) {
      Perm c(perms[a].size());
      for (std::size_t i = 0; i < c.size(); ++i) c[i] = perms[a][perms[b][i]];
      const auto it = std::lower_bound(perms.begin(), perms.end(), c);
      if (it == perms.end() || *it != c) throw ParameterError("permutation set is not closed");
      mul[a * n + b] = static_cast<Index>(it - perms.begin());
    }
  }
  return {n, std::move(mul), std::move(labels), name};
}

bool is_even(const Perm& p) {
  Index inversions = 0;
  for (std::size_t i = 0; i < p.size(); ++i)
    for (std::size_t j = i + 1; j < p.size(); ++j)
      if (p[i] > p[j]) ++inversions;
  return inversions % 2 == 0;
}

std::vector<Perm> symmetric_perms(Index d, bool even_only) {
  std::vector<Perm> out;
  Perm p(d);
  std::iota(p.begin(), p.end(), 0);
  do {
    if (!even_only || is_even(p)) out.push_back(p);
  } while (std::next_permutation(p.begin(), p.end()));
  return out;
}

GroupTable cyclic(Index n) {
  std::vector<Index> mul(n * n);
  std::vector<std::string> labels(n);
  for (Index a = 0; a < n; ++a) {
    labels[a] = std::to_string(a);
    for (Index b = 0; b < n; ++b) mul[a * n + b] = (a + b) % n;
  }
  return {n, std::move(mul), std::move(labels), "Z" + std::to_string(n)};
}

// Element r^k s^f has index k + n f, so the rotations come first.
GroupTable dihedral(Index n) {
  const Index m = 2 * n;
  std::vector<Index> mul(m * m);
  std::vector<std::string> labels(m);
  for (Index a = 0; a < m; ++a) {
    const Index ka = a % n, fa = a / n;
    labels[a] = "r" + std::to_string(ka) + (fa ? "s" : "");
    for (Index b = 0; b < m; ++b) {
      const Index kb = b % n, fb = b / n;
      // r^ka s^fa r^kb s^fb = r^(ka +- kb) s^(fa xor fb), since s r = r^-1 s.
      const Index k = fa ? (ka + n - kb) % n : (ka + kb) % n;
      mul[a * m + b] = k + n * (fa ^ fb);
    }
  }
  return {m, std::move(mul), std::move(labels), "D" + std::to_string(n)};
}

GroupTable quaternion() {
  // Units of the quaternions: 1, -1, i, -i, j, -j, k, -k, encoded (unit, sign).
  const std::vector<std::string> labels = {"1", "-1", "i", "-i", "j", "-j", "k", "-k"};
  // Product of basis units u, v in {1,i,j,k} as (unit, sign).
  const int table[4][4][2] = {{{0, 1}, {1, 1}, {2, 1}, {3, 1}},
                              {{1, 1}, {0, -1}, {3, 1}, {2, -1}},
                              {{2, 1}, {3, -1}, {0, -1}, {1, 1}},
                              {{3, 1}, {2, 1}, {1, -1}, {0, -1}}};
  std::vector<Index> mul(64);
  for (Index a = 0; a < 8; ++a)
    for (Index b = 0; b < 8; ++b) {
      const int ua = static_cast<int>(a / 2), ub = static_cast<int>(b / 2);
      const int sa = a % 2 ? -1 : 1, sb = b % 2 ? -1 : 1;
      const int u = table[ua][ub][0];
      const int s = table[ua][ub][1] * sa * sb;
      mul[a * 8 + b] = static_cast<Index>(2 * u + (s < 0 ? 1 : 0));
    }
  return {8, std::move(mul), labels, "Q8"};
}

} // namespace

GroupTable::GroupTable(Index size, std::vector<Index> table, std::vector<std::string> labels,
                       std::string name)
    : n_(size), mul_(std::move(table)), labels_(std::move(labels)), name_(std::move(name)) {
  if (n_ == 0) throw ParameterError("group must be nonempty");
  if (mul_.size() != n_ * n_) throw DimensionMismatch("multiplication table must be n x n");
  for (const Index v : mul_)
    if (v >= n_) throw ParameterError("multiplication table entry out of range");
  for (Index a = 0; a < n_; ++a) {
    std::vector<char> row(n_, 0), col(n_, 0);
    for (Index b = 0; b < n_; ++b) {
      if (row[mul(a, b)]++ || col[mul(b, a)]++)
        throw ParameterError("multiplication table is not a Latin square");
    }
  }
  bool found = false;
  for (Index e = 0; e < n_ && !found; ++e) {
    bool ok = true;
    for (Index a = 0; a < n_ && ok; ++a) ok = mul(e, a) == a && mul(a, e) == a;
    if (ok) {
      e_ = e;
      found = true;
    }
  }
  if (!found) throw ParameterError("multiplication table has no identity");
  for (Index a = 0; a < n_; ++a)
    for (Index b = 0; b < n_; ++b)
      for (Index c = 0; c < n_; ++c)
        if (mul(mul(a, b), c) != mul(a, mul(b, c)))
          throw ParameterError("multiplication table is not associative");
  inv_.resize(n_);
  for (Index a = 0; a < n_; ++a)
    for (Index b = 0; b < n_; ++b)
      if (mul(a, b) == e_) inv_[a] = b;
  if (labels_.empty())
    for (Index a = 0; a < n_; ++a) labels_.push_back(std::to_string(a));
  if (labels_.size() != n_) throw DimensionMismatch("one label per element expected");
}

GroupTable builtin_group(const std::string& name) {
  static const std::regex pattern(R"(^([A-Za-z]+)_?(\d+)$)");
  std::smatch m;
  if (!std::regex_match(name, m, pattern)) throw ParameterError("unknown group " + name);
  std::string kind = m[1].str();
  for (char& ch : kind) ch = static_cast<char>(std::toupper(static_cast<unsigned char>(ch)));
  const Index n = std::stoul(m[2].str());
  if (kind == "Z" && n >= 1) return cyclic(n);
  if (kind == "D" && n >= 1) return dihedral(n);
  if (kind == "S" && n >= 1 && n <= 6)
    return from_permutations(symmetric_perms(n, false), "S" + std::to_string(n));
  if (kind == "A" && n >= 1 && n <= 5)
    return from_permutations(symmetric_perms(n, true), "A" + std::to_string(n));
  if (kind == "Q" && n == 8) return quaternion();
  throw ParameterError("unknown group " + name);
}

GroupTable group_from_csv(const std::string& text, std::string name) {
  std::vector<std::vector<Index>> rows;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    std::vector<Index> row;
    std::istringstream ls(line);
    std::string cell;
    while (std::getline(ls, cell, ',')) {
      try {
        std::size_t pos = 0;
        const long v = std::stol(cell, &pos);
        if (v < 0 || cell.find_first_not_of(" \t\r", pos) != std::string::npos)
          throw std::invalid_argument(cell);
        row.push_back(static_cast<Index>(v));
      } catch (const std::logic_error&) {
        throw ParameterError("group CSV row " + std::to_string(rows.size()) + ": bad entry '" +
                             cell + "'");
      }
    }
    rows.push_back(std::move(row));
  }
  const Index n = rows.size();
  std::vector<Index> mul;
  for (const auto& r : rows) {
    if (r.size() != n) throw DimensionMismatch("group CSV must be square");
    mul.insert(mul.end(), r.begin(), r.end());
  }
  return {n, std::move(mul), {}, std::move(name)};
}

std::vector<std::vector<Index>> conjugacy_classes(const GroupTable& g) {
  const Index n = g.size();
  std::vector<char> seen(n, 0);
  std::vector<std::vector<Index>> classes;
  for (Index x = 0; x < n; ++x) {
    if (seen[x]) continue;
    std::vector<Index> cls;
    for (Index h = 0; h < n; ++h) {
      const Index y = g.mul(g.mul(h, x), g.inverse(h));
      if (!seen[y]) {
        seen[y] = 1;
        cls.push_back(y);
      }
    }
    std::sort(cls.begin(), cls.end());
    classes.push_back(std::move(cls));
  }
  return classes;
}

StructureTensor conjugacy_tensor(const GroupTable& g) {
  const auto classes = conjugacy_classes(g);
  const Index c = classes.size();
  std::vector<Index> class_of(g.size());
  for (Index i = 0; i < c; ++i)
    for (const Index x : classes[i]) class_of[x] = i;

  std::vector<std::vector<Mass>> rows(c * c);
  std::vector<Index> count(c);
  for (Index i = 0; i < c; ++i)
    for (Index j = 0; j < c; ++j) {
      std::fill(count.begin(), count.end(), 0);
      for (const Index x : classes[i])
        for (const Index y : classes[j]) ++count[class_of[g.mul(x, y)]];
      const double denom = static_cast<double>(classes[i].size() * classes[j].size());
      for (Index k = 0; k < c; ++k)
        if (count[k]) rows[i * c + j].push_back({k, static_cast<double>(count[k]) / denom});
    }
  std::vector<Index> inv(c);
  for (Index i = 0; i < c; ++i) inv[i] = class_of[g.inverse(classes[i].front())];
  return StructureTensor::from_rows(c, class_of[g.identity()], std::move(inv), std::move(rows));
}

TablePtr conjugacy_hypergroup(const GroupTable& g, double tol) {
  const std::string name = g.name().empty() ? "group" : g.name();
  return build_hypergroup(conjugacy_tensor(g), tol, "conjugacy(" + name + ")");
}

TablePtr group_hypergroup(const GroupTable& g, double tol) {
  const Index n = g.size();
  std::vector<std::vector<Mass>> rows(n * n);
  for (Index a = 0; a < n; ++a)
    for (Index b = 0; b < n; ++b) rows[a * n + b].push_back({g.mul(a, b), 1.0});
  std::vector<Index> inv(n);
  for (Index a = 0; a < n; ++a) inv[a] = g.inverse(a);
  return build_hypergroup(StructureTensor::from_rows(n, g.identity(), std::move(inv),
                                                     std::move(rows)),
                          tol, g.name().empty() ? "group" : g.name());
}

} // namespace hg
