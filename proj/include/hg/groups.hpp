#pragma once

// Finite groups by multiplication table and their conjugacy-class hypergroups.

#include "hg/core.hpp"

#include <string>
#include <vector>

namespace hg {

/// table[g * n + h] = gh. Validated on construction: Latin square, associative,
/// with identity and inverses.
class GroupTable {
public:
  GroupTable(Index size, std::vector<Index> table, std::vector<std::string> labels = {},
             std::string name = {});

  Index size() const { return n_; }
  Index mul(Index g, Index h) const { return mul_[g * n_ + h]; }
  Index identity() const { return e_; }
  Index inverse(Index g) const { return inv_[g]; }
  const std::vector<std::string>& labels() const { return labels_; }
  const std::string& name() const { return name_; }

private:
  Index n_;
  std::vector<Index> mul_;
  std::vector<Index> inv_;
  Index e_ = 0;
  std::vector<std::string> labels_;
  std::string name_;
};

/// Z_n, D_n (order 2n), S_n (n <= 6), A_n (n <= 5) and Q8. Both "S4" and
/// "S_4" are accepted. Element 0 is the identity.
GroupTable builtin_group(const std::string& name);

/// n x n matrix of element indices, one row per line, comma separated.
GroupTable group_from_csv(const std::string& text, std::string name = {});

/// Classes ordered by their smallest element; each class sorted.
std::vector<std::vector<Index>> conjugacy_classes(const GroupTable& g);

/// p(C_i,C_j)({C_k}) = #{(g,h) in C_i x C_j : gh in C_k} / (|C_i||C_j|).
StructureTensor conjugacy_tensor(const GroupTable& g);
TablePtr conjugacy_hypergroup(const GroupTable& g, double tol = kDefaultTolerance);

/// The group itself as a hypergroup with point-mass products.
TablePtr group_hypergroup(const GroupTable& g, double tol = kDefaultTolerance);

} // namespace hg
