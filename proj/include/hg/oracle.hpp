#pragma once

// Lazily evaluated structure constants for truncated infinite hypergroups.

#include "hg/core.hpp"

#include <optional>
#include <string>
#include <vector>

namespace hg {

class StructureOracle {
public:
  virtual ~StructureOracle() = default;

  virtual std::string family() const = 0;
  /// Discrete (non-compact) hypergroup on N_0, as opposed to a compact one.
  virtual bool is_discrete() const = 0;
  /// constants(m, n) is defined for m + n <= bound().
  virtual Index bound() const = 0;
  virtual bool has_constants(Index m, Index n) const { return m + n <= bound(); }
  /// p(m,n) as a sorted list of masses; symmetric in (m,n).
  virtual std::vector<Mass> constants(Index m, Index n) const = 0;
  /// Haar weight with h(0) = 1.
  virtual double haar(Index n) const = 0;

  virtual bool has_character() const { return false; }
  /// Value at element n of the character labelled by point.
  virtual double character(double point, Index n) const;
  /// Plancherel mass of the character labelled by point; nullopt when the
  /// dual measure is not described in closed form.
  virtual std::optional<double> atom_mass(double point) const;
};

} // namespace hg
