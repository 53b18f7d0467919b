#pragma once

// Command-line front end. Exit status: 0 success, 1 validation or parse
// failure, 2 usage error.

#include "hg/oracle.hpp"
#include "hg/polynomial.hpp"

#include <iosfwd>
#include <string>
#include <vector>

namespace hg::cli {

/// Where a command takes its hypergroup from.
struct FamilySpec {
  std::string kind = "file";
  std::string path;
  double a = 0.4;
  Index N = 32;
  double alpha = 0.0;
  double beta = 0.0;
  std::string group;
  std::string group_csv;
};

/// Validates the parameters against the target builder.
void validate(const FamilySpec& spec);

/// Linearization export of a polynomial hypergroup, checked by `hg check`.
std::string polynomial_oracle_json(const PolynomialOracle& oracle);

/// args excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace hg::cli
