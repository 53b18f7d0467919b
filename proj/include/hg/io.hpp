#pragma once

// JSON reading and writing of hypergroup tables.
//
// Format:
//   {"name": str, "size": int, "identity": int, "involution": [int],
//    "tensor": [{"x": int, "y": int, "entries": [{"z": int, "p": float}]}]}
// Only rows with y >= x are required; a missing (y,x) row copies (x,y).

#include "hg/core.hpp"

#include <iosfwd>
#include <string>

namespace hg {

class ParseError : public Error {
public:
  using Error::Error;
};

struct HypergroupFile {
  std::string name;
  StructureTensor tensor;
};

/// Errors name the offending field, e.g. "tensor[3].entries[0].p".
HypergroupFile parse_hypergroup_json(const std::string& text);
HypergroupFile read_hypergroup_file(const std::string& path);

/// Writes rows with y >= x at 17 significant digits.
void write_hypergroup_json(std::ostream& os, const StructureTensor& tensor,
                           const std::string& name);
void write_hypergroup_json(std::ostream& os, const HypergroupTable& table);

std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& text);

/// Formats a double with 17 significant digits.
std::string format_double(double v);

} // namespace hg
