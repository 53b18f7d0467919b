#include "hg/io.hpp"

#include <json.hpp>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <ostream>
#include <sstream>

namespace hg {

namespace {

using nlohmann::json;

const json& field(const json& obj, const char* key, const std::string& where) {
  if (!obj.is_object()) throw ParseError(where + ": expected an object");
  const auto it = obj.find(key);
  if (it == obj.end()) throw ParseError("missing field " + where + (where.empty() ? "" : ".") + key);
  return *it;
}

Index as_index(const json& v, const std::string& where) {
  if (!v.is_number_integer() || v.get<long long>() < 0)
    throw ParseError("field " + where + " must be a nonnegative integer");
  return static_cast<Index>(v.get<long long>());
}

double as_double(const json& v, const std::string& where) {
  if (!v.is_number()) throw ParseError("field " + where + " must be a number");
  return v.get<double>();
}

} // namespace

std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

HypergroupFile parse_hypergroup_json(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("malformed JSON: ") + e.what());
  }
  HypergroupFile out;
  if (doc.is_object() && doc.contains("name")) {
    if (!doc["name"].is_string()) throw ParseError("field name must be a string");
    out.name = doc["name"].get<std::string>();
  }
  const Index n = as_index(field(doc, "size", ""), "size");
  if (n == 0) throw ParseError("field size must be positive");
  const Index e = as_index(field(doc, "identity", ""), "identity");
  if (e >= n) throw ParseError("field identity is out of range");

  const json& inv_json = field(doc, "involution", "");
  if (!inv_json.is_array()) throw ParseError("field involution must be an array");
  if (inv_json.size() != n) throw ParseError("field involution must have size entries");
  std::vector<Index> inv(n);
  for (Index i = 0; i < n; ++i) {
    const std::string where = "involution[" + std::to_string(i) + "]";
    inv[i] = as_index(inv_json[i], where);
    if (inv[i] >= n) throw ParseError("field " + where + " is out of range");
  }

  const json& tensor_json = field(doc, "tensor", "");
  if (!tensor_json.is_array()) throw ParseError("field tensor must be an array");
  std::map<std::pair<Index, Index>, std::vector<Mass>> given;
  for (std::size_t r = 0; r < tensor_json.size(); ++r) {
    const std::string where = "tensor[" + std::to_string(r) + "]";
    const json& row = tensor_json[r];
    const Index x = as_index(field(row, "x", where), where + ".x");
    const Index y = as_index(field(row, "y", where), where + ".y");
    if (x >= n) throw ParseError("field " + where + ".x is out of range");
    if (y >= n) throw ParseError("field " + where + ".y is out of range");
    const json& entries = field(row, "entries", where);
    if (!entries.is_array()) throw ParseError("field " + where + ".entries must be an array");
    std::vector<Mass> masses;
    for (std::size_t k = 0; k < entries.size(); ++k) {
      const std::string ew = where + ".entries[" + std::to_string(k) + "]";
      const Index z = as_index(field(entries[k], "z", ew), ew + ".z");
      if (z >= n) throw ParseError("field " + ew + ".z is out of range");
      masses.push_back({z, as_double(field(entries[k], "p", ew), ew + ".p")});
    }
    if (!given.emplace(std::make_pair(x, y), std::move(masses)).second)
      throw ParseError("field " + where + " repeats the pair (" + std::to_string(x) + "," +
                       std::to_string(y) + ")");
  }

  std::vector<std::vector<Mass>> rows(n * n);
  for (Index x = 0; x < n; ++x)
    for (Index y = 0; y < n; ++y) {
      auto it = given.find({x, y});
      if (it == given.end()) it = given.find({y, x});
      if (it == given.end())
        throw ParseError("field tensor has no row for the pair (" + std::to_string(std::min(x, y)) +
                         "," + std::to_string(std::max(x, y)) + ")");
      rows[x * n + y] = it->second;
    }
  try {
    out.tensor = StructureTensor::from_rows(n, e, std::move(inv), std::move(rows));
  } catch (const Error& err) {
    throw ParseError(err.what());
  }
  return out;
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write " + path);
  out << text;
  if (!out) throw Error("write failed for " + path);
}

HypergroupFile read_hypergroup_file(const std::string& path) {
  return parse_hypergroup_json(read_text_file(path));
}

void write_hypergroup_json(std::ostream& os, const StructureTensor& t, const std::string& name) {
  const Index n = t.size();
  os << "{\n  \"name\": " << json(name).dump() << ",\n  \"size\": " << n
     << ",\n  \"identity\": " << t.identity() << ",\n  \"involution\": [";
  for (Index i = 0; i < n; ++i) os << (i ? ", " : "") << t.involution(i);
  os << "],\n  \"tensor\": [";
  bool first = true;
  for (Index x = 0; x < n; ++x)
    for (Index y = x; y < n; ++y) {
      os << (first ? "\n" : ",\n") << "    {\"x\": " << x << ", \"y\": " << y << ", \"entries\": [";
      first = false;
      const auto r = t.row(x, y);
      for (std::size_t k = 0; k < r.size(); ++k)
        os << (k ? ", " : "") << "{\"z\": " << r[k].z << ", \"p\": " << format_double(r[k].p) << "}";
      os << "]}";
    }
  os << "\n  ]\n}\n";
}

void write_hypergroup_json(std::ostream& os, const HypergroupTable& table) {
  write_hypergroup_json(os, table.tensor(), table.label());
}

} // namespace hg
