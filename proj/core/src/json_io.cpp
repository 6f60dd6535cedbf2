#include "hypernorm/json_io.hpp"

#include <cstdint>
#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "hypernorm/errors.hpp"

namespace hypernorm {

namespace {

using nlohmann::json;

// nlohmann reports a 1-based byte offset; convert to 1-based line/column.
std::pair<int, int> line_column(const std::string& text, std::size_t byte) {
  int line = 1;
  int column = 1;
  const std::size_t stop = std::min(byte > 0 ? byte - 1 : 0, text.size());
  for (std::size_t i = 0; i < stop; ++i) {
    if (text[i] == '\n') {
      ++line;
      column = 1;
    } else {
      ++column;
    }
  }
  return {line, column};
}

json parse_checked(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    const auto [line, column] = line_column(text, e.byte);
    throw ParseError(std::string("malformed JSON: ") + e.what(), line, column);
  }
}

json exponent_map_to_json(const ExponentMap& m) {
  json arr = json::array();
  for (const auto& [omega, value] : m) {
    json entry;
    entry["omega"] = omega;
    entry["value"] = value;
    arr.push_back(std::move(entry));
  }
  return arr;
}

ExponentMap exponent_map_from_json(const json& arr, const char* label) {
  if (!arr.is_array()) {
    throw ValidationError(std::string(label) + " must be an array");
  }
  ExponentMap out;
  for (const json& entry : arr) {
    if (!entry.is_object() || !entry.contains("omega") ||
        !entry.contains("value")) {
      throw ValidationError(std::string(label) +
                            " entries need \"omega\" and \"value\"");
    }
    const json& omega_json = entry.at("omega");
    if (!omega_json.is_array()) {
      throw ValidationError(std::string(label) + " omega must be an array");
    }
    Omega omega;
    for (const json& c : omega_json) {
      if (!c.is_number_integer()) {
        throw ValidationError(std::string(label) +
                              " omega entries must be integers");
      }
      omega.push_back(c.get<int>());
    }
    if (!entry.at("value").is_number()) {
      throw ValidationError(std::string(label) + " value must be a number");
    }
    const double value = entry.at("value").get<double>();
    if (out.count(omega) != 0) {
      throw ValidationError(std::string(label) + " repeats a cell");
    }
    out[omega] = value;
  }
  return out;
}

}  // namespace

std::string pair_to_json(const HypergraphPair& h, bool pretty) {
  h.validate();
  json j;
  j["k"] = h.k;
  j["dims"] = h.dims;
  j["alpha"] = exponent_map_to_json(h.alpha);
  j["beta"] = exponent_map_to_json(h.beta);
  return pretty ? j.dump(2) : j.dump();
}

HypergraphPair pair_from_json(const std::string& text) {
  const json j = parse_checked(text);
  if (!j.is_object()) throw ValidationError("pair JSON must be an object");
  for (const char* key : {"k", "dims", "alpha", "beta"}) {
    if (!j.contains(key)) {
      throw ValidationError(std::string("pair JSON missing \"") + key + "\"");
    }
  }
  HypergraphPair h;
  if (!j.at("k").is_number_integer()) {
    throw ValidationError("k must be an integer");
  }
  h.k = j.at("k").get<int>();
  if (!j.at("dims").is_array()) throw ValidationError("dims must be an array");
  for (const json& d : j.at("dims")) {
    if (!d.is_number_integer()) {
      throw ValidationError("dims entries must be integers");
    }
    h.dims.push_back(d.get<int>());
  }
  h.alpha = exponent_map_from_json(j.at("alpha"), "alpha");
  h.beta = exponent_map_from_json(j.at("beta"), "beta");
  h.validate();
  return h;
}

std::string function_to_json(const GridFunction& f, bool pretty) {
  f.validate();
  json j;
  j["k"] = f.k;
  j["n"] = f.space.n;
  json values = json::array();
  for (const Complex& z : f.values) {
    values.push_back(json::array({z.real(), z.imag()}));
  }
  j["values"] = std::move(values);
  j["weights"] = f.space.weights;
  return pretty ? j.dump(2) : j.dump();
}

GridFunction function_from_json(const std::string& text) {
  const json j = parse_checked(text);
  if (!j.is_object()) throw ValidationError("function JSON must be an object");
  for (const char* key : {"k", "n", "values", "weights"}) {
    if (!j.contains(key)) {
      throw ValidationError(std::string("function JSON missing \"") + key +
                            "\"");
    }
  }
  if (!j.at("k").is_number_integer() || !j.at("n").is_number_integer()) {
    throw ValidationError("k and n must be integers");
  }
  const int k = j.at("k").get<int>();
  const int n = j.at("n").get<int>();
  if (k < 1 || n < 1) throw ValidationError("k and n must be positive");
  if (!j.at("weights").is_array()) {
    throw ValidationError("weights must be an array");
  }
  DiscreteMeasureSpace space;
  space.n = n;
  for (const json& w : j.at("weights")) {
    if (!w.is_number()) throw ValidationError("weights must be numbers");
    space.weights.push_back(w.get<double>());
  }
  space.validate();

  if (!j.at("values").is_array()) {
    throw ValidationError("values must be an array");
  }
  GridFunction f;
  f.space = std::move(space);
  f.k = k;
  for (const json& v : j.at("values")) {
    if (!v.is_array() || v.size() != 2 || !v[0].is_number() ||
        !v[1].is_number()) {
      throw ValidationError("values entries must be [re, im] pairs");
    }
    f.values.emplace_back(v[0].get<double>(), v[1].get<double>());
  }
  f.validate();
  return f;
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write " + path);
  out << text;
}

HypergraphPair load_pair(const std::string& path) {
  return pair_from_json(read_text_file(path));
}

GridFunction load_function(const std::string& path) {
  return function_from_json(read_text_file(path));
}

std::string fnv1a64_hex(std::string_view bytes) {
  std::uint64_t hash = 0xcbf29ce484222325ULL;
  for (unsigned char c : bytes) {
    hash ^= c;
    hash *= 0x100000001b3ULL;
  }
  static const char* digits = "0123456789abcdef";
  std::string out(16, '0');
  for (int i = 15; i >= 0; --i) {
    out[static_cast<std::size_t>(i)] = digits[hash & 0xf];
    hash >>= 4;
  }
  return out;
}

}  // namespace hypernorm
