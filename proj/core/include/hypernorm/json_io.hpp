#pragma once

#include <string>
#include <string_view>

#include "hypernorm/pair.hpp"
#include "hypernorm/space.hpp"

namespace hypernorm {

// Canonical JSON for a hypergraph pair:
//   {"alpha":[{"omega":[...],"value":v},...],"beta":[...],"dims":[...],"k":n}
// Keys are emitted alphabetically and support cells in lexicographic order,
// so equal pairs always serialize to identical bytes.
std::string pair_to_json(const HypergraphPair& h, bool pretty = false);
HypergraphPair pair_from_json(const std::string& text);

// Canonical JSON for a grid function:
//   {"k":..., "n":..., "values":[[re,im],...], "weights":[...]}
// Values are row-major with axis 0 slowest; weights are the per-point
// measure of the shared axis space.
std::string function_to_json(const GridFunction& f, bool pretty = false);
GridFunction function_from_json(const std::string& text);

// File helpers. Loaders throw ParseError (with 1-based line/column) on
// malformed JSON and ValidationError on well-formed JSON with bad schema.
std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& text);
HypergraphPair load_pair(const std::string& path);
GridFunction load_function(const std::string& path);

// FNV-1a 64-bit digest, lower-case hex. Used to fingerprint inputs in
// run manifests.
std::string fnv1a64_hex(std::string_view bytes);

}  // namespace hypernorm
