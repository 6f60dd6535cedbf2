#pragma once

#include <optional>
#include <string>
#include <vector>

#include "hypernorm/pair.hpp"

namespace hypernorm {

// Per-axis vertex bijections h_i with alpha(w) = alpha'(h(w)) and
// beta(w) = beta'(h(w)) on every cell. axis_maps[i][v] is the image of
// vertex v on axis i.
struct IsomorphismWitness {
  std::vector<std::vector<int>> axis_maps;
};

// Backtracking search over per-axis bijections, pruned by per-vertex degree
// profiles (the multiset of incident (alpha, beta) weights — an isomorphism
// invariant). Returns the witness when the pairs are isomorphic.
std::optional<IsomorphismWitness> find_isomorphism(const HypergraphPair& a,
                                                   const HypergraphPair& b);

bool isomorphic(const HypergraphPair& a, const HypergraphPair& b);

// Connected components of the vertex-incidence structure: each support cell
// links its k incident vertices; isolated vertices are reported separately.
struct Factorization {
  std::vector<HypergraphPair> components;
  // component_vertices[c][i] lists the original vertex ids (ascending) that
  // component c occupies on axis i.
  std::vector<std::vector<std::vector<int>>> component_vertices;
  // isolated_vertices[i] lists axis-i vertices incident to no support cell.
  std::vector<std::vector<int>> isolated_vertices;
};

Factorization factorize(const HypergraphPair& h);

struct MinimalityResult {
  bool minimal = false;
  std::string reason;  // failure explanation when not minimal
};

// Minimal means: no isolated vertex, and the multiset of component
// isomorphism classes has at least one odd multiplicity (otherwise
// H ~ H' disjoint-union H').
MinimalityResult is_minimal(const HypergraphPair& h);

}  // namespace hypernorm
