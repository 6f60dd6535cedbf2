#pragma once

#include <map>
#include <string>
#include <vector>

namespace hypernorm {

// One cell of the vertex box V_1 x ... x V_k: one vertex index per axis.
using Omega = std::vector<int>;

// Exponent assignment on box cells. std::map keeps cells in lexicographic
// order, which doubles as the canonical serialization order.
using ExponentMap = std::map<Omega, double>;

// A hypergraph pair H = (alpha, beta) over a finite box of k axes with
// dims[i] vertices on axis i. alpha carries the plain exponents, beta the
// conjugated ones; absent cells mean exponent zero. Entries smaller than
// kPruneEpsilon in magnitude are dropped by the arithmetic helpers.
struct HypergraphPair {
  int k = 0;
  std::vector<int> dims;
  ExponentMap alpha;
  ExponentMap beta;

  bool operator==(const HypergraphPair&) const = default;

  // Throws ValidationError / DimensionError when the shape is inconsistent:
  // k < 1, dims size mismatch, cells out of range, or non-finite values.
  void validate() const;

  // |H| = sum of all alpha and beta values (signed).
  double size() const;

  int total_vertices() const;     // sum of dims
  double box_cells() const;       // product of dims, as double
  bool is_nonnegative() const;
  bool is_zero_one(double tol = 1e-9) const;
  bool is_integer_valued(double tol = 1e-9) const;

  // Sorted union of alpha and beta supports.
  std::vector<Omega> support() const;

  // alpha(w) + beta(w), zero when absent from both.
  double total_at(const Omega& w) const;

  std::string describe() const;  // short human-readable shape summary
};

inline constexpr double kPruneEpsilon = 1e-12;

// Every cell of the box with the given dims, in lexicographic order
// (axis 0 slowest).
std::vector<Omega> enumerate_cells(const std::vector<int>& dims);

// Empty pair over the given box.
HypergraphPair make_zero_pair(int k, std::vector<int> dims);

// The pair 1_psi: alpha = {psi -> 1}, beta empty.
HypergraphPair delta(int k, const std::vector<int>& dims, const Omega& psi);

// Entrywise arithmetic. Both operands must share the same box.
HypergraphPair add(const HypergraphPair& a, const HypergraphPair& b);
HypergraphPair sub(const HypergraphPair& a, const HypergraphPair& b);

// Swap alpha and beta.
HypergraphPair conjugate(const HypergraphPair& h);

// Multiply every exponent by r.
HypergraphPair scale(const HypergraphPair& h, double r);

// Disjoint union: same k, dims add; the first operand occupies the low
// vertex block on every axis, the second the high block.
HypergraphPair disjoint_union(const HypergraphPair& a, const HypergraphPair& b);

// Tensor product: same k, dims multiply; vertex (v, w) on axis i flattens to
// v * b.dims[i] + w. Exponents follow
//   (alpha1 (x) alpha2 + beta1 (x) beta2, alpha1 (x) beta2 + beta1 (x) alpha2).
HypergraphPair tensor(const HypergraphPair& a, const HypergraphPair& b);

// Projection onto a subset of axes (0-indexed, strictly increasing): each
// projected cell accumulates the fiber sum of the source exponents.
HypergraphPair project(const HypergraphPair& h, const std::vector<int>& axes);

}  // namespace hypernorm
