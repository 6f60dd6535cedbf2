#pragma once

#include <vector>

#include "hypernorm/pair.hpp"
#include "hypernorm/space.hpp"

namespace hypernorm {

// L_p pair: one axis, one vertex, alpha = beta = p/2, so the norm is the
// weighted p-norm. p >= 1 unless allow_subunit is set (experimental range;
// the triangle inequality is not guaranteed below 1).
HypergraphPair make_lp(double p, bool allow_subunit = false);

// Gowers U_k pair: k axes of size 2, alpha = parity of the cell, beta the
// complement; every cell of the box carries weight 1 on one side.
HypergraphPair make_gowers(int k);

// Schatten S_{2m} pair (pass 2m): two axes of size m, alpha = 1 on the
// diagonal i == j, beta = 1 on the shifted diagonal i == j+1 (mod m).
HypergraphPair make_schatten(int two_m);

// Complete pair: alpha = beta = p on every cell of the full box. p >= 1/2.
HypergraphPair make_complete(double p, const std::vector<int>& dims);

// Two-axis pair over a 2x2 box with alpha = beta, weight sqrt(2)/2 on the
// diagonal cells and 1/2 off the diagonal. Fails the uniform-exponent
// classification check and its finite-dimensional norm violates the
// triangle inequality.
HypergraphPair make_sqrt2_pair();

// Direct Schatten oracle: treats f (k = 2, counting measure) as the matrix
// A and returns (Tr((A A*)^m))^{1/2m} by repeated matrix products.
double schatten_oracle(const GridFunction& f, int two_m);

// Degenerate extension of a uniform even-exponent pair H with parameter
// s = 2m: k' extra axes, each of size |supp(alpha)| * s. Every support
// cell psi of H spawns 2m cells that pin all new axes to the same fresh
// vertex; the first m copies go to alpha, the rest to beta. Averaging a
// function over the new axes and evaluating the base pair reproduces the
// extended integral exactly, and any function with zero average over the
// new axes has norm 0 — a semi-norm that is not a norm.
struct DegenerateExtension {
  HypergraphPair pair;
  HypergraphPair base;
  std::vector<int> new_axes;  // axis indices k .. k+k'-1 of `pair`
};

DegenerateExtension make_degenerate_extension(const HypergraphPair& base,
                                              int k_prime);

}  // namespace hypernorm
