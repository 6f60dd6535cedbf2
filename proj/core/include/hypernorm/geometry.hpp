#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "hypernorm/inequalities.hpp"
#include "hypernorm/pair.hpp"
#include "hypernorm/space.hpp"

namespace hypernorm {

enum class ConstantKind { C, Cstar };

// Best constant in the scalar two-point inequality
//   C:      ((|x+y|^p + |x-y|^p)/2)^{1/p} <= (|x|^t + |C y|^t)^{1/t}
//   Cstar:  ((|x+y|^q + |x-y|^q)/2)^{1/q} >= (|x|^r + |y/C*|^r)^{1/r}
// computed by grid search over x = 1, y = rho e^{i theta} plus
// golden-section refinement. rho/theta record the maximizer.
struct TwoPointConstant {
  ConstantKind kind = ConstantKind::C;
  double t_or_r = 0.0;
  double p_or_q = 0.0;
  double value = 0.0;
  double rho = 0.0;
  double theta = 0.0;
};

TwoPointConstant two_point_constant(ConstantKind kind, double t_or_r,
                                    double p_or_q);

enum class KKind { Smooth, Convex };

// Sampled lower bound on the smallest K in
//   Smooth:  ((||f+g||^p + ||f-g||^p)/2)^{1/p} <= (||f||^t + ||K g||^t)^{1/t}
//   Convex:  ((||f+g||^q + ||f-g||^q)/2)^{1/q} >= (||f||^r + ||g/K||^r)^{1/r}
// over the H-norm on a counting space. Includes a directed diagonal
// witness family f = diag(1,1,0,...), g = diag(rho,-rho,0,...) swept over
// rho, whose ratio approaches the sharp constant. When a closed form for
// the sharp value is known (Smooth at t = 2 for eligible pair shapes),
// exact_known carries it and the sampled bound must stay below it.
struct KConstantEstimate {
  KKind kind = KKind::Smooth;
  double t_or_r = 0.0;
  double p_or_q = 0.0;
  double value = 0.0;
  GridFunction witness_f;
  GridFunction witness_g;
  bool exact_known = false;
  double exact_value = 0.0;
};

KConstantEstimate estimate_K(const HypergraphPair& h, double t_or_r,
                             double p_or_q, const TrialConfig& cfg, KKind kind);

// RHS - LHS of
//   ||f+g||^|H| + ||f-g||^|H| <= (||f|| + ||g||)^|H| + | ||f|| - ||g|| |^|H|
// over random complex pairs. Pass/fail applies when H has the shape the
// theorem covers (every support cell {0,1}, or equal-split with an even
// integer parameter); other pairs run in exploration mode where margins
// are reported as conjecture evidence only and pass is always true.
InequalityReport check_hanner(const HypergraphPair& h, const TrialConfig& cfg);

// RHS - LHS of
//   ((||f+g||^q + ||f-g||^q)/2)^{1/q} <= (||f||^p + ||g||^p)^{1/p}
// with q = |H| >= 2 and 1/p + 1/q = 1, together with the dual form on
// ((f+g)/2, (f-g)/2); the two margins must agree in sign.
InequalityReport check_clarkson(const HypergraphPair& h,
                                const TrialConfig& cfg);

enum class ModulusKind { Smoothness, Convexity };

// One-sided sampled moduli over the H-norm unit sphere on a counting space:
//   Smoothness: rho(tau) = sup (||x+tau y|| + ||x-tau y||)/2 - 1, a LOWER
//     bound from random unit pairs, coordinate-diagonal pairs, and climbing.
//   Convexity: delta(eps) = inf { 1 - ||(x+y)/2|| : ||x-y|| >= 2 eps },
//     an UPPER bound from pairs projected onto the constraint boundary.
// values are cleaned up to be monotone in the grid parameter without
// leaving the valid side of the bound.
struct ModulusEstimate {
  ModulusKind kind = ModulusKind::Smoothness;
  std::vector<double> grid;
  std::vector<double> values;
  std::string direction;  // "lower-bound" or "upper-bound"
  int samples = 0;
  std::uint64_t seed = 0;
};

ModulusEstimate estimate_modulus(const HypergraphPair& h, ModulusKind kind,
                                 const std::vector<double>& grid,
                                 const TrialConfig& cfg);

// Two-point Bonami inequality on complex scalars: for 1 < p <= q and
// rho = sqrt((p-1)/(q-1)),
//   ((|x+rho y|^q + |x-rho y|^q)/2)^{1/q} <= ((|x+y|^p + |x-y|^p)/2)^{1/p}.
// margin = RHS - LHS over random complex pairs.
InequalityReport check_bonami(double p, double q, const TrialConfig& cfg);

// Diagonal embedding check on the counting space of size n: for random
// a in C^n, the function f_a(i_1..i_k) = a_i on the diagonal must satisfy
// ||f_a||_H = (sum |a_i|^|H|)^{1/|H|} to 1e-10 relative. Requires a
// non-factorizable pair (single component, no isolated vertices).
struct EmbeddingReport {
  int n = 0;
  int trials = 0;
  double max_rel_error = 0.0;
  bool pass = false;
  std::uint64_t seed = 0;
};

EmbeddingReport embedding_witness(const HypergraphPair& h, int n,
                                  const TrialConfig& cfg);

}  // namespace hypernorm
