#pragma once

#include <complex>
#include <cstddef>
#include <vector>

#include "hypernorm/pair.hpp"
#include "hypernorm/space.hpp"

namespace hypernorm {

// Complex power kernel z^(a,b) := |z|^(a+b) e^{i(a-b) Arg z} with the
// principal argument in (-pi, pi]. Conventions: 0^0 = 1 (a = b = 0 yields 1
// for every z, including 0); z = 0 with a + b > 0 yields 0.
Complex power_kernel(Complex z, double a, double b);

enum class EvalPath { Auto, Brute, Planned };

struct EvalOptions {
  EvalPath path = EvalPath::Auto;
  double budget_terms = 1e8;                   // scalar-term evaluations
  std::size_t budget_bytes = 256ull << 20;     // peak intermediate storage
  int threads = 1;                             // worker cap; results identical for any value
};

// One product factor of a mixed integral: the function f raised to the
// hypergraph pair H. All parts of one integral share the same box.
struct MixedPart {
  HypergraphPair pair;
  GridFunction fn;
};

// One elimination step of a contraction plan.
struct PlanStep {
  int pivot = 0;                    // variable chosen by min-fill
  std::vector<int> summed;          // pivot plus variables local to the merge
  std::vector<int> merged_scope;    // union scope of the merged factors
  std::vector<int> output_scope;    // merged_scope minus summed
  std::vector<int> factor_ids;      // merged factor indices (stable ids)
  double cost = 0.0;                // n^|merged_scope| term evaluations
};

struct ContractionPlan {
  int n = 0;
  int variable_count = 0;           // sum of dims over the shared box
  double total_entries = 0.0;       // support cells across all parts
  double brute_cost = 0.0;          // n^variables * entries
  double total_cost = 0.0;          // sum of step costs
  std::size_t peak_bytes = 0;       // max live intermediate storage
  std::vector<PlanStep> steps;
};

// Build the elimination plan for H over an n-point space (greedy min-fill,
// group elimination). Pure structure: no function values needed.
ContractionPlan plan_contraction(const HypergraphPair& h, int n,
                                 const EvalOptions& opts = {});
ContractionPlan plan_contraction_mixed(const std::vector<MixedPart>& parts,
                                       int n, const EvalOptions& opts = {});

// The core integral: sum over all variable assignments x of
//   [prod over box vertices of mu(x_v)] * [prod over support cells of
//    power_kernel(f(cell(x)), alpha(cell), beta(cell))].
// Brute force and the planned contraction agree to 1e-9 relative; parallel
// and serial evaluation agree bitwise.
Complex integrate(const HypergraphPair& h, const GridFunction& f,
                  const EvalOptions& opts = {});
Complex integrate_mixed(const std::vector<MixedPart>& parts,
                        const EvalOptions& opts = {});

// Evaluate a previously built plan.
Complex integrate_planned(const ContractionPlan& plan,
                          const std::vector<MixedPart>& parts,
                          const EvalOptions& opts = {});

struct NormResult {
  double value = 0.0;          // |integral|^(1/|H|)
  Complex integral{0.0, 0.0};  // raw integral
  double phase = 0.0;          // Arg integral
  bool imaginary_flagged = false;  // |Im| > 1e-9 |integral|
};

// ||f||_H = |integrate(H, f)|^(1/|H|); |H| must be positive. A genuine
// (semi-)norm produces a nonnegative real integral, so a relatively large
// imaginary part is flagged.
NormResult norm(const HypergraphPair& h, const GridFunction& f,
                const EvalOptions& opts = {});

}  // namespace hypernorm
