#pragma once

#include <optional>
#include <string>
#include <vector>

#include "hypernorm/pair.hpp"

namespace hypernorm {

enum class Verdict { TypeI, TypeII, NotSemiNorming };

std::string verdict_name(Verdict v);

struct CheckRecord {
  std::string name;
  bool passed = false;
  std::string witness;  // populated on failure (offending cell, axis, ...)
};

// Necessary-condition screen. TypeI/TypeII mean "consistent with
// semi-norming"; they are never a proof of norming. NotSemiNorming is a
// definite rejection backed by the witness of the failed check.
struct ClassificationResult {
  Verdict verdict = Verdict::NotSemiNorming;
  double s = 0.0;  // Type I parameter (alpha + beta on support); 1 for Type II
  std::vector<CheckRecord> checks;
  std::string notes;
};

// Checks, in order: support-shape dichotomy (uniform alpha = beta = s/2, or
// {alpha, beta} = {0,1} cellwise); exponent sum >= 1; self-conjugacy up to
// relabeling; the dichotomy on every single-axis projection (degree
// regularity); the spreading bound on every non-factorizable component; and
// the same battery on every projection onto 1 or 2 axes. Stops at the first
// failure. Throws ValidationError on signed weights.
ClassificationResult classify(const HypergraphPair& h,
                              int spreading_budget = 20);

struct AxisDegree {
  std::vector<double> alpha_sums;  // per vertex: sum of alpha over the fiber
  std::vector<double> beta_sums;
  bool regular = false;  // all alpha and beta sums equal one constant d
  double d = 0.0;
};

struct DegreeProfile {
  std::vector<AxisDegree> axes;
  bool regular = false;
};

DegreeProfile degree_profile(const HypergraphPair& h);

// Literal sub-box enumeration of the spreading bound
//   |H'| / (sum |W_i| - 1)  <=  |H| / (sum dims - 1)
// over every nonempty sub-box (skipping the degenerate denominator 0).
// Throws BudgetError when sum(dims) exceeds the budget. Note the literal
// bound can reject disjoint unions of valid pairs; classify applies it per
// non-factorizable component instead.
struct SpreadingResult {
  bool passed = false;
  double pair_ratio = 0.0;
  double worst_ratio = 0.0;
  std::vector<std::vector<int>> worst_subbox;  // kept vertices per axis
};

SpreadingResult check_spreading(const HypergraphPair& h, int budget = 20);

// Axes on which every vertex has total fiber degree exactly 1. Averaging a
// function over such axes before evaluating the projected pair reproduces
// the original integral, so they carry no norming information. `base` is
// the projection onto the remaining axes when some (but not all) axes are
// flagged.
struct DegenerateAxesResult {
  std::vector<int> axes;
  std::optional<HypergraphPair> base;
};

DegenerateAxesResult detect_degenerate_axes(const HypergraphPair& h);

}  // namespace hypernorm
