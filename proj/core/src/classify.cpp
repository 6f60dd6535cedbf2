#include "hypernorm/classify.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "hypernorm/errors.hpp"
#include "hypernorm/isomorphism.hpp"

namespace hypernorm {

namespace {

constexpr double kTol = 1e-9;

std::string cell_string(const Omega& w) {
  std::string out = "(";
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (i) out += ",";
    out += std::to_string(w[i]);
  }
  out += ")";
  return out;
}

std::string number_string(double v) {
  std::ostringstream os;
  os.precision(12);
  os << v;
  return os.str();
}

struct WeightsAt {
  double alpha = 0.0;
  double beta = 0.0;
};

WeightsAt weights_at(const HypergraphPair& h, const Omega& w) {
  WeightsAt out;
  if (auto it = h.alpha.find(w); it != h.alpha.end()) out.alpha = it->second;
  if (auto it = h.beta.find(w); it != h.beta.end()) out.beta = it->second;
  return out;
}

// Support-shape dichotomy. On success sets type_two / s.
CheckRecord dichotomy_check(const HypergraphPair& h, bool& type_two,
                            double& s) {
  CheckRecord rec{"support-dichotomy", false, ""};
  const std::vector<Omega> support = h.support();
  if (support.empty()) {
    rec.witness = "empty support";
    return rec;
  }

  bool equal_ok = true;    // alpha == beta on every support cell
  bool zero_one_ok = true;  // {alpha, beta} == {0, 1} on every support cell
  Omega equal_witness, zero_one_witness;
  for (const Omega& w : support) {
    const WeightsAt v = weights_at(h, w);
    if (equal_ok && std::abs(v.alpha - v.beta) > kTol) {
      equal_ok = false;
      equal_witness = w;
    }
    const bool is_01 = (std::abs(v.alpha - 1.0) <= kTol &&
                        std::abs(v.beta) <= kTol) ||
                       (std::abs(v.alpha) <= kTol &&
                        std::abs(v.beta - 1.0) <= kTol);
    if (zero_one_ok && !is_01) {
      zero_one_ok = false;
      zero_one_witness = w;
    }
  }

  if (equal_ok) {
    // Uniform parameter: alpha + beta must take one value on the support.
    const WeightsAt first = weights_at(h, support.front());
    const double candidate = first.alpha + first.beta;
    for (const Omega& w : support) {
      const WeightsAt v = weights_at(h, w);
      if (std::abs(v.alpha + v.beta - candidate) > kTol) {
        rec.witness = "exponent sums differ on the support: cell " +
                      cell_string(support.front()) + " has " +
                      number_string(candidate) + ", cell " + cell_string(w) +
                      " has " + number_string(v.alpha + v.beta);
        return rec;
      }
    }
    rec.passed = true;
    type_two = false;
    s = candidate;
    return rec;
  }
  if (zero_one_ok) {
    rec.passed = true;
    type_two = true;
    s = 1.0;
    return rec;
  }
  const Omega& w = equal_witness.empty() ? zero_one_witness : equal_witness;
  const WeightsAt v = weights_at(h, w);
  rec.witness = "cell " + cell_string(w) + " has alpha=" +
                number_string(v.alpha) + " beta=" + number_string(v.beta) +
                ", neither equal-split nor {0,1}";
  return rec;
}

CheckRecord exponent_sum_check(const HypergraphPair& h) {
  CheckRecord rec{"exponent-sum-at-least-one", true, ""};
  for (const Omega& w : h.support()) {
    const WeightsAt v = weights_at(h, w);
    if (v.alpha + v.beta < 1.0 - kTol) {
      rec.passed = false;
      rec.witness = "cell " + cell_string(w) + " has alpha+beta=" +
                    number_string(v.alpha + v.beta) + " < 1";
      return rec;
    }
  }
  return rec;
}

CheckRecord self_conjugacy_check(const HypergraphPair& h) {
  CheckRecord rec{"self-conjugate", true, ""};
  if (!isomorphic(h, conjugate(h))) {
    rec.passed = false;
    rec.witness =
        "no per-axis vertex relabeling maps the pair onto its conjugate";
  }
  return rec;
}

// Degree regularity via the dichotomy on each single-axis projection.
CheckRecord degree_check(const HypergraphPair& h) {
  CheckRecord rec{"axis-degree-dichotomy", true, ""};
  if (h.k == 1) return rec;  // the pair is its own single-axis projection
  for (int i = 0; i < h.k; ++i) {
    const HypergraphPair p = project(h, {i});
    bool type_two = false;
    double s = 0.0;
    const CheckRecord sub = dichotomy_check(p, type_two, s);
    if (!sub.passed) {
      rec.passed = false;
      rec.witness = "axis " + std::to_string(i) +
                    " projection fails the dichotomy: " + sub.witness;
      return rec;
    }
  }
  return rec;
}

SpreadingResult spreading_impl(const HypergraphPair& h, int budget) {
  int dim_sum = 0;
  for (int d : h.dims) dim_sum += d;
  if (dim_sum > budget) {
    throw BudgetError("check_spreading: sum of dims " +
                          std::to_string(dim_sum) + " exceeds budget " +
                          std::to_string(budget),
                      static_cast<double>(dim_sum));
  }

  const std::vector<Omega> support = h.support();
  std::vector<double> totals;
  totals.reserve(support.size());
  for (const Omega& w : support) {
    const WeightsAt v = weights_at(h, w);
    totals.push_back(v.alpha + v.beta);
  }

  SpreadingResult out;
  const double size = h.size();
  out.pair_ratio = dim_sum > 1
                       ? size / static_cast<double>(dim_sum - 1)
                       : std::numeric_limits<double>::infinity();
  out.worst_ratio = 0.0;

  // Odometer over per-axis nonempty vertex masks, axis 0 slowest.
  std::vector<std::uint32_t> masks(static_cast<std::size_t>(h.k), 1);
  const auto mask_limit = [&](int axis) {
    return (1u << h.dims[static_cast<std::size_t>(axis)]) - 1u;
  };
  bool done = false;
  while (!done) {
    int kept = 0;
    for (int i = 0; i < h.k; ++i) {
      kept += __builtin_popcount(masks[static_cast<std::size_t>(i)]);
    }
    if (kept - 1 > 0) {
      double restricted = 0.0;
      for (std::size_t c = 0; c < support.size(); ++c) {
        bool inside = true;
        for (int i = 0; i < h.k && inside; ++i) {
          const int v = support[c][static_cast<std::size_t>(i)];
          inside = (masks[static_cast<std::size_t>(i)] >> v) & 1u;
        }
        if (inside) restricted += totals[c];
      }
      const double ratio = restricted / static_cast<double>(kept - 1);
      if (ratio > out.worst_ratio + 1e-12) {
        out.worst_ratio = ratio;
        out.worst_subbox.assign(static_cast<std::size_t>(h.k), {});
        for (int i = 0; i < h.k; ++i) {
          for (int v = 0; v < h.dims[static_cast<std::size_t>(i)]; ++v) {
            if ((masks[static_cast<std::size_t>(i)] >> v) & 1u) {
              out.worst_subbox[static_cast<std::size_t>(i)].push_back(v);
            }
          }
        }
      }
    }
    int axis = h.k - 1;
    while (axis >= 0) {
      if (masks[static_cast<std::size_t>(axis)] <
          mask_limit(axis)) {
        ++masks[static_cast<std::size_t>(axis)];
        break;
      }
      masks[static_cast<std::size_t>(axis)] = 1;
      --axis;
    }
    if (axis < 0) done = true;
  }
  out.passed = out.worst_ratio <= out.pair_ratio + kTol;
  return out;
}

// Spreading applied to each non-factorizable component (the literal bound
// over the whole box falsely rejects disjoint unions whose components are
// individually fine). Components beyond the budget are skipped with a note.
CheckRecord component_spreading_check(const HypergraphPair& h, int budget,
                                      std::string& notes) {
  CheckRecord rec{"component-spreading", true, ""};
  const Factorization f = factorize(h);
  for (std::size_t c = 0; c < f.components.size(); ++c) {
    try {
      const SpreadingResult r = spreading_impl(f.components[c], budget);
      if (!r.passed) {
        rec.passed = false;
        std::string box;
        for (std::size_t i = 0; i < r.worst_subbox.size(); ++i) {
          box += (i ? "x{" : "{");
          for (std::size_t j = 0; j < r.worst_subbox[i].size(); ++j) {
            if (j) box += ",";
            box += std::to_string(r.worst_subbox[i][j]);
          }
          box += "}";
        }
        rec.witness = "component " + std::to_string(c) + " sub-box " + box +
                      " has density " + number_string(r.worst_ratio) +
                      " > " + number_string(r.pair_ratio);
        return rec;
      }
    } catch (const BudgetError&) {
      if (!notes.empty()) notes += " ";
      notes += "component " + std::to_string(c) +
               " exceeded the spreading enumeration budget; that bound was "
               "not checked.";
    }
  }
  return rec;
}

// The battery run on the pair itself and on each small projection.
bool core_battery(const HypergraphPair& h, int budget, const std::string& tag,
                  std::vector<CheckRecord>& checks, std::string& notes,
                  bool& type_two, double& s) {
  const auto push = [&](CheckRecord rec) {
    if (!tag.empty()) rec.name = tag + " " + rec.name;
    checks.push_back(rec);
    return checks.back().passed;
  };
  if (!push(dichotomy_check(h, type_two, s))) return false;
  if (!push(exponent_sum_check(h))) return false;
  if (!push(self_conjugacy_check(h))) return false;
  if (!push(degree_check(h))) return false;
  if (!push(component_spreading_check(h, budget, notes))) return false;
  return true;
}

}  // namespace

std::string verdict_name(Verdict v) {
  switch (v) {
    case Verdict::TypeI:
      return "TypeI";
    case Verdict::TypeII:
      return "TypeII";
    case Verdict::NotSemiNorming:
      return "NotSemiNorming";
  }
  return "NotSemiNorming";
}

ClassificationResult classify(const HypergraphPair& h, int spreading_budget) {
  h.validate();
  if (!h.is_nonnegative()) {
    throw ValidationError("classify: weights must be nonnegative");
  }

  ClassificationResult out;
  out.notes =
      "Necessary-condition screen: TypeI/TypeII verdicts mean the checks "
      "are consistent with a semi-norming pair, not a proof of norming.";

  bool type_two = false;
  double s = 0.0;
  if (!core_battery(h, spreading_budget, "", out.checks, out.notes, type_two,
                    s)) {
    out.verdict = Verdict::NotSemiNorming;
    return out;
  }

  // The same battery on every projection onto 1 or 2 axes (proper subsets).
  for (int size = 1; size <= 2 && size < h.k; ++size) {
    std::vector<int> axes(static_cast<std::size_t>(size));
    const auto run_subset = [&](const std::vector<int>& subset) {
      const HypergraphPair p = project(h, subset);
      std::string tag = "projection(";
      for (std::size_t i = 0; i < subset.size(); ++i) {
        if (i) tag += ",";
        tag += std::to_string(subset[i]);
      }
      tag += ")";
      bool sub_two = false;
      double sub_s = 0.0;
      return core_battery(p, spreading_budget, tag, out.checks, out.notes,
                          sub_two, sub_s);
    };
    bool ok = true;
    if (size == 1) {
      for (int i = 0; i < h.k && ok; ++i) ok = run_subset({i});
    } else {
      for (int i = 0; i < h.k && ok; ++i) {
        for (int j = i + 1; j < h.k && ok; ++j) ok = run_subset({i, j});
      }
    }
    if (!ok) {
      out.verdict = Verdict::NotSemiNorming;
      return out;
    }
  }

  out.verdict = type_two ? Verdict::TypeII : Verdict::TypeI;
  out.s = s;
  return out;
}

DegreeProfile degree_profile(const HypergraphPair& h) {
  h.validate();
  DegreeProfile out;
  out.regular = true;
  for (int i = 0; i < h.k; ++i) {
    AxisDegree axis;
    axis.alpha_sums.assign(
        static_cast<std::size_t>(h.dims[static_cast<std::size_t>(i)]), 0.0);
    axis.beta_sums = axis.alpha_sums;
    for (const auto& [w, v] : h.alpha) {
      axis.alpha_sums[static_cast<std::size_t>(
          w[static_cast<std::size_t>(i)])] += v;
    }
    for (const auto& [w, v] : h.beta) {
      axis.beta_sums[static_cast<std::size_t>(
          w[static_cast<std::size_t>(i)])] += v;
    }
    axis.regular = true;
    axis.d = axis.alpha_sums.empty() ? 0.0 : axis.alpha_sums[0];
    for (std::size_t v = 0; v < axis.alpha_sums.size(); ++v) {
      if (std::abs(axis.alpha_sums[v] - axis.d) > kTol ||
          std::abs(axis.beta_sums[v] - axis.d) > kTol) {
        axis.regular = false;
      }
    }
    if (!axis.regular) out.regular = false;
    out.axes.push_back(std::move(axis));
  }
  return out;
}

SpreadingResult check_spreading(const HypergraphPair& h, int budget) {
  h.validate();
  return spreading_impl(h, budget);
}

DegenerateAxesResult detect_degenerate_axes(const HypergraphPair& h) {
  h.validate();
  DegenerateAxesResult out;
  const DegreeProfile profile = degree_profile(h);
  for (int i = 0; i < h.k; ++i) {
    const AxisDegree& axis = profile.axes[static_cast<std::size_t>(i)];
    bool all_one = true;
    for (std::size_t v = 0; v < axis.alpha_sums.size() && all_one; ++v) {
      all_one = std::abs(axis.alpha_sums[v] + axis.beta_sums[v] - 1.0) <= kTol;
    }
    if (all_one) out.axes.push_back(i);
  }
  if (!out.axes.empty() && static_cast<int>(out.axes.size()) < h.k) {
    std::vector<int> keep;
    for (int i = 0; i < h.k; ++i) {
      if (!std::binary_search(out.axes.begin(), out.axes.end(), i)) {
        keep.push_back(i);
      }
    }
    out.base = project(h, keep);
  }
  return out;
}

}  // namespace hypernorm
