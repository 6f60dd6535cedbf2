#include "hypernorm/engine.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <thread>
#include <utility>

#include "hypernorm/errors.hpp"

namespace hypernorm {

Complex power_kernel(Complex z, double a, double b) {
  if (a < 0.0 || b < 0.0) {
    throw ValidationError("power_kernel: exponents must be nonnegative");
  }
  if (a == 0.0 && b == 0.0) return {1.0, 0.0};
  // Collapse -0.0 imaginary parts so the branch cut lands in (-pi, pi].
  if (z.imag() == 0.0) z = Complex(z.real(), 0.0);
  const double r = std::abs(z);
  if (r == 0.0) return {0.0, 0.0};
  const double modulus = std::pow(r, a + b);
  if (a == b) return {modulus, 0.0};
  return std::polar(modulus, (a - b) * std::arg(z));
}

namespace {

// Compensated summation; real and imaginary parts carry their own
// compensation so the accumulation order fully determines the result.
struct KahanSum {
  double sum = 0.0;
  double comp = 0.0;
  void add(double v) {
    const double y = v - comp;
    const double t = sum + y;
    comp = (t - sum) - y;
    sum = t;
  }
};

struct KahanComplex {
  KahanSum re, im;
  void add(const Complex& z) {
    re.add(z.real());
    im.add(z.imag());
  }
  Complex value() const { return {re.sum, im.sum}; }
};

// One support cell turned into a lookup table: vars lists the box vertices
// the cell touches (axis-major, ascending) and table holds the powered
// function values in the same row-major layout as GridFunction::values.
struct EntryFactor {
  std::vector<int> vars;
  std::vector<Complex> table;
};

struct Problem {
  int n = 0;
  int nvars = 0;
  std::vector<double> weights;
  std::vector<EntryFactor> entries;
};

Problem build_problem(const std::vector<MixedPart>& parts) {
  if (parts.empty()) {
    throw ValidationError("integrate: at least one factor required");
  }
  const HypergraphPair& h0 = parts.front().pair;
  const GridFunction& f0 = parts.front().fn;
  for (const MixedPart& p : parts) {
    p.pair.validate();
    p.fn.validate();
    if (!p.pair.is_nonnegative()) {
      throw ValidationError("integrate: pair exponents must be nonnegative");
    }
    if (p.pair.k != h0.k || p.pair.dims != h0.dims) {
      throw DimensionError("integrate: factors live over different boxes");
    }
    if (p.fn.k != p.pair.k) {
      throw DimensionError("integrate: function arity differs from the box");
    }
    if (p.fn.space != f0.space) {
      throw DimensionError("integrate: factors use different measure spaces");
    }
  }

  Problem pb;
  pb.n = f0.space.n;
  pb.weights = f0.space.weights;
  std::vector<int> offsets(static_cast<std::size_t>(h0.k), 0);
  int total = 0;
  for (int i = 0; i < h0.k; ++i) {
    offsets[static_cast<std::size_t>(i)] = total;
    total += h0.dims[static_cast<std::size_t>(i)];
  }
  pb.nvars = total;

  for (const MixedPart& p : parts) {
    // Merge the alpha and beta exponents per cell so each cell costs one
    // kernel table.
    std::map<Omega, std::pair<double, double>> cells;
    for (const auto& [w, v] : p.pair.alpha) cells[w].first += v;
    for (const auto& [w, v] : p.pair.beta) cells[w].second += v;
    for (const auto& [w, ab] : cells) {
      EntryFactor e;
      e.vars.reserve(static_cast<std::size_t>(p.pair.k));
      for (int i = 0; i < p.pair.k; ++i) {
        e.vars.push_back(offsets[static_cast<std::size_t>(i)] +
                         w[static_cast<std::size_t>(i)]);
      }
      e.table.resize(p.fn.values.size());
      for (std::size_t j = 0; j < e.table.size(); ++j) {
        e.table[j] = power_kernel(p.fn.values[j], ab.first, ab.second);
      }
      pb.entries.push_back(std::move(e));
    }
  }
  return pb;
}

double pow_int(double base, int exp) {
  double out = 1.0;
  for (int i = 0; i < exp; ++i) out *= base;
  return out;
}

int clamp_threads(int threads) { return std::clamp(threads, 1, 256); }

// ---------------------------------------------------------------------------
// Brute force: iterate every assignment of the box variables. The sum is
// split into one compensated partial per value of variable 0, and the
// partials combine in index order, so any thread count reproduces the
// serial result bit for bit.

Complex brute_partial(const Problem& pb, int outer) {
  const int n = pb.n;
  const int nvars = pb.nvars;
  std::vector<int> x(static_cast<std::size_t>(nvars), 0);
  x[0] = outer;
  // wpre[i] = product of weights of x[0..i]; refreshed from the digit that
  // changed, which is O(1) amortized per assignment.
  std::vector<double> wpre(static_cast<std::size_t>(nvars), 1.0);
  auto refresh_weights = [&](int from) {
    for (int i = from; i < nvars; ++i) {
      const double prev = (i == 0) ? 1.0 : wpre[static_cast<std::size_t>(i - 1)];
      wpre[static_cast<std::size_t>(i)] =
          prev * pb.weights[static_cast<std::size_t>(x[static_cast<std::size_t>(i)])];
    }
  };
  refresh_weights(0);

  KahanComplex acc;
  while (true) {
    Complex prod(wpre[static_cast<std::size_t>(nvars - 1)], 0.0);
    for (const EntryFactor& e : pb.entries) {
      std::size_t idx = 0;
      for (int v : e.vars) {
        idx = idx * static_cast<std::size_t>(n) +
              static_cast<std::size_t>(x[static_cast<std::size_t>(v)]);
      }
      prod *= e.table[idx];
      if (prod.real() == 0.0 && prod.imag() == 0.0) break;
    }
    acc.add(prod);

    int d = nvars - 1;
    for (; d >= 1; --d) {
      if (++x[static_cast<std::size_t>(d)] < n) break;
      x[static_cast<std::size_t>(d)] = 0;
    }
    if (d < 1) break;
    refresh_weights(d);
  }
  return acc.value();
}

Complex brute_eval(const Problem& pb, int threads) {
  const int n = pb.n;
  std::vector<Complex> partials(static_cast<std::size_t>(n));
  threads = std::min(clamp_threads(threads), n);
  if (threads <= 1) {
    for (int t = 0; t < n; ++t) partials[static_cast<std::size_t>(t)] = brute_partial(pb, t);
  } else {
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(threads));
    for (int w = 0; w < threads; ++w) {
      const int lo = static_cast<int>(static_cast<long long>(n) * w / threads);
      const int hi = static_cast<int>(static_cast<long long>(n) * (w + 1) / threads);
      pool.emplace_back([&pb, &partials, lo, hi] {
        for (int t = lo; t < hi; ++t) {
          partials[static_cast<std::size_t>(t)] = brute_partial(pb, t);
        }
      });
    }
    for (std::thread& th : pool) th.join();
  }
  KahanComplex total;
  for (int t = 0; t < n; ++t) total.add(partials[static_cast<std::size_t>(t)]);
  return total.value();
}

// ---------------------------------------------------------------------------
// Planner: greedy min-fill over the variable interaction graph, with group
// elimination — merging every factor that touches the pivot also sums out
// any variable that became local to the merged tensor.

struct ScopeState {
  std::vector<std::vector<int>> scopes;
  std::vector<char> live;
};

bool factor_contains(const std::vector<int>& scope, int v) {
  return std::binary_search(scope.begin(), scope.end(), v);
}

ContractionPlan make_plan_impl(const std::vector<std::vector<int>>& entry_scopes,
                               int n, int nvars, double total_entries) {
  ContractionPlan plan;
  plan.n = n;
  plan.variable_count = nvars;
  plan.total_entries = total_entries;
  plan.brute_cost = pow_int(static_cast<double>(n), nvars) *
                    std::max(1.0, total_entries);

  ScopeState st;
  for (const auto& s : entry_scopes) st.scopes.push_back(s);
  for (int v = 0; v < nvars; ++v) st.scopes.push_back({v});
  st.live.assign(st.scopes.size(), 1);

  std::vector<char> summed_out(static_cast<std::size_t>(nvars), 0);
  double live_bytes = 0.0;
  auto scope_bytes = [&](const std::vector<int>& s) {
    return 16.0 * pow_int(static_cast<double>(n), static_cast<int>(s.size()));
  };
  for (std::size_t i = 0; i < st.scopes.size(); ++i) {
    live_bytes += scope_bytes(st.scopes[i]);
  }
  double peak_bytes = live_bytes;

  auto adjacent = [&](int a, int b) {
    for (std::size_t i = 0; i < st.scopes.size(); ++i) {
      if (!st.live[i]) continue;
      if (factor_contains(st.scopes[i], a) && factor_contains(st.scopes[i], b)) {
        return true;
      }
    }
    return false;
  };

  int remaining = nvars;
  while (remaining > 0) {
    // Pick the pivot with the fewest fill edges; ties break on variable id.
    int best_var = -1;
    long long best_fill = -1;
    for (int v = 0; v < nvars; ++v) {
      if (summed_out[static_cast<std::size_t>(v)]) continue;
      std::set<int> nbrs;
      for (std::size_t i = 0; i < st.scopes.size(); ++i) {
        if (!st.live[i] || !factor_contains(st.scopes[i], v)) continue;
        for (int u : st.scopes[i]) {
          if (u != v && !summed_out[static_cast<std::size_t>(u)]) nbrs.insert(u);
        }
      }
      long long fill = 0;
      for (auto it = nbrs.begin(); it != nbrs.end(); ++it) {
        auto jt = it;
        for (++jt; jt != nbrs.end(); ++jt) {
          if (!adjacent(*it, *jt)) ++fill;
        }
      }
      if (best_var < 0 || fill < best_fill) {
        best_var = v;
        best_fill = fill;
      }
    }

    PlanStep step;
    step.pivot = best_var;
    for (std::size_t i = 0; i < st.scopes.size(); ++i) {
      if (st.live[i] && factor_contains(st.scopes[i], best_var)) {
        step.factor_ids.push_back(static_cast<int>(i));
      }
    }
    std::set<int> merged;
    for (int id : step.factor_ids) {
      merged.insert(st.scopes[static_cast<std::size_t>(id)].begin(),
                    st.scopes[static_cast<std::size_t>(id)].end());
    }
    step.merged_scope.assign(merged.begin(), merged.end());
    // A merged variable with no appearance outside the merge is summed here.
    for (int u : step.merged_scope) {
      bool elsewhere = false;
      for (std::size_t i = 0; i < st.scopes.size() && !elsewhere; ++i) {
        if (!st.live[i]) continue;
        if (std::find(step.factor_ids.begin(), step.factor_ids.end(),
                      static_cast<int>(i)) != step.factor_ids.end()) {
          continue;
        }
        elsewhere = factor_contains(st.scopes[i], u);
      }
      if (!elsewhere) step.summed.push_back(u);
    }
    for (int u : step.merged_scope) {
      if (std::find(step.summed.begin(), step.summed.end(), u) ==
          step.summed.end()) {
        step.output_scope.push_back(u);
      }
    }
    step.cost = pow_int(static_cast<double>(n),
                        static_cast<int>(step.merged_scope.size()));

    const double out_bytes = scope_bytes(step.output_scope);
    peak_bytes = std::max(peak_bytes, live_bytes + out_bytes);
    for (int id : step.factor_ids) {
      live_bytes -= scope_bytes(st.scopes[static_cast<std::size_t>(id)]);
      st.live[static_cast<std::size_t>(id)] = 0;
    }
    live_bytes += out_bytes;
    st.scopes.push_back(step.output_scope);
    st.live.push_back(1);

    for (int u : step.summed) {
      summed_out[static_cast<std::size_t>(u)] = 1;
      --remaining;
    }
    plan.total_cost += step.cost;
    plan.steps.push_back(std::move(step));
  }

  plan.peak_bytes = peak_bytes >= 1e18
                        ? static_cast<std::size_t>(-1)
                        : static_cast<std::size_t>(peak_bytes);
  return plan;
}

ContractionPlan make_plan(const Problem& pb) {
  std::vector<std::vector<int>> entry_scopes;
  entry_scopes.reserve(pb.entries.size());
  for (const EntryFactor& e : pb.entries) {
    std::vector<int> s = e.vars;
    std::sort(s.begin(), s.end());
    entry_scopes.push_back(std::move(s));
  }
  return make_plan_impl(entry_scopes, pb.n, pb.nvars,
                        static_cast<double>(pb.entries.size()));
}

// ---------------------------------------------------------------------------
// Plan execution. Tensors are dense over their sorted scope; every output
// cell is a compensated sum over the summed digits in row-major order, so
// the result is independent of how cells are distributed over threads.

struct DataTensor {
  std::vector<int> scope;
  std::vector<Complex> data;
};

struct FactorAccess {
  const std::vector<Complex>* data = nullptr;
  // For each position of the factor's own scope: which digit feeds it.
  std::vector<int> digit_index;   // index into out digits or sum digits
  std::vector<char> from_summed;  // true: read sum digit, false: out digit
};

DataTensor contract_step(const std::vector<DataTensor>& tensors,
                         const PlanStep& step, int n, int threads) {
  const std::vector<int>& out_scope = step.output_scope;
  const std::vector<int>& summed = step.summed;
  const int n_out = static_cast<int>(out_scope.size());
  const int n_sum = static_cast<int>(summed.size());
  std::size_t out_size = 1;
  for (int i = 0; i < n_out; ++i) out_size *= static_cast<std::size_t>(n);
  std::size_t sum_size = 1;
  for (int i = 0; i < n_sum; ++i) sum_size *= static_cast<std::size_t>(n);

  auto digit_of = [&](int var, bool& is_summed) {
    for (int i = 0; i < n_sum; ++i) {
      if (summed[static_cast<std::size_t>(i)] == var) {
        is_summed = true;
        return i;
      }
    }
    for (int i = 0; i < n_out; ++i) {
      if (out_scope[static_cast<std::size_t>(i)] == var) {
        is_summed = false;
        return i;
      }
    }
    throw Error("contract_step: variable missing from scopes");
  };

  std::vector<FactorAccess> access;
  access.reserve(step.factor_ids.size());
  for (int id : step.factor_ids) {
    const DataTensor& t = tensors[static_cast<std::size_t>(id)];
    FactorAccess fa;
    fa.data = &t.data;
    for (int var : t.scope) {
      bool is_summed = false;
      const int digit = digit_of(var, is_summed);
      fa.digit_index.push_back(digit);
      fa.from_summed.push_back(is_summed ? 1 : 0);
    }
    access.push_back(std::move(fa));
  }

  DataTensor out;
  out.scope = out_scope;
  out.data.assign(out_size, Complex(0.0, 0.0));

  auto run_range = [&](std::size_t lo, std::size_t hi) {
    std::vector<int> out_digits(static_cast<std::size_t>(std::max(n_out, 1)), 0);
    std::vector<int> sum_digits(static_cast<std::size_t>(std::max(n_sum, 1)), 0);
    for (std::size_t cell = lo; cell < hi; ++cell) {
      std::size_t rest = cell;
      for (int i = n_out - 1; i >= 0; --i) {
        out_digits[static_cast<std::size_t>(i)] =
            static_cast<int>(rest % static_cast<std::size_t>(n));
        rest /= static_cast<std::size_t>(n);
      }
      std::fill(sum_digits.begin(), sum_digits.end(), 0);
      KahanComplex acc;
      for (std::size_t s = 0; s < sum_size; ++s) {
        Complex prod(1.0, 0.0);
        for (const FactorAccess& fa : access) {
          std::size_t idx = 0;
          for (std::size_t pos = 0; pos < fa.digit_index.size(); ++pos) {
            const int digit = fa.digit_index[pos];
            const int value = fa.from_summed[pos]
                                  ? sum_digits[static_cast<std::size_t>(digit)]
                                  : out_digits[static_cast<std::size_t>(digit)];
            idx = idx * static_cast<std::size_t>(n) +
                  static_cast<std::size_t>(value);
          }
          prod *= (*fa.data)[idx];
          if (prod.real() == 0.0 && prod.imag() == 0.0) break;
        }
        acc.add(prod);
        for (int d = n_sum - 1; d >= 0; --d) {
          if (++sum_digits[static_cast<std::size_t>(d)] < n) break;
          sum_digits[static_cast<std::size_t>(d)] = 0;
        }
      }
      out.data[cell] = acc.value();
    }
  };

  threads = static_cast<int>(std::min<std::size_t>(
      static_cast<std::size_t>(clamp_threads(threads)), out_size));
  if (threads <= 1) {
    run_range(0, out_size);
  } else {
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(threads));
    for (int w = 0; w < threads; ++w) {
      const std::size_t lo = out_size * static_cast<std::size_t>(w) /
                             static_cast<std::size_t>(threads);
      const std::size_t hi = out_size * static_cast<std::size_t>(w + 1) /
                             static_cast<std::size_t>(threads);
      pool.emplace_back([&run_range, lo, hi] { run_range(lo, hi); });
    }
    for (std::thread& th : pool) th.join();
  }
  return out;
}

Complex planned_eval(const ContractionPlan& plan, const Problem& pb,
                     int threads) {
  if (plan.n != pb.n || plan.variable_count != pb.nvars ||
      plan.total_entries != static_cast<double>(pb.entries.size())) {
    throw ValidationError("integrate_planned: plan built for another problem");
  }
  std::vector<DataTensor> tensors;
  tensors.reserve(pb.entries.size() + static_cast<std::size_t>(pb.nvars) +
                  plan.steps.size());
  for (const EntryFactor& e : pb.entries) {
    DataTensor t;
    t.scope = e.vars;
    std::sort(t.scope.begin(), t.scope.end());
    // Entry vars ascend already (axis-major ids), so table layout matches.
    t.data = e.table;
    tensors.push_back(std::move(t));
  }
  for (int v = 0; v < pb.nvars; ++v) {
    DataTensor t;
    t.scope = {v};
    t.data.reserve(pb.weights.size());
    for (double w : pb.weights) t.data.emplace_back(w, 0.0);
    tensors.push_back(std::move(t));
  }

  std::vector<char> live(tensors.size(), 1);
  for (const PlanStep& step : plan.steps) {
    for (int id : step.factor_ids) {
      if (id < 0 || id >= static_cast<int>(tensors.size()) ||
          !live[static_cast<std::size_t>(id)]) {
        throw ValidationError("integrate_planned: plan references a dead factor");
      }
    }
    DataTensor out = contract_step(tensors, step, pb.n, threads);
    for (int id : step.factor_ids) {
      live[static_cast<std::size_t>(id)] = 0;
      tensors[static_cast<std::size_t>(id)].data.clear();
      tensors[static_cast<std::size_t>(id)].data.shrink_to_fit();
    }
    tensors.push_back(std::move(out));
    live.push_back(1);
  }

  Complex result(1.0, 0.0);
  for (std::size_t i = 0; i < tensors.size(); ++i) {
    if (!live[i]) continue;
    if (!tensors[i].scope.empty()) {
      throw Error("integrate_planned: plan left a non-scalar factor");
    }
    result *= tensors[i].data.at(0);
  }
  return result;
}

}  // namespace

ContractionPlan plan_contraction(const HypergraphPair& h, int n,
                                 const EvalOptions& opts) {
  (void)opts;
  h.validate();
  if (n < 1) throw ValidationError("plan_contraction: n must be positive");
  DiscreteMeasureSpace space = DiscreteMeasureSpace::counting(n);
  std::vector<MixedPart> parts;
  parts.push_back({h, GridFunction::constant(space, h.k, Complex(1.0, 0.0))});
  Problem pb = build_problem(parts);
  return make_plan(pb);
}

ContractionPlan plan_contraction_mixed(const std::vector<MixedPart>& parts,
                                       int n, const EvalOptions& opts) {
  (void)opts;
  Problem pb = build_problem(parts);
  if (pb.n != n) {
    throw DimensionError("plan_contraction_mixed: n differs from the parts");
  }
  return make_plan(pb);
}

Complex integrate_mixed(const std::vector<MixedPart>& parts,
                        const EvalOptions& opts) {
  Problem pb = build_problem(parts);
  const double brute_cost =
      pow_int(static_cast<double>(pb.n), pb.nvars) *
      std::max<double>(1.0, static_cast<double>(pb.entries.size()));

  auto run_brute = [&]() -> Complex {
    if (brute_cost > opts.budget_terms) {
      throw BudgetError("integrate: brute-force cost exceeds the term budget",
                        brute_cost);
    }
    return brute_eval(pb, opts.threads);
  };
  auto run_planned = [&]() -> Complex {
    ContractionPlan plan = make_plan(pb);
    if (plan.total_cost > opts.budget_terms ||
        plan.peak_bytes > opts.budget_bytes) {
      throw BudgetError("integrate: planned cost exceeds the budget",
                        plan.total_cost);
    }
    return planned_eval(plan, pb, opts.threads);
  };

  switch (opts.path) {
    case EvalPath::Brute:
      return run_brute();
    case EvalPath::Planned:
      return run_planned();
    case EvalPath::Auto:
    default:
      break;
  }

  const double terms = pow_int(static_cast<double>(pb.n), pb.nvars);
  if (terms <= 4096.0 && brute_cost <= opts.budget_terms) {
    return brute_eval(pb, opts.threads);
  }
  ContractionPlan plan = make_plan(pb);
  const bool plan_fits = plan.total_cost <= opts.budget_terms &&
                         plan.peak_bytes <= opts.budget_bytes;
  if (plan_fits &&
      (plan.total_cost < brute_cost || brute_cost > opts.budget_terms)) {
    return planned_eval(plan, pb, opts.threads);
  }
  if (brute_cost <= opts.budget_terms) {
    return brute_eval(pb, opts.threads);
  }
  throw BudgetError("integrate: no evaluation path fits the budget",
                    std::min(plan.total_cost, brute_cost));
}

Complex integrate(const HypergraphPair& h, const GridFunction& f,
                  const EvalOptions& opts) {
  std::vector<MixedPart> parts;
  parts.push_back({h, f});
  return integrate_mixed(parts, opts);
}

Complex integrate_planned(const ContractionPlan& plan,
                          const std::vector<MixedPart>& parts,
                          const EvalOptions& opts) {
  Problem pb = build_problem(parts);
  return planned_eval(plan, pb, opts.threads);
}

NormResult norm(const HypergraphPair& h, const GridFunction& f,
                const EvalOptions& opts) {
  const double total = h.size();
  if (!(total > 0.0)) {
    throw ValidationError("norm: |H| must be positive");
  }
  NormResult out;
  out.integral = integrate(h, f, opts);
  out.phase = std::arg(out.integral);
  const double magnitude = std::abs(out.integral);
  out.value = magnitude > 0.0 ? std::pow(magnitude, 1.0 / total) : 0.0;
  out.imaginary_flagged =
      magnitude > 0.0 && std::abs(out.integral.imag()) > 1e-9 * magnitude;
  return out;
}

}  // namespace hypernorm
