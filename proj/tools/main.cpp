// hypernorm: evaluate hypergraph-pair norms, classify pairs, verify the
// norm inequalities, search for triangle-inequality violations, and measure
// Banach-geometry quantities, all with seeded reproducible reports.

#include <chrono>
#include <complex>
#include <cstdlib>
#include <iostream>
#include <map>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "hypernorm/catalog.hpp"
#include "hypernorm/classify.hpp"
#include "hypernorm/engine.hpp"
#include "hypernorm/errors.hpp"
#include "hypernorm/geometry.hpp"
#include "hypernorm/inequalities.hpp"
#include "hypernorm/isomorphism.hpp"
#include "hypernorm/json_io.hpp"
#include "hypernorm/pair.hpp"
#include "hypernorm/space.hpp"
#include "hypernorm/version.hpp"

namespace {

using hypernorm::BudgetError;
using hypernorm::Complex;
using hypernorm::GridFunction;
using hypernorm::HypergraphPair;
using hypernorm::TrialConfig;
using json = nlohmann::json;

struct RunState {
  std::uint64_t seed = 0;
  int threads = 1;
  bool pretty = false;
  std::string output;
  double budget_terms = 1e8;
  std::size_t budget_bytes = 256ull << 20;
  std::map<std::string, std::string> digests;
  std::chrono::steady_clock::time_point started;
  int exit_code = 0;
};

hypernorm::EvalOptions eval_options(const RunState& state) {
  hypernorm::EvalOptions opts;
  opts.threads = state.threads;
  opts.budget_terms = state.budget_terms;
  opts.budget_bytes = state.budget_bytes;
  return opts;
}

HypergraphPair load_pair_tracked(RunState& state, const std::string& path) {
  const std::string text = hypernorm::read_text_file(path);
  state.digests[path] = hypernorm::fnv1a64_hex(text);
  return hypernorm::pair_from_json(text);
}

GridFunction load_function_tracked(RunState& state, const std::string& path) {
  const std::string text = hypernorm::read_text_file(path);
  state.digests[path] = hypernorm::fnv1a64_hex(text);
  return hypernorm::function_from_json(text);
}

std::string join_results(const std::vector<std::string>& values) {
  std::string out;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i) out += ",";
    out += values[i];
  }
  return out;
}

json manifest_json(const RunState& state, const CLI::App& app) {
  json flags = json::object();
  std::vector<const CLI::App*> chain{&app};
  while (true) {
    const CLI::App* leaf = chain.back();
    bool extended = false;
    for (const CLI::App* sub : leaf->get_subcommands()) {
      chain.push_back(sub);
      extended = true;
      break;
    }
    if (!extended) break;
  }
  std::string command;
  for (const CLI::App* node : chain) {
    if (node != &app) command += command.empty() ? "" : " ";
    if (node != &app) command += node->get_name();
    for (const CLI::Option* opt : node->get_options()) {
      if (opt->count() == 0) continue;
      const std::string name = opt->get_name();
      if (name == "--help" || name == "-h") continue;
      flags[name] = join_results(opt->results());
    }
  }
  if (command.empty()) command = app.get_name();

  json digests = json::object();
  for (const auto& [path, digest] : state.digests) digests[path] = digest;

  const double wall =
      std::chrono::duration<double>(std::chrono::steady_clock::now() -
                                    state.started)
          .count();
  return json{{"command", command},
              {"flags", flags},
              {"seed", state.seed},
              {"version", hypernorm::kVersion},
              {"input_digests", digests},
              {"wall_seconds", wall}};
}

void emit(RunState& state, const CLI::App& app, json report,
          const std::string& pretty_text) {
  report["manifest"] = manifest_json(state, app);
  std::string rendered;
  if (state.pretty && !pretty_text.empty()) {
    rendered = pretty_text;
  } else {
    rendered = report.dump(2) + "\n";
  }
  if (!state.output.empty()) {
    hypernorm::write_text_file(state.output, rendered);
  } else {
    std::cout << rendered;
  }
}

json complex_json(Complex z) { return json::array({z.real(), z.imag()}); }

json function_json(const GridFunction& f) {
  return json::parse(hypernorm::function_to_json(f));
}

json report_json(const hypernorm::InequalityReport& rep,
                 bool include_witness = true) {
  json witness = json::object();
  witness["trial_index"] = rep.witness.trial_index;
  if (include_witness) {
    json fns = json::array();
    for (const GridFunction& f : rep.witness.functions) {
      fns.push_back(function_json(f));
    }
    witness["functions"] = fns;
  }
  return json{{"id", rep.id},         {"trials_run", rep.trials_run},
              {"worst_margin", rep.worst_margin}, {"pass", rep.pass},
              {"seed", rep.seed},     {"notes", rep.notes},
              {"witness", witness}};
}

std::string report_pretty(const hypernorm::InequalityReport& rep) {
  std::ostringstream out;
  out << "id            " << rep.id << "\n";
  out << "trials        " << rep.trials_run << "\n";
  out << "worst margin  " << rep.worst_margin << "\n";
  out << "pass          " << (rep.pass ? "yes" : "no") << "\n";
  if (!rep.notes.empty()) out << "notes         " << rep.notes << "\n";
  return out.str();
}

hypernorm::Omega parse_cell(const std::string& text) {
  hypernorm::Omega cell;
  std::stringstream stream(text);
  std::string item;
  while (std::getline(stream, item, ',')) {
    try {
      cell.push_back(std::stoi(item));
    } catch (const std::exception&) {
      throw hypernorm::ValidationError("could not parse cell coordinate '" +
                                       item + "'");
    }
  }
  if (cell.empty()) {
    throw hypernorm::ValidationError("empty cell coordinate list");
  }
  return cell;
}

// Closed-form check values for --oracle: the weighted p-sum for the
// one-cell L_p shape, and the trace oracle for the Schatten shape (or its
// alpha/beta swap, which has the same norm).
std::optional<double> lp_oracle(const HypergraphPair& h,
                                const GridFunction& f) {
  if (h.k != 1 || h.dims != std::vector<int>{1}) return std::nullopt;
  if (h.alpha.size() != 1 || h.beta.size() != 1) return std::nullopt;
  const auto a = h.alpha.begin();
  const auto b = h.beta.begin();
  if (a->first != hypernorm::Omega{0} || b->first != hypernorm::Omega{0}) {
    return std::nullopt;
  }
  if (std::abs(a->second - b->second) > 1e-12) return std::nullopt;
  const double p = a->second + b->second;
  double sum = 0.0;
  for (int x = 0; x < f.space.n; ++x) {
    sum += f.space.weights[static_cast<std::size_t>(x)] *
           std::pow(std::abs(f.values[static_cast<std::size_t>(x)]), p);
  }
  return std::pow(sum, 1.0 / p);
}

std::optional<double> schatten_shape_oracle(const HypergraphPair& h,
                                            const GridFunction& f) {
  if (h.k != 2 || h.dims.size() != 2 || h.dims[0] != h.dims[1]) {
    return std::nullopt;
  }
  const int two_m = static_cast<int>(std::llround(h.size()));
  if (two_m < 2 || two_m % 2 != 0) return std::nullopt;
  const HypergraphPair reference = hypernorm::make_schatten(two_m);
  if (reference.dims != h.dims) return std::nullopt;
  if (h == reference || h == hypernorm::conjugate(reference)) {
    return hypernorm::schatten_oracle(f, two_m);
  }
  return std::nullopt;
}

void apply_budget_env(RunState& state) {
  const char* raw = std::getenv("HYPERNORM_BUDGET");
  if (raw == nullptr) return;
  const std::string text(raw);
  const auto colon = text.find(':');
  try {
    state.budget_terms = std::stod(text.substr(0, colon));
    if (colon != std::string::npos) {
      state.budget_bytes =
          static_cast<std::size_t>(std::stod(text.substr(colon + 1)));
    }
  } catch (const std::exception&) {
    throw hypernorm::ValidationError(
        "HYPERNORM_BUDGET must be 'terms' or 'terms:bytes'");
  }
}

}  // namespace

int main(int argc, char** argv) {
  RunState state;
  state.started = std::chrono::steady_clock::now();
  const unsigned hw = std::thread::hardware_concurrency();
  state.threads = hw == 0 ? 1 : static_cast<int>(hw);

  CLI::App app{"hypergraph-pair norms: evaluation, classification, "
               "inequality verification, and geometry measurements"};
  app.require_subcommand(1);
  app.fallthrough();
  app.add_option("--seed", state.seed, "base seed for all randomness");
  app.add_option("--threads", state.threads,
                 "worker thread cap (results are identical for any value)");
  app.add_flag("--pretty", state.pretty, "human-readable tables instead of JSON");
  app.add_option("-o,--output", state.output, "write the report to this file");

  // ---------------------------------------------------------------- make
  auto* make = app.add_subcommand("make", "generate a catalog pair");
  make->require_subcommand(1);
  make->fallthrough();

  const auto emit_pair = [&](const CLI::App& sub, const HypergraphPair& h,
                             const json& extra) {
    const std::string text = hypernorm::pair_to_json(h, true);
    if (!state.output.empty()) {
      hypernorm::write_text_file(state.output, text);
      json note{{"written", state.output}, {"cells", h.support().size()},
                {"size", h.size()}};
      for (auto it = extra.begin(); it != extra.end(); ++it) {
        note[it.key()] = it.value();
      }
      note["manifest"] = manifest_json(state, app);
      std::cout << note.dump(2) << "\n";
    } else {
      std::cout << text;
    }
    (void)sub;
  };

  {
    auto opts = std::make_shared<std::pair<double, bool>>(2.0, false);
    auto* sub = make->add_subcommand("lp", "one-cell pair with ||.|| = L_p");
    sub->add_option("--p", opts->first, "exponent p")->required();
    sub->add_flag("--allow-subunit", opts->second,
                  "permit 0 < p < 1 (quasi-norm territory)");
    sub->callback([&, opts, sub]() {
      emit_pair(*sub, hypernorm::make_lp(opts->first, opts->second), {});
    });
  }
  {
    auto k = std::make_shared<int>(2);
    auto* sub = make->add_subcommand("gowers", "box-norm pair U_k");
    sub->add_option("--k", *k, "axis count")->required();
    sub->callback([&, k, sub]() {
      emit_pair(*sub, hypernorm::make_gowers(*k), {});
    });
  }
  {
    auto two_m = std::make_shared<int>(4);
    auto* sub = make->add_subcommand("schatten", "Schatten pair S_{2m}");
    sub->add_option("--two-m", *two_m, "even norm order 2m")->required();
    sub->callback([&, two_m, sub]() {
      emit_pair(*sub, hypernorm::make_schatten(*two_m), {});
    });
  }
  {
    struct CompleteOpts {
      double p = 1.0;
      std::vector<int> dims;
    };
    auto opts = std::make_shared<CompleteOpts>();
    auto* sub = make->add_subcommand("complete",
                                     "constant weights p on the full box");
    sub->add_option("--p", opts->p, "weight per side (>= 1/2)")->required();
    sub->add_option("--dims", opts->dims, "box dims, comma separated")
        ->required()
        ->delimiter(',');
    sub->callback([&, opts, sub]() {
      emit_pair(*sub, hypernorm::make_complete(opts->p, opts->dims), {});
    });
  }
  {
    auto* sub = make->add_subcommand(
        "sqrt2", "the sqrt(2) weighted pair (triangle-inequality near-miss)");
    sub->callback([&, sub]() {
      emit_pair(*sub, hypernorm::make_sqrt2_pair(), {});
    });
  }
  {
    struct ScaleOpts {
      std::string pair;
      double factor = 1.0;
    };
    auto opts = std::make_shared<ScaleOpts>();
    auto* sub = make->add_subcommand("scale",
                                     "multiply both weight maps by a factor");
    sub->add_option("--pair", opts->pair, "pair JSON file")->required();
    sub->add_option("--factor", opts->factor, "scale factor")->required();
    sub->callback([&, opts, sub]() {
      emit_pair(*sub,
                hypernorm::scale(load_pair_tracked(state, opts->pair),
                                 opts->factor),
                {});
    });
  }
  {
    struct UnionOpts {
      std::vector<std::string> pairs;
      int copies = 1;
    };
    auto opts = std::make_shared<UnionOpts>();
    auto* sub = make->add_subcommand(
        "union", "disjoint union of pair files (--copies repeats the union)");
    sub->add_option("--pair", opts->pairs, "pair JSON file (repeatable)")
        ->required();
    sub->add_option("--copies", opts->copies,
                    "repeat the whole union this many times");
    sub->callback([&, opts, sub]() {
      if (opts->copies < 1) {
        throw hypernorm::ValidationError("--copies must be >= 1");
      }
      std::vector<HypergraphPair> parts;
      for (const std::string& path : opts->pairs) {
        parts.push_back(load_pair_tracked(state, path));
      }
      std::optional<HypergraphPair> result;
      for (int c = 0; c < opts->copies; ++c) {
        for (const HypergraphPair& part : parts) {
          result = result ? hypernorm::disjoint_union(*result, part) : part;
        }
      }
      emit_pair(*sub, *result, {});
    });
  }
  {
    struct ExtOpts {
      std::string base;
      int k_prime = 1;
    };
    auto opts = std::make_shared<ExtOpts>();
    auto* sub = make->add_subcommand(
        "degenerate-extension",
        "extend a uniform even-split pair by degenerate axes");
    sub->add_option("--base", opts->base, "base pair JSON file")->required();
    sub->add_option("--k-prime", opts->k_prime, "number of new axes")
        ->required();
    sub->callback([&, opts, sub]() {
      const HypergraphPair base = load_pair_tracked(state, opts->base);
      const hypernorm::DegenerateExtension ext =
          hypernorm::make_degenerate_extension(base, opts->k_prime);
      emit_pair(*sub, ext.pair, json{{"new_axes", ext.new_axes}});
    });
  }

  // ------------------------------------------------------------ classify
  {
    struct ClassifyOpts {
      std::string pair;
      int budget = 20;
    };
    auto opts = std::make_shared<ClassifyOpts>();
    auto* sub = app.add_subcommand(
        "classify", "run the semi-norming necessary-condition screen");
    sub->add_option("pair", opts->pair, "pair JSON file")->required();
    sub->add_option("--budget", opts->budget,
                    "vertex budget for sub-box enumeration");
    sub->callback([&, opts]() {
      const HypergraphPair h = load_pair_tracked(state, opts->pair);
      const hypernorm::ClassificationResult res =
          hypernorm::classify(h, opts->budget);
      json checks = json::array();
      for (const auto& check : res.checks) {
        checks.push_back(json{{"name", check.name},
                              {"passed", check.passed},
                              {"witness", check.witness}});
      }
      json rep{{"verdict", hypernorm::verdict_name(res.verdict)},
               {"s", res.s},
               {"notes", res.notes},
               {"checks", checks}};
      std::ostringstream pretty;
      pretty << "verdict  " << hypernorm::verdict_name(res.verdict) << "\n";
      if (res.verdict == hypernorm::Verdict::TypeI) {
        pretty << "s        " << res.s << "\n";
      }
      pretty << "notes    " << res.notes << "\n";
      pretty << "checks\n";
      for (const auto& check : res.checks) {
        pretty << "  [" << (check.passed ? "pass" : "FAIL") << "] "
               << check.name;
        if (!check.witness.empty()) pretty << " - " << check.witness;
        pretty << "\n";
      }
      emit(state, app, rep, pretty.str());
    });
  }

  // ---------------------------------------------------------------- norm
  {
    struct NormOpts {
      std::string pair, function, path = "auto";
      bool oracle = false;
      double tolerance = 1e-9;
    };
    auto opts = std::make_shared<NormOpts>();
    auto* sub = app.add_subcommand("norm", "evaluate ||f||_H");
    sub->add_option("--pair", opts->pair, "pair JSON file")->required();
    sub->add_option("--function", opts->function, "function JSON file")
        ->required();
    sub->add_option("--path", opts->path, "auto|brute|planned");
    sub->add_flag("--oracle", opts->oracle,
                  "also run the catalog oracle and diff");
    sub->add_option("--tolerance", opts->tolerance,
                    "oracle agreement tolerance (relative)");
    sub->callback([&, opts]() {
      const HypergraphPair h = load_pair_tracked(state, opts->pair);
      const GridFunction f = load_function_tracked(state, opts->function);
      hypernorm::EvalOptions eopts = eval_options(state);
      if (opts->path == "brute") {
        eopts.path = hypernorm::EvalPath::Brute;
      } else if (opts->path == "planned") {
        eopts.path = hypernorm::EvalPath::Planned;
      } else if (opts->path != "auto") {
        throw hypernorm::ValidationError("--path must be auto|brute|planned");
      }
      const hypernorm::NormResult res = hypernorm::norm(h, f, eopts);
      json rep{{"value", res.value},
               {"integral", complex_json(res.integral)},
               {"phase", res.phase},
               {"imaginary_flagged", res.imaginary_flagged}};
      std::ostringstream pretty;
      pretty << "norm      " << res.value << "\n";
      pretty << "integral  " << res.integral.real() << " + "
             << res.integral.imag() << "i\n";
      if (opts->oracle) {
        std::optional<double> reference = lp_oracle(h, f);
        if (!reference) reference = schatten_shape_oracle(h, f);
        if (!reference) {
          throw hypernorm::ValidationError(
              "--oracle: no catalog oracle covers this pair shape");
        }
        const double diff = std::abs(res.value - *reference) /
                            std::max(std::abs(*reference), 1e-300);
        rep["oracle"] = *reference;
        rep["oracle_rel_diff"] = diff;
        pretty << "oracle    " << *reference << " (rel diff " << diff << ")\n";
        if (diff > opts->tolerance) state.exit_code = 1;
      }
      emit(state, app, rep, pretty.str());
    });
  }

  // ------------------------------------------------------------ integrate
  {
    struct IntegrateOpts {
      std::string pair, function, path = "auto";
    };
    auto opts = std::make_shared<IntegrateOpts>();
    auto* sub = app.add_subcommand("integrate", "evaluate the raw integral");
    sub->add_option("--pair", opts->pair, "pair JSON file")->required();
    sub->add_option("--function", opts->function, "function JSON file")
        ->required();
    sub->add_option("--path", opts->path, "auto|brute|planned");
    sub->callback([&, opts]() {
      const HypergraphPair h = load_pair_tracked(state, opts->pair);
      const GridFunction f = load_function_tracked(state, opts->function);
      hypernorm::EvalOptions eopts = eval_options(state);
      if (opts->path == "brute") {
        eopts.path = hypernorm::EvalPath::Brute;
      } else if (opts->path == "planned") {
        eopts.path = hypernorm::EvalPath::Planned;
      } else if (opts->path != "auto") {
        throw hypernorm::ValidationError("--path must be auto|brute|planned");
      }
      const Complex value = hypernorm::integrate(h, f, eopts);
      json rep{{"integral", complex_json(value)}};
      std::ostringstream pretty;
      pretty << "integral  " << value.real() << " + " << value.imag() << "i\n";
      emit(state, app, rep, pretty.str());
    });
  }

  // ---------------------------------------------------------------- plan
  {
    struct PlanOpts {
      std::string pair;
      int omega_size = 2;
    };
    auto opts = std::make_shared<PlanOpts>();
    auto* sub = app.add_subcommand("plan", "show the contraction plan");
    sub->add_option("--pair", opts->pair, "pair JSON file")->required();
    sub->add_option("--omega-size", opts->omega_size, "point count n");
    sub->callback([&, opts]() {
      const HypergraphPair h = load_pair_tracked(state, opts->pair);
      const hypernorm::ContractionPlan plan =
          hypernorm::plan_contraction(h, opts->omega_size, eval_options(state));
      json steps = json::array();
      for (const auto& step : plan.steps) {
        steps.push_back(json{{"pivot", step.pivot},
                             {"summed", step.summed},
                             {"merged_scope", step.merged_scope},
                             {"output_scope", step.output_scope},
                             {"factor_ids", step.factor_ids},
                             {"cost", step.cost}});
      }
      json rep{{"n", plan.n},
               {"variable_count", plan.variable_count},
               {"total_entries", plan.total_entries},
               {"brute_cost", plan.brute_cost},
               {"total_cost", plan.total_cost},
               {"peak_bytes", plan.peak_bytes},
               {"steps", steps}};
      std::ostringstream pretty;
      pretty << "variables   " << plan.variable_count << "\n";
      pretty << "brute cost  " << plan.brute_cost << "\n";
      pretty << "plan cost   " << plan.total_cost << "\n";
      pretty << "peak bytes  " << plan.peak_bytes << "\n";
      pretty << "steps\n";
      for (const auto& step : plan.steps) {
        pretty << "  pivot " << step.pivot << ", scope "
               << step.merged_scope.size() << ", cost " << step.cost << "\n";
      }
      emit(state, app, rep, pretty.str());
    });
  }

  // -------------------------------------------------------------- verify
  {
    struct VerifyOpts {
      std::string id;
      std::string pair;
      std::string pair_k;
      std::vector<std::string> parts;
      std::string psi;
      std::string mode;
      bool beta_side = false;
      bool search = false;
      bool conjugate_second = false;
      int functions = 3;
      double p = 2.0, q = 4.0;
      TrialConfig cfg;
    };
    auto opts = std::make_shared<VerifyOpts>();
    auto* sub = app.add_subcommand(
        "verify", "measure an inequality's margin over random trials");
    sub->add_option("id", opts->id,
                    "first-holder | general-holder | monotonicity | gowers-cs "
                    "| gowers-approx | factor-equality | lattice-concavity | "
                    "lattice-convexity | bonami")
        ->required();
    sub->add_option("--pair", opts->pair, "pair JSON file");
    sub->add_option("--pair-k", opts->pair_k,
                    "comparison pair JSON file (monotonicity)");
    sub->add_option("--parts", opts->parts,
                    "decomposition pair files (general-holder)")
        ->delimiter(',');
    sub->add_option("--psi", opts->psi, "box cell, comma separated");
    sub->add_option("--mode", opts->mode, "mode selector for the chosen id");
    sub->add_flag("--beta-side", opts->beta_side,
                  "use the conjugated side (first-holder)");
    sub->add_flag("--search", opts->search,
                  "hill-climb the margin downward (first-holder)");
    sub->add_flag("--conjugate-second", opts->conjugate_second,
                  "use H u conj(H) (factor-equality)");
    sub->add_option("--functions", opts->functions,
                    "function count (lattice ids)");
    sub->add_option("--p", opts->p, "p (bonami)");
    sub->add_option("--q", opts->q, "q (bonami)");
    sub->add_option("--trials", opts->cfg.trials, "trial count");
    sub->add_option("--omega-size", opts->cfg.omega_size, "point count n");
    sub->add_option("--amplitude", opts->cfg.amplitude, "sample amplitude");
    sub->add_option("--tolerance", opts->cfg.tolerance, "pass tolerance");
    sub->callback([&, opts]() {
      opts->cfg.seed = state.seed;
      opts->cfg.threads = state.threads;
      const auto need_pair = [&]() -> HypergraphPair {
        if (opts->pair.empty()) {
          throw hypernorm::ValidationError("verify " + opts->id +
                                           " requires --pair");
        }
        return load_pair_tracked(state, opts->pair);
      };
      hypernorm::InequalityReport rep;
      if (opts->id == "first-holder") {
        if (opts->psi.empty()) {
          throw hypernorm::ValidationError("first-holder requires --psi");
        }
        rep = hypernorm::verify_first_holder(need_pair(),
                                             parse_cell(opts->psi), opts->cfg,
                                             opts->beta_side, opts->search);
      } else if (opts->id == "general-holder") {
        if (opts->parts.empty()) {
          throw hypernorm::ValidationError("general-holder requires --parts");
        }
        std::vector<HypergraphPair> parts;
        for (const std::string& path : opts->parts) {
          parts.push_back(load_pair_tracked(state, path));
        }
        hypernorm::HolderMode mode = hypernorm::HolderMode::Nonnegative;
        if (opts->mode == "integer") mode = hypernorm::HolderMode::Integer;
        else if (opts->mode == "general") mode = hypernorm::HolderMode::General;
        else if (!opts->mode.empty() && opts->mode != "nonnegative") {
          throw hypernorm::ValidationError(
              "--mode must be nonnegative|integer|general");
        }
        rep = hypernorm::verify_general_holder(need_pair(), parts, opts->cfg,
                                               mode);
      } else if (opts->id == "monotonicity") {
        if (opts->pair_k.empty()) {
          throw hypernorm::ValidationError("monotonicity requires --pair-k");
        }
        hypernorm::MonotonicityMode mode =
            hypernorm::MonotonicityMode::NonnegativeF;
        if (opts->mode == "type-i") {
          mode = hypernorm::MonotonicityMode::TypeIPair;
        } else if (opts->mode == "integer") {
          mode = hypernorm::MonotonicityMode::IntegerPairs;
        } else if (!opts->mode.empty() && opts->mode != "nonnegative-f") {
          throw hypernorm::ValidationError(
              "--mode must be nonnegative-f|type-i|integer");
        }
        rep = hypernorm::verify_norm_monotonicity(
            need_pair(), load_pair_tracked(state, opts->pair_k), opts->cfg,
            mode);
      } else if (opts->id == "gowers-cs") {
        if (opts->psi.empty()) {
          throw hypernorm::ValidationError("gowers-cs requires --psi");
        }
        rep = hypernorm::verify_gowers_cs(need_pair(), parse_cell(opts->psi),
                                          opts->cfg);
      } else if (opts->id == "gowers-approx") {
        rep = hypernorm::verify_gowers_approx(need_pair(), opts->cfg);
      } else if (opts->id == "factor-equality") {
        rep = hypernorm::verify_factor_equality(need_pair(), opts->cfg,
                                                opts->conjugate_second);
      } else if (opts->id == "lattice-concavity") {
        rep = hypernorm::verify_lattice_concavity(need_pair(), opts->cfg,
                                                  opts->functions);
      } else if (opts->id == "lattice-convexity") {
        rep = hypernorm::verify_lattice_convexity(need_pair(), opts->cfg,
                                                  opts->functions);
      } else if (opts->id == "bonami") {
        rep = hypernorm::check_bonami(opts->p, opts->q, opts->cfg);
      } else {
        throw hypernorm::ValidationError("unknown inequality id '" + opts->id +
                                         "'");
      }
      if (!rep.pass) state.exit_code = 1;
      emit(state, app, report_json(rep), report_pretty(rep));
    });
  }

  // ----------------------------------------------------- search-violation
  {
    struct SearchOpts {
      std::string pair;
      TrialConfig cfg;
    };
    auto opts = std::make_shared<SearchOpts>();
    opts->cfg.trials = 1000;
    auto* sub = app.add_subcommand(
        "search-violation",
        "random-restart search for a triangle-inequality violation");
    sub->add_option("--pair", opts->pair, "pair JSON file")->required();
    sub->add_option("--trials", opts->cfg.trials, "restart budget");
    sub->add_option("--omega-size", opts->cfg.omega_size, "point count n");
    sub->add_option("--amplitude", opts->cfg.amplitude, "restart amplitude");
    sub->add_option("--tolerance", opts->cfg.tolerance,
                    "certification threshold");
    sub->callback([&, opts]() {
      opts->cfg.seed = state.seed;
      opts->cfg.threads = state.threads;
      const HypergraphPair h = load_pair_tracked(state, opts->pair);
      const std::optional<hypernorm::ViolationWitness> hit =
          hypernorm::search_triangle_violation(h, opts->cfg);
      json rep;
      std::ostringstream pretty;
      if (hit) {
        rep = json{{"found", true},
                   {"gap", hit->gap},
                   {"norm_f", hit->norm_f},
                   {"norm_g", hit->norm_g},
                   {"norm_sum", hit->norm_sum},
                   {"restart_index", hit->restart_index},
                   {"f", function_json(hit->f)},
                   {"g", function_json(hit->g)}};
        pretty << "violation found (restart " << hit->restart_index << ")\n";
        pretty << "gap        " << hit->gap << "\n";
        pretty << "||f||      " << hit->norm_f << "\n";
        pretty << "||g||      " << hit->norm_g << "\n";
        pretty << "||f+g||    " << hit->norm_sum << "\n";
        state.exit_code = 1;
      } else {
        rep = json{{"found", false}, {"restarts", opts->cfg.trials}};
        pretty << "no violation found after " << opts->cfg.trials
               << " restarts (evidence, not proof)\n";
      }
      emit(state, app, rep, pretty.str());
    });
  }

  // ------------------------------------------------------------ constants
  {
    struct ConstOpts {
      std::string kind = "C";
      double t = 2.0, p = 4.0, r = 2.0, q = 2.0;
      bool has_t = false, has_p = false, has_r = false, has_q = false;
    };
    auto opts = std::make_shared<ConstOpts>();
    auto* sub = app.add_subcommand("constants",
                                   "two-point constants C(t,p) / C*(r,q)");
    sub->add_option("--kind", opts->kind, "C or Cstar")->required();
    sub->add_option("--t", opts->t, "t (for C)");
    sub->add_option("--p", opts->p, "p (for C)");
    sub->add_option("--r", opts->r, "r (for C*)");
    sub->add_option("--q", opts->q, "q (for C*)");
    sub->callback([&, opts, sub]() {
      const bool star = opts->kind == "Cstar" || opts->kind == "C*";
      if (!star && opts->kind != "C") {
        throw hypernorm::ValidationError("--kind must be C or Cstar");
      }
      double first = star ? opts->r : opts->t;
      double second = star ? opts->q : opts->p;
      if (star && sub->count("--r") == 0 && sub->count("--t") > 0) {
        first = opts->t;  // allow --t as the first slot alias
      }
      if (star && sub->count("--q") == 0 && sub->count("--p") > 0) {
        second = opts->p;
      }
      const hypernorm::TwoPointConstant res = hypernorm::two_point_constant(
          star ? hypernorm::ConstantKind::Cstar : hypernorm::ConstantKind::C,
          first, second);
      json rep{{"kind", star ? "Cstar" : "C"},
               {"t_or_r", res.t_or_r},
               {"p_or_q", res.p_or_q},
               {"value", res.value},
               {"rho", res.rho},
               {"theta", res.theta}};
      std::ostringstream pretty;
      pretty << (star ? "C*(" : "C(") << res.t_or_r << ", " << res.p_or_q
             << ") = " << res.value << "\n";
      pretty << "maximizer  y = " << res.rho << " * e^(i " << res.theta
             << ")\n";
      emit(state, app, rep, pretty.str());
    });
  }

  // --------------------------------------------------------------- moduli
  {
    struct ModuliOpts {
      std::string pair;
      std::string kind = "smoothness";
      std::vector<double> tau_grid;
      std::vector<double> eps_grid;
      TrialConfig cfg;
    };
    auto opts = std::make_shared<ModuliOpts>();
    opts->cfg.trials = 200;
    auto* sub = app.add_subcommand(
        "moduli", "sampled modulus of smoothness or convexity");
    sub->add_option("--pair", opts->pair, "pair JSON file")->required();
    sub->add_option("--kind", opts->kind, "smoothness or convexity");
    sub->add_option("--tau-grid", opts->tau_grid, "tau values (smoothness)")
        ->delimiter(',');
    sub->add_option("--eps-grid", opts->eps_grid, "eps values (convexity)")
        ->delimiter(',');
    sub->add_option("--trials", opts->cfg.trials, "samples per grid point");
    sub->add_option("--omega-size", opts->cfg.omega_size, "point count n");
    sub->callback([&, opts]() {
      opts->cfg.seed = state.seed;
      opts->cfg.threads = state.threads;
      const HypergraphPair h = load_pair_tracked(state, opts->pair);
      const bool convex = opts->kind == "convexity";
      if (!convex && opts->kind != "smoothness") {
        throw hypernorm::ValidationError(
            "--kind must be smoothness or convexity");
      }
      const std::vector<double>& grid =
          convex ? opts->eps_grid : opts->tau_grid;
      if (grid.empty()) {
        throw hypernorm::ValidationError(
            convex ? "convexity requires --eps-grid"
                   : "smoothness requires --tau-grid");
      }
      const hypernorm::ModulusEstimate res = hypernorm::estimate_modulus(
          h,
          convex ? hypernorm::ModulusKind::Convexity
                 : hypernorm::ModulusKind::Smoothness,
          grid, opts->cfg);
      json rep{{"kind", convex ? "convexity" : "smoothness"},
               {"direction", res.direction},
               {"grid", res.grid},
               {"values", res.values},
               {"samples", res.samples},
               {"seed", res.seed}};
      std::ostringstream pretty;
      pretty << (convex ? "delta(eps)" : "rho(tau)") << " [" << res.direction
             << "]\n";
      for (std::size_t i = 0; i < res.grid.size(); ++i) {
        pretty << "  " << res.grid[i] << "  ->  " << res.values[i] << "\n";
      }
      emit(state, app, rep, pretty.str());
    });
  }

  // ------------------------------------------------------ hanner/clarkson
  const auto add_pair_report_cmd =
      [&](const std::string& name, const std::string& description,
          auto runner) {
        struct PairOpts {
          std::string pair;
          TrialConfig cfg;
        };
        auto opts = std::make_shared<PairOpts>();
        auto* sub = app.add_subcommand(name, description);
        sub->add_option("--pair", opts->pair, "pair JSON file")->required();
        sub->add_option("--trials", opts->cfg.trials, "trial count");
        sub->add_option("--omega-size", opts->cfg.omega_size, "point count n");
        sub->add_option("--amplitude", opts->cfg.amplitude, "sample amplitude");
        sub->add_option("--tolerance", opts->cfg.tolerance, "pass tolerance");
        sub->callback([&, opts, runner]() {
          opts->cfg.seed = state.seed;
          opts->cfg.threads = state.threads;
          const HypergraphPair h = load_pair_tracked(state, opts->pair);
          const hypernorm::InequalityReport rep = runner(h, opts->cfg);
          if (!rep.pass) state.exit_code = 1;
          emit(state, app, report_json(rep), report_pretty(rep));
        });
      };
  add_pair_report_cmd("hanner", "the |H|-Hanner inequality on random pairs",
                      [](const HypergraphPair& h, const TrialConfig& cfg) {
                        return hypernorm::check_hanner(h, cfg);
                      });
  add_pair_report_cmd("clarkson",
                      "the Clarkson-type inequality with q = |H| on random "
                      "pairs (direct and dual forms)",
                      [](const HypergraphPair& h, const TrialConfig& cfg) {
                        return hypernorm::check_clarkson(h, cfg);
                      });

  // ------------------------------------------------------------ estimate-k
  {
    struct KOpts {
      std::string pair;
      std::string kind = "smooth";
      double t = 2.0, p = 4.0, r = 2.0, q = 2.0;
      TrialConfig cfg;
    };
    auto opts = std::make_shared<KOpts>();
    auto* sub = app.add_subcommand(
        "estimate-k", "sampled lower bound on K_{t,p} or K*_{r,q}");
    sub->add_option("--pair", opts->pair, "pair JSON file")->required();
    sub->add_option("--kind", opts->kind, "smooth or convex");
    sub->add_option("--t", opts->t, "t (smooth)");
    sub->add_option("--p", opts->p, "p (smooth)");
    sub->add_option("--r", opts->r, "r (convex)");
    sub->add_option("--q", opts->q, "q (convex)");
    sub->add_option("--trials", opts->cfg.trials, "random sample count");
    sub->add_option("--omega-size", opts->cfg.omega_size, "point count n");
    sub->add_option("--amplitude", opts->cfg.amplitude, "sample amplitude");
    sub->callback([&, opts, sub]() {
      opts->cfg.seed = state.seed;
      opts->cfg.threads = state.threads;
      const bool convex = opts->kind == "convex";
      if (!convex && opts->kind != "smooth") {
        throw hypernorm::ValidationError("--kind must be smooth or convex");
      }
      double first = convex ? opts->r : opts->t;
      double second = convex ? opts->q : opts->p;
      if (convex && sub->count("--r") == 0 && sub->count("--t") > 0) {
        first = opts->t;
      }
      if (convex && sub->count("--q") == 0 && sub->count("--p") > 0) {
        second = opts->p;
      }
      const HypergraphPair h = load_pair_tracked(state, opts->pair);
      const hypernorm::KConstantEstimate res = hypernorm::estimate_K(
          h, first, second, opts->cfg,
          convex ? hypernorm::KKind::Convex : hypernorm::KKind::Smooth);
      json rep{{"kind", convex ? "convex" : "smooth"},
               {"t_or_r", res.t_or_r},
               {"p_or_q", res.p_or_q},
               {"value", res.value},
               {"exact_known", res.exact_known},
               {"witness_f", function_json(res.witness_f)},
               {"witness_g", function_json(res.witness_g)}};
      if (res.exact_known) rep["exact_value"] = res.exact_value;
      std::ostringstream pretty;
      pretty << (convex ? "K*(" : "K(") << res.t_or_r << ", " << res.p_or_q
             << ") >= " << res.value << "\n";
      if (res.exact_known) {
        pretty << "exact value " << res.exact_value << "\n";
      }
      emit(state, app, rep, pretty.str());
    });
  }

  // ------------------------------------------------------------ embed-check
  {
    struct EmbedOpts {
      std::string pair;
      int n = 4;
      TrialConfig cfg;
    };
    auto opts = std::make_shared<EmbedOpts>();
    opts->cfg.trials = 100;
    auto* sub = app.add_subcommand(
        "embed-check", "diagonal embedding isometry check on counting measure");
    sub->add_option("--pair", opts->pair, "pair JSON file")->required();
    sub->add_option("--n", opts->n, "diagonal length");
    sub->add_option("--trials", opts->cfg.trials, "random vector count");
    sub->callback([&, opts]() {
      opts->cfg.seed = state.seed;
      opts->cfg.threads = state.threads;
      const HypergraphPair h = load_pair_tracked(state, opts->pair);
      const hypernorm::EmbeddingReport res =
          hypernorm::embedding_witness(h, opts->n, opts->cfg);
      json rep{{"n", res.n},
               {"trials", res.trials},
               {"max_rel_error", res.max_rel_error},
               {"pass", res.pass},
               {"seed", res.seed}};
      std::ostringstream pretty;
      pretty << "n              " << res.n << "\n";
      pretty << "trials         " << res.trials << "\n";
      pretty << "max rel error  " << res.max_rel_error << "\n";
      pretty << "pass           " << (res.pass ? "yes" : "no") << "\n";
      if (!res.pass) state.exit_code = 1;
      emit(state, app, rep, pretty.str());
    });
  }

  try {
    apply_budget_env(state);
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  } catch (const hypernorm::ParseError& e) {
    std::cerr << "error: " << e.what() << " (line " << e.line() << ", column "
              << e.column() << ")\n";
    return 2;
  } catch (const BudgetError& e) {
    std::cerr << "error: " << e.what()
              << " (estimated cost " << e.estimated_cost() << ")\n";
    return 3;
  } catch (const hypernorm::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return state.exit_code;
}
