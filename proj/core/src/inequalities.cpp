#include "hypernorm/inequalities.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <functional>
#include <limits>
#include <thread>

#include "hypernorm/catalog.hpp"
#include "hypernorm/engine.hpp"
#include "hypernorm/errors.hpp"
#include "hypernorm/rng.hpp"

namespace hypernorm {

namespace {

constexpr double kWeightTol = 1e-9;

void validate_config(const TrialConfig& cfg) {
  if (cfg.trials < 1) throw ValidationError("TrialConfig: trials must be >= 1");
  if (cfg.omega_size < 1) {
    throw ValidationError("TrialConfig: omega_size must be >= 1");
  }
  if (!(cfg.tolerance > 0.0)) {
    throw ValidationError("TrialConfig: tolerance must be positive");
  }
  if (!(cfg.amplitude > 0.0)) {
    throw ValidationError("TrialConfig: amplitude must be positive");
  }
}

EvalOptions engine_options(const TrialConfig& cfg) {
  EvalOptions opts;
  opts.threads = 1;
  (void)cfg;
  return opts;
}

DiscreteMeasureSpace sample_space(int n, CounterRng& rng, bool probability) {
  DiscreteMeasureSpace space;
  space.n = n;
  space.weights.resize(static_cast<std::size_t>(n));
  double total = 0.0;
  for (double& w : space.weights) {
    w = rng.uniform(0.5, 1.5);
    total += w;
  }
  if (probability) {
    for (double& w : space.weights) w /= total;
  }
  return space;
}

Complex clamp_magnitude(Complex z, double amplitude) {
  const double m = std::abs(z);
  if (m > amplitude && m > 0.0) z *= amplitude / m;
  return z;
}

GridFunction sample_function(const DiscreteMeasureSpace& space, int k,
                             CounterRng& rng, double amplitude,
                             bool nonnegative) {
  GridFunction f;
  f.space = space;
  f.k = k;
  std::size_t cells = 1;
  for (int i = 0; i < k; ++i) cells *= static_cast<std::size_t>(space.n);
  f.values.resize(cells);
  for (Complex& v : f.values) {
    if (nonnegative) {
      double x = std::abs(rng.gaussian()) * amplitude;
      if (x > amplitude) x = amplitude;
      v = Complex(x, 0.0);
    } else {
      v = clamp_magnitude(amplitude * rng.complex_gaussian(), amplitude);
    }
  }
  return f;
}

// Drop sub-tolerance negatives produced by subtracting a unit entry from a
// weight that is 1 only up to rounding.
void sanitize_exponents(HypergraphPair& h) {
  for (ExponentMap* side : {&h.alpha, &h.beta}) {
    for (auto it = side->begin(); it != side->end();) {
      if (it->second < 0.0 && it->second > -kWeightTol) {
        it = side->erase(it);
      } else {
        ++it;
      }
    }
  }
}

bool pairs_close(const HypergraphPair& a, const HypergraphPair& b,
                 double tol) {
  if (a.k != b.k || a.dims != b.dims) return false;
  const auto side_close = [tol](const ExponentMap& x, const ExponentMap& y) {
    for (const auto& [w, v] : x) {
      double other = 0.0;
      if (auto it = y.find(w); it != y.end()) other = it->second;
      if (std::abs(v - other) > tol) return false;
    }
    for (const auto& [w, v] : y) {
      if (x.find(w) == x.end() && std::abs(v) > tol) return false;
    }
    return true;
  };
  return side_close(a.alpha, b.alpha) && side_close(b.alpha, a.alpha) &&
         side_close(a.beta, b.beta) && side_close(b.beta, a.beta);
}

bool uniform_equal_split(const HypergraphPair& h, double& s) {
  const std::vector<Omega> support = h.support();
  if (support.empty()) return false;
  s = -1.0;
  for (const Omega& w : support) {
    double a = 0.0, b = 0.0;
    if (auto it = h.alpha.find(w); it != h.alpha.end()) a = it->second;
    if (auto it = h.beta.find(w); it != h.beta.end()) b = it->second;
    if (std::abs(a - b) > kWeightTol) return false;
    if (s < 0.0) {
      s = a + b;
    } else if (std::abs(a + b - s) > kWeightTol) {
      return false;
    }
  }
  return true;
}

struct TrialOutcome {
  double margin = 0.0;
  std::vector<GridFunction> witnesses;
};

InequalityReport run_trials(
    const std::string& id, const TrialConfig& cfg,
    const std::function<TrialOutcome(CounterRng&)>& trial) {
  InequalityReport rep;
  rep.id = id;
  rep.seed = cfg.seed;
  rep.worst_margin = std::numeric_limits<double>::infinity();
  for (int t = 0; t < cfg.trials; ++t) {
    CounterRng rng(cfg.seed, static_cast<std::uint64_t>(t));
    TrialOutcome out = trial(rng);
    if (out.margin < rep.worst_margin) {
      rep.worst_margin = out.margin;
      rep.witness.functions = std::move(out.witnesses);
      rep.witness.trial_index = t;
    }
    ++rep.trials_run;
  }
  rep.pass = rep.worst_margin >= -cfg.tolerance;
  return rep;
}

// Coordinate descent over the complex entries of the given functions,
// minimizing obj() after each candidate mutation. Deterministic.
double coordinate_minimize(std::vector<GridFunction*> fns,
                           const std::function<double()>& obj, int sweeps,
                           double step0, double decay) {
  double best = obj();
  double step = step0;
  for (int sweep = 0; sweep < sweeps; ++sweep) {
    bool improved = false;
    for (GridFunction* fn : fns) {
      for (Complex& value : fn->values) {
        Complex kept = value;
        const Complex candidates[] = {
            kept + Complex(step, 0.0),  kept - Complex(step, 0.0),
            kept + Complex(0.0, step),  kept - Complex(0.0, step),
            kept * (1.0 + step),        kept / (1.0 + step),
            Complex(0.0, 0.0)};
        for (const Complex& c : candidates) {
          value = c;
          const double v = obj();
          if (v < best - 1e-15) {
            best = v;
            kept = c;
            improved = true;
          }
        }
        value = kept;
      }
    }
    step *= decay;
    if (!improved) break;
  }
  return best;
}

}  // namespace

InequalityReport verify_first_holder(const HypergraphPair& h, const Omega& psi,
                                     const TrialConfig& cfg, bool beta_side,
                                     bool search) {
  h.validate();
  validate_config(cfg);
  if (!h.is_nonnegative()) {
    throw ValidationError("verify_first_holder: weights must be nonnegative");
  }
  const ExponentMap& side = beta_side ? h.beta : h.alpha;
  const auto it = side.find(psi);
  if (it == side.end() || it->second < 1.0 - kWeightTol) {
    throw ValidationError(
        "verify_first_holder: psi must carry weight >= 1 on the chosen side");
  }
  HypergraphPair unit = delta(h.k, h.dims, psi);
  if (beta_side) unit = conjugate(unit);
  HypergraphPair reduced = sub(h, unit);
  sanitize_exponents(reduced);

  const double size_h = h.size();
  const EvalOptions opts = engine_options(cfg);

  const auto margin_of = [&](const GridFunction& f, const GridFunction& g) {
    const double nf = norm(h, f, opts).value;
    const double ng = norm(h, g, opts).value;
    const Complex mixed =
        integrate_mixed({MixedPart{reduced, f}, MixedPart{unit, g}}, opts);
    return std::pow(nf, size_h - 1.0) * ng - std::abs(mixed);
  };

  return run_trials(
      search ? "first-holder-search" : "first-holder", cfg,
      [&](CounterRng& rng) {
        const DiscreteMeasureSpace space =
            sample_space(cfg.omega_size, rng, false);
        GridFunction f = sample_function(space, h.k, rng, cfg.amplitude, false);
        GridFunction g = sample_function(space, h.k, rng, cfg.amplitude, false);
        TrialOutcome out;
        if (search) {
          out.margin = coordinate_minimize(
              {&f, &g}, [&]() { return margin_of(f, g); }, 60,
              cfg.amplitude / 4.0, 0.7);
        } else {
          out.margin = margin_of(f, g);
        }
        out.witnesses = {f, g};
        return out;
      });
}

InequalityReport verify_general_holder(const HypergraphPair& h,
                                       const std::vector<HypergraphPair>& parts,
                                       const TrialConfig& cfg,
                                       HolderMode mode) {
  h.validate();
  validate_config(cfg);
  if (parts.empty()) {
    throw ValidationError("verify_general_holder: parts must be nonempty");
  }
  HypergraphPair total = make_zero_pair(h.k, h.dims);
  for (const HypergraphPair& p : parts) {
    p.validate();
    if (p.size() <= 0.0) {
      throw ValidationError("verify_general_holder: parts must be nonzero");
    }
    total = add(total, p);
  }
  if (!pairs_close(total, h, kWeightTol)) {
    throw ValidationError("verify_general_holder: parts do not sum to H");
  }
  if (mode == HolderMode::Integer) {
    for (const HypergraphPair& p : parts) {
      if (!p.is_integer_valued(kWeightTol)) {
        throw ValidationError(
            "verify_general_holder: integer mode requires integer-valued "
            "parts");
      }
    }
  }

  const EvalOptions opts = engine_options(cfg);
  return run_trials("general-holder", cfg, [&](CounterRng& rng) {
    const DiscreteMeasureSpace space = sample_space(cfg.omega_size, rng, false);
    std::vector<GridFunction> fs;
    std::vector<MixedPart> mixed;
    fs.reserve(parts.size());
    for (const HypergraphPair& p : parts) {
      fs.push_back(sample_function(space, h.k, rng, cfg.amplitude,
                                   mode == HolderMode::Nonnegative));
      mixed.push_back(MixedPart{p, fs.back()});
    }
    double rhs = 1.0;
    for (std::size_t i = 0; i < parts.size(); ++i) {
      rhs *= std::pow(norm(h, fs[i], opts).value, parts[i].size());
    }
    const Complex lhs = integrate_mixed(mixed, opts);
    TrialOutcome out;
    out.margin = rhs - std::abs(lhs);
    out.witnesses = std::move(fs);
    return out;
  });
}

InequalityReport verify_norm_monotonicity(const HypergraphPair& h,
                                          const HypergraphPair& k_pair,
                                          const TrialConfig& cfg,
                                          MonotonicityMode mode) {
  h.validate();
  k_pair.validate();
  validate_config(cfg);
  if (h.k != k_pair.k || h.dims != k_pair.dims) {
    throw DimensionError("verify_norm_monotonicity: pairs must share a box");
  }
  if (k_pair.size() <= 0.0) {
    throw ValidationError("verify_norm_monotonicity: K must be nonzero");
  }
  const auto entrywise_leq = [](const ExponentMap& small,
                                const ExponentMap& big) {
    for (const auto& [w, v] : small) {
      double other = 0.0;
      if (auto it = big.find(w); it != big.end()) other = it->second;
      if (v > other + kWeightTol) return false;
    }
    return true;
  };
  if (!entrywise_leq(k_pair.alpha, h.alpha) ||
      !entrywise_leq(k_pair.beta, h.beta)) {
    throw ValidationError(
        "verify_norm_monotonicity: K must be entrywise <= H");
  }
  if (mode == MonotonicityMode::TypeIPair) {
    double s = 0.0;
    if (!uniform_equal_split(h, s)) {
      throw ValidationError(
          "verify_norm_monotonicity: mode requires uniform equal-split H");
    }
  }
  if (mode == MonotonicityMode::IntegerPairs &&
      (!h.is_integer_valued(kWeightTol) ||
       !k_pair.is_integer_valued(kWeightTol))) {
    throw ValidationError(
        "verify_norm_monotonicity: mode requires integer-valued pairs");
  }

  const EvalOptions opts = engine_options(cfg);
  return run_trials("monotonicity", cfg, [&](CounterRng& rng) {
    const DiscreteMeasureSpace space = sample_space(cfg.omega_size, rng, true);
    const GridFunction f =
        sample_function(space, h.k, rng, cfg.amplitude,
                        mode == MonotonicityMode::NonnegativeF);
    TrialOutcome out;
    out.margin = norm(h, f, opts).value - norm(k_pair, f, opts).value;
    out.witnesses = {f};
    return out;
  });
}

InequalityReport verify_gowers_cs(const HypergraphPair& h, const Omega& psi,
                                  const TrialConfig& cfg) {
  h.validate();
  validate_config(cfg);
  if (!h.is_nonnegative()) {
    throw ValidationError("verify_gowers_cs: weights must be nonnegative");
  }
  for (int d : h.dims) {
    if (d != 2) {
      throw ValidationError("verify_gowers_cs: dims must all equal 2");
    }
  }
  if (h.total_at(psi) > kWeightTol) {
    throw ValidationError("verify_gowers_cs: psi must lie outside supp(H)");
  }
  const HypergraphPair gowers = make_gowers(h.k);
  const HypergraphPair unit = delta(h.k, h.dims, psi);
  const double size_h = h.size();
  const EvalOptions opts = engine_options(cfg);

  return run_trials("gowers-cs", cfg, [&](CounterRng& rng) {
    const DiscreteMeasureSpace space = sample_space(cfg.omega_size, rng, true);
    const GridFunction f =
        sample_function(space, h.k, rng, cfg.amplitude, false);
    const GridFunction g =
        sample_function(space, h.k, rng, cfg.amplitude, false);
    const double rhs =
        norm(gowers, g, opts).value * std::pow(f.infinity_norm(), size_h);
    const Complex lhs =
        integrate_mixed({MixedPart{h, f}, MixedPart{unit, g}}, opts);
    TrialOutcome out;
    out.margin = rhs - std::abs(lhs);
    out.witnesses = {f, g};
    return out;
  });
}

InequalityReport verify_gowers_approx(const HypergraphPair& h,
                                      const TrialConfig& cfg) {
  h.validate();
  validate_config(cfg);
  if (!h.beta.empty()) {
    HypergraphPair check = h;
    sanitize_exponents(check);
    for (const auto& [w, v] : check.beta) {
      if (std::abs(v) > kWeightTol) {
        throw ValidationError("verify_gowers_approx: H must have beta = 0");
      }
    }
  }
  for (const auto& [w, v] : h.alpha) {
    if (std::abs(v - 1.0) > kWeightTol && std::abs(v) > kWeightTol) {
      throw ValidationError(
          "verify_gowers_approx: alpha must be zero-one valued");
    }
  }
  for (int d : h.dims) {
    if (d != 2) {
      throw ValidationError("verify_gowers_approx: dims must all equal 2");
    }
  }
  const double size_h = h.size();
  if (size_h < 1.0 - kWeightTol) {
    throw ValidationError("verify_gowers_approx: H must have size >= 1");
  }
  const HypergraphPair gowers = make_gowers(h.k);
  const EvalOptions opts = engine_options(cfg);

  return run_trials("gowers-approx", cfg, [&](CounterRng& rng) {
    const DiscreteMeasureSpace space = sample_space(cfg.omega_size, rng, true);
    const GridFunction f =
        sample_function(space, h.k, rng, cfg.amplitude, false);
    const GridFunction g =
        sample_function(space, h.k, rng, cfg.amplitude, false);
    const GridFunction diff = sub(f, g);
    const double bound = std::max(f.infinity_norm(), g.infinity_norm());
    const double rhs = size_h * norm(gowers, diff, opts).value *
                       std::pow(bound, size_h - 1.0);
    const Complex lhs =
        integrate(h, f, opts) - integrate(h, g, opts);
    TrialOutcome out;
    out.margin = rhs - std::abs(lhs);
    out.witnesses = {f, g};
    return out;
  });
}

InequalityReport verify_factor_equality(const HypergraphPair& h1,
                                        const TrialConfig& cfg,
                                        bool conjugate_second) {
  h1.validate();
  validate_config(cfg);
  if (h1.size() <= 0.0) {
    throw ValidationError("verify_factor_equality: H1 must be nonzero");
  }
  const HypergraphPair doubled =
      disjoint_union(h1, conjugate_second ? conjugate(h1) : h1);
  const EvalOptions opts = engine_options(cfg);

  return run_trials("factor-equality", cfg, [&](CounterRng& rng) {
    const DiscreteMeasureSpace space = sample_space(cfg.omega_size, rng, false);
    const GridFunction f =
        sample_function(space, h1.k, rng, cfg.amplitude, false);
    TrialOutcome out;
    out.margin = -std::abs(norm(doubled, f, opts).value -
                           norm(h1, f, opts).value);
    out.witnesses = {f};
    return out;
  });
}

namespace {

InequalityReport lattice_report(const std::string& id,
                                const HypergraphPair& h,
                                const TrialConfig& cfg, int functions,
                                bool concavity) {
  h.validate();
  validate_config(cfg);
  if (functions < 2 || functions > 8) {
    throw ValidationError(id + ": functions must be between 2 and 8");
  }
  double s = 0.0;
  if (!uniform_equal_split(h, s) || s < 1.0 - kWeightTol) {
    throw ValidationError(id + ": requires a uniform equal-split pair");
  }
  const double exponent = concavity ? h.size() : s;
  const EvalOptions opts = engine_options(cfg);

  return run_trials(id, cfg, [&, exponent](CounterRng& rng) {
    const DiscreteMeasureSpace space = sample_space(cfg.omega_size, rng, false);
    std::vector<GridFunction> fs;
    for (int i = 0; i < functions; ++i) {
      fs.push_back(sample_function(space, h.k, rng, cfg.amplitude, true));
    }
    GridFunction envelope = fs[0];
    for (std::size_t c = 0; c < envelope.values.size(); ++c) {
      double acc = 0.0;
      for (const GridFunction& f : fs) {
        acc += std::pow(f.values[c].real(), exponent);
      }
      envelope.values[c] = Complex(std::pow(acc, 1.0 / exponent), 0.0);
    }
    double norm_sum = 0.0;
    for (const GridFunction& f : fs) {
      norm_sum += std::pow(norm(h, f, opts).value, exponent);
    }
    const double envelope_norm = norm(h, envelope, opts).value;
    TrialOutcome out;
    if (concavity) {
      out.margin = std::pow(envelope_norm, exponent) - norm_sum;
    } else {
      out.margin = std::pow(norm_sum, 1.0 / exponent) - envelope_norm;
    }
    out.witnesses = std::move(fs);
    return out;
  });
}

}  // namespace

InequalityReport verify_lattice_concavity(const HypergraphPair& h,
                                          const TrialConfig& cfg,
                                          int functions) {
  return lattice_report("lattice-concavity", h, cfg, functions, true);
}

InequalityReport verify_lattice_convexity(const HypergraphPair& h,
                                          const TrialConfig& cfg,
                                          int functions) {
  return lattice_report("lattice-convexity", h, cfg, functions, false);
}

SignFunction gen_pseudorandom_sign(int m, int k, std::uint64_t seed) {
  if (m < 2 || m % 2 != 0) {
    throw ValidationError("gen_pseudorandom_sign: m must be even and >= 2");
  }
  if (k < 1) throw ValidationError("gen_pseudorandom_sign: k must be >= 1");
  GridFunction g;
  g.space = DiscreteMeasureSpace::uniform_probability(m);
  g.k = k;
  std::size_t cells = 1;
  for (int i = 0; i < k; ++i) cells *= static_cast<std::size_t>(m);
  g.values.resize(cells);

  CounterRng rng(seed);
  std::ptrdiff_t plus = 0;
  for (Complex& v : g.values) {
    const bool up = rng.bernoulli(0.5);
    v = Complex(up ? 1.0 : -1.0, 0.0);
    plus += up ? 1 : 0;
  }
  const std::ptrdiff_t target = static_cast<std::ptrdiff_t>(cells / 2);
  const double excess_sign = plus > target ? 1.0 : -1.0;
  std::ptrdiff_t to_flip = std::abs(plus - target);
  if (to_flip > 0) {
    std::vector<std::size_t> positions;
    for (std::size_t i = 0; i < cells; ++i) {
      if (g.values[i].real() == excess_sign) positions.push_back(i);
    }
    // Seeded Fisher-Yates, then flip a prefix.
    for (std::size_t i = positions.size(); i > 1; --i) {
      const std::size_t j = static_cast<std::size_t>(rng.below(i));
      std::swap(positions[i - 1], positions[j]);
    }
    for (std::ptrdiff_t i = 0; i < to_flip; ++i) {
      g.values[positions[static_cast<std::size_t>(i)]] =
          Complex(-excess_sign, 0.0);
    }
  }

  SignFunction out;
  out.gowers_norm = norm(make_gowers(k), g, EvalOptions{}).value;
  out.g = std::move(g);
  return out;
}

namespace {

struct ClimbState {
  GridFunction f;
  GridFunction g;
  double nf = 0.0;
  double ng = 0.0;
  double nsum = 0.0;
  double gap() const { return nsum - nf - ng; }
};

void refresh_norms(const HypergraphPair& h, ClimbState& st,
                   const EvalOptions& opts) {
  st.nf = norm(h, st.f, opts).value;
  st.ng = norm(h, st.g, opts).value;
  st.nsum = norm(h, add(st.f, st.g), opts).value;
}

// Coordinate ascent maximizing the triangle gap, touching one complex entry
// at a time and refreshing only the norms that entry affects.
void climb_gap(const HypergraphPair& h, ClimbState& st, int sweeps,
               double step0, double decay, const EvalOptions& opts) {
  refresh_norms(h, st, opts);
  double best = st.gap();
  double step = step0;
  for (int sweep = 0; sweep < sweeps; ++sweep) {
    bool improved = false;
    for (int which = 0; which < 2; ++which) {
      GridFunction& target = which == 0 ? st.f : st.g;
      double& target_norm = which == 0 ? st.nf : st.ng;
      for (Complex& value : target.values) {
        Complex kept = value;
        double kept_norm = target_norm;
        double kept_sum = st.nsum;
        const Complex candidates[] = {
            kept + Complex(step, 0.0),  kept - Complex(step, 0.0),
            kept + Complex(0.0, step),  kept - Complex(0.0, step),
            kept * (1.0 + step),        kept / (1.0 + step),
            Complex(0.0, 0.0)};
        for (const Complex& c : candidates) {
          value = c;
          const double cand_norm = norm(h, target, opts).value;
          const double cand_sum = norm(h, add(st.f, st.g), opts).value;
          const double cand_gap =
              cand_sum - cand_norm - (which == 0 ? st.ng : st.nf);
          if (cand_gap > best + 1e-15) {
            best = cand_gap;
            kept = c;
            kept_norm = cand_norm;
            kept_sum = cand_sum;
            improved = true;
          }
        }
        value = kept;
        target_norm = kept_norm;
        st.nsum = kept_sum;
      }
    }
    step *= decay;
    if (!improved) break;
    if (sweep >= 8 && best < -0.1 * (st.nf + st.ng)) break;
  }
}

GridFunction restart_function(const DiscreteMeasureSpace& space, int k,
                              CounterRng& rng, double amplitude, int kind) {
  GridFunction f;
  f.space = space;
  f.k = k;
  std::size_t cells = 1;
  for (int i = 0; i < k; ++i) cells *= static_cast<std::size_t>(space.n);
  f.values.resize(cells);
  switch (kind) {
    case 0:
      for (Complex& v : f.values) v = amplitude * rng.complex_gaussian();
      break;
    case 1:
      for (Complex& v : f.values) {
        const double tail = std::norm(rng.complex_gaussian());
        v = amplitude * tail * rng.complex_gaussian();
      }
      break;
    default:
      for (Complex& v : f.values) {
        if (rng.bernoulli(0.3)) {
          v = Complex(0.0, 0.0);
        } else {
          const double mag = amplitude * rng.log_uniform(3e-3, 1.0);
          v = mag * rng.phase();
        }
      }
      break;
  }
  return f;
}

bool diagonal_cell(std::size_t index, int n, int k) {
  int first = static_cast<int>(index % static_cast<std::size_t>(n));
  std::size_t rest = index;
  for (int i = 0; i < k; ++i) {
    const int digit = static_cast<int>(rest % static_cast<std::size_t>(n));
    if (digit != first) return false;
    rest /= static_cast<std::size_t>(n);
  }
  return true;
}

// Correlated near-diagonal restart: f and g share a strong diagonal profile
// (up to a common factor) plus independent small off-diagonal bumps. This
// targets the boundary of the cone of componentwise-positive functions,
// where triangle violations of near-miss pairs concentrate.
void correlated_restart(const DiscreteMeasureSpace& space, int k,
                        CounterRng& rng, double amplitude, GridFunction& f,
                        GridFunction& g, double& step0) {
  f.space = space;
  f.k = k;
  std::size_t cells = 1;
  for (int i = 0; i < k; ++i) cells *= static_cast<std::size_t>(space.n);
  f.values.assign(cells, Complex(0.0, 0.0));
  g = f;
  const double ratio = std::exp(0.3 * rng.gaussian());
  const double bump_scale = amplitude * rng.log_uniform(1e-3, 0.1);
  for (std::size_t c = 0; c < cells; ++c) {
    if (diagonal_cell(c, space.n, k)) {
      const Complex shared =
          amplitude * rng.log_uniform(0.3, 1.0) * rng.phase();
      f.values[c] = shared;
      g.values[c] = ratio * shared;
    } else {
      if (rng.bernoulli(0.3)) {
        f.values[c] = bump_scale * rng.log_uniform(0.3, 3.0) * rng.phase();
      }
      if (rng.bernoulli(0.3)) {
        g.values[c] = bump_scale * rng.log_uniform(0.3, 3.0) * rng.phase();
      }
    }
  }
  step0 = bump_scale / 2.0;
}

std::optional<ViolationWitness> run_restart(const HypergraphPair& h,
                                            const TrialConfig& cfg,
                                            int index) {
  CounterRng rng(cfg.seed, static_cast<std::uint64_t>(index));
  const DiscreteMeasureSpace space =
      DiscreteMeasureSpace::counting(cfg.omega_size);
  EvalOptions opts;
  opts.threads = 1;

  ClimbState st;
  double step0 = cfg.amplitude / 4.0;
  const int kind = index % 4;
  if (kind == 3) {
    correlated_restart(space, h.k, rng, cfg.amplitude, st.f, st.g, step0);
  } else {
    st.f = restart_function(space, h.k, rng, cfg.amplitude, kind);
    st.g = restart_function(space, h.k, rng, cfg.amplitude, kind);
  }
  climb_gap(h, st, 60, step0, 0.7, opts);

  const double scale_ref = st.nf + st.ng;
  if (scale_ref < 1e-12) return std::nullopt;
  const double threshold = std::max(cfg.tolerance, 1e-7 * scale_ref);
  if (st.gap() <= 0.25 * threshold) return std::nullopt;

  // Certify: rescale to ||f|| + ||g|| = 10 and re-evaluate by brute force.
  const double factor = 10.0 / scale_ref;
  GridFunction f = scale(st.f, Complex(factor, 0.0));
  GridFunction g = scale(st.g, Complex(factor, 0.0));
  EvalOptions brute;
  brute.path = EvalPath::Brute;
  brute.threads = 1;
  const double nf = norm(h, f, brute).value;
  const double ng = norm(h, g, brute).value;
  const double nsum = norm(h, add(f, g), brute).value;
  const double gap = nsum - nf - ng;
  if (gap <= std::max(cfg.tolerance, 1e-7 * (nf + ng))) return std::nullopt;

  ViolationWitness w;
  w.f = std::move(f);
  w.g = std::move(g);
  w.gap = gap;
  w.norm_f = nf;
  w.norm_g = ng;
  w.norm_sum = nsum;
  w.restart_index = index;
  return w;
}

}  // namespace

std::optional<ViolationWitness> search_triangle_violation(
    const HypergraphPair& h, const TrialConfig& cfg) {
  h.validate();
  validate_config(cfg);
  if (!h.is_nonnegative()) {
    throw ValidationError(
        "search_triangle_violation: weights must be nonnegative");
  }
  if (h.size() <= 0.0) {
    throw ValidationError("search_triangle_violation: |H| must be positive");
  }

  const int threads = std::max(1, std::min(cfg.threads, 256));
  if (threads == 1) {
    for (int r = 0; r < cfg.trials; ++r) {
      if (auto hit = run_restart(h, cfg, r)) return hit;
    }
    return std::nullopt;
  }

  const int batch = threads * 4;
  for (int base = 0; base < cfg.trials; base += batch) {
    const int count = std::min(batch, cfg.trials - base);
    std::vector<std::optional<ViolationWitness>> slots(
        static_cast<std::size_t>(count));
    std::atomic<int> next{0};
    std::vector<std::thread> workers;
    const int spawn = std::min(threads, count);
    workers.reserve(static_cast<std::size_t>(spawn));
    for (int t = 0; t < spawn; ++t) {
      workers.emplace_back([&]() {
        while (true) {
          const int i = next.fetch_add(1);
          if (i >= count) break;
          slots[static_cast<std::size_t>(i)] = run_restart(h, cfg, base + i);
        }
      });
    }
    for (std::thread& t : workers) t.join();
    for (int i = 0; i < count; ++i) {
      if (slots[static_cast<std::size_t>(i)]) {
        return slots[static_cast<std::size_t>(i)];
      }
    }
  }
  return std::nullopt;
}

}  // namespace hypernorm
