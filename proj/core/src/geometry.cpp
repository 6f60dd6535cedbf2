#include "hypernorm/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>

#include "hypernorm/catalog.hpp"
#include "hypernorm/classify.hpp"
#include "hypernorm/engine.hpp"
#include "hypernorm/errors.hpp"
#include "hypernorm/isomorphism.hpp"
#include "hypernorm/rng.hpp"

namespace hypernorm {

namespace {

constexpr double kShapeTol = 1e-9;

// ((|1+y|^p + |1-y|^p)/2)^{s/p} - 1 for y = rho e^{i theta}, evaluated in
// expm1/log1p form so the small-rho regime keeps full relative precision:
// |1 +- y|^p - 1 = expm1((p/2) log1p(rho^2 +- 2 rho cos theta)).
double power_mean_excess(double s, double p, double rho, double cos_theta) {
  const double plus = std::expm1(
      (p / 2.0) * std::log1p(rho * rho + 2.0 * rho * cos_theta));
  const double minus = std::expm1(
      (p / 2.0) * std::log1p(rho * rho - 2.0 * rho * cos_theta));
  return std::expm1((s / p) * std::log1p((plus + minus) / 2.0));
}

double golden_max(const std::function<double(double)>& f, double lo, double hi,
                  double tol) {
  constexpr double kInvPhi = 0.6180339887498949;
  double a = lo, b = hi;
  double x1 = b - kInvPhi * (b - a);
  double x2 = a + kInvPhi * (b - a);
  double f1 = f(x1), f2 = f(x2);
  while (b - a > tol) {
    if (f1 < f2) {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + kInvPhi * (b - a);
      f2 = f(x2);
    } else {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - kInvPhi * (b - a);
      f1 = f(x1);
    }
  }
  return (a + b) / 2.0;
}

bool type_two_shape(const HypergraphPair& h) {
  const std::vector<Omega> support = h.support();
  if (support.empty()) return false;
  for (const Omega& w : support) {
    double a = 0.0, b = 0.0;
    if (auto it = h.alpha.find(w); it != h.alpha.end()) a = it->second;
    if (auto it = h.beta.find(w); it != h.beta.end()) b = it->second;
    const bool alpha_unit = std::abs(a - 1.0) <= kShapeTol &&
                            std::abs(b) <= kShapeTol;
    const bool beta_unit = std::abs(b - 1.0) <= kShapeTol &&
                           std::abs(a) <= kShapeTol;
    if (!alpha_unit && !beta_unit) return false;
  }
  return true;
}

bool equal_split_shape(const HypergraphPair& h, double& s) {
  const std::vector<Omega> support = h.support();
  if (support.empty()) return false;
  s = -1.0;
  for (const Omega& w : support) {
    double a = 0.0, b = 0.0;
    if (auto it = h.alpha.find(w); it != h.alpha.end()) a = it->second;
    if (auto it = h.beta.find(w); it != h.beta.end()) b = it->second;
    if (std::abs(a - b) > kShapeTol) return false;
    if (s < 0.0) {
      s = a + b;
    } else if (std::abs(a + b - s) > kShapeTol) {
      return false;
    }
  }
  return true;
}

bool non_factorizable(const HypergraphPair& h) {
  const Factorization parts = factorize(h);
  if (parts.components.size() != 1) return false;
  for (const auto& axis : parts.isolated_vertices) {
    if (!axis.empty()) return false;
  }
  return true;
}

void validate_trials(const TrialConfig& cfg) {
  if (cfg.trials < 1) throw ValidationError("trials must be >= 1");
  if (cfg.omega_size < 1) throw ValidationError("omega_size must be >= 1");
  if (!(cfg.tolerance > 0.0)) throw ValidationError("tolerance must be positive");
  if (!(cfg.amplitude > 0.0)) throw ValidationError("amplitude must be positive");
}

DiscreteMeasureSpace random_space(int n, CounterRng& rng) {
  DiscreteMeasureSpace space;
  space.n = n;
  space.weights.resize(static_cast<std::size_t>(n));
  for (double& w : space.weights) w = rng.uniform(0.5, 1.5);
  return space;
}

GridFunction gaussian_function(const DiscreteMeasureSpace& space, int k,
                               CounterRng& rng, double amplitude) {
  GridFunction f;
  f.space = space;
  f.k = k;
  std::size_t cells = 1;
  for (int i = 0; i < k; ++i) cells *= static_cast<std::size_t>(space.n);
  f.values.resize(cells);
  for (Complex& v : f.values) v = amplitude * rng.complex_gaussian();
  return f;
}

double h_norm(const HypergraphPair& h, const GridFunction& f,
              const EvalOptions& opts) {
  return norm(h, f, opts).value;
}

GridFunction unit_sample(const HypergraphPair& h,
                         const DiscreteMeasureSpace& space, CounterRng& rng,
                         const EvalOptions& opts) {
  for (int attempt = 0; attempt < 32; ++attempt) {
    GridFunction f = gaussian_function(space, h.k, rng, 1.0);
    const double n = h_norm(h, f, opts);
    if (n > 1e-9) return scale(f, Complex(1.0 / n, 0.0));
  }
  throw ValidationError("unit sampling kept hitting the norm's null set");
}

// Same move set as the inequality searchers: coordinate descent over the
// complex entries of the given functions, minimizing obj().
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

GridFunction basis_diagonal(const DiscreteMeasureSpace& space, int k, int i) {
  std::vector<Complex> a(static_cast<std::size_t>(space.n), Complex(0.0, 0.0));
  a[static_cast<std::size_t>(i)] = Complex(1.0, 0.0);
  return GridFunction::diagonal(space, k, a);
}

}  // namespace

TwoPointConstant two_point_constant(ConstantKind kind, double t_or_r,
                                    double p_or_q) {
  if (kind == ConstantKind::C) {
    if (!(t_or_r > 1.0) || !(t_or_r <= 2.0)) {
      throw ValidationError("two_point_constant: C requires 1 < t <= 2");
    }
  } else {
    if (!(t_or_r >= 2.0) || !std::isfinite(t_or_r)) {
      throw ValidationError("two_point_constant: C* requires 2 <= r < inf");
    }
  }
  if (!(p_or_q > 1.0) || !std::isfinite(p_or_q)) {
    throw ValidationError("two_point_constant: requires 1 < p < inf");
  }

  const double bound_exp = t_or_r;  // t for C, r for C*
  const double mean_exp = p_or_q;   // p for C, q for C*
  const auto objective = [&](double u, double theta) {
    const double rho = std::tan(u);
    const double excess =
        power_mean_excess(bound_exp, mean_exp, rho, std::cos(theta));
    if (kind == ConstantKind::C) {
      return excess <= 0.0 ? 0.0 : std::pow(excess, 1.0 / bound_exp) / rho;
    }
    if (excess <= 0.0) return 0.0;
    return rho / std::pow(excess, 1.0 / bound_exp);
  };

  constexpr double kHalfPi = 1.5707963267948966;
  const int u_steps = 512;
  const int theta_steps = 256;
  double best = 0.0, best_u = kHalfPi / 4.0, best_theta = 0.0;
  for (int i = 0; i < u_steps; ++i) {
    const double u = (i + 0.5) * kHalfPi / u_steps;
    for (int j = 0; j < theta_steps; ++j) {
      const double theta = j * kHalfPi / (theta_steps - 1);
      const double v = objective(u, theta);
      if (v > best) {
        best = v;
        best_u = u;
        best_theta = theta;
      }
    }
  }

  const double du = kHalfPi / u_steps;
  const double dtheta = kHalfPi / (theta_steps - 1);
  for (int round = 0; round < 3; ++round) {
    best_u = golden_max(
        [&](double u) { return objective(u, best_theta); },
        std::max(1e-7, best_u - du), std::min(kHalfPi - 1e-7, best_u + du),
        1e-6);
    best_theta = golden_max(
        [&](double theta) { return objective(best_u, theta); },
        std::max(0.0, best_theta - dtheta),
        std::min(kHalfPi, best_theta + dtheta), 1e-6);
    best = std::max(best, objective(best_u, best_theta));
  }

  TwoPointConstant out;
  out.kind = kind;
  out.t_or_r = t_or_r;
  out.p_or_q = p_or_q;
  out.value = best;
  out.rho = std::tan(best_u);
  out.theta = best_theta;
  return out;
}

KConstantEstimate estimate_K(const HypergraphPair& h, double t_or_r,
                             double p_or_q, const TrialConfig& cfg,
                             KKind kind) {
  h.validate();
  validate_trials(cfg);
  if (kind == KKind::Smooth) {
    if (!(t_or_r > 1.0) || !(t_or_r <= 2.0)) {
      throw ValidationError("estimate_K: smooth requires 1 < t <= 2");
    }
  } else {
    if (!(t_or_r >= 2.0) || !std::isfinite(t_or_r)) {
      throw ValidationError("estimate_K: convex requires 2 <= r < inf");
    }
  }
  if (!(p_or_q > 1.0) || !std::isfinite(p_or_q)) {
    throw ValidationError("estimate_K: requires 1 < p < inf");
  }
  const ClassificationResult screen = classify(h);
  if (screen.verdict == Verdict::NotSemiNorming) {
    throw ValidationError("estimate_K: classification rejects the pair");
  }

  const double size_h = h.size();
  const double mean_exp = p_or_q;
  const double bound_exp = t_or_r;
  EvalOptions opts;
  opts.threads = 1;

  const DiscreteMeasureSpace space =
      DiscreteMeasureSpace::counting(std::max(2, cfg.omega_size));

  KConstantEstimate out;
  out.kind = kind;
  out.t_or_r = t_or_r;
  out.p_or_q = p_or_q;

  const auto sample_value = [&](const GridFunction& f,
                                const GridFunction& g) -> double {
    const double nf = h_norm(h, f, opts);
    const double ng = h_norm(h, g, opts);
    if (ng < 1e-12) return 0.0;
    const double nplus = h_norm(h, add(f, g), opts);
    const double nminus = h_norm(h, sub(f, g), opts);
    const double mean = std::pow(
        (std::pow(nplus, mean_exp) + std::pow(nminus, mean_exp)) / 2.0,
        1.0 / mean_exp);
    if (kind == KKind::Smooth) {
      const double excess =
          std::pow(mean, bound_exp) - std::pow(nf, bound_exp);
      return excess <= 0.0 ? 0.0 : std::pow(excess, 1.0 / bound_exp) / ng;
    }
    const double excess = std::pow(mean, bound_exp) - std::pow(nf, bound_exp);
    if (excess <= 1e-300) return 0.0;
    return ng / std::pow(excess, 1.0 / bound_exp);
  };

  const auto consider = [&](const GridFunction& f, const GridFunction& g) {
    const double v = sample_value(f, g);
    if (v > out.value) {
      out.value = v;
      out.witness_f = f;
      out.witness_g = g;
    }
  };

  // Directed diagonal family: f = diag(1,1,0,...), g = diag(rho,-rho,0,...).
  std::vector<Complex> a(static_cast<std::size_t>(space.n), Complex(0.0, 0.0));
  std::vector<Complex> b = a;
  a[0] = a[1] = Complex(1.0, 0.0);
  const int sweep_points = 96;
  for (int i = 0; i < sweep_points; ++i) {
    const double rho = std::exp(std::log(1e-3) +
                                (std::log(1e3) - std::log(1e-3)) * i /
                                    (sweep_points - 1));
    b[0] = Complex(rho, 0.0);
    b[1] = Complex(-rho, 0.0);
    consider(GridFunction::diagonal(space, h.k, a),
             GridFunction::diagonal(space, h.k, b));
  }

  for (int t = 0; t < cfg.trials; ++t) {
    CounterRng rng(cfg.seed, static_cast<std::uint64_t>(t));
    consider(gaussian_function(space, h.k, rng, cfg.amplitude),
             gaussian_function(space, h.k, rng, cfg.amplitude));
  }

  if (kind == KKind::Smooth && std::abs(t_or_r - 2.0) <= 1e-12 &&
      size_h >= 2.0 - kShapeTol && non_factorizable(h)) {
    double s = 0.0;
    const bool covered =
        type_two_shape(h) || (equal_split_shape(h, s) && s >= 2.0 - kShapeTol);
    if (covered) {
      out.exact_known = true;
      out.exact_value = p_or_q <= size_h ? std::sqrt(size_h - 1.0)
                                         : std::sqrt(p_or_q - 1.0);
    }
  }
  return out;
}

InequalityReport check_hanner(const HypergraphPair& h, const TrialConfig& cfg) {
  h.validate();
  validate_trials(cfg);
  if (!h.is_nonnegative() || h.size() <= 0.0) {
    throw ValidationError("check_hanner: nonnegative nonzero pair required");
  }
  double s = 0.0;
  const bool even_split = equal_split_shape(h, s) && s >= 2.0 - kShapeTol &&
                          std::abs(s - 2.0 * std::llround(s / 2.0)) <= kShapeTol;
  const bool covered = (type_two_shape(h) || even_split) && non_factorizable(h);

  const double q = h.size();
  EvalOptions opts;
  opts.threads = 1;

  InequalityReport rep;
  rep.id = "hanner";
  rep.seed = cfg.seed;
  rep.worst_margin = std::numeric_limits<double>::infinity();
  for (int t = 0; t < cfg.trials; ++t) {
    CounterRng rng(cfg.seed, static_cast<std::uint64_t>(t));
    const DiscreteMeasureSpace space = random_space(cfg.omega_size, rng);
    const GridFunction f = gaussian_function(space, h.k, rng, cfg.amplitude);
    const GridFunction g = gaussian_function(space, h.k, rng, cfg.amplitude);
    const double nf = h_norm(h, f, opts);
    const double ng = h_norm(h, g, opts);
    const double nplus = h_norm(h, add(f, g), opts);
    const double nminus = h_norm(h, sub(f, g), opts);
    const double margin = std::pow(nf + ng, q) + std::pow(std::abs(nf - ng), q) -
                          std::pow(nplus, q) - std::pow(nminus, q);
    if (margin < rep.worst_margin) {
      rep.worst_margin = margin;
      rep.witness.functions = {f, g};
      rep.witness.trial_index = t;
    }
    ++rep.trials_run;
  }
  if (covered) {
    rep.pass = rep.worst_margin >= -cfg.tolerance;
  } else {
    rep.pass = true;
    rep.notes =
        "exploration: the pair is outside the proven shape (support cells "
        "{0,1} or equal-split with even integer parameter, single component); "
        "margins are conjecture evidence, not pass/fail.";
  }
  return rep;
}

InequalityReport check_clarkson(const HypergraphPair& h,
                                const TrialConfig& cfg) {
  h.validate();
  validate_trials(cfg);
  if (!h.is_nonnegative()) {
    throw ValidationError("check_clarkson: nonnegative pair required");
  }
  const double q = h.size();
  if (q < 2.0 - kShapeTol) {
    throw ValidationError("check_clarkson: requires |H| >= 2");
  }
  const double p = q / (q - 1.0);
  double s = 0.0;
  const bool covered =
      (type_two_shape(h) ||
       (equal_split_shape(h, s) && s >= 2.0 - kShapeTol)) &&
      non_factorizable(h);

  EvalOptions opts;
  opts.threads = 1;

  const auto direct_margin = [&](const GridFunction& f, const GridFunction& g) {
    const double nf = h_norm(h, f, opts);
    const double ng = h_norm(h, g, opts);
    const double nplus = h_norm(h, add(f, g), opts);
    const double nminus = h_norm(h, sub(f, g), opts);
    const double lhs = std::pow(
        (std::pow(nplus, q) + std::pow(nminus, q)) / 2.0, 1.0 / q);
    const double rhs = std::pow(std::pow(nf, p) + std::pow(ng, p), 1.0 / p);
    return rhs - lhs;
  };

  InequalityReport rep;
  rep.id = "clarkson";
  rep.seed = cfg.seed;
  rep.worst_margin = std::numeric_limits<double>::infinity();
  for (int t = 0; t < cfg.trials; ++t) {
    CounterRng rng(cfg.seed, static_cast<std::uint64_t>(t));
    const DiscreteMeasureSpace space = random_space(cfg.omega_size, rng);
    const GridFunction f = gaussian_function(space, h.k, rng, cfg.amplitude);
    const GridFunction g = gaussian_function(space, h.k, rng, cfg.amplitude);
    const double direct = direct_margin(f, g);
    const GridFunction half_sum = scale(add(f, g), Complex(0.5, 0.0));
    const GridFunction half_diff = scale(sub(f, g), Complex(0.5, 0.0));
    const double dual = direct_margin(half_sum, half_diff);
    const double margin = std::min(direct, dual);
    if (margin < rep.worst_margin) {
      rep.worst_margin = margin;
      rep.witness.functions = {f, g};
      rep.witness.trial_index = t;
    }
    ++rep.trials_run;
  }
  if (covered) {
    rep.pass = rep.worst_margin >= -cfg.tolerance;
  } else {
    rep.pass = true;
    rep.notes =
        "exploration: the pair is outside the proven shape (support cells "
        "{0,1} or equal-split with parameter >= 2, single component); margins "
        "are conjecture evidence, not pass/fail.";
  }
  return rep;
}

ModulusEstimate estimate_modulus(const HypergraphPair& h, ModulusKind kind,
                                 const std::vector<double>& grid,
                                 const TrialConfig& cfg) {
  h.validate();
  validate_trials(cfg);
  if (!h.is_nonnegative() || h.size() <= 0.0) {
    throw ValidationError("estimate_modulus: nonnegative nonzero pair required");
  }
  if (grid.empty()) {
    throw ValidationError("estimate_modulus: grid must be nonempty");
  }
  for (double v : grid) {
    if (kind == ModulusKind::Smoothness && v < 0.0) {
      throw ValidationError("estimate_modulus: tau must be >= 0");
    }
    if (kind == ModulusKind::Convexity && (v < 0.0 || v > 1.0)) {
      throw ValidationError("estimate_modulus: eps must lie in [0, 1]");
    }
  }
  const int n = std::max(2, cfg.omega_size);
  double cells = 1.0;
  for (int i = 0; i < h.k; ++i) cells *= n;
  if (cells > 262144.0) {
    throw BudgetError("estimate_modulus: unit-sphere sampling budget exceeded",
                      cells);
  }

  const DiscreteMeasureSpace space = DiscreteMeasureSpace::counting(n);
  EvalOptions opts;
  opts.threads = 1;

  std::vector<GridFunction> basis;
  for (int i = 0; i < std::min(n, 3); ++i) {
    basis.push_back(basis_diagonal(space, h.k, i));
  }

  ModulusEstimate out;
  out.kind = kind;
  out.grid = grid;
  out.direction =
      kind == ModulusKind::Smoothness ? "lower-bound" : "upper-bound";
  out.samples = cfg.trials;
  out.seed = cfg.seed;
  out.values.reserve(grid.size());

  const auto smooth_value = [&](const GridFunction& x, const GridFunction& y,
                                double tau) {
    const GridFunction ty = scale(y, Complex(tau, 0.0));
    return (h_norm(h, add(x, ty), opts) + h_norm(h, sub(x, ty), opts)) / 2.0 -
           1.0;
  };

  if (kind == ModulusKind::Smoothness) {
    for (double tau : grid) {
      double best = 0.0;
      GridFunction best_x, best_y;
      bool have_witness = false;
      const auto consider = [&](const GridFunction& x, const GridFunction& y) {
        const double v = smooth_value(x, y, tau);
        if (v > best) {
          best = v;
          best_x = x;
          best_y = y;
          have_witness = true;
        }
      };
      if (tau > 0.0) {
        for (std::size_t i = 0; i < basis.size(); ++i) {
          for (std::size_t j = 0; j < basis.size(); ++j) {
            if (i != j) consider(basis[i], basis[j]);
          }
        }
        for (int t = 0; t < cfg.trials; ++t) {
          CounterRng rng(cfg.seed, static_cast<std::uint64_t>(t));
          const GridFunction x = unit_sample(h, space, rng, opts);
          const GridFunction y = unit_sample(h, space, rng, opts);
          consider(x, y);
        }
        if (have_witness) {
          GridFunction cx = best_x, cy = best_y;
          const auto obj = [&]() {
            const double nx = h_norm(h, cx, opts);
            const double ny = h_norm(h, cy, opts);
            if (nx < 1e-9 || ny < 1e-9) return 1e9;
            return -smooth_value(scale(cx, Complex(1.0 / nx, 0.0)),
                                 scale(cy, Complex(1.0 / ny, 0.0)), tau);
          };
          const double climbed = -coordinate_minimize({&cx, &cy}, obj, 30,
                                                      0.25, 0.7);
          best = std::max(best, climbed);
        }
      }
      out.values.push_back(best);
    }
    // Isotonic cleanup: running max keeps each entry a valid lower bound.
    for (std::size_t i = 1; i < out.values.size(); ++i) {
      out.values[i] = std::max(out.values[i], out.values[i - 1]);
    }
    return out;
  }

  // Convexity: pairs are pushed onto the constraint boundary ||x - y|| = 2 eps
  // by bisecting a continuous path from y = x to y = -x.
  const auto convex_value = [&](const GridFunction& x, const GridFunction& v,
                                double eps) -> double {
    const auto y_at = [&](double s) {
      GridFunction y = add(scale(x, Complex(std::cos(3.14159265358979 * s), 0.0)),
                           scale(v, Complex(std::sin(3.14159265358979 * s), 0.0)));
      const double ny = h_norm(h, y, opts);
      return ny > 1e-12 ? scale(y, Complex(1.0 / ny, 0.0)) : y;
    };
    double lo = 0.0, hi = 1.0;
    for (int iter = 0; iter < 60; ++iter) {
      const double mid = (lo + hi) / 2.0;
      const double dist = h_norm(h, sub(x, y_at(mid)), opts);
      if (dist < 2.0 * eps) {
        lo = mid;
      } else {
        hi = mid;
      }
    }
    const GridFunction y = y_at(hi);
    if (h_norm(h, sub(x, y), opts) < 2.0 * eps - 1e-9) {
      return std::numeric_limits<double>::infinity();  // constraint missed
    }
    return 1.0 - h_norm(h, scale(add(x, y), Complex(0.5, 0.0)), opts);
  };

  for (double eps : grid) {
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < basis.size(); ++i) {
      for (std::size_t j = 0; j < basis.size(); ++j) {
        if (i != j) best = std::min(best, convex_value(basis[i], basis[j], eps));
      }
    }
    for (int t = 0; t < cfg.trials; ++t) {
      CounterRng rng(cfg.seed, static_cast<std::uint64_t>(t));
      const GridFunction x = unit_sample(h, space, rng, opts);
      const GridFunction v = unit_sample(h, space, rng, opts);
      best = std::min(best, convex_value(x, v, eps));
    }
    out.values.push_back(best);
  }
  // Running min from the right: stays an upper bound and becomes monotone.
  for (std::size_t i = out.values.size(); i-- > 1;) {
    out.values[i - 1] = std::min(out.values[i - 1], out.values[i]);
  }
  return out;
}

InequalityReport check_bonami(double p, double q, const TrialConfig& cfg) {
  if (!(p > 1.0) || !(q >= p) || !std::isfinite(q)) {
    throw ValidationError("check_bonami: requires 1 < p <= q < inf");
  }
  validate_trials(cfg);
  const double rho = std::sqrt((p - 1.0) / (q - 1.0));
  const auto mean = [](Complex x, Complex y, double s) {
    return std::pow(
        (std::pow(std::abs(x + y), s) + std::pow(std::abs(x - y), s)) / 2.0,
        1.0 / s);
  };

  InequalityReport rep;
  rep.id = "bonami";
  rep.seed = cfg.seed;
  rep.worst_margin = std::numeric_limits<double>::infinity();
  for (int t = 0; t < cfg.trials; ++t) {
    CounterRng rng(cfg.seed, static_cast<std::uint64_t>(t));
    const Complex x = cfg.amplitude * rng.complex_gaussian();
    const Complex y = cfg.amplitude * rng.complex_gaussian();
    const double margin = mean(x, y, p) - mean(x, rho * y, q);
    if (margin < rep.worst_margin) {
      rep.worst_margin = margin;
      rep.witness.trial_index = t;
    }
    ++rep.trials_run;
  }
  rep.pass = rep.worst_margin >= -cfg.tolerance;
  return rep;
}

EmbeddingReport embedding_witness(const HypergraphPair& h, int n,
                                  const TrialConfig& cfg) {
  h.validate();
  validate_trials(cfg);
  if (!h.is_nonnegative() || h.size() <= 0.0) {
    throw ValidationError(
        "embedding_witness: nonnegative nonzero pair required");
  }
  if (n < 1) throw ValidationError("embedding_witness: n must be >= 1");
  if (!non_factorizable(h)) {
    throw ValidationError(
        "embedding_witness: the pair is factorizable; the diagonal embedding "
        "identity needs a single component with no isolated vertices");
  }

  const DiscreteMeasureSpace space = DiscreteMeasureSpace::counting(n);
  const double size_h = h.size();
  EvalOptions opts;
  opts.threads = 1;

  EmbeddingReport rep;
  rep.n = n;
  rep.trials = cfg.trials;
  rep.seed = cfg.seed;
  for (int t = 0; t < cfg.trials; ++t) {
    CounterRng rng(cfg.seed, static_cast<std::uint64_t>(t));
    std::vector<Complex> a(static_cast<std::size_t>(n));
    for (Complex& v : a) v = cfg.amplitude * rng.complex_gaussian();
    const GridFunction f = GridFunction::diagonal(space, h.k, a);
    const double lhs = h_norm(h, f, opts);
    double sum = 0.0;
    for (const Complex& v : a) sum += std::pow(std::abs(v), size_h);
    const double rhs = std::pow(sum, 1.0 / size_h);
    const double rel = std::abs(lhs - rhs) / std::max(rhs, 1e-300);
    rep.max_rel_error = std::max(rep.max_rel_error, rel);
  }
  rep.pass = rep.max_rel_error <= 1e-10;
  return rep;
}

}  // namespace hypernorm
