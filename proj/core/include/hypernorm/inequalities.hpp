#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "hypernorm/pair.hpp"
#include "hypernorm/space.hpp"

namespace hypernorm {

struct TrialConfig {
  int trials = 1000;
  std::uint64_t seed = 0;
  int omega_size = 2;       // point count n of the sampled measure space
  double amplitude = 1.0;   // entries drawn with |value| <= amplitude
  double tolerance = 1e-9;
  int threads = 1;          // forwarded to the contraction engine
};

struct WitnessSet {
  std::vector<GridFunction> functions;  // inputs at the worst margin
  int trial_index = -1;
};

// Every verifier reports the minimum over trials of RHS - LHS for its
// inequality; pass means no trial dipped below -tolerance. Replaying the
// same seed and config reproduces the identical report bit for bit.
struct InequalityReport {
  std::string id;
  int trials_run = 0;
  double worst_margin = 0.0;
  WitnessSet witness;
  bool pass = false;
  std::uint64_t seed = 0;
  std::string notes;
};

// |integral(f^{H - 1_psi} g^{1_psi})| <= ||f||_H^{|H|-1} ||g||_H.
// psi must carry weight >= 1 on the chosen side so the reduced pair stays
// nonnegative. With search=true each trial hill-climbs the margin downward
// — the demonstration mode for pairs where the inequality fails.
InequalityReport verify_first_holder(const HypergraphPair& h, const Omega& psi,
                                     const TrialConfig& cfg,
                                     bool beta_side = false,
                                     bool search = false);

enum class HolderMode { Nonnegative, Integer, General };

// |integral(prod f_i^{H_i})| <= prod ||f_i||_H^{|H_i|} for a decomposition
// sum(parts) = H. Valid when all f_i are nonnegative (Nonnegative) or all
// parts are integer-valued (Integer); General drops both guards and is the
// demonstration mode for decompositions where the bound fails.
InequalityReport verify_general_holder(const HypergraphPair& h,
                                       const std::vector<HypergraphPair>& parts,
                                       const TrialConfig& cfg, HolderMode mode);

enum class MonotonicityMode { NonnegativeF, TypeIPair, IntegerPairs };

// ||f||_K <= ||f||_H over probability spaces when K <= H entrywise and one
// of the mode guards holds: f >= 0, H uniform equal-split, or both pairs
// integer-valued.
InequalityReport verify_norm_monotonicity(const HypergraphPair& h,
                                          const HypergraphPair& k_pair,
                                          const TrialConfig& cfg,
                                          MonotonicityMode mode);

// |integral(f^H g^{1_psi})| <= ||g||_{U_k} ||f||_inf^{|H|} over probability
// spaces, for H on the size-2 box with psi outside its support.
InequalityReport verify_gowers_cs(const HypergraphPair& h, const Omega& psi,
                                  const TrialConfig& cfg);

// |integral(f^H) - integral(g^H)| <=
//   |H| ||f-g||_{U_k} max(||f||_inf, ||g||_inf)^{|H|-1}
// over probability spaces, for H = (alpha, 0) with zero-one alpha on the
// size-2 box.
InequalityReport verify_gowers_approx(const HypergraphPair& h,
                                      const TrialConfig& cfg);

// ||f||_{H1 u H1} == ||f||_{H1} exactly (the doubled disjoint union squares
// the integral). conjugate_second uses H1 u conj(H1) instead.
InequalityReport verify_factor_equality(const HypergraphPair& h1,
                                        const TrialConfig& cfg,
                                        bool conjugate_second = false);

// sum ||f_i||_H^{|H|} <= ||(sum |f_i|^{|H|})^{1/|H|}||_H^{|H|} for uniform
// equal-split H and nonnegative f_i.
InequalityReport verify_lattice_concavity(const HypergraphPair& h,
                                          const TrialConfig& cfg,
                                          int functions = 3);

// ||(sum |f_i|^s)^{1/s}||_H <= (sum ||f_i||_H^s)^{1/s} with s the uniform
// parameter of H.
InequalityReport verify_lattice_convexity(const HypergraphPair& h,
                                          const TrialConfig& cfg,
                                          int functions = 3);

// Balanced +-1 function on the uniform probability space of size m (m even)
// over k axes: seeded signs, then deterministically chosen flips restore an
// exact zero sum. Returns the achieved Gowers norm alongside the function.
struct SignFunction {
  GridFunction g;
  double gowers_norm = 0.0;
};

SignFunction gen_pseudorandom_sign(int m, int k, std::uint64_t seed);

// Certified triangle-inequality violation: after rescaling the witness to
// ||f|| + ||g|| = 10, a fresh brute-force evaluation must still show
// ||f+g|| - ||f|| - ||g|| > max(tolerance, 1e-7 * (||f|| + ||g||)).
struct ViolationWitness {
  GridFunction f;
  GridFunction g;
  double gap = 0.0;
  double norm_f = 0.0;
  double norm_g = 0.0;
  double norm_sum = 0.0;  // ||f + g||
  int restart_index = -1;
};

// Seeded random restarts plus coordinate hill climbing on the gap. Returns
// the certified violation with the lowest restart index, independent of the
// thread count, or nullopt when cfg.trials restarts all fail. A nullopt is
// evidence, not proof, that the pair satisfies the triangle inequality.
std::optional<ViolationWitness> search_triangle_violation(
    const HypergraphPair& h, const TrialConfig& cfg);

}  // namespace hypernorm
