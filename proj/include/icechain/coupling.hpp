#pragma once

#include "icechain/chain.hpp"
#include "icechain/configuration.hpp"
#include "icechain/decomposition.hpp"
#include "icechain/exactness.hpp"
#include "icechain/rational.hpp"

#include <cstdint>
#include <utility>
#include <vector>

namespace icechain {

// w = b*delta / (b^delta + 2); strictly below 1 whenever b <= 1/delta.
Rational potential_w(const Rational& b, int delta_max);

// Neighbors of circuit i that keep their move blocked in both coupled
// chains: those with some neighbor at value 1 in sigma. Requires
// sigma[i] == 0 (sigma is the low state of an adjacent pair).
std::vector<int> blocked_set(const Configuration& sigma, int i, const Decomposition& d);

// Adjacent-pair potential delta_i - w * |blocked set|.
Rational phi_adjacent(const Configuration& sigma, int i, const Decomposition& d,
                      const Rational& b, DeltaConvention conv);

// A pair of states differing only at `differing`, with sigma on the 0 side.
struct AdjacentPair {
  Configuration sigma;
  int differing = 0;
};

std::vector<AdjacentPair> all_adjacent_pairs(const StateSpace& space, const Decomposition& d);

// One synchronous update: the identical draw fed to both chains.
std::pair<Configuration, Configuration> coupled_step(
    const Configuration& x, const Configuration& y, const MoveDraw& m,
    const std::vector<std::vector<int>>& neighbor_sets, const std::vector<double>& p_one);

enum class CircuitClass { differing, neighbor, neighbor_of_neighbor, far };

struct CircuitDrift {
  int circuit = 0;
  CircuitClass cls = CircuitClass::far;
  Rational contribution;      // exact E[dPhi | move on this circuit]
  Rational formula_value;     // the per-case closed form (value or bound)
  bool formula_is_equality = false;
};

struct DriftReport {
  int differing_circuit = 0;
  Rational phi_before;               // metric value of the pair
  Rational phi_before_formula;       // delta_i - w|B|, for cross-checking
  std::vector<CircuitDrift> per_circuit;
  Rational n_times_drift;            // n * E[dPhi], exact
  Rational bound;                    // delta_i (b*delta - 1 - b^delta)/(1 + b^delta)
  bool two_by_two_free = false;
  bool bound_applicable = false;     // two-by-two free and b <= 1/delta
  bool has_isolated_circuit = false; // potential degenerates on such instances
};

// Enumerates all n x {propose 0, propose 1} moves with their exact
// probabilities, evaluating the potential change through the shortest-path
// metric. `phi` must come from all_pairs_phi on the same space/b/conv.
DriftReport exact_drift(const AdjacentPair& pair, const Decomposition& d, const Rational& b,
                        DeltaConvention conv, const StateSpace& space,
                        const std::vector<std::vector<Rational>>& phi);

// One-step contraction factor 1 + (b*delta - 1 - b^delta)/(n(1+b^delta)).
Rational theoretical_beta(int n, int delta, const Rational& b);

struct MixingBound {
  bool proven_region = false;  // delta >= 2 and 0 < b <= 1/delta
  double beta = 0.0;
  double tau = 0.0;  // n(1+b^delta)/(b^delta+1-b*delta) * ln(n*delta/eps)
};

MixingBound mixing_bound(int n, int delta, const Rational& b, double eps);

struct CoalescenceStats {
  int trials = 0;
  std::vector<std::uint64_t> times;  // sorted ascending
  double median = 0.0;
  double p95 = 0.0;
  double mean = 0.0;
  bool capped = false;  // some trial hit the step cap
};

// Steps until two coupled chains started at x and y meet (0 when x == y).
std::uint64_t coalesce_once(const Decomposition& d, const Rational& b, DeltaConvention conv,
                            Configuration x, Configuration y, std::uint64_t seed,
                            std::uint64_t step_cap = 100000000ULL);

// Runs coupled chains from (all-zero, greedy maximal independent set)
// until they meet, once per trial. Per-trial seeds derive from `seed`, so
// results do not depend on the thread count.
CoalescenceStats coalescence_experiment(const Decomposition& d, const Rational& b,
                                        DeltaConvention conv, int trials, std::uint64_t seed,
                                        int threads = 1,
                                        std::uint64_t step_cap = 100000000ULL);

}  // namespace icechain
