#pragma once

#include "icechain/chain.hpp"
#include "icechain/configuration.hpp"
#include "icechain/decomposition.hpp"
#include "icechain/rational.hpp"

#include <cstdint>
#include <vector>

namespace icechain {

// Annealing schedule in b for the telescoping-ratio estimator.
// Circuits with delta_i = 0 factor out of Z exactly (each contributes 2)
// and never enter the sampled stages.
struct Schedule {
  std::vector<Rational> b_values;  // b_0 < ... < b_m = b_target
  int isolated_circuits = 0;
  int active_circuits = 0;
  int delta_max = 0;   // over active circuits, chosen convention
  int sum_delta = 0;   // over active circuits
  bool proven_region = false;  // b_target <= 1/delta_max

  int stages() const { return std::max<int>(0, static_cast<int>(b_values.size()) - 1); }
};

// b_0 is chosen so that the active part of Z(b_0) certifiably lies in
// [1, 1+eps/4]; afterwards geometric steps with ratio 1 + 1/(n*delta)
// keep every per-sample ratio weight below e.
Schedule make_schedule(const Decomposition& d, const Rational& b_target, double eps,
                       DeltaConvention conv);

struct RatioEstimate {
  double ratio = 1.0;
  double rel_std_error = 0.0;
  std::uint64_t samples = 0;
};

// Monte Carlo estimate of Z(b_high)/Z(b_low) from samples distributed as
// the stationary law at b_low.
RatioEstimate estimate_ratio(const Rational& b_low, const Rational& b_high,
                             const std::vector<Configuration>& samples,
                             const std::vector<int>& deltas);

struct Estimate {
  double z_hat = 0.0;
  double eps = 0.0;
  double confidence = 0.0;
  std::uint64_t seed = 0;
  std::uint64_t total_samples = 0;
  std::uint64_t total_steps = 0;
  int stages = 0;
  bool proven_burn_in = false;
  bool sample_cap_hit = false;
  std::vector<double> stage_ratios;
  std::vector<double> stage_rel_std_errors;
};

// Full sampling-to-counting pipeline: anneal b upward from the analytic
// anchor, one mixing-bound burn-in per stage, variance-driven sample
// counts per stage sized for the requested (eps, confidence).
Estimate estimate_Z(const Decomposition& d, const Rational& b, double eps, double confidence,
                    std::uint64_t seed, DeltaConvention conv = DeltaConvention::intersection);

}  // namespace icechain
