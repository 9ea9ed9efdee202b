#include "icechain/counting.hpp"

#include "icechain/coupling.hpp"

#include <boost/math/special_functions/erf.hpp>

#include <cmath>
#include <stdexcept>

namespace icechain {

Schedule make_schedule(const Decomposition& d, const Rational& b_target, double eps,
                       DeltaConvention conv) {
  if (b_target < 0) throw std::invalid_argument("make_schedule: b_target must be >= 0");
  if (eps <= 0 || eps >= 1) throw std::invalid_argument("make_schedule: eps must be in (0,1)");

  Schedule s;
  int delta_min = 0;
  for (int i = 0; i < d.n; ++i) {
    int di = d.delta(i, conv);
    if (di == 0) {
      ++s.isolated_circuits;
      continue;
    }
    ++s.active_circuits;
    s.sum_delta += di;
    s.delta_max = std::max(s.delta_max, di);
    delta_min = delta_min == 0 ? di : std::min(delta_min, di);
  }

  if (s.active_circuits == 0 || b_target == 0) {
    s.b_values = {b_target};
    s.proven_region = true;
    return s;
  }
  s.proven_region = b_target * s.delta_max <= 1;

  // Anchor: 2^n * b0^delta_min <= eps/4 forces the active part of Z(b0)
  // into [1, 1+eps/4]. Pick b0 as a power of 1/2, exactly verified.
  Rational eps_quarter = Rational(eps) / 4;
  Rational two_pow_n = rational_pow(Rational(2), static_cast<unsigned>(s.active_circuits));
  Rational b0(1, 2);
  while (b0 > b_target ||
         two_pow_n * rational_pow(b0, static_cast<unsigned>(delta_min)) > eps_quarter)
    b0 /= 2;

  const Rational rho = Rational(s.active_circuits * s.delta_max + 1,
                                s.active_circuits * s.delta_max);
  s.b_values.push_back(b0);
  Rational b = b0;
  while (b < b_target) {
    b *= rho;
    if (b > b_target) b = b_target;
    s.b_values.push_back(b);
  }
  return s;
}

RatioEstimate estimate_ratio(const Rational& b_low, const Rational& b_high,
                             const std::vector<Configuration>& samples,
                             const std::vector<int>& deltas) {
  if (b_low <= 0) throw std::invalid_argument("estimate_ratio: b_low must be positive");
  RatioEstimate out;
  out.samples = samples.size();
  if (samples.empty()) return out;

  double rho = to_double(b_high / b_low);
  double mean = 0.0, m2 = 0.0;
  std::uint64_t count = 0;
  for (const Configuration& sigma : samples) {
    int dsum = 0;
    for (int i = 0; i < sigma.size(); ++i)
      if (sigma[i]) dsum += deltas[i];
    double r = std::pow(rho, dsum);
    ++count;
    double delta = r - mean;
    mean += delta / static_cast<double>(count);
    m2 += delta * (r - mean);
  }
  out.ratio = mean;
  if (count > 1 && mean > 0)
    out.rel_std_error =
        std::sqrt(m2 / static_cast<double>(count - 1) / static_cast<double>(count)) / mean;
  return out;
}

Estimate estimate_Z(const Decomposition& d, const Rational& b, double eps, double confidence,
                    std::uint64_t seed, DeltaConvention conv) {
  if (auto problems = chain_preconditions(d); !problems.empty()) {
    std::string msg = "estimate_Z:";
    for (const auto& p : problems) msg += "\n  " + p;
    throw std::invalid_argument(msg);
  }
  if (confidence <= 0 || confidence >= 1)
    throw std::invalid_argument("estimate_Z: confidence must be in (0,1)");

  Schedule schedule = make_schedule(d, b, eps, conv);
  Estimate est;
  est.eps = eps;
  est.confidence = confidence;
  est.seed = seed;
  // The mixing bound behind the per-stage burn-ins is established for
  // delta >= 2 and b <= 1/delta; anything else is labelled heuristic.
  est.proven_burn_in =
      schedule.stages() == 0 || (schedule.proven_region && schedule.delta_max >= 2);
  est.stages = schedule.stages();
  est.z_hat = std::pow(2.0, schedule.isolated_circuits);
  if (schedule.stages() == 0) return est;

  std::vector<int> deltas(d.n);
  for (int i = 0; i < d.n; ++i) deltas[i] = d.delta(i, conv);

  // Error budget: eps/4 for the anchor, eps/10 across stage mixing, the
  // rest statistical. The quantile carries an extra safety factor.
  const int m = schedule.stages();
  const double z_quantile = std::sqrt(2.0) * boost::math::erf_inv(confidence) * 1.5;
  const double sigma_target = 0.5 * eps / z_quantile;
  const double per_stage_relvar = sigma_target * sigma_target / m;
  const double eps_mix = eps / (10.0 * m);
  const std::uint64_t min_samples = 256;
  const std::uint64_t max_samples = 1u << 23;
  const std::uint64_t batch = 64;

  DrawStream master(seed);
  Configuration sigma(d.n);
  double log_z = 0.0;

  for (int k = 0; k < m; ++k) {
    const Rational& b_low = schedule.b_values[k];
    const Rational& b_high = schedule.b_values[k + 1];
    std::uint64_t stage_seed = master.next_u64();

    MixingBound mb = mixing_bound(d.n, std::max(schedule.delta_max, 1), b_low, eps_mix);
    std::uint64_t burn_in;
    std::uint64_t thin;
    if (mb.proven_region || (schedule.proven_region && std::isfinite(mb.tau))) {
      burn_in = static_cast<std::uint64_t>(std::ceil(mb.tau));
      // Space samples by the relaxation scale n(1+b^d)/(b^d+1-bd) so the
      // empirical variance driving the stopping rule is trustworthy.
      Rational bpow = rational_pow(b_low, static_cast<unsigned>(schedule.delta_max));
      thin = static_cast<std::uint64_t>(std::ceil(
          d.n * to_double((1 + bpow) / (bpow + 1 - b_low * schedule.delta_max))));
    } else {
      burn_in = static_cast<std::uint64_t>(
          std::ceil(20.0 * d.n * (1.0 + std::log(d.n * std::max(schedule.delta_max, 1) /
                                                 eps_mix))));
      thin = static_cast<std::uint64_t>(2 * d.n);
    }

    GlauberChain chain(d, b_low, conv, stage_seed, sigma);
    chain.run(burn_in);

    // Per-sample weight (b_high/b_low)^{sum of deltas over 1-circuits},
    // bounded by e thanks to the schedule's step size.
    double rho = to_double(b_high / b_low);
    std::vector<double> rho_pow(schedule.sum_delta + 1, 1.0);
    for (int t = 1; t <= schedule.sum_delta; ++t) rho_pow[t] = rho_pow[t - 1] * rho;

    double mean = 0.0, m2 = 0.0;
    std::uint64_t count = 0;
    while (true) {
      chain.run(thin);
      const Configuration& state = chain.state();
      int dsum = 0;
      for (int i = 0; i < d.n; ++i)
        if (state[i]) dsum += deltas[i];
      double r = rho_pow[dsum];
      ++count;
      double delta = r - mean;
      mean += delta / static_cast<double>(count);
      m2 += delta * (r - mean);
      if (count >= min_samples && count % batch == 0) {
        double var = m2 / static_cast<double>(count - 1);
        if (var / (mean * mean * static_cast<double>(count)) <= per_stage_relvar) break;
      }
      if (count >= max_samples) {
        est.sample_cap_hit = true;
        break;
      }
    }

    double var = count > 1 ? m2 / static_cast<double>(count - 1) : 0.0;
    double rel_se = mean > 0 ? std::sqrt(var / static_cast<double>(count)) / mean : 0.0;
    est.stage_ratios.push_back(mean);
    est.stage_rel_std_errors.push_back(rel_se);
    est.total_samples += count;
    est.total_steps += chain.step_count();
    log_z += std::log(mean);
    sigma = chain.state();
  }

  est.z_hat = std::pow(2.0, schedule.isolated_circuits) * std::exp(log_z);
  return est;
}

}  // namespace icechain
