#include "icechain/coupling.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <thread>

namespace icechain {

Rational potential_w(const Rational& b, int delta_max) {
  return b * delta_max / (rational_pow(b, static_cast<unsigned>(delta_max)) + 2);
}

std::vector<int> blocked_set(const Configuration& sigma, int i, const Decomposition& d) {
  if (sigma[i] != 0)
    throw std::invalid_argument("blocked_set: sigma must be the low state of the pair");
  std::vector<int> blocked;
  for (int j : d.neighbors(i)) {
    for (int k : d.neighbors(j)) {
      if (sigma[k]) {
        blocked.push_back(j);
        break;
      }
    }
  }
  return blocked;
}

Rational phi_adjacent(const Configuration& sigma, int i, const Decomposition& d,
                      const Rational& b, DeltaConvention conv) {
  Rational w = potential_w(b, d.delta_max(conv));
  auto blocked = blocked_set(sigma, i, d);
  return Rational(d.delta(i, conv)) - w * static_cast<int>(blocked.size());
}

std::vector<AdjacentPair> all_adjacent_pairs(const StateSpace& space, const Decomposition& d) {
  std::vector<AdjacentPair> pairs;
  for (int s = 0; s < space.size(); ++s) {
    Configuration sigma = space.config(s);
    for (int i = 0; i < d.n; ++i) {
      if (sigma[i]) continue;
      Configuration up = sigma;
      up.set(i, 1);
      if (space.id_of(up) >= 0) pairs.push_back(AdjacentPair{sigma, i});
    }
  }
  return pairs;
}

std::pair<Configuration, Configuration> coupled_step(
    const Configuration& x, const Configuration& y, const MoveDraw& m,
    const std::vector<std::vector<int>>& neighbor_sets, const std::vector<double>& p_one) {
  Configuration nx = x, ny = y;
  apply_move(nx, m, neighbor_sets, p_one);
  apply_move(ny, m, neighbor_sets, p_one);
  return {std::move(nx), std::move(ny)};
}

namespace {

CircuitClass classify(int x, int i, const Decomposition& d) {
  if (x == i) return CircuitClass::differing;
  const auto& gi = d.neighbors(i);
  if (std::binary_search(gi.begin(), gi.end(), x)) return CircuitClass::neighbor;
  for (int j : gi) {
    const auto& gj = d.neighbors(j);
    if (std::binary_search(gj.begin(), gj.end(), x)) return CircuitClass::neighbor_of_neighbor;
  }
  return CircuitClass::far;
}

}  // namespace

DriftReport exact_drift(const AdjacentPair& pair, const Decomposition& d, const Rational& b,
                        DeltaConvention conv, const StateSpace& space,
                        const std::vector<std::vector<Rational>>& phi) {
  const int i = pair.differing;
  const Configuration& sigma = pair.sigma;
  Configuration partner = sigma;
  partner.set(i, 1);
  int s0 = space.id_of(sigma);
  int s1 = space.id_of(partner);
  if (s0 < 0 || s1 < 0) throw std::invalid_argument("exact_drift: pair not inside Omega");

  const int delta_global = d.delta_max(conv);
  const Rational w = potential_w(b, delta_global);
  const std::vector<int> blocked = blocked_set(sigma, i, d);
  auto is_blocked = [&](int j) {
    return std::find(blocked.begin(), blocked.end(), j) != blocked.end();
  };

  DriftReport report;
  report.differing_circuit = i;
  report.phi_before = phi[s0][s1];
  report.phi_before_formula = phi_adjacent(sigma, i, d, b, conv);
  report.two_by_two_free = d.two_by_two_free();
  report.has_isolated_circuit = d.has_isolated_circuit();
  report.bound_applicable =
      report.two_by_two_free && b * delta_global <= 1 && delta_global >= 1;
  {
    Rational bpow = rational_pow(b, static_cast<unsigned>(delta_global));
    report.bound = Rational(d.delta(i, conv)) * (b * delta_global - 1 - bpow) / (1 + bpow);
  }

  Rational total(0);
  for (int x = 0; x < d.n; ++x) {
    Rational p1 = proposal_prob_one_exact(d.delta(x, conv), b);

    Rational diff(0);
    for (int proposal = 0; proposal <= 1; ++proposal) {
      Configuration nx = sigma, ny = partner;
      apply_proposal(nx, x, static_cast<std::uint8_t>(proposal), d.neighbor_sets);
      apply_proposal(ny, x, static_cast<std::uint8_t>(proposal), d.neighbor_sets);
      int tx = space.id_of(nx);
      int ty = space.id_of(ny);
      if (tx < 0 || ty < 0) throw std::logic_error("exact_drift: move left Omega");
      Rational dphi = phi[tx][ty] - report.phi_before;
      diff += (proposal == 1 ? p1 : 1 - p1) * dphi;
    }

    CircuitDrift cd;
    cd.circuit = x;
    cd.cls = classify(x, i, d);
    cd.contribution = diff;

    switch (cd.cls) {
      case CircuitClass::differing:
        cd.formula_value = -report.phi_before_formula;
        cd.formula_is_equality = true;
        break;
      case CircuitClass::neighbor: {
        if (is_blocked(x)) {
          cd.formula_value = 0;
          cd.formula_is_equality = true;
        } else {
          // Upper bound via the triangle inequality through sigma.
          cd.formula_value = p1 * phi_adjacent(sigma, x, d, b, conv);
          cd.formula_is_equality = false;
        }
        break;
      }
      case CircuitClass::neighbor_of_neighbor: {
        if (sigma[x]) {
          // Dropping x to 0 may unblock neighbors of i whose only occupied
          // neighbor is x.
          int alpha = 0;
          for (int j : blocked) {
            int occupied = 0;
            bool only_x = true;
            for (int k : d.neighbors(j))
              if (sigma[k]) {
                ++occupied;
                if (k != x) only_x = false;
              }
            if (occupied == 1 && only_x) ++alpha;
          }
          cd.formula_value = (1 - p1) * w * alpha;
          cd.formula_is_equality = true;
        } else {
          bool nbr_free = true;
          for (int k : d.neighbors(x))
            if (sigma[k]) nbr_free = false;
          if (nbr_free) {
            // Raising x to 1 newly blocks the unblocked common neighbors.
            int beta = 0;
            const auto& gx = d.neighbors(x);
            for (int j : d.neighbors(i))
              if (!is_blocked(j) && std::binary_search(gx.begin(), gx.end(), j)) ++beta;
            cd.formula_value = -p1 * w * beta;
            cd.formula_is_equality = true;
          } else {
            cd.formula_value = 0;
            cd.formula_is_equality = true;
          }
        }
        break;
      }
      case CircuitClass::far:
        cd.formula_value = 0;
        cd.formula_is_equality = true;
        break;
    }

    total += diff;
    report.per_circuit.push_back(std::move(cd));
  }
  report.n_times_drift = total;
  return report;
}

Rational theoretical_beta(int n, int delta, const Rational& b) {
  if (n <= 0) throw std::invalid_argument("theoretical_beta: n must be positive");
  Rational bpow = rational_pow(b, static_cast<unsigned>(delta));
  return 1 + (b * delta - 1 - bpow) / (n * (1 + bpow));
}

MixingBound mixing_bound(int n, int delta, const Rational& b, double eps) {
  MixingBound out;
  out.proven_region = delta >= 2 && b > 0 && b * delta <= 1;
  if (n <= 0 || delta <= 0 || eps <= 0 || !(b > 0) || b * delta > 1) {
    out.beta = std::numeric_limits<double>::quiet_NaN();
    out.tau = std::numeric_limits<double>::quiet_NaN();
    return out;
  }
  out.beta = to_double(theoretical_beta(n, delta, b));
  Rational bpow = rational_pow(b, static_cast<unsigned>(delta));
  Rational pre = n * (1 + bpow) / (bpow + 1 - b * delta);
  out.tau = to_double(pre) * std::log(static_cast<double>(n) * delta / eps);
  return out;
}

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

}  // namespace

std::uint64_t coalesce_once(const Decomposition& d, const Rational& b, DeltaConvention conv,
                            Configuration x, Configuration y, std::uint64_t seed,
                            std::uint64_t step_cap) {
  std::vector<double> p_one(d.n);
  double bd = to_double(b);
  for (int i = 0; i < d.n; ++i) p_one[i] = proposal_prob_one(d.delta(i, conv), bd);
  DrawStream stream(seed);
  std::uint64_t steps = 0;
  while (x != y && steps < step_cap) {
    MoveDraw m = stream.draw(d.n);
    apply_move(x, m, d.neighbor_sets, p_one);
    apply_move(y, m, d.neighbor_sets, p_one);
    ++steps;
  }
  return steps;
}

CoalescenceStats coalescence_experiment(const Decomposition& d, const Rational& b,
                                        DeltaConvention conv, int trials, std::uint64_t seed,
                                        int threads, std::uint64_t step_cap) {
  if (trials < 0) throw std::invalid_argument("coalescence_experiment: negative trial count");
  if (auto problems = chain_preconditions(d); !problems.empty()) {
    std::string msg = "coalescence_experiment:";
    for (const auto& p : problems) msg += "\n  " + p;
    throw std::invalid_argument(msg);
  }

  Configuration zero(d.n);
  Configuration far(d.n);
  for (int i = 0; i < d.n; ++i) {
    bool free = true;
    for (int j : d.neighbors(i))
      if (j < i && far[j]) free = false;
    if (free) far.set(i, 1);
  }

  CoalescenceStats stats;
  stats.trials = trials;
  stats.times.assign(trials, 0);
  std::atomic<bool> capped{false};

  auto run_trial = [&](int t) {
    std::uint64_t trial_seed =
        splitmix64(seed ^ (0x51cebeefULL + static_cast<std::uint64_t>(t)));
    std::uint64_t steps = coalesce_once(d, b, conv, zero, far, trial_seed, step_cap);
    if (steps >= step_cap) capped = true;
    stats.times[t] = steps;
  };

  threads = std::max(1, threads);
  if (threads == 1 || trials < 2 * threads) {
    for (int t = 0; t < trials; ++t) run_trial(t);
  } else {
    std::vector<std::thread> pool;
    for (int w = 0; w < threads; ++w)
      pool.emplace_back([&, w] {
        for (int t = w; t < trials; t += threads) run_trial(t);
      });
    for (auto& th : pool) th.join();
  }

  stats.capped = capped;
  std::sort(stats.times.begin(), stats.times.end());
  if (trials > 0) {
    stats.median = static_cast<double>(stats.times[trials / 2]);
    stats.p95 = static_cast<double>(stats.times[std::min(trials - 1, (trials * 95) / 100)]);
    double sum = 0;
    for (auto t : stats.times) sum += static_cast<double>(t);
    stats.mean = sum / trials;
  }
  return stats;
}

}  // namespace icechain
