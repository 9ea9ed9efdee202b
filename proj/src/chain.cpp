#include "icechain/chain.hpp"

#include <cmath>
#include <stdexcept>

namespace icechain {

double proposal_prob_one(int delta_i, double b) {
  if (delta_i < 0) throw std::invalid_argument("negative delta");
  if (b < 0) throw std::invalid_argument("negative b");
  double w = std::pow(b, delta_i);  // pow(0,0) == 1
  return w / (1.0 + w);
}

Rational proposal_prob_one_exact(int delta_i, const Rational& b) {
  if (delta_i < 0) throw std::invalid_argument("negative delta");
  if (b < 0) throw std::invalid_argument("negative b");
  Rational w = rational_pow(b, static_cast<unsigned>(delta_i));
  return w / (1 + w);
}

void apply_proposal(Configuration& sigma, int circuit, std::uint8_t value,
                    const std::vector<std::vector<int>>& neighbor_sets) {
  if (sigma[circuit] == value) return;
  if (value == 1) {
    for (int j : neighbor_sets[circuit])
      if (sigma[j]) return;  // would violate validity; stay
  }
  sigma.set(circuit, value);
}

void apply_move(Configuration& sigma, const MoveDraw& m,
                const std::vector<std::vector<int>>& neighbor_sets,
                const std::vector<double>& p_one) {
  std::uint8_t value = m.u < p_one[m.circuit] ? 1 : 0;
  apply_proposal(sigma, m.circuit, value, neighbor_sets);
}

std::vector<std::string> chain_preconditions(const Decomposition& d) {
  std::vector<std::string> problems;
  if (d.n == 0) problems.push_back("empty decomposition: nothing to sample");
  if (!d.coherent)
    problems.push_back(
        "instance is not coherent: circuit-level validity would not match the "
        "per-vertex product, so the chain would sample the wrong law");
  if (!d.self_intersection_free())
    problems.push_back(
        "instance has a self-intersecting circuit: its 1-state has zero exact "
        "weight but positive circuit-level weight");
  return problems;
}

GlauberChain::GlauberChain(const Decomposition& d, const Rational& b, DeltaConvention conv,
                           std::uint64_t seed, std::optional<Configuration> start)
    : d_(&d), sigma_(d.n), stream_(seed) {
  if (auto problems = chain_preconditions(d); !problems.empty()) {
    std::string msg = "GlauberChain:";
    for (const auto& p : problems) msg += "\n  " + p;
    throw std::invalid_argument(msg);
  }
  if (b < 0) throw std::invalid_argument("GlauberChain: b must be non-negative");
  double bd = to_double(b);
  p_one_.reserve(d.n);
  for (int i = 0; i < d.n; ++i) p_one_.push_back(proposal_prob_one(d.delta(i, conv), bd));
  if (start) {
    if (!independent(*start, d))
      throw std::invalid_argument("GlauberChain: start state is not valid");
    sigma_ = std::move(*start);
  }
}

void GlauberChain::apply(const MoveDraw& m) {
  apply_move(sigma_, m, d_->neighbor_sets, p_one_);
  ++steps_;
}

void GlauberChain::run(std::uint64_t steps) {
  for (std::uint64_t t = 0; t < steps; ++t) step();
}

std::vector<Configuration> GlauberChain::sample_batch(std::size_t count, std::uint64_t burn_in,
                                                      std::uint64_t thinning) {
  if (thinning == 0) thinning = 1;
  run(burn_in);
  std::vector<Configuration> out;
  out.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    run(thinning);
    out.push_back(sigma_);
  }
  return out;
}

}  // namespace icechain
