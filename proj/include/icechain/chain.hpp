#pragma once

#include "icechain/configuration.hpp"
#include "icechain/decomposition.hpp"
#include "icechain/rational.hpp"

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

namespace icechain {

// Shared randomness of one update: a uniformly chosen circuit and one
// uniform real deciding the proposed value. Feeding the same draw to two
// chains is exactly the coupling analyzed in the mixing bound.
struct MoveDraw {
  int circuit = 0;
  double u = 0.0;
};

// b^delta / (1 + b^delta), the probability of proposing value 1.
double proposal_prob_one(int delta_i, double b);
Rational proposal_prob_one_exact(int delta_i, const Rational& b);

// Deterministic seeded stream of draws.
class DrawStream {
 public:
  explicit DrawStream(std::uint64_t seed) : eng_(seed) {}

  std::uint64_t next_u64() { return eng_(); }
  double uniform01() { return static_cast<double>(eng_() >> 11) * 0x1.0p-53; }
  int uniform_below(int n) {
    return static_cast<int>((static_cast<unsigned __int128>(eng_()) *
                             static_cast<unsigned __int128>(n)) >> 64);
  }
  MoveDraw draw(int n) {
    int c = uniform_below(n);
    return MoveDraw{c, uniform01()};
  }

 private:
  std::mt19937_64 eng_;
};

// Single-circuit update: propose 1 when u < b^delta/(1+b^delta), else 0;
// accept iff the result stays independent. At most one circuit changes.
void apply_move(Configuration& sigma, const MoveDraw& m,
                const std::vector<std::vector<int>>& neighbor_sets,
                const std::vector<double>& p_one);

// Same transition with the proposal given directly (used by the exact
// rational enumeration paths).
void apply_proposal(Configuration& sigma, int circuit, std::uint8_t value,
                    const std::vector<std::vector<int>>& neighbor_sets);

// Empty iff the single-site dynamics targets the intended distribution:
// the instance must be coherent, self-intersection free, and non-empty.
std::vector<std::string> chain_preconditions(const Decomposition& d);

class GlauberChain {
 public:
  // Throws std::invalid_argument when chain_preconditions fails or the
  // start state is not valid.
  GlauberChain(const Decomposition& d, const Rational& b, DeltaConvention conv,
               std::uint64_t seed, std::optional<Configuration> start = std::nullopt);

  const Configuration& state() const { return sigma_; }
  std::uint64_t step_count() const { return steps_; }
  int n() const { return d_->n; }
  const std::vector<double>& proposal_probs() const { return p_one_; }
  const std::vector<std::vector<int>>& neighbor_sets() const { return d_->neighbor_sets; }

  MoveDraw next_draw() { return stream_.draw(d_->n); }
  void apply(const MoveDraw& m);
  void step() { apply(next_draw()); }
  void run(std::uint64_t steps);

  // burn_in steps, then `count` states each separated by `thinning` steps.
  std::vector<Configuration> sample_batch(std::size_t count, std::uint64_t burn_in,
                                          std::uint64_t thinning);

 private:
  const Decomposition* d_;
  std::vector<double> p_one_;
  Configuration sigma_;
  std::uint64_t steps_ = 0;
  DrawStream stream_;
};

}  // namespace icechain
