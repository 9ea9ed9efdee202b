#pragma once

#include "icechain/configuration.hpp"
#include "icechain/decomposition.hpp"
#include "icechain/rational.hpp"

#include <cstdint>
#include <unordered_map>
#include <vector>

namespace icechain {

// All valid configurations of a small instance, indexed by ascending
// bitmask (bit i = value of circuit i).
struct StateSpace {
  int n_circuits = 0;
  std::vector<std::uint32_t> states;
  std::unordered_map<std::uint32_t, int> index;

  int size() const { return static_cast<int>(states.size()); }
  Configuration config(int id) const;
  int id_of(const Configuration& sigma) const;  // -1 when not a state
  static std::uint32_t mask_of(const Configuration& sigma);
};

// Every independent set of the circuit adjacency graph. Throws when the
// instance has more than n_cap circuits.
StateSpace enumerate_omega(const Decomposition& d, int n_cap = 20);

Rational exact_partition(const Decomposition& d, const Rational& b, DeltaConvention conv,
                         int n_cap = 20);

// mu(sigma) = weight / Z; sums to exactly 1.
std::vector<Rational> exact_mu(const Decomposition& d, const Rational& b, DeltaConvention conv,
                               const StateSpace& space);

// Row-sparse stochastic matrix in exact rationals. Off-diagonal entries
// exist only between states one circuit flip apart.
struct TransitionMatrix {
  int size = 0;
  std::vector<std::vector<std::pair<int, Rational>>> rows;  // sorted by column
};

TransitionMatrix transition_matrix(const Decomposition& d, const Rational& b,
                                   DeltaConvention conv, const StateSpace& space);

// Delta_max(t) = max_i (1/2) sum_j |P^t_ij - mu_j| for t = 0..t_max,
// evaluated in extended precision after the exact P is built.
std::vector<double> tv_curve(const TransitionMatrix& P, const std::vector<Rational>& mu,
                             int t_max);

// max_{i,j} |mu_i P_ij - mu_j P_ji|; exactly zero for the reversible chain.
Rational check_detailed_balance(const TransitionMatrix& P, const std::vector<Rational>& mu);

// Strong connectivity of the positive-transition digraph plus a positive
// diagonal entry.
bool check_irreducible_aperiodic(const TransitionMatrix& P);

// max_j | (mu P)_j - mu_j |, exact.
Rational stationarity_residual(const TransitionMatrix& P, const std::vector<Rational>& mu);

// Shortest-path metric on the state graph where a single-flip pair is an
// edge of length delta_i - w*|blocked set| (the adjacent-pair potential).
// Exact rational arithmetic throughout.
std::vector<std::vector<Rational>> all_pairs_phi(const StateSpace& space,
                                                 const Decomposition& d, const Rational& b,
                                                 DeltaConvention conv);

Rational phi_metric(const Configuration& sigma, const Configuration& eta,
                    const Decomposition& d, const Rational& b, DeltaConvention conv,
                    const StateSpace& space);

}  // namespace icechain
