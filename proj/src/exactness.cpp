#include "icechain/exactness.hpp"

#include "icechain/chain.hpp"
#include "icechain/coupling.hpp"

#include <algorithm>
#include <cmath>
#include <queue>
#include <stdexcept>

namespace icechain {

Configuration StateSpace::config(int id) const {
  std::uint32_t mask = states.at(id);
  Configuration c(n_circuits);
  for (int i = 0; i < n_circuits; ++i)
    if (mask & (1u << i)) c.set(i, 1);
  return c;
}

std::uint32_t StateSpace::mask_of(const Configuration& sigma) {
  if (sigma.size() > 32) throw std::invalid_argument("configuration too large for a mask");
  std::uint32_t m = 0;
  for (int i = 0; i < sigma.size(); ++i)
    if (sigma[i]) m |= 1u << i;
  return m;
}

int StateSpace::id_of(const Configuration& sigma) const {
  auto it = index.find(mask_of(sigma));
  return it == index.end() ? -1 : it->second;
}

StateSpace enumerate_omega(const Decomposition& d, int n_cap) {
  if (d.n > n_cap)
    throw std::invalid_argument("enumerate_omega: " + std::to_string(d.n) +
                                " circuits exceeds the cap of " + std::to_string(n_cap));
  StateSpace space;
  space.n_circuits = d.n;
  std::vector<std::uint32_t> nbr_mask(d.n, 0);
  for (int i = 0; i < d.n; ++i)
    for (int j : d.neighbors(i)) nbr_mask[i] |= 1u << j;

  const std::uint32_t limit = d.n >= 32 ? 0 : (1u << d.n);
  for (std::uint32_t mask = 0;; ++mask) {
    bool ok = true;
    for (int i = 0; i < d.n && ok; ++i)
      if ((mask & (1u << i)) && (mask & nbr_mask[i])) ok = false;
    if (ok) {
      space.index.emplace(mask, static_cast<int>(space.states.size()));
      space.states.push_back(mask);
    }
    if (mask + 1 == limit || (limit == 0 && mask == 0xffffffffu)) break;
  }
  return space;
}

namespace {

std::vector<Rational> state_weights(const Decomposition& d, const Rational& b,
                                    DeltaConvention conv, const StateSpace& space) {
  std::vector<Rational> bpow(d.n);
  for (int i = 0; i < d.n; ++i)
    bpow[i] = rational_pow(b, static_cast<unsigned>(d.delta(i, conv)));
  std::vector<Rational> w;
  w.reserve(space.size());
  for (std::uint32_t mask : space.states) {
    Rational acc(1);
    for (int i = 0; i < d.n; ++i)
      if (mask & (1u << i)) acc *= bpow[i];
    w.push_back(acc);
  }
  return w;
}

}  // namespace

Rational exact_partition(const Decomposition& d, const Rational& b, DeltaConvention conv,
                         int n_cap) {
  StateSpace space = enumerate_omega(d, n_cap);
  Rational z(0);
  for (const Rational& w : state_weights(d, b, conv, space)) z += w;
  return z;
}

std::vector<Rational> exact_mu(const Decomposition& d, const Rational& b, DeltaConvention conv,
                               const StateSpace& space) {
  std::vector<Rational> mu = state_weights(d, b, conv, space);
  Rational z(0);
  for (const Rational& w : mu) z += w;
  if (z == 0) throw std::logic_error("exact_mu: zero partition function");
  for (Rational& w : mu) w /= z;
  return mu;
}

TransitionMatrix transition_matrix(const Decomposition& d, const Rational& b,
                                   DeltaConvention conv, const StateSpace& space) {
  TransitionMatrix P;
  P.size = space.size();
  P.rows.resize(P.size);
  const Rational inv_n = d.n > 0 ? Rational(1, d.n) : Rational(0);
  std::vector<Rational> p_one(d.n);
  for (int i = 0; i < d.n; ++i) p_one[i] = proposal_prob_one_exact(d.delta(i, conv), b);

  std::vector<std::uint32_t> nbr_mask(d.n, 0);
  for (int i = 0; i < d.n; ++i)
    for (int j : d.neighbors(i)) nbr_mask[i] |= 1u << j;

  for (int s = 0; s < P.size; ++s) {
    std::uint32_t mask = space.states[s];
    Rational stay(0);
    std::vector<std::pair<int, Rational>> row;
    for (int i = 0; i < d.n; ++i) {
      bool bit = mask & (1u << i);
      // Proposing the current value always keeps the state.
      stay += inv_n * (bit ? p_one[i] : 1 - p_one[i]);
      if (bit) {
        // Flip 1 -> 0 is always accepted.
        std::uint32_t t = mask & ~(1u << i);
        row.emplace_back(space.index.at(t), inv_n * (1 - p_one[i]));
      } else if (mask & nbr_mask[i]) {
        // Flip 0 -> 1 rejected: a neighbor is occupied.
        stay += inv_n * p_one[i];
      } else {
        std::uint32_t t = mask | (1u << i);
        row.emplace_back(space.index.at(t), inv_n * p_one[i]);
      }
    }
    if (stay > 0 || row.empty()) row.emplace_back(s, stay);
    std::sort(row.begin(), row.end(),
              [](const auto& x, const auto& y) { return x.first < y.first; });
    P.rows[s] = std::move(row);
  }
  return P;
}

std::vector<double> tv_curve(const TransitionMatrix& P, const std::vector<Rational>& mu,
                             int t_max) {
  const int m = P.size;
  std::vector<long double> mu_ld(m);
  for (int j = 0; j < m; ++j) mu_ld[j] = mu[j].convert_to<long double>();

  // Sparse rows in long double for the repeated multiply.
  std::vector<std::vector<std::pair<int, long double>>> rows(m);
  for (int i = 0; i < m; ++i)
    for (const auto& [j, v] : P.rows[i]) rows[i].emplace_back(j, v.convert_to<long double>());

  // D = P^t, dense, row major. D(0) = I.
  std::vector<long double> D(static_cast<std::size_t>(m) * m, 0.0L);
  for (int i = 0; i < m; ++i) D[static_cast<std::size_t>(i) * m + i] = 1.0L;

  std::vector<double> curve;
  curve.reserve(t_max + 1);
  std::vector<long double> next(static_cast<std::size_t>(m) * m);
  for (int t = 0;; ++t) {
    long double worst = 0.0L;
    for (int i = 0; i < m; ++i) {
      long double acc = 0.0L;
      const long double* row = &D[static_cast<std::size_t>(i) * m];
      for (int j = 0; j < m; ++j) acc += std::fabs(row[j] - mu_ld[j]);
      worst = std::max(worst, acc / 2.0L);
    }
    curve.push_back(static_cast<double>(worst));
    if (t == t_max) break;

    std::fill(next.begin(), next.end(), 0.0L);
    for (int i = 0; i < m; ++i) {
      const long double* row = &D[static_cast<std::size_t>(i) * m];
      long double* out = &next[static_cast<std::size_t>(i) * m];
      for (int k = 0; k < m; ++k) {
        long double rik = row[k];
        if (rik == 0.0L) continue;
        for (const auto& [j, v] : rows[k]) out[j] += rik * v;
      }
    }
    D.swap(next);
  }
  return curve;
}

Rational check_detailed_balance(const TransitionMatrix& P, const std::vector<Rational>& mu) {
  Rational worst(0);
  for (int i = 0; i < P.size; ++i) {
    for (const auto& [j, pij] : P.rows[i]) {
      if (j < i) continue;  // each unordered pair once
      Rational pji(0);
      for (const auto& [k, v] : P.rows[j])
        if (k == i) {
          pji = v;
          break;
        }
      Rational r = mu[i] * pij - mu[j] * pji;
      if (r < 0) r = -r;
      if (r > worst) worst = r;
    }
  }
  return worst;
}

Rational stationarity_residual(const TransitionMatrix& P, const std::vector<Rational>& mu) {
  std::vector<Rational> out(P.size, Rational(0));
  for (int i = 0; i < P.size; ++i)
    for (const auto& [j, v] : P.rows[i]) out[j] += mu[i] * v;
  Rational worst(0);
  for (int j = 0; j < P.size; ++j) {
    Rational r = out[j] - mu[j];
    if (r < 0) r = -r;
    if (r > worst) worst = r;
  }
  return worst;
}

bool check_irreducible_aperiodic(const TransitionMatrix& P) {
  if (P.size == 0) return false;
  bool self_loop = false;
  for (int i = 0; i < P.size && !self_loop; ++i)
    for (const auto& [j, v] : P.rows[i])
      if (j == i && v > 0) self_loop = true;
  if (!self_loop) return false;

  auto reach = [&](bool reversed) {
    std::vector<std::vector<int>> adj(P.size);
    for (int i = 0; i < P.size; ++i)
      for (const auto& [j, v] : P.rows[i])
        if (v > 0) (reversed ? adj[j] : adj[i]).push_back(reversed ? i : j);
    std::vector<bool> seen(P.size, false);
    std::queue<int> q;
    q.push(0);
    seen[0] = true;
    int count = 1;
    while (!q.empty()) {
      int u = q.front();
      q.pop();
      for (int w : adj[u])
        if (!seen[w]) {
          seen[w] = true;
          ++count;
          q.push(w);
        }
    }
    return count == P.size;
  };
  return reach(false) && reach(true);
}

std::vector<std::vector<Rational>> all_pairs_phi(const StateSpace& space,
                                                 const Decomposition& d, const Rational& b,
                                                 DeltaConvention conv) {
  const int m = space.size();
  // Edges of the state graph: flips between two members of Omega, with the
  // adjacent-pair potential as length (computed on the 0-side state).
  std::vector<std::vector<std::pair<int, Rational>>> adj(m);
  for (int s = 0; s < m; ++s) {
    Configuration sigma = space.config(s);
    for (int i = 0; i < d.n; ++i) {
      if (sigma[i]) continue;
      Configuration up = sigma;
      up.set(i, 1);
      int t = space.id_of(up);
      if (t < 0) continue;
      Rational len = phi_adjacent(sigma, i, d, b, conv);
      adj[s].emplace_back(t, len);
      adj[t].emplace_back(s, len);
    }
  }

  std::vector<std::vector<Rational>> dist(m, std::vector<Rational>(m, Rational(-1)));
  for (int src = 0; src < m; ++src) {
    auto& row = dist[src];
    std::vector<bool> done(m, false);
    row[src] = 0;
    // Dijkstra with exact comparisons; the state graphs here are small.
    for (int iter = 0; iter < m; ++iter) {
      int best = -1;
      for (int v = 0; v < m; ++v)
        if (!done[v] && row[v] >= 0 && (best < 0 || row[v] < row[best])) best = v;
      if (best < 0) break;
      done[best] = true;
      for (const auto& [w, len] : adj[best]) {
        Rational cand = row[best] + len;
        if (row[w] < 0 || cand < row[w]) row[w] = cand;
      }
    }
  }
  return dist;
}

Rational phi_metric(const Configuration& sigma, const Configuration& eta,
                    const Decomposition& d, const Rational& b, DeltaConvention conv,
                    const StateSpace& space) {
  int s = space.id_of(sigma);
  int t = space.id_of(eta);
  if (s < 0 || t < 0) throw std::invalid_argument("phi_metric: state not in Omega");
  auto dist = all_pairs_phi(space, d, b, conv);
  Rational r = dist[s][t];
  if (r < 0) throw std::invalid_argument("phi_metric: states are disconnected");
  return r;
}

}  // namespace icechain
