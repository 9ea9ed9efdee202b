#include "icechain/exactness.hpp"

#include "icechain/coupling.hpp"
#include "testutil.hpp"

#include <doctest.h>

#include <cmath>

using namespace icechain;
namespace tu = icechain::testutil;

TEST_CASE("state space sizes") {
  LabeledGraph fig2 = gen_fig2();
  CHECK(enumerate_omega(decompose(fig2)).size() == 3);

  LabeledGraph torus = gen_torus(2, 2);
  CHECK(enumerate_omega(decompose(torus)).size() == 7);

  LabeledGraph chain5 = gen_chain(5);
  Decomposition d5 = decompose(chain5);
  CHECK(enumerate_omega(d5).size() == 13);
  CHECK(enumerate_omega(d5).size() == tu::oracle_count_independent(d5, chain5));

  CHECK(enumerate_omega(decompose(gen_chain(1))).size() == 2);
  CHECK_THROWS_AS(enumerate_omega(decompose(gen_chain(25))), std::invalid_argument);
}

TEST_CASE("exact partition function") {
  Decomposition torus = decompose(gen_torus(2, 2));
  CHECK(exact_partition(torus, Rational(1, 2), DeltaConvention::intersection) ==
        Rational(17, 8));
  CHECK(exact_partition(torus, Rational(0), DeltaConvention::intersection) == 1);

  Decomposition fig2 = decompose(gen_fig2());
  CHECK(exact_partition(fig2, Rational(3), DeltaConvention::neighbor) == 7);
  CHECK(exact_partition(fig2, Rational(3), DeltaConvention::intersection) == 19);
}

TEST_CASE("exact stationary law") {
  Decomposition fig2 = decompose(gen_fig2());
  StateSpace sf = enumerate_omega(fig2);
  std::vector<Rational> mu = exact_mu(fig2, Rational(1), DeltaConvention::neighbor, sf);
  for (const Rational& m : mu) CHECK(m == Rational(1, 3));

  Decomposition torus = decompose(gen_torus(2, 2));
  StateSpace st = enumerate_omega(torus);
  std::vector<Rational> mt = exact_mu(torus, Rational(1, 2), DeltaConvention::intersection, st);
  CHECK(mt[st.index.at(0)] == Rational(8, 17));
  Rational total(0);
  for (const Rational& m : mt) total += m;
  CHECK(total == 1);

  std::vector<Rational> point = exact_mu(torus, Rational(0), DeltaConvention::intersection, st);
  CHECK(point[st.index.at(0)] == 1);
}

TEST_CASE("transition matrix") {
  Decomposition fig2 = decompose(gen_fig2());
  StateSpace space = enumerate_omega(fig2);
  TransitionMatrix P = transition_matrix(fig2, Rational(1), DeltaConvention::neighbor, space);

  for (int i = 0; i < P.size; ++i) {
    Rational row_sum(0);
    for (const auto& [j, v] : P.rows[i]) {
      row_sum += v;
      CHECK(v >= 0);
      // Only single-flip neighbors and the diagonal carry mass.
      unsigned diff = space.states[i] ^ space.states[j];
      CHECK((diff & (diff - 1)) == 0);
    }
    CHECK(row_sum == 1);
  }

  int zero = space.index.at(0);
  int c1 = space.index.at(1);  // circuit 0 occupied
  Rational p01(0);
  for (const auto& [j, v] : P.rows[zero])
    if (j == c1) p01 = v;
  CHECK(p01 == Rational(1, 4));  // pick circuit 0 w.p. 1/2, propose 1 w.p. 1/2

  std::vector<Rational> mu = exact_mu(fig2, Rational(1), DeltaConvention::neighbor, space);
  CHECK(stationarity_residual(P, mu) == 0);
}

TEST_CASE("detailed balance holds exactly and perturbations are caught") {
  for (const Rational& b : {Rational(1, 2), Rational(1, 3)}) {
    Decomposition d = decompose(gen_fig2());
    StateSpace space = enumerate_omega(d);
    TransitionMatrix P = transition_matrix(d, b, DeltaConvention::intersection, space);
    std::vector<Rational> mu = exact_mu(d, b, DeltaConvention::intersection, space);
    CHECK(check_detailed_balance(P, mu) == 0);
  }

  Decomposition torus = decompose(gen_torus(2, 2));
  StateSpace space = enumerate_omega(torus);
  TransitionMatrix P = transition_matrix(torus, Rational(1, 3), DeltaConvention::intersection,
                                         space);
  std::vector<Rational> mu = exact_mu(torus, Rational(1, 3), DeltaConvention::intersection,
                                      space);
  CHECK(check_detailed_balance(P, mu) == 0);

  // Negative control: move some mass between two entries of a row.
  TransitionMatrix Q = P;
  REQUIRE(Q.rows[0].size() >= 2);
  Rational shift = Q.rows[0][1].second / 2;
  Q.rows[0][0].second += shift;
  Q.rows[0][1].second -= shift;
  CHECK(check_detailed_balance(Q, mu) > 0);
}

TEST_CASE("irreducibility and aperiodicity") {
  for (const LabeledGraph& g :
       {gen_theta(), gen_fig2(), gen_torus(2, 2), gen_chain(4), gen_chain(1)}) {
    Decomposition d = decompose(g);
    StateSpace space = enumerate_omega(d);
    TransitionMatrix P = transition_matrix(d, Rational(1, 2), DeltaConvention::intersection,
                                           space);
    CHECK(check_irreducible_aperiodic(P));
  }

  Decomposition chain1 = decompose(gen_chain(1));
  StateSpace s1 = enumerate_omega(chain1);
  CHECK(s1.size() == 2);
  CHECK(check_irreducible_aperiodic(
      transition_matrix(chain1, Rational(1), DeltaConvention::intersection, s1)));

  // b = 0: occupied states are unreachable.
  Decomposition torus = decompose(gen_torus(2, 2));
  StateSpace st = enumerate_omega(torus);
  CHECK_FALSE(check_irreducible_aperiodic(
      transition_matrix(torus, Rational(0), DeltaConvention::intersection, st)));
}

TEST_CASE("tv curve") {
  Decomposition fig2 = decompose(gen_fig2());
  StateSpace space = enumerate_omega(fig2);
  std::vector<Rational> mu = exact_mu(fig2, Rational(1), DeltaConvention::neighbor, space);
  TransitionMatrix P = transition_matrix(fig2, Rational(1), DeltaConvention::neighbor, space);
  std::vector<double> curve = tv_curve(P, mu, 200);

  REQUIRE(curve.size() == 201);
  double min_mu = 1;
  for (const Rational& m : mu) min_mu = std::min(min_mu, to_double(m));
  CHECK(curve[0] == doctest::Approx(1 - min_mu).epsilon(1e-12));
  for (std::size_t t = 1; t < curve.size(); ++t) CHECK(curve[t] <= curve[t - 1] + 1e-12);
  CHECK(curve.back() < 1e-9);

  // The proven bound dominates the exact curve on the torus.
  Decomposition torus = decompose(gen_torus(2, 2));
  StateSpace st = enumerate_omega(torus);
  std::vector<Rational> mt = exact_mu(torus, Rational(1, 2), DeltaConvention::intersection, st);
  TransitionMatrix Pt = transition_matrix(torus, Rational(1, 2), DeltaConvention::intersection,
                                          st);
  MixingBound mb = mixing_bound(torus.n, torus.delta_max(DeltaConvention::intersection),
                                Rational(1, 2), 0.1);
  REQUIRE(mb.proven_region);
  std::vector<double> ct = tv_curve(Pt, mt, static_cast<int>(std::ceil(mb.tau)));
  CHECK(ct.back() <= 0.1);
}

TEST_CASE("potential metric") {
  LabeledGraph g = gen_torus(2, 2);
  Decomposition d = decompose(g);
  const Rational b(1, 2);
  StateSpace space = enumerate_omega(d);
  auto dist = all_pairs_phi(space, d, b, DeltaConvention::intersection);

  const int m = space.size();
  for (int i = 0; i < m; ++i) CHECK(dist[i][i] == 0);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) {
      CHECK(dist[i][j] == dist[j][i]);
      CHECK((i == j || dist[i][j] > 0));
      for (int k = 0; k < m; ++k) CHECK(dist[i][j] <= dist[i][k] + dist[k][j]);
    }

  // Adjacent-pair values match the closed form: w = 4/9 at b = 1/2, delta = 2.
  CHECK(potential_w(b, 2) == Rational(4, 9));
  Configuration zero(4), row0(4), row1(4);
  row0.set(0, 1);
  row1.set(1, 1);
  CHECK(phi_metric(zero, row0, d, b, DeltaConvention::intersection, space) == 2);
  CHECK(phi_adjacent(row1, 0, d, b, DeltaConvention::intersection) == Rational(10, 9));

  // Same exhaustive axioms on a path instance.
  Decomposition dc = decompose(gen_chain(4));
  StateSpace sc = enumerate_omega(dc);
  auto dc_phi = all_pairs_phi(sc, dc, Rational(1, 3), DeltaConvention::intersection);
  for (int i = 0; i < sc.size(); ++i)
    for (int j = 0; j < sc.size(); ++j) {
      CHECK(dc_phi[i][j] == dc_phi[j][i]);
      for (int k = 0; k < sc.size(); ++k)
        CHECK(dc_phi[i][j] <= dc_phi[i][k] + dc_phi[k][j]);
    }
}
