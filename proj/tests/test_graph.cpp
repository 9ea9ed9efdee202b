#include "icechain/graph.hpp"

#include "icechain/decomposition.hpp"
#include "testutil.hpp"

#include <doctest.h>
#include <nlohmann/json.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>

using namespace icechain;
namespace tu = icechain::testutil;

namespace {

std::filesystem::path temp_file(const char* name) {
  return std::filesystem::temp_directory_path() / name;
}

}  // namespace

TEST_CASE("validate accepts fixtures and reports defects") {
  CHECK(validate(gen_theta()).empty());
  CHECK(validate(gen_fig2()).empty());
  CHECK(validate(gen_torus(2, 2)).empty());
  CHECK(validate(gen_chain(5)).empty());

  // Unused slot: a single vertex with only one loop covers slots 1,3.
  LabeledGraph missing;
  missing.vertex_count = 1;
  missing.edges.push_back(Edge{0, SlotRef{0, 1}, SlotRef{0, 3}});
  auto problems = validate(missing);
  REQUIRE(problems.size() == 2);
  CHECK(problems[0].find("unused slot") != std::string::npos);

  // Duplicate slot: two edges claim (0,1).
  LabeledGraph dup;
  dup.vertex_count = 1;
  dup.edges.push_back(Edge{0, SlotRef{0, 1}, SlotRef{0, 3}});
  dup.edges.push_back(Edge{1, SlotRef{0, 1}, SlotRef{0, 4}});
  bool found = false;
  for (const auto& p : validate(dup))
    if (p.find("duplicate slot") != std::string::npos) found = true;
  CHECK(found);
}

TEST_CASE("theta fixture") {
  LabeledGraph g = gen_theta();
  CHECK(g.vertex_count == 1);
  CHECK(g.edges.size() == 2);
  Decomposition d = decompose(g);
  CHECK(d.n == 2);
  auto shared = tu::oracle_shared_vertices(d, g);
  REQUIRE(shared.size() == 1);
  CHECK(shared.at({0, 1}) == 1);
}

TEST_CASE("two-vertex parallel fixture") {
  LabeledGraph g = gen_fig2();
  Decomposition d = decompose(g);
  CHECK(d.n == 2);
  auto shared = tu::oracle_shared_vertices(d, g);
  CHECK(shared.at({0, 1}) == 2);  // the circuits meet at both vertices
  CHECK(d.delta_neighbor[0] == 1);
  CHECK(d.delta_neighbor[1] == 1);
}

TEST_CASE("torus fixture") {
  LabeledGraph g = gen_torus(2, 2);
  CHECK(g.vertex_count == 4);
  CHECK(g.edges.size() == 8);
  Decomposition d = decompose(g);
  CHECK(d.n == 4);
  auto shared = tu::oracle_shared_vertices(d, g);
  // Complete bipartite between rows {0,1} and columns {2,3}, one vertex per pair.
  CHECK(shared.size() == 4);
  for (int row = 0; row < 2; ++row)
    for (int col = 2; col < 4; ++col) CHECK(shared.at({row, col}) == 1);
  CHECK(d.two_by_two_free());

  // Every vertex hosts exactly two distinct circuit passes.
  for (int r = 2; r <= 3; ++r)
    for (int c = 2; c <= 3; ++c) {
      LabeledGraph t = gen_torus(r, c);
      Decomposition dt = decompose(t);
      CHECK(dt.n == r + c);
      CHECK(dt.self_intersection_free());
      CHECK(validate(t).empty());
    }

  CHECK_THROWS_AS(gen_torus(1, 2), std::invalid_argument);
  CHECK_THROWS_AS(gen_torus(2, 0), std::invalid_argument);
}

TEST_CASE("chain fixture") {
  for (int k : {1, 2, 3, 4, 5, 8}) {
    LabeledGraph g = gen_chain(k);
    CHECK(validate(g).empty());
    Decomposition d = decompose(g);
    CHECK(d.n == k);
    auto shared = tu::oracle_shared_vertices(d, g);
    // Path adjacency: i adjacent to i+1 only, at exactly one vertex.
    CHECK(static_cast<int>(shared.size()) == (k >= 2 ? k - 1 : 0));
    for (int i = 0; i + 1 < k; ++i) CHECK(shared.at({i, i + 1}) == 1);
    CHECK(d.two_by_two_free());
    if (k >= 2) {
      CHECK(d.coherent);
      CHECK(d.self_intersection_free());
    }
  }
  CHECK(decompose(gen_chain(1)).delta_neighbor[0] == 0);
  // Independent sets of the 5-path: Fibonacci F_7.
  LabeledGraph g5 = gen_chain(5);
  CHECK(tu::oracle_count_independent(decompose(g5), g5) == 13);
}

TEST_CASE("instance file round trip and diagnostics") {
  LabeledGraph g = gen_torus(2, 2);
  auto path = temp_file("icechain_test_torus22.json");
  save_graph(g, path.string());
  LabeledGraph back = load_graph(path.string());
  CHECK(back.vertex_count == g.vertex_count);
  REQUIRE(back.edges.size() == g.edges.size());
  for (std::size_t i = 0; i < g.edges.size(); ++i) {
    CHECK(back.edges[i].a == g.edges[i].a);
    CHECK(back.edges[i].b == g.edges[i].b);
  }
  std::remove(path.string().c_str());

  nlohmann::json bad_slot = graph_to_json(g);
  bad_slot["edges"][0]["a"]["slot"] = 5;
  CHECK_THROWS_AS(graph_from_json(bad_slot), std::invalid_argument);

  nlohmann::json dup = graph_to_json(g);
  dup["edges"][1]["a"] = dup["edges"][0]["a"];
  CHECK_THROWS_AS(graph_from_json(dup), std::invalid_argument);

  CHECK_THROWS(load_graph("/nonexistent/icechain.json"));
}

TEST_CASE("random instances are coherent and self-intersection free") {
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    LabeledGraph g = gen_random(3 + static_cast<int>(seed % 4), seed);
    CHECK(validate(g).empty());
    Decomposition d = decompose(g);
    CHECK(d.coherent);
    CHECK(d.self_intersection_free());
    CHECK(d.n <= 2 * g.vertex_count);
    // Deterministic per seed.
    LabeledGraph again = gen_random(3 + static_cast<int>(seed % 4), seed);
    CHECK(graph_to_json(again) == graph_to_json(g));
  }
}
