#pragma once

#include <nlohmann/json_fwd.hpp>

#include <cstdint>
#include <string>
#include <vector>

namespace icechain {

// One attachment point of an edge: a vertex together with the variable
// slot (1..4) the edge occupies there. Slots pair up as (x1,x3) and
// (x2,x4) when circuits are traced.
struct SlotRef {
  int vertex = 0;
  int slot = 0;

  bool operator==(const SlotRef&) const = default;
};

struct Edge {
  int id = 0;
  SlotRef a, b;
};

// 4-regular multigraph with named slots. Loops and parallel edges are
// allowed; every (vertex, slot) pair must be covered by exactly one edge
// endpoint. The per-edge disequality rule (the two half-values of an edge
// differ) is implicit and not materialized as degree-2 nodes.
struct LabeledGraph {
  int vertex_count = 0;
  std::vector<Edge> edges;
};

// Empty result iff the graph is well-formed (dense edge ids, slots in
// range, every slot used exactly once).
std::vector<std::string> validate(const LabeledGraph& g);

// One vertex, two loops on the slot pairs (1,3) and (2,4); decomposes
// into two single-hop circuits meeting at the vertex.
LabeledGraph gen_theta();

// Two vertices joined by four parallel edges forming two circuits of
// length two that share both vertices.
LabeledGraph gen_fig2();

// rows x cols toroidal grid: (x1,x3) carries the row circuit, (x2,x4)
// the column circuit. Requires rows, cols >= 2.
LabeledGraph gen_torus(int rows, int cols);

// Decomposes into k circuits whose adjacency graph is the path P_k, each
// adjacency at exactly one shared vertex. For k >= 2 the instance is
// coherent and self-intersection free; k = 1 is a single circuit passing
// one vertex twice (unavoidable on a 4-regular multigraph), wired so that
// both circuit values stay feasible.
LabeledGraph gen_chain(int k);

// Random slot pairing, rejection-sampled until the decomposition is
// coherent and self-intersection free. Deterministic per seed.
LabeledGraph gen_random(int vertices, std::uint64_t seed, int max_attempts = 200000);

nlohmann::json graph_to_json(const LabeledGraph& g);
LabeledGraph graph_from_json(const nlohmann::json& j);

LabeledGraph load_graph(const std::string& path);
void save_graph(const LabeledGraph& g, const std::string& path);

}  // namespace icechain
