#pragma once

#include "icechain/graph.hpp"

#include <string>
#include <string_view>
#include <vector>

namespace icechain {

// Two readings of a circuit's degree delta_i:
//   neighbor     — the number of circuits sharing at least one vertex;
//   intersection — the total number of shared vertices over all circuits.
// They differ as soon as two circuits meet more than once. Intersection is
// the default because it makes the circuit-level stationary weights agree
// with the exact per-vertex product on coherent instances.
enum class DeltaConvention { neighbor, intersection };

DeltaConvention convention_from_string(std::string_view s);
std::string to_string(DeltaConvention c);

// One vertex pass: the edge we arrive by, its arrival endpoint, and the
// slot we leave through (the arrival slot's pair partner).
struct Hop {
  int edge = 0;
  SlotRef entry, exit;

  bool operator==(const Hop&) const = default;
};

struct Circuit {
  int id = 0;
  std::vector<Hop> hops;
  // The edge whose endpoint at an x1/x2 slot carries the circuit's value.
  int initial_edge = 0;
  SlotRef initial_endpoint;
  bool initial_on_entry = true;  // endpoint is the entry half of its hop

  bool operator==(const Circuit&) const = default;
};

struct Decomposition {
  int n = 0;
  std::vector<Circuit> circuits;
  std::vector<std::vector<int>> neighbor_sets;       // sorted, excludes self
  std::vector<std::vector<int>> shared_counts;       // n x n matrix of common vertices
  std::vector<int> self_intersections;               // vertices a circuit passes twice
  std::vector<int> delta_neighbor;
  std::vector<int> delta_intersection;
  bool coherent = false;  // every hop of every circuit enters at slot 1 or 2

  const std::vector<int>& neighbors(int i) const { return neighbor_sets.at(i); }
  int shared_vertices(int i, int j) const { return shared_counts.at(i).at(j); }
  int delta(int i, DeltaConvention c) const;
  int delta_max(DeltaConvention c) const;  // 0 for an empty decomposition
  bool two_by_two_free() const;            // circuit adjacency has no triangle
  bool has_self_intersection(int i) const { return self_intersections.at(i) > 0; }
  bool self_intersection_free() const;
  bool has_isolated_circuit() const;  // some circuit with no neighbors

  bool operator==(const Decomposition&) const = default;
};

// Partition the edges into circuits along the (x1,x3)/(x2,x4) pair routing.
// Deterministic: each circuit starts from the lowest unused edge id and is
// traversed toward that edge's endpoint b. Throws on an invalid graph.
Decomposition decompose(const LabeledGraph& g);

int pair_partner(int slot);  // 1<->3, 2<->4

}  // namespace icechain
