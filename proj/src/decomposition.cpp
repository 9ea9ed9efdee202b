#include "icechain/decomposition.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

namespace icechain {

DeltaConvention convention_from_string(std::string_view s) {
  if (s == "neighbor") return DeltaConvention::neighbor;
  if (s == "intersection") return DeltaConvention::intersection;
  throw std::invalid_argument("unknown delta convention: " + std::string(s));
}

std::string to_string(DeltaConvention c) {
  return c == DeltaConvention::neighbor ? "neighbor" : "intersection";
}

int pair_partner(int slot) {
  switch (slot) {
    case 1: return 3;
    case 2: return 4;
    case 3: return 1;
    case 4: return 2;
    default: throw std::invalid_argument("slot out of range");
  }
}

int Decomposition::delta(int i, DeltaConvention c) const {
  return c == DeltaConvention::neighbor ? delta_neighbor.at(i) : delta_intersection.at(i);
}

int Decomposition::delta_max(DeltaConvention c) const {
  const auto& v = c == DeltaConvention::neighbor ? delta_neighbor : delta_intersection;
  int m = 0;
  for (int x : v) m = std::max(m, x);
  return m;
}

bool Decomposition::two_by_two_free() const {
  for (int i = 0; i < n; ++i)
    for (int j : neighbor_sets[i]) {
      if (j <= i) continue;
      for (int k : neighbor_sets[j]) {
        if (k <= j) continue;
        if (std::binary_search(neighbor_sets[i].begin(), neighbor_sets[i].end(), k))
          return false;
      }
    }
  return true;
}

bool Decomposition::self_intersection_free() const {
  for (int c : self_intersections)
    if (c > 0) return false;
  return true;
}

bool Decomposition::has_isolated_circuit() const {
  for (const auto& nb : neighbor_sets)
    if (nb.empty()) return true;
  return false;
}

Decomposition decompose(const LabeledGraph& g) {
  if (auto problems = validate(g); !problems.empty()) {
    std::string msg = "decompose: invalid graph:";
    for (const auto& p : problems) msg += "\n  " + p;
    throw std::invalid_argument(msg);
  }

  const int m = static_cast<int>(g.edges.size());
  // slot index -> (edge id, endpoint 0=a / 1=b)
  std::vector<std::pair<int, int>> at_slot(static_cast<std::size_t>(g.vertex_count) * 4,
                                           {-1, -1});
  auto slot_index = [](const SlotRef& s) {
    return static_cast<std::size_t>(s.vertex) * 4 + (s.slot - 1);
  };
  for (const Edge& e : g.edges) {
    at_slot[slot_index(e.a)] = {e.id, 0};
    at_slot[slot_index(e.b)] = {e.id, 1};
  }

  Decomposition d;
  std::vector<bool> used(m, false);
  for (int start = 0; start < m; ++start) {
    if (used[start]) continue;
    Circuit c;
    c.id = d.n;
    int cur_edge = start;
    SlotRef arrival = g.edges[start].b;
    while (true) {
      used[cur_edge] = true;
      Hop hop;
      hop.edge = cur_edge;
      hop.entry = arrival;
      hop.exit = SlotRef{arrival.vertex, pair_partner(arrival.slot)};
      c.hops.push_back(hop);
      auto [next_edge, endpoint] = at_slot[slot_index(hop.exit)];
      if (used[next_edge]) {
        // The pair routing is an involution on half-edges, so the walk can
        // only close by returning to the start edge at its other endpoint.
        if (next_edge != start || !(hop.exit == g.edges[start].a))
          throw std::logic_error("decompose: circuit closed inconsistently");
        break;
      }
      cur_edge = next_edge;
      arrival = endpoint == 0 ? g.edges[next_edge].b : g.edges[next_edge].a;
    }

    // Value-carrying edge: first hop entering at x1/x2; otherwise the first
    // hop leaving through x1/x2, taking the edge attached at that exit.
    const std::size_t len = c.hops.size();
    bool found = false;
    for (std::size_t t = 0; t < len && !found; ++t) {
      if (c.hops[t].entry.slot <= 2) {
        c.initial_edge = c.hops[t].edge;
        c.initial_endpoint = c.hops[t].entry;
        c.initial_on_entry = true;
        found = true;
      }
    }
    for (std::size_t t = 0; t < len && !found; ++t) {
      if (c.hops[t].exit.slot <= 2) {
        c.initial_edge = c.hops[(t + 1) % len].edge;
        c.initial_endpoint = c.hops[t].exit;
        c.initial_on_entry = false;
        found = true;
      }
    }
    if (!found) throw std::logic_error("decompose: circuit touches no x1/x2 slot");

    d.circuits.push_back(std::move(c));
    ++d.n;
  }

  // Each vertex hosts exactly two passes; record which circuits they belong to.
  std::vector<std::vector<int>> passes(g.vertex_count);
  for (const Circuit& c : d.circuits)
    for (const Hop& h : c.hops) passes[h.entry.vertex].push_back(c.id);

  d.shared_counts.assign(d.n, std::vector<int>(d.n, 0));
  d.self_intersections.assign(d.n, 0);
  for (int v = 0; v < g.vertex_count; ++v) {
    const auto& p = passes[v];
    if (p.size() != 2) throw std::logic_error("decompose: vertex pass count != 2");
    if (p[0] == p[1]) {
      ++d.self_intersections[p[0]];
    } else {
      ++d.shared_counts[p[0]][p[1]];
      ++d.shared_counts[p[1]][p[0]];
    }
  }

  d.neighbor_sets.assign(d.n, {});
  d.delta_neighbor.assign(d.n, 0);
  d.delta_intersection.assign(d.n, 0);
  for (int i = 0; i < d.n; ++i) {
    for (int j = 0; j < d.n; ++j) {
      if (d.shared_counts[i][j] > 0) {
        d.neighbor_sets[i].push_back(j);
        d.delta_intersection[i] += d.shared_counts[i][j];
      }
    }
    d.delta_neighbor[i] = static_cast<int>(d.neighbor_sets[i].size());
  }

  d.coherent = true;
  for (const Circuit& c : d.circuits)
    for (const Hop& h : c.hops)
      if (h.entry.slot > 2) d.coherent = false;

  return d;
}

}  // namespace icechain
