#include "icechain/graph.hpp"

#include "icechain/decomposition.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <fstream>
#include <random>
#include <stdexcept>

namespace icechain {

std::vector<std::string> validate(const LabeledGraph& g) {
  std::vector<std::string> problems;
  if (g.vertex_count < 0) problems.push_back("negative vertex count");

  std::vector<int> slot_uses(static_cast<std::size_t>(std::max(g.vertex_count, 0)) * 4, 0);
  auto touch = [&](const SlotRef& s, int edge_id) {
    if (s.vertex < 0 || s.vertex >= g.vertex_count) {
      problems.push_back("edge " + std::to_string(edge_id) + ": vertex " +
                         std::to_string(s.vertex) + " out of range");
      return;
    }
    if (s.slot < 1 || s.slot > 4) {
      problems.push_back("edge " + std::to_string(edge_id) + ": slot " +
                         std::to_string(s.slot) + " out of range");
      return;
    }
    ++slot_uses[static_cast<std::size_t>(s.vertex) * 4 + (s.slot - 1)];
  };

  for (std::size_t i = 0; i < g.edges.size(); ++i) {
    const Edge& e = g.edges[i];
    if (e.id != static_cast<int>(i))
      problems.push_back("edge ids not dense: position " + std::to_string(i) + " has id " +
                         std::to_string(e.id));
    if (e.a == e.b)
      problems.push_back("edge " + std::to_string(e.id) + ": both endpoints on the same slot");
    touch(e.a, e.id);
    touch(e.b, e.id);
  }

  for (int v = 0; v < g.vertex_count; ++v) {
    for (int s = 1; s <= 4; ++s) {
      int uses = slot_uses[static_cast<std::size_t>(v) * 4 + (s - 1)];
      if (uses == 0)
        problems.push_back("unused slot " + std::to_string(s) + " at vertex " + std::to_string(v));
      else if (uses > 1)
        problems.push_back("duplicate slot " + std::to_string(s) + " at vertex " +
                           std::to_string(v));
    }
  }
  return problems;
}

namespace {

Edge make_edge(int id, int va, int sa, int vb, int sb) {
  return Edge{id, SlotRef{va, sa}, SlotRef{vb, sb}};
}

}  // namespace

LabeledGraph gen_theta() {
  LabeledGraph g;
  g.vertex_count = 1;
  // Endpoint order puts the x1/x2 slot second so traversal enters there.
  g.edges.push_back(make_edge(0, 0, 3, 0, 1));
  g.edges.push_back(make_edge(1, 0, 4, 0, 2));
  return g;
}

LabeledGraph gen_fig2() {
  LabeledGraph g;
  g.vertex_count = 2;
  g.edges.push_back(make_edge(0, 0, 3, 1, 1));  // first circuit: v0 -> v1
  g.edges.push_back(make_edge(1, 1, 4, 0, 2));  // second circuit: v1 -> v0
  g.edges.push_back(make_edge(2, 1, 3, 0, 1));  // first circuit: v1 -> v0
  g.edges.push_back(make_edge(3, 0, 4, 1, 2));  // second circuit: v0 -> v1
  return g;
}

LabeledGraph gen_torus(int rows, int cols) {
  if (rows < 2 || cols < 2)
    throw std::invalid_argument("gen_torus: rows and cols must be >= 2");
  LabeledGraph g;
  g.vertex_count = rows * cols;
  auto vid = [cols](int i, int j) { return i * cols + j; };
  int id = 0;
  // Row circuits ride the (x1,x3) pair, entering each vertex at slot 1.
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j)
      g.edges.push_back(make_edge(id++, vid(i, j), 3, vid(i, (j + 1) % cols), 1));
  // Column circuits ride the (x2,x4) pair, entering at slot 2.
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j)
      g.edges.push_back(make_edge(id++, vid(i, j), 4, vid((i + 1) % rows, j), 2));
  return g;
}

LabeledGraph gen_chain(int k) {
  if (k < 1) throw std::invalid_argument("gen_chain: k must be >= 1");
  LabeledGraph g;
  if (k == 1) {
    // A lone circuit must pass its vertex twice; entries at slots 1 and 4
    // keep both circuit values feasible (local patterns 0110 / 1001).
    g.vertex_count = 1;
    g.edges.push_back(make_edge(0, 0, 2, 0, 1));
    g.edges.push_back(make_edge(1, 0, 3, 0, 4));
    return g;
  }
  g.vertex_count = k - 1;
  int id = 0;
  // Circuit 0: loop on the (x1,x3) pair of vertex 0.
  g.edges.push_back(make_edge(id++, 0, 3, 0, 1));
  // Circuits 1..k-2: two edges between consecutive shared vertices.
  for (int i = 1; i <= k - 2; ++i) {
    g.edges.push_back(make_edge(id++, i - 1, 4, i, 1));
    g.edges.push_back(make_edge(id++, i, 3, i - 1, 2));
  }
  // Circuit k-1: loop on the (x2,x4) pair of the last vertex.
  g.edges.push_back(make_edge(id++, k - 2, 4, k - 2, 2));
  return g;
}

LabeledGraph gen_random(int vertices, std::uint64_t seed, int max_attempts) {
  if (vertices < 1) throw std::invalid_argument("gen_random: vertices must be >= 1");
  std::mt19937_64 rng(seed);
  for (int attempt = 0; attempt < max_attempts; ++attempt) {
    std::vector<SlotRef> slots;
    slots.reserve(static_cast<std::size_t>(vertices) * 4);
    for (int v = 0; v < vertices; ++v)
      for (int s = 1; s <= 4; ++s) slots.push_back(SlotRef{v, s});
    std::shuffle(slots.begin(), slots.end(), rng);

    LabeledGraph g;
    g.vertex_count = vertices;
    for (std::size_t i = 0; i + 1 < slots.size(); i += 2)
      g.edges.push_back(Edge{static_cast<int>(i / 2), slots[i], slots[i + 1]});

    Decomposition d = decompose(g);
    if (!d.self_intersection_free()) continue;
    if (!d.coherent) {
      // A circuit whose entries all sit on x3/x4 slots runs backwards;
      // flipping its edges reverses the traversal. Mixed entries cannot
      // be fixed by orientation, so reject those.
      bool fixable = true;
      for (const Circuit& c : d.circuits) {
        bool all_high = true, all_low = true;
        for (const Hop& h : c.hops) {
          (h.entry.slot <= 2 ? all_high : all_low) = false;
        }
        if (!all_low && !all_high) {
          fixable = false;
          break;
        }
        if (all_high) {
          for (const Hop& h : c.hops) std::swap(g.edges[h.edge].a, g.edges[h.edge].b);
        }
      }
      if (!fixable) continue;
      d = decompose(g);
      if (!d.coherent || !d.self_intersection_free()) continue;
    }
    return g;
  }
  throw std::runtime_error("gen_random: no coherent instance found within attempt budget");
}

nlohmann::json graph_to_json(const LabeledGraph& g) {
  nlohmann::json edges = nlohmann::json::array();
  for (const Edge& e : g.edges) {
    edges.push_back({{"id", e.id},
                     {"a", {{"v", e.a.vertex}, {"slot", e.a.slot}}},
                     {"b", {{"v", e.b.vertex}, {"slot", e.b.slot}}}});
  }
  return nlohmann::json{{"vertices", g.vertex_count}, {"edges", edges}};
}

LabeledGraph graph_from_json(const nlohmann::json& j) {
  LabeledGraph g;
  try {
    g.vertex_count = j.at("vertices").get<int>();
    for (const auto& je : j.at("edges")) {
      Edge e;
      e.id = je.at("id").get<int>();
      e.a = SlotRef{je.at("a").at("v").get<int>(), je.at("a").at("slot").get<int>()};
      e.b = SlotRef{je.at("b").at("v").get<int>(), je.at("b").at("slot").get<int>()};
      g.edges.push_back(e);
    }
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument(std::string("instance file: ") + e.what());
  }
  std::sort(g.edges.begin(), g.edges.end(),
            [](const Edge& x, const Edge& y) { return x.id < y.id; });
  if (auto problems = validate(g); !problems.empty()) {
    std::string msg = "instance file invalid:";
    for (const auto& p : problems) msg += "\n  " + p;
    throw std::invalid_argument(msg);
  }
  return g;
}

LabeledGraph load_graph(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument(path + ": " + e.what());
  }
  return graph_from_json(j);
}

void save_graph(const LabeledGraph& g, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open " + path + " for writing");
  out << graph_to_json(g).dump(2) << '\n';
}

}  // namespace icechain
