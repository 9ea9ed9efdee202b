#include "icechain/configuration.hpp"

#include <stdexcept>

namespace icechain {

std::string Configuration::to_string() const {
  std::string s(bits.size(), '0');
  for (std::size_t i = 0; i < bits.size(); ++i)
    if (bits[i]) s[i] = '1';
  return s;
}

Configuration Configuration::from_string(std::string_view s) {
  Configuration c(static_cast<int>(s.size()));
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (s[i] != '0' && s[i] != '1')
      throw std::invalid_argument("configuration string must be 0/1");
    c.bits[i] = s[i] == '1';
  }
  return c;
}

bool independent(const Configuration& sigma, const Decomposition& d) {
  if (sigma.size() != d.n)
    throw std::invalid_argument("configuration size does not match circuit count");
  for (int i = 0; i < d.n; ++i) {
    if (!sigma[i]) continue;
    for (int j : d.neighbors(i))
      if (j > i && sigma[j]) return false;
  }
  return true;
}

bool is_valid(const Configuration& sigma, const Decomposition& d) {
  if (!d.coherent)
    throw std::invalid_argument(
        "is_valid: instance is not coherent; circuit-level validity does not "
        "match the per-vertex product");
  if (!d.self_intersection_free())
    throw std::invalid_argument(
        "is_valid: instance has a self-intersecting circuit; setting it to 1 "
        "would zero the per-vertex product");
  return independent(sigma, d);
}

Rational mu_weight(const Configuration& sigma, const Decomposition& d, const Rational& b,
                   DeltaConvention conv) {
  if (!independent(sigma, d))
    throw std::invalid_argument("mu_weight: configuration is not valid");
  Rational w(1);
  for (int i = 0; i < d.n; ++i)
    if (sigma[i]) w *= rational_pow(b, static_cast<unsigned>(d.delta(i, conv)));
  return w;
}

std::vector<std::uint8_t> half_values(const Configuration& sigma, const LabeledGraph& g,
                                      const Decomposition& d) {
  if (sigma.size() != d.n)
    throw std::invalid_argument("configuration size does not match circuit count");
  std::vector<std::uint8_t> val(static_cast<std::size_t>(g.vertex_count) * 4, 0);
  auto slot_index = [](const SlotRef& s) {
    return static_cast<std::size_t>(s.vertex) * 4 + (s.slot - 1);
  };
  for (const Circuit& c : d.circuits) {
    // All entry halves of a circuit carry one value, all exit halves the
    // other; which is which depends on where the initial endpoint sits.
    std::uint8_t entry_value =
        c.initial_on_entry ? sigma[c.id] : static_cast<std::uint8_t>(1 - sigma[c.id]);
    for (const Hop& h : c.hops) {
      val[slot_index(h.entry)] = entry_value;
      val[slot_index(h.exit)] = static_cast<std::uint8_t>(1 - entry_value);
    }
  }
  return val;
}

Rational exact_weight(const Configuration& sigma, const LabeledGraph& g,
                      const ConstraintFunction4& f, const Decomposition& d) {
  std::vector<std::uint8_t> val = half_values(sigma, g, d);
  Rational w(1);
  for (int v = 0; v < g.vertex_count; ++v) {
    std::size_t base = static_cast<std::size_t>(v) * 4;
    const Rational& fv = evaluate(f, val[base], val[base + 1], val[base + 2], val[base + 3]);
    if (fv == 0) return Rational(0);
    w *= fv;
  }
  return w;
}

std::vector<EdgeOrientation> to_orientation(const Configuration& sigma, const LabeledGraph& g,
                                            const Decomposition& d) {
  std::vector<std::uint8_t> val = half_values(sigma, g, d);
  auto slot_index = [](const SlotRef& s) {
    return static_cast<std::size_t>(s.vertex) * 4 + (s.slot - 1);
  };
  std::vector<EdgeOrientation> orient(g.edges.size());
  for (const Edge& e : g.edges) {
    std::uint8_t va = val[slot_index(e.a)];
    std::uint8_t vb = val[slot_index(e.b)];
    if (va == vb) throw std::logic_error("to_orientation: edge halves agree");
    orient[e.id] = va == 1 ? EdgeOrientation{e.a.vertex, e.b.vertex}
                           : EdgeOrientation{e.b.vertex, e.a.vertex};
  }
  return orient;
}

}  // namespace icechain
