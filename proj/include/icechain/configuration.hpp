#pragma once

#include "icechain/constraint.hpp"
#include "icechain/decomposition.hpp"
#include "icechain/rational.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace icechain {

// A 0/1 value per circuit. The value of circuit i is the half-value at its
// initial edge's x1/x2 endpoint; it determines every half-value on the
// circuit by alternation (one flip per vertex pass, one per edge crossing).
struct Configuration {
  std::vector<std::uint8_t> bits;

  Configuration() = default;
  explicit Configuration(int n) : bits(static_cast<std::size_t>(n), 0) {}
  Configuration(std::initializer_list<std::uint8_t> v) : bits(v) {}

  int size() const { return static_cast<int>(bits.size()); }
  std::uint8_t operator[](int i) const { return bits.at(i); }
  void set(int i, std::uint8_t v) { bits.at(i) = v; }

  std::string to_string() const;  // "0101", circuit 0 first
  static Configuration from_string(std::string_view s);

  bool operator==(const Configuration&) const = default;
};

// Circuit-level rule: no two adjacent circuits both 1 (an independent set
// of the circuit adjacency graph). No coherence requirement.
bool independent(const Configuration& sigma, const Decomposition& d);

// The checked public form of the rule: requires a coherent,
// self-intersection-free instance, where circuit-level validity coincides
// with a non-zero per-vertex product.
bool is_valid(const Configuration& sigma, const Decomposition& d);

// prod over 1-circuits of b^{delta_i} under the chosen convention.
// Throws on non-independent sigma.
Rational mu_weight(const Configuration& sigma, const Decomposition& d, const Rational& b,
                   DeltaConvention conv);

// Half-value per (vertex, slot), indexed vertex*4 + slot-1, obtained by
// propagating each circuit's value. Works for any sigma on any instance.
std::vector<std::uint8_t> half_values(const Configuration& sigma, const LabeledGraph& g,
                                      const Decomposition& d);

// Product over vertices of f at the local (x1,x2,x3,x4) — the exact
// ground-truth weight of the induced edge assignment.
Rational exact_weight(const Configuration& sigma, const LabeledGraph& g,
                      const ConstraintFunction4& f, const Decomposition& d);

struct EdgeOrientation {
  int tail = 0;  // the endpoint whose half-value is 1 ("going out")
  int head = 0;

  bool operator==(const EdgeOrientation&) const = default;
};

// Per-edge orientation induced by sigma, indexed by edge id.
std::vector<EdgeOrientation> to_orientation(const Configuration& sigma, const LabeledGraph& g,
                                            const Decomposition& d);

}  // namespace icechain
