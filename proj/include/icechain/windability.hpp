#pragma once

#include "icechain/constraint.hpp"
#include "icechain/rational.hpp"

#include <map>
#include <optional>
#include <string>
#include <tuple>
#include <vector>

namespace icechain {

// A partition of a support set into pairs and at most one singleton
// (exactly one when the support has odd size). Indices are the variable
// positions 1..4.
struct PairingPartition {
  std::vector<std::pair<int, int>> pairs;
  std::optional<int> singleton;

  bool operator==(const PairingPartition&) const = default;
};

// All partitions of `support` of that shape, in a fixed deterministic
// order (lowest element pairs with each larger element in turn).
std::vector<PairingPartition> enumerate_pairings(const std::vector<int>& support);

// The linear feasibility system over symmetry-merged B(x,y,M) values:
// one equation per unordered configuration pair {x,y}, one variable per
// orbit of (x,y,M) under flipping both x and y on blocks of M.
struct WindabilitySystem {
  struct Variable {
    unsigned d = 0;      // x XOR y, shared across the orbit
    int pairing = 0;     // index into pairings_by_d[d]
    unsigned x_rep = 0;  // lexicographically least x of the orbit
    std::string label;
  };
  struct Equation {
    unsigned x = 0, y = 0;  // x <= y
    std::vector<int> vars;  // one per pairing of x^y, all distinct
    Rational rhs;           // f(x) * f(y)
    std::string label;
  };

  std::vector<Variable> variables;
  std::vector<Equation> equations;
  std::vector<std::vector<PairingPartition>> pairings_by_d;  // indexed by d = 0..15
  std::map<std::tuple<unsigned, int, unsigned>, int> var_index;

  int var_of(unsigned x, unsigned y, int pairing) const;
};

WindabilitySystem build_system(const ConstraintFunction4& f);

struct WindabilityVerdict {
  bool windable = false;
  WindabilitySystem system;
  // windable: a full assignment, indexed like system.variables.
  std::vector<Rational> witness;
  // unwindable: coefficients per equation whose combination yields
  // 0 = positive (Farkas style); zero entries omitted from `certificate`.
  std::vector<Rational> farkas;
  std::vector<std::pair<std::string, Rational>> certificate;
  bool verified = false;  // substitution / combination re-checked exactly
};

// Exact feasibility decision for Definition-style windability of an
// arity-4 function, via presolve plus rational phase-1 simplex.
WindabilityVerdict is_windable(const ConstraintFunction4& f);

// Exact checks used both internally and by tests.
bool verify_witness(const WindabilitySystem& sys, const std::vector<Rational>& values);
bool verify_certificate(const WindabilitySystem& sys, const std::vector<Rational>& coeffs);

}  // namespace icechain
