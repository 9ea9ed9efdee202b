#pragma once

#include "icechain/rational.hpp"

#include <nlohmann/json_fwd.hpp>

#include <array>
#include <cstdint>

namespace icechain {

// A 4-ary constraint function as a 16-entry table of exact non-negative
// rationals. Index layout is big-endian in (x1,x2,x3,x4):
//   index = x1*8 + x2*4 + x3*2 + x4
// matching a matrix whose row is x1x2 and column is x3x4. The same
// convention is used by the JSON file format ("0110" keys).
struct ConstraintFunction4 {
  std::array<Rational, 16> table{};

  const Rational& at(unsigned index) const { return table.at(index); }
  Rational& at(unsigned index) { return table.at(index); }

  bool operator==(const ConstraintFunction4& other) const = default;
};

// Weights w1..w6, one per admissible local 2-in-2-out pattern.
struct SixVertexParams {
  Rational w1, w2, w3, w4, w5, w6;
};

unsigned bits_to_index(int x1, int x2, int x3, int x4);
std::string index_to_bits(unsigned index);  // "0110"

// Pair-exclusion constraint: f(0011)=1, f(0110)=f(1001)=b, all else 0.
ConstraintFunction4 make_fstar(const Rational& b);

// Arrow-reversal-symmetric table with w1=w6=a, w3=w4=b, w2=w5=c.
ConstraintFunction4 make_six_vertex(const Rational& a, const Rational& b, const Rational& c);

ConstraintFunction4 make_six_vertex(const SixVertexParams& p);

const Rational& evaluate(const ConstraintFunction4& f, int x1, int x2, int x3, int x4);

// f(x) == f(complement x) for all x.
bool arrow_reversal_symmetric(const ConstraintFunction4& f);

nlohmann::json constraint_to_json(const ConstraintFunction4& f);
ConstraintFunction4 constraint_from_json(const nlohmann::json& j);

}  // namespace icechain
