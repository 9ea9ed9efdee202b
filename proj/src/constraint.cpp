#include "icechain/constraint.hpp"

#include <nlohmann/json.hpp>

#include <stdexcept>

namespace icechain {

unsigned bits_to_index(int x1, int x2, int x3, int x4) {
  for (int v : {x1, x2, x3, x4})
    if (v != 0 && v != 1) throw std::invalid_argument("constraint input bits must be 0/1");
  return static_cast<unsigned>(x1 * 8 + x2 * 4 + x3 * 2 + x4);
}

std::string index_to_bits(unsigned index) {
  if (index > 15) throw std::invalid_argument("constraint index out of range");
  std::string s(4, '0');
  for (int i = 0; i < 4; ++i)
    if (index & (8u >> i)) s[i] = '1';
  return s;
}

ConstraintFunction4 make_fstar(const Rational& b) {
  if (b < 0) throw std::invalid_argument("make_fstar: b must be non-negative");
  ConstraintFunction4 f;
  f.at(bits_to_index(0, 0, 1, 1)) = 1;
  f.at(bits_to_index(0, 1, 1, 0)) = b;
  f.at(bits_to_index(1, 0, 0, 1)) = b;
  return f;
}

ConstraintFunction4 make_six_vertex(const Rational& a, const Rational& b, const Rational& c) {
  return make_six_vertex(SixVertexParams{a, c, b, b, c, a});
}

ConstraintFunction4 make_six_vertex(const SixVertexParams& p) {
  for (const Rational* w : {&p.w1, &p.w2, &p.w3, &p.w4, &p.w5, &p.w6})
    if (*w < 0) throw std::invalid_argument("make_six_vertex: weights must be non-negative");
  ConstraintFunction4 f;
  f.at(bits_to_index(0, 0, 1, 1)) = p.w1;
  f.at(bits_to_index(0, 1, 0, 1)) = p.w2;
  f.at(bits_to_index(0, 1, 1, 0)) = p.w3;
  f.at(bits_to_index(1, 0, 0, 1)) = p.w4;
  f.at(bits_to_index(1, 0, 1, 0)) = p.w5;
  f.at(bits_to_index(1, 1, 0, 0)) = p.w6;
  return f;
}

const Rational& evaluate(const ConstraintFunction4& f, int x1, int x2, int x3, int x4) {
  return f.at(bits_to_index(x1, x2, x3, x4));
}

bool arrow_reversal_symmetric(const ConstraintFunction4& f) {
  for (unsigned i = 0; i < 16; ++i)
    if (f.at(i) != f.at(15 - i)) return false;
  return true;
}

nlohmann::json constraint_to_json(const ConstraintFunction4& f) {
  nlohmann::json table = nlohmann::json::object();
  for (unsigned i = 0; i < 16; ++i)
    if (f.at(i) != 0) table[index_to_bits(i)] = rational_str(f.at(i));
  return nlohmann::json{{"arity", 4}, {"table", table}};
}

ConstraintFunction4 constraint_from_json(const nlohmann::json& j) {
  if (j.value("arity", 4) != 4)
    throw std::invalid_argument("constraint file: only arity 4 supported");
  ConstraintFunction4 f;
  const auto& table = j.at("table");
  for (auto it = table.begin(); it != table.end(); ++it) {
    const std::string& key = it.key();
    if (key.size() != 4 || key.find_first_not_of("01") != std::string::npos)
      throw std::invalid_argument("constraint file: bad table key '" + key + "'");
    unsigned idx = 0;
    for (char c : key) idx = idx * 2 + (c == '1');
    Rational v = parse_rational(it.value().get<std::string>());
    if (v < 0) throw std::invalid_argument("constraint file: negative weight at " + key);
    f.at(idx) = v;
  }
  return f;
}

}  // namespace icechain
