#pragma once

#include <boost/multiprecision/gmp.hpp>

#include <string>
#include <string_view>

namespace icechain {

// Exact rational arithmetic backs every verdict-bearing computation
// (windability feasibility, detailed balance, drift inequalities).
// Floating point is used only for sampling and TV curves.
using Rational = boost::multiprecision::mpq_rational;
using BigInt = boost::multiprecision::mpz_int;

// Accepts "3", "-3/4" and exact decimal notation "0.25".
Rational parse_rational(std::string_view text);

// Canonical "p" or "p/q" (no "/1" suffix).
std::string rational_str(const Rational& r);

// base^exp with the convention 0^0 = 1.
Rational rational_pow(const Rational& base, unsigned exp);

double to_double(const Rational& r);

}  // namespace icechain
