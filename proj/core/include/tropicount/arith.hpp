#pragma once

#include <boost/multiprecision/gmp.hpp>

#include <cstdint>
#include <string>
#include <string_view>

namespace tropicount {

using Integer = boost::multiprecision::mpz_int;
using Rational = boost::multiprecision::mpq_rational;

// "p/q" in lowest terms, or "p" when the denominator is 1.
std::string to_string(const Rational& q);

// Accepts "p", "-p", "p/q"; throws ParseError otherwise or on zero denominator.
Rational parse_rational(std::string_view text);

bool is_integer(const Rational& q);
Integer numerator_of(const Rational& q);
Integer denominator_of(const Rational& q);

// Overflow-checked 64-bit helpers for lattice coordinates.
std::int64_t checked_add(std::int64_t a, std::int64_t b);
std::int64_t checked_mul(std::int64_t a, std::int64_t b);
std::int64_t to_int64(const Integer& z);

std::int64_t gcd64(std::int64_t a, std::int64_t b);

}  // namespace tropicount
