#pragma once

#include <gmpxx.h>

#include <cstddef>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace meh {

// GMP keeps mpq values canonical (reduced, positive denominator) after every
// arithmetic operation. Never bind an mpq expression to `auto`: the expression
// templates hold references to temporaries.
using Rational = mpq_class;
using Integer = mpz_class;
using Vector = std::vector<Rational>;

class RationalParseError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Builds num/den in canonical form. Throws std::domain_error on a zero
/// denominator.
Rational make_rational(const Integer& num, const Integer& den);

/// Accepts `p`, `p/q` and finite decimals `1.25`, each with an optional sign.
Rational parse_rational(std::string_view text);

/// `p` for integers, `p/q` otherwise.
std::string to_string(const Rational& q);

inline bool is_integral(const Rational& q) { return q.get_den() == 1; }

Integer floor_of(const Rational& q);
Integer ceil_of(const Rational& q);

/// Bits needed for the larger of numerator and denominator.
std::size_t bit_size(const Rational& q);

Integer lcm_of_denominators(std::span<const Rational> values);
Integer gcd_of_numerators(std::span<const Rational> values);

Rational dot(std::span<const Rational> a, std::span<const Rational> b);

Vector zero_vector(std::size_t n);
Vector unit_vector(std::size_t n, std::size_t j);
bool is_zero(std::span<const Rational> v);

/// Scales v by a positive rational so that all entries are integers with
/// gcd 1. The zero vector is returned unchanged.
Vector primitive_integer_vector(std::span<const Rational> v);

}  // namespace meh
