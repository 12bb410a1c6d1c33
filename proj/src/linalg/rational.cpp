#include "meh/rational.hpp"

#include <algorithm>
#include <cctype>

namespace meh {

Rational make_rational(const Integer& num, const Integer& den) {
  if (den == 0) throw std::domain_error("rational with zero denominator");
  Rational q(num, den);
  q.canonicalize();
  return q;
}

namespace {

bool all_digits(std::string_view s) {
  return !s.empty() && std::all_of(s.begin(), s.end(), [](unsigned char c) {
    return std::isdigit(c) != 0;
  });
}

Integer parse_integer(std::string_view s, std::string_view whole) {
  bool negative = false;
  if (!s.empty() && (s.front() == '-' || s.front() == '+')) {
    negative = s.front() == '-';
    s.remove_prefix(1);
  }
  if (!all_digits(s)) {
    throw RationalParseError("malformed rational '" + std::string(whole) + "'");
  }
  Integer z(std::string(s), 10);
  return negative ? Integer(-z) : z;
}

}  // namespace

Rational parse_rational(std::string_view text) {
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.front()))) text.remove_prefix(1);
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.back()))) text.remove_suffix(1);
  if (text.empty()) throw RationalParseError("empty rational");

  if (auto slash = text.find('/'); slash != std::string_view::npos) {
    Integer num = parse_integer(text.substr(0, slash), text);
    std::string_view den_text = text.substr(slash + 1);
    if (!all_digits(den_text)) {
      throw RationalParseError("malformed denominator in '" + std::string(text) + "'");
    }
    Integer den(std::string(den_text), 10);
    if (den == 0) throw RationalParseError("zero denominator in '" + std::string(text) + "'");
    return make_rational(num, den);
  }

  if (auto dot_pos = text.find('.'); dot_pos != std::string_view::npos) {
    std::string_view int_part = text.substr(0, dot_pos);
    std::string_view frac_part = text.substr(dot_pos + 1);
    bool negative = !int_part.empty() && int_part.front() == '-';
    if (!int_part.empty() && (int_part.front() == '-' || int_part.front() == '+')) {
      int_part.remove_prefix(1);
    }
    if (!all_digits(int_part) || !all_digits(frac_part)) {
      throw RationalParseError("malformed decimal '" + std::string(text) + "'");
    }
    Integer num(std::string(int_part) + std::string(frac_part), 10);
    Integer den;
    mpz_ui_pow_ui(den.get_mpz_t(), 10, frac_part.size());
    Rational q = make_rational(num, den);
    return negative ? Rational(-q) : q;
  }

  return Rational(parse_integer(text, text));
}

std::string to_string(const Rational& q) {
  if (is_integral(q)) return q.get_num().get_str();
  return q.get_num().get_str() + "/" + q.get_den().get_str();
}

Integer floor_of(const Rational& q) {
  Integer r;
  mpz_fdiv_q(r.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
  return r;
}

Integer ceil_of(const Rational& q) {
  Integer r;
  mpz_cdiv_q(r.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
  return r;
}

std::size_t bit_size(const Rational& q) {
  return std::max(mpz_sizeinbase(q.get_num_mpz_t(), 2), mpz_sizeinbase(q.get_den_mpz_t(), 2));
}

Integer lcm_of_denominators(std::span<const Rational> values) {
  Integer l = 1;
  for (const Rational& v : values) {
    mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), v.get_den_mpz_t());
  }
  return l;
}

Integer gcd_of_numerators(std::span<const Rational> values) {
  Integer g = 0;
  for (const Rational& v : values) {
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), v.get_num_mpz_t());
  }
  return g;
}

Rational dot(std::span<const Rational> a, std::span<const Rational> b) {
  if (a.size() != b.size()) throw std::invalid_argument("dot: dimension mismatch");
  Rational sum = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (sgn(a[i]) != 0 && sgn(b[i]) != 0) sum += a[i] * b[i];
  }
  return sum;
}

Vector zero_vector(std::size_t n) { return Vector(n, Rational(0)); }

Vector unit_vector(std::size_t n, std::size_t j) {
  Vector e(n, Rational(0));
  e.at(j) = 1;
  return e;
}

bool is_zero(std::span<const Rational> v) {
  return std::all_of(v.begin(), v.end(), [](const Rational& x) { return sgn(x) == 0; });
}

Vector primitive_integer_vector(std::span<const Rational> v) {
  Vector out(v.begin(), v.end());
  if (is_zero(v)) return out;
  Integer l = lcm_of_denominators(v);
  for (Rational& x : out) x *= l;
  Integer g = gcd_of_numerators(out);
  for (Rational& x : out) x /= g;
  return out;
}

}  // namespace meh
