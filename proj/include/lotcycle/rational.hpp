#pragma once

#include <compare>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>

#include <boost/multiprecision/gmp.hpp>

namespace lotcycle {

using BigInt = boost::multiprecision::mpz_int;

// Exact rational number in canonical form (den > 0, gcd(|num|, den) = 1).
class Rational {
 public:
  Rational() = default;
  Rational(std::int64_t value);  // NOLINT(google-explicit-constructor)
  Rational(std::int64_t num, std::int64_t den);
  Rational(const BigInt& num, const BigInt& den);

  // Accepts "num/den" or a plain integer, optional leading sign.
  static Rational parse(std::string_view text);

  BigInt numerator() const;
  BigInt denominator() const;

  bool is_integer() const;
  int sign() const;
  BigInt floor() const;
  double to_double() const;

  // Always "num/den", also for integers ("2/1").
  std::string str() const;
  // Round-half-even rendering with `digits` significant digits.
  std::string decimal(int digits = 12) const;

  Rational& operator+=(const Rational& rhs);
  Rational& operator-=(const Rational& rhs);
  Rational& operator*=(const Rational& rhs);
  Rational& operator/=(const Rational& rhs);

  friend Rational operator+(Rational lhs, const Rational& rhs) { return lhs += rhs; }
  friend Rational operator-(Rational lhs, const Rational& rhs) { return lhs -= rhs; }
  friend Rational operator*(Rational lhs, const Rational& rhs) { return lhs *= rhs; }
  friend Rational operator/(Rational lhs, const Rational& rhs) { return lhs /= rhs; }
  Rational operator-() const;

  friend bool operator==(const Rational& lhs, const Rational& rhs);
  friend std::strong_ordering operator<=>(const Rational& lhs, const Rational& rhs);

 private:
  explicit Rational(boost::multiprecision::mpq_rational value) : value_(std::move(value)) {}
  boost::multiprecision::mpq_rational value_{0};
};

std::ostream& operator<<(std::ostream& os, const Rational& value);

Rational abs(const Rational& value);
Rational min(const Rational& a, const Rational& b);
Rational max(const Rational& a, const Rational& b);

// The non-negative square root of a rational radicand, kept exact as the
// radicand. Used for quantities such as an optimal cycle length that are
// irrational in general.
struct SquareRoot {
  Rational radicand;

  double to_double() const;
  std::string decimal(int digits = 12) const;
  // Exact root if the radicand is the square of a rational.
  std::optional<Rational> exact() const;
  // Last continued-fraction convergent with denominator <= max_denominator.
  Rational convergent(std::int64_t max_denominator = 1'000'000) const;
};

// Renders (negative ? -1 : 1) * mantissa * 10^-scale in printf %g style with
// trailing zeros trimmed.
std::string format_scaled(const BigInt& mantissa, long scale, bool negative);

}  // namespace lotcycle
