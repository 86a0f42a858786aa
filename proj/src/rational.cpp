#include "lotcycle/rational.hpp"

#include <cmath>
#include <ostream>

#include "lotcycle/errors.hpp"

namespace lotcycle {

namespace {

using boost::multiprecision::mpq_rational;

BigInt pow10(long exponent) {
  BigInt result = 1;
  for (long i = 0; i < exponent; ++i) result *= 10;
  return result;
}

Rational pow10_rational(long exponent) {
  return exponent >= 0 ? Rational(pow10(exponent), BigInt(1)) : Rational(BigInt(1), pow10(-exponent));
}

long digit_count(const BigInt& value) {
  return static_cast<long>(value.str().size());
}

// Largest e with 10^e <= value, value > 0.
long decimal_exponent(const Rational& value) {
  long e = digit_count(value.numerator()) - digit_count(value.denominator());
  while (value < pow10_rational(e)) --e;
  while (value >= pow10_rational(e + 1)) ++e;
  return e;
}

bool parse_integer(std::string_view text, BigInt& out) {
  if (text.empty()) return false;
  std::size_t start = (text[0] == '-' || text[0] == '+') ? 1 : 0;
  if (start == text.size()) return false;
  for (std::size_t i = start; i < text.size(); ++i) {
    if (text[i] < '0' || text[i] > '9') return false;
  }
  out = BigInt(std::string(text[0] == '+' ? text.substr(1) : text));
  return true;
}

}  // namespace

Rational::Rational(std::int64_t value) : value_(value) {}

Rational::Rational(std::int64_t num, std::int64_t den) : Rational(BigInt(num), BigInt(den)) {}

Rational::Rational(const BigInt& num, const BigInt& den) {
  if (den == 0) throw Error(ErrorKind::ParseError, "zero denominator");
  value_ = mpq_rational(num, den);
}

Rational Rational::parse(std::string_view text) {
  while (!text.empty() && text.front() == ' ') text.remove_prefix(1);
  while (!text.empty() && text.back() == ' ') text.remove_suffix(1);
  BigInt num;
  BigInt den = 1;
  auto slash = text.find('/');
  bool ok = slash == std::string_view::npos
                ? parse_integer(text, num)
                : parse_integer(text.substr(0, slash), num) && parse_integer(text.substr(slash + 1), den);
  if (!ok || den == 0) {
    throw Error(ErrorKind::ParseError, "not a rational: '" + std::string(text) + "'");
  }
  return Rational(num, den);
}

BigInt Rational::numerator() const { return boost::multiprecision::numerator(value_); }
BigInt Rational::denominator() const { return boost::multiprecision::denominator(value_); }

bool Rational::is_integer() const { return denominator() == 1; }

int Rational::sign() const { return value_.sign(); }

BigInt Rational::floor() const {
  BigInt num = numerator();
  BigInt den = denominator();
  BigInt q = num / den;
  if (num < 0 && q * den != num) q -= 1;
  return q;
}

double Rational::to_double() const { return value_.convert_to<double>(); }

std::string Rational::str() const { return numerator().str() + "/" + denominator().str(); }

std::string Rational::decimal(int digits) const {
  if (sign() == 0) return "0";
  Rational a = abs(*this);
  long scale = digits - 1 - decimal_exponent(a);
  Rational scaled = a * pow10_rational(scale);
  BigInt num = scaled.numerator();
  BigInt den = scaled.denominator();
  BigInt q = num / den;
  BigInt twice_rem = 2 * (num - q * den);
  if (twice_rem > den || (twice_rem == den && q % 2 == 1)) q += 1;
  if (q == pow10(digits)) {
    q /= 10;
    --scale;
  }
  return format_scaled(q, scale, sign() < 0);
}

Rational& Rational::operator+=(const Rational& rhs) {
  value_ += rhs.value_;
  return *this;
}
Rational& Rational::operator-=(const Rational& rhs) {
  value_ -= rhs.value_;
  return *this;
}
Rational& Rational::operator*=(const Rational& rhs) {
  value_ *= rhs.value_;
  return *this;
}
Rational& Rational::operator/=(const Rational& rhs) {
  if (rhs.sign() == 0) throw std::domain_error("rational division by zero");
  value_ /= rhs.value_;
  return *this;
}

Rational Rational::operator-() const { return Rational(mpq_rational(-value_)); }

bool operator==(const Rational& lhs, const Rational& rhs) { return lhs.value_ == rhs.value_; }

std::strong_ordering operator<=>(const Rational& lhs, const Rational& rhs) {
  int c = lhs.value_.compare(rhs.value_);
  if (c < 0) return std::strong_ordering::less;
  if (c > 0) return std::strong_ordering::greater;
  return std::strong_ordering::equal;
}

std::ostream& operator<<(std::ostream& os, const Rational& value) { return os << value.str(); }

Rational abs(const Rational& value) { return value.sign() < 0 ? -value : value; }
Rational min(const Rational& a, const Rational& b) { return b < a ? b : a; }
Rational max(const Rational& a, const Rational& b) { return a < b ? b : a; }

double SquareRoot::to_double() const { return std::sqrt(radicand.to_double()); }

std::string SquareRoot::decimal(int digits) const {
  if (radicand.sign() < 0) throw std::domain_error("square root of a negative rational");
  if (radicand.sign() == 0) return "0";
  // 10^e <= sqrt(r) < 10^(e+1)  <=>  10^(2e) <= r < 10^(2e+2)
  long e = decimal_exponent(radicand);
  e = e >= 0 ? e / 2 : -((-e + 1) / 2);
  long scale = digits - 1 - e;
  Rational y = radicand * pow10_rational(2 * scale);
  BigInt s = boost::multiprecision::sqrt(y.floor());
  // Round to nearest: compare y with (s + 1/2)^2.
  Rational half_up = Rational(s, BigInt(1)) + Rational(1, 2);
  Rational threshold = half_up * half_up;
  if (y > threshold || (y == threshold && s % 2 == 1)) s += 1;
  if (s == pow10(digits)) {
    s /= 10;
    --scale;
  }
  return format_scaled(s, scale, false);
}

std::optional<Rational> SquareRoot::exact() const {
  if (radicand.sign() < 0) return std::nullopt;
  BigInt num = radicand.numerator();
  BigInt den = radicand.denominator();
  BigInt rn = boost::multiprecision::sqrt(num);
  BigInt rd = boost::multiprecision::sqrt(den);
  if (rn * rn != num || rd * rd != den) return std::nullopt;
  return Rational(rn, rd);
}

Rational SquareRoot::convergent(std::int64_t max_denominator) const {
  if (auto root = exact()) {
    if (root->denominator() <= max_denominator) return *root;
  }
  // 60 fractional digits is far below the 1/q^2 spacing of convergents with
  // q <= max_denominator, so the convergents below coincide with the true ones.
  constexpr long kDigits = 60;
  Rational y = radicand * pow10_rational(2 * kDigits);
  Rational x(boost::multiprecision::sqrt(y.floor()), pow10(kDigits));

  BigInt h1 = 1, h2 = 0, k1 = 0, k2 = 1;
  Rational best(0);
  BigInt num = x.numerator(), den = x.denominator();
  while (den != 0) {
    BigInt a = num / den;
    BigInt h = a * h1 + h2;
    BigInt k = a * k1 + k2;
    if (k > max_denominator) break;
    best = Rational(h, k);
    h2 = h1;
    h1 = h;
    k2 = k1;
    k1 = k;
    BigInt r = num - a * den;
    num = den;
    den = r;
  }
  return best;
}

std::string format_scaled(const BigInt& mantissa, long scale, bool negative) {
  std::string digits = mantissa.str();
  long exponent = static_cast<long>(digits.size()) - 1 - scale;
  std::string out = negative ? "-" : "";
  auto trim = [](std::string s) {
    if (s.find('.') == std::string::npos) return s;
    while (s.back() == '0') s.pop_back();
    if (s.back() == '.') s.pop_back();
    return s;
  };
  if (exponent < -5 || exponent >= 21) {
    std::string m = digits.substr(0, 1);
    if (digits.size() > 1) m += "." + digits.substr(1);
    m = trim(m);
    std::string exp = std::to_string(exponent < 0 ? -exponent : exponent);
    if (exp.size() < 2) exp = "0" + exp;
    return out + m + "e" + (exponent < 0 ? "-" : "+") + exp;
  }
  if (scale <= 0) return out + digits + std::string(static_cast<std::size_t>(-scale), '0');
  if (static_cast<long>(digits.size()) <= scale) {
    std::string frac = std::string(static_cast<std::size_t>(scale) - digits.size(), '0') + digits;
    return out + trim("0." + frac);
  }
  std::size_t point = digits.size() - static_cast<std::size_t>(scale);
  return out + trim(digits.substr(0, point) + "." + digits.substr(point));
}

}  // namespace lotcycle
