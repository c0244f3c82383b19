#include "krieger/rational.hpp"

#include <cctype>
#include <cmath>
#include <cstdio>
#include <limits>

#include "krieger/error.hpp"

namespace krieger {
namespace {

bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s) {
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  }
  return true;
}

Integer parse_integer(std::string_view s, std::string_view whole) {
  bool negative = false;
  if (!s.empty() && (s.front() == '-' || s.front() == '+')) {
    negative = s.front() == '-';
    s.remove_prefix(1);
  }
  if (!all_digits(s)) {
    throw Error(Errc::ParseError, "malformed number '" + std::string(whole) + "'");
  }
  Integer z(std::string(s), 10);
  return negative ? Integer(-z) : z;
}

Rational parse_decimal(std::string_view s, std::string_view whole) {
  bool negative = false;
  if (!s.empty() && (s.front() == '-' || s.front() == '+')) {
    negative = s.front() == '-';
    s.remove_prefix(1);
  }
  long exponent = 0;
  if (auto e = s.find_first_of("eE"); e != std::string_view::npos) {
    Integer ez = parse_integer(s.substr(e + 1), whole);
    if (!ez.fits_slong_p() || std::abs(ez.get_si()) > 100000) {
      throw Error(Errc::ParseError, "exponent out of range in '" + std::string(whole) + "'");
    }
    exponent = ez.get_si();
    s = s.substr(0, e);
  }
  std::string digits;
  long scale = 0;
  if (auto dot = s.find('.'); dot != std::string_view::npos) {
    std::string_view int_part = s.substr(0, dot);
    std::string_view frac_part = s.substr(dot + 1);
    if ((int_part.empty() && frac_part.empty()) || (!int_part.empty() && !all_digits(int_part)) ||
        (!frac_part.empty() && !all_digits(frac_part))) {
      throw Error(Errc::ParseError, "malformed number '" + std::string(whole) + "'");
    }
    digits = std::string(int_part) + std::string(frac_part);
    scale = static_cast<long>(frac_part.size());
  } else {
    if (!all_digits(s)) throw Error(Errc::ParseError, "malformed number '" + std::string(whole) + "'");
    digits = std::string(s);
  }
  Rational q(Integer(digits, 10), 1);
  long shift = exponent - scale;
  Integer ten_pow;
  mpz_ui_pow_ui(ten_pow.get_mpz_t(), 10, static_cast<unsigned long>(std::abs(shift)));
  if (shift >= 0) {
    q *= ten_pow;
  } else {
    q /= ten_pow;
  }
  q.canonicalize();
  return negative ? Rational(-q) : q;
}

}  // namespace

Rational parse_rational(std::string_view text) {
  std::string_view s = text;
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  if (s.empty()) throw Error(Errc::ParseError, "empty number");
  if (auto slash = s.find('/'); slash != std::string_view::npos) {
    Integer num = parse_integer(s.substr(0, slash), text);
    Integer den = parse_integer(s.substr(slash + 1), text);
    if (den == 0) throw Error(Errc::ParseError, "zero denominator in '" + std::string(text) + "'");
    Rational q(num, den);
    q.canonicalize();
    return q;
  }
  return parse_decimal(s, text);
}

std::string to_string(const Rational& q) {
  if (q.get_den() == 1) return q.get_num().get_str();
  return q.get_num().get_str() + "/" + q.get_den().get_str();
}

double log_of(const Integer& z) {
  if (z <= 0) throw Error(Errc::DomainError, "log of a non-positive integer");
  long exp = 0;
  double mant = mpz_get_d_2exp(&exp, z.get_mpz_t());
  return std::log(mant) + static_cast<double>(exp) * std::log(2.0);
}

double log_of(const Rational& q) {
  if (q <= 0) throw Error(Errc::DomainError, "log of a non-positive rational");
  return log_of(Integer(q.get_num())) - log_of(Integer(q.get_den()));
}

Rational power(const Rational& q, std::int64_t k) {
  Rational base = q;
  if (k < 0) {
    if (q == 0) throw Error(Errc::DomainError, "negative power of zero");
    base = 1 / q;
    k = -k;
  }
  Integer num, den;
  mpz_pow_ui(num.get_mpz_t(), base.get_num_mpz_t(), static_cast<unsigned long>(k));
  mpz_pow_ui(den.get_mpz_t(), base.get_den_mpz_t(), static_cast<unsigned long>(k));
  Rational out(num, den);
  out.canonicalize();
  return out;
}

std::optional<Rational> exact_root(const Rational& q, unsigned long k) {
  if (k == 0) throw Error(Errc::DomainError, "zeroth root");
  if (k == 1) return q;
  if (q < 0) return std::nullopt;
  Integer num, den;
  if (mpz_root(num.get_mpz_t(), q.get_num_mpz_t(), k) == 0) return std::nullopt;
  if (mpz_root(den.get_mpz_t(), q.get_den_mpz_t(), k) == 0) return std::nullopt;
  Rational out(num, den);
  out.canonicalize();
  return out;
}

std::size_t bit_height(const Rational& q) {
  std::size_t a = mpz_sizeinbase(q.get_num_mpz_t(), 2);
  std::size_t b = mpz_sizeinbase(q.get_den_mpz_t(), 2);
  return a > b ? a : b;
}

Real Real::approximate(double v) {
  Real r;
  r.exact_.reset();
  r.value_ = v;
  return r;
}

const Rational& Real::exact() const {
  if (!exact_) throw Error(Errc::DomainError, "value " + str() + " is not exact");
  return *exact_;
}

bool Real::is_zero() const { return exact_ ? *exact_ == 0 : value_ == 0.0; }
bool Real::is_one() const { return exact_ ? *exact_ == 1 : value_ == 1.0; }

int Real::sign() const {
  if (exact_) return sgn(*exact_);
  return (value_ > 0) - (value_ < 0);
}

double Real::log() const {
  if (sign() <= 0) throw Error(Errc::DomainError, "log of non-positive value " + str());
  return exact_ ? log_of(*exact_) : std::log(value_);
}

std::string Real::str() const {
  if (exact_) return to_string(*exact_);
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", value_);
  return buf;
}

Real operator+(const Real& a, const Real& b) {
  if (a.exact_ && b.exact_) return Real(Rational(*a.exact_ + *b.exact_));
  return Real::approximate(a.value_ + b.value_);
}

Real operator-(const Real& a, const Real& b) {
  if (a.exact_ && b.exact_) return Real(Rational(*a.exact_ - *b.exact_));
  return Real::approximate(a.value_ - b.value_);
}

Real operator*(const Real& a, const Real& b) {
  if (a.exact_ && b.exact_) return Real(Rational(*a.exact_ * *b.exact_));
  return Real::approximate(a.value_ * b.value_);
}

Real operator/(const Real& a, const Real& b) {
  if (b.is_zero()) throw Error(Errc::DomainError, "division by zero");
  if (a.exact_ && b.exact_) return Real(Rational(*a.exact_ / *b.exact_));
  return Real::approximate(a.value_ / b.value_);
}

Real Real::operator-() const {
  if (exact_) return Real(Rational(-*exact_));
  return approximate(-value_);
}

Real Real::abs() const { return sign() < 0 ? -*this : *this; }

std::partial_ordering operator<=>(const Real& a, const Real& b) {
  if (a.exact_ && b.exact_) {
    int c = cmp(*a.exact_, *b.exact_);
    return c < 0 ? std::partial_ordering::less
                 : (c > 0 ? std::partial_ordering::greater : std::partial_ordering::equivalent);
  }
  return a.value_ <=> b.value_;
}

bool operator==(const Real& a, const Real& b) { return (a <=> b) == 0; }

Real min(const Real& a, const Real& b) { return b < a ? b : a; }
Real max(const Real& a, const Real& b) { return a < b ? b : a; }

}  // namespace krieger
