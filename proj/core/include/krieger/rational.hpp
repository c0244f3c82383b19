#pragma once

#include <gmpxx.h>

#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

namespace krieger {

using Integer = mpz_class;
using Rational = mpq_class;

/// Parses "p/q", an integer, or a decimal literal such as "0.25" or "1e-3"
/// into an exact rational. Throws Error(ParseError) on malformed input.
Rational parse_rational(std::string_view text);

/// "p/q", or "p" when the denominator is one.
std::string to_string(const Rational& q);

/// Natural logarithm of a positive rational. Stays finite for numerators and
/// denominators far beyond the double range.
double log_of(const Rational& q);
double log_of(const Integer& z);

/// q^k for any integer k (q must be nonzero when k < 0).
Rational power(const Rational& q, std::int64_t k);

/// The exact k-th root of q when it is rational, otherwise nullopt.
std::optional<Rational> exact_root(const Rational& q, unsigned long k);

/// Number of bits of the larger of numerator and denominator.
std::size_t bit_height(const Rational& q);

/// A real number that remembers whether it is known exactly.
///
/// Exact values carry a rational; approximate values carry only a double.
/// Arithmetic between two exact operands stays exact, anything touching an
/// approximate operand degrades to double arithmetic.
class Real {
 public:
  Real() : exact_(Rational(0)), value_(0.0) {}
  Real(const Rational& q) : exact_(q), value_(q.get_d()) {}  // NOLINT(implicit)
  Real(long v) : Real(Rational(v)) {}                         // NOLINT(implicit)
  Real(int v) : Real(Rational(v)) {}                          // NOLINT(implicit)

  static Real approximate(double v);

  bool is_exact() const noexcept { return exact_.has_value(); }
  double value() const noexcept { return value_; }
  /// Throws Error(DomainError) when the value is approximate.
  const Rational& exact() const;

  bool is_zero() const;
  bool is_one() const;
  int sign() const;

  /// Natural log; requires a positive value.
  double log() const;

  /// "p/q" for exact values, 17 significant digits otherwise.
  std::string str() const;

  friend Real operator+(const Real& a, const Real& b);
  friend Real operator-(const Real& a, const Real& b);
  friend Real operator*(const Real& a, const Real& b);
  friend Real operator/(const Real& a, const Real& b);
  Real operator-() const;
  Real abs() const;

  /// Exact comparison when both are exact, double comparison otherwise.
  friend std::partial_ordering operator<=>(const Real& a, const Real& b);
  friend bool operator==(const Real& a, const Real& b);

 private:
  std::optional<Rational> exact_;
  double value_;
};

Real min(const Real& a, const Real& b);
Real max(const Real& a, const Real& b);

}  // namespace krieger
