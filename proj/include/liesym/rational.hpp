#pragma once

#include <compare>
#include <cstdint>
#include <memory>
#include <ostream>
#include <string>
#include <string_view>

namespace liesym {

/// Exact rational number in lowest terms with positive denominator.
///
/// Values that fit in 64-bit numerator/denominator stay on an inline fast
/// path; anything larger is promoted to a GMP rational and demoted again as
/// soon as it fits.
class Rational {
public:
  Rational() = default;
  Rational(std::int64_t n) : num_(n), den_(1) {} // NOLINT: implicit by intent
  Rational(int n) : num_(n), den_(1) {}          // NOLINT
  Rational(std::int64_t n, std::int64_t d);

  /// Parses "p", "-p", "p/q" or a decimal literal "12.5".
  static Rational parse(std::string_view text);

  bool is_zero() const { return !big_ && num_ == 0; }
  bool is_one() const { return !big_ && num_ == 1 && den_ == 1; }
  bool is_integer() const;
  int sign() const;

  /// Numerator/denominator as decimal strings (exact for any size).
  std::string numerator_str() const;
  std::string denominator_str() const;
  /// Small-path accessors; throw MathError if the value is big.
  std::int64_t num64() const;
  std::int64_t den64() const;
  bool fits64() const { return !big_; }

  double to_double() const;
  std::string str() const;

  Rational operator-() const;
  Rational abs() const { return sign() < 0 ? -*this : *this; }
  Rational inverse() const;
  /// Integer power, negative exponents allowed for nonzero values.
  Rational pow(int e) const;

  friend Rational operator+(const Rational &a, const Rational &b);
  friend Rational operator-(const Rational &a, const Rational &b);
  friend Rational operator*(const Rational &a, const Rational &b);
  friend Rational operator/(const Rational &a, const Rational &b);
  Rational &operator+=(const Rational &o) { return *this = *this + o; }
  Rational &operator-=(const Rational &o) { return *this = *this - o; }
  Rational &operator*=(const Rational &o) { return *this = *this * o; }
  Rational &operator/=(const Rational &o) { return *this = *this / o; }

  friend bool operator==(const Rational &a, const Rational &b);
  friend std::strong_ordering operator<=>(const Rational &a, const Rational &b);

  /// Exact square root when the value is the square of a rational.
  bool exact_sqrt(Rational &out) const;

  struct Big;

private:
  static Rational from_big(const Big &b);

  std::int64_t num_ = 0;
  std::int64_t den_ = 1;
  std::shared_ptr<const Big> big_;
};

inline std::ostream &operator<<(std::ostream &os, const Rational &r) { return os << r.str(); }

} // namespace liesym
