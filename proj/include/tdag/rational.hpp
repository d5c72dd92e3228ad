#pragma once

#include <compare>
#include <cstdint>
#include <functional>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <string_view>

namespace tdag {

/// Thrown when an exact result no longer fits in 64-bit numerator/denominator.
class ArithmeticOverflow : public std::overflow_error {
public:
  using std::overflow_error::overflow_error;
};

/// Exact rational number with a 64-bit numerator and a positive 64-bit
/// denominator, always kept in lowest terms. Intermediate products are
/// formed in 128 bits; a result that cannot be represented throws
/// ArithmeticOverflow instead of wrapping.
class Rational {
public:
  constexpr Rational() = default;
  constexpr Rational(std::int64_t value) : num_(value) {}  // NOLINT: implicit from integers
  Rational(std::int64_t num, std::int64_t den);

  std::int64_t num() const { return num_; }
  std::int64_t den() const { return den_; }

  bool is_integer() const { return den_ == 1; }
  bool is_zero() const { return num_ == 0; }
  int sign() const { return (num_ > 0) - (num_ < 0); }
  double to_double() const { return static_cast<double>(num_) / static_cast<double>(den_); }

  /// "p/q", or "p" when the denominator is 1.
  std::string str() const;
  /// Always "p/q" (denominator printed even when it is 1).
  std::string fraction_str() const;
  /// Decimal rendering with the given number of places, for humans only.
  std::string decimal_str(int places = 6) const;

  /// Accepts "p/q", "p", and finite decimals such as "-2.25".
  static Rational parse(std::string_view text);

  Rational& operator+=(const Rational& o);
  Rational& operator-=(const Rational& o);
  Rational& operator*=(const Rational& o);
  Rational& operator/=(const Rational& o);

  friend Rational operator+(Rational a, const Rational& b) { return a += b; }
  friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
  friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
  friend Rational operator/(Rational a, const Rational& b) { return a /= b; }
  Rational operator-() const;

  friend bool operator==(const Rational& a, const Rational& b) {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }
  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b);

private:
  static Rational from_wide(__int128 num, __int128 den);

  std::int64_t num_ = 0;
  std::int64_t den_ = 1;
};

std::ostream& operator<<(std::ostream& os, const Rational& r);

/// Non-negative time quantity (WCET, finish time, bound value).
using Weight = Rational;

}  // namespace tdag

template <>
struct std::hash<tdag::Rational> {
  std::size_t operator()(const tdag::Rational& r) const noexcept {
    return std::hash<std::int64_t>{}(r.num()) * 31u + std::hash<std::int64_t>{}(r.den());
  }
};
