#include "tdag/rational.hpp"

#include <charconv>
#include <limits>
#include <ostream>

namespace tdag {

namespace {

using i128 = __int128;

i128 abs128(i128 v) { return v < 0 ? -v : v; }

i128 gcd128(i128 a, i128 b) {
  a = abs128(a);
  b = abs128(b);
  while (b != 0) {
    i128 t = a % b;
    a = b;
    b = t;
  }
  return a;
}

constexpr i128 kMax = std::numeric_limits<std::int64_t>::max();
constexpr i128 kMin = std::numeric_limits<std::int64_t>::min();

std::int64_t parse_int(std::string_view text, std::string_view whole) {
  std::int64_t value = 0;
  const char* first = text.data();
  const char* last = text.data() + text.size();
  if (!text.empty() && *first == '+') ++first;
  auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec == std::errc::result_out_of_range) {
    throw ArithmeticOverflow("rational literal out of range: " + std::string(whole));
  }
  if (ec != std::errc() || ptr != last || first == last) {
    throw std::invalid_argument("malformed rational: '" + std::string(whole) + "'");
  }
  return value;
}

}  // namespace

Rational::Rational(std::int64_t num, std::int64_t den) {
  if (den == 0) throw std::domain_error("rational with zero denominator");
  *this = from_wide(num, den);
}

Rational Rational::from_wide(i128 num, i128 den) {
  if (den == 0) throw std::domain_error("division by zero");
  if (den < 0) {
    num = -num;
    den = -den;
  }
  i128 g = gcd128(num, den);
  if (g > 1) {
    num /= g;
    den /= g;
  }
  if (num > kMax || num < kMin || den > kMax) {
    throw ArithmeticOverflow("rational result does not fit in 64 bits");
  }
  Rational r;
  r.num_ = static_cast<std::int64_t>(num);
  r.den_ = static_cast<std::int64_t>(den);
  return r;
}

Rational& Rational::operator+=(const Rational& o) {
  if (den_ == o.den_) {
    *this = from_wide(static_cast<i128>(num_) + o.num_, den_);
  } else {
    *this = from_wide(static_cast<i128>(num_) * o.den_ + static_cast<i128>(o.num_) * den_,
                      static_cast<i128>(den_) * o.den_);
  }
  return *this;
}

Rational& Rational::operator-=(const Rational& o) { return *this += -o; }

Rational& Rational::operator*=(const Rational& o) {
  *this = from_wide(static_cast<i128>(num_) * o.num_, static_cast<i128>(den_) * o.den_);
  return *this;
}

Rational& Rational::operator/=(const Rational& o) {
  if (o.num_ == 0) throw std::domain_error("division by zero");
  *this = from_wide(static_cast<i128>(num_) * o.den_, static_cast<i128>(den_) * o.num_);
  return *this;
}

Rational Rational::operator-() const { return from_wide(-static_cast<i128>(num_), den_); }

std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
  i128 lhs = static_cast<i128>(a.num_) * b.den_;
  i128 rhs = static_cast<i128>(b.num_) * a.den_;
  if (lhs < rhs) return std::strong_ordering::less;
  if (lhs > rhs) return std::strong_ordering::greater;
  return std::strong_ordering::equal;
}

std::string Rational::str() const {
  if (den_ == 1) return std::to_string(num_);
  return fraction_str();
}

std::string Rational::fraction_str() const {
  return std::to_string(num_) + "/" + std::to_string(den_);
}

std::string Rational::decimal_str(int places) const {
  // Round half away from zero at the requested precision, exactly.
  i128 scale = 1;
  for (int i = 0; i < places; ++i) scale *= 10;
  i128 scaled = static_cast<i128>(num_) * scale;
  i128 q = scaled / den_;
  i128 rem = abs128(scaled % den_);
  if (2 * rem >= den_) q += (num_ < 0 ? -1 : 1);
  bool negative = q < 0;
  i128 mag = abs128(q);
  std::string frac;
  for (int i = 0; i < places; ++i) {
    frac.insert(frac.begin(), static_cast<char>('0' + static_cast<int>(mag % 10)));
    mag /= 10;
  }
  std::string whole;
  do {
    whole.insert(whole.begin(), static_cast<char>('0' + static_cast<int>(mag % 10)));
    mag /= 10;
  } while (mag > 0);
  std::string out = negative ? "-" + whole : whole;
  if (places > 0) out += "." + frac;
  return out;
}

Rational Rational::parse(std::string_view text) {
  while (!text.empty() && text.front() == ' ') text.remove_prefix(1);
  while (!text.empty() && text.back() == ' ') text.remove_suffix(1);
  if (auto slash = text.find('/'); slash != std::string_view::npos) {
    std::int64_t n = parse_int(text.substr(0, slash), text);
    std::int64_t d = parse_int(text.substr(slash + 1), text);
    if (d == 0) throw std::invalid_argument("zero denominator in '" + std::string(text) + "'");
    return Rational(n, d);
  }
  if (auto dot = text.find('.'); dot != std::string_view::npos) {
    std::string_view int_part = text.substr(0, dot);
    std::string_view frac_part = text.substr(dot + 1);
    bool negative = !int_part.empty() && int_part.front() == '-';
    if (negative || (!int_part.empty() && int_part.front() == '+')) int_part.remove_prefix(1);
    if (frac_part.empty() || frac_part.size() > 18) {
      throw std::invalid_argument("malformed decimal: '" + std::string(text) + "'");
    }
    for (char ch : frac_part) {
      if (ch < '0' || ch > '9') throw std::invalid_argument("malformed decimal: '" + std::string(text) + "'");
    }
    std::int64_t whole = int_part.empty() ? 0 : parse_int(int_part, text);
    std::int64_t frac = parse_int(frac_part, text);
    std::int64_t scale = 1;
    for (std::size_t i = 0; i < frac_part.size(); ++i) scale *= 10;
    Rational r = Rational(whole) + Rational(frac, scale);
    return negative ? -r : r;
  }
  return Rational(parse_int(text, text));
}

std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.str(); }

}  // namespace tdag
