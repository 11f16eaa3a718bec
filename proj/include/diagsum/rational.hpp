#pragma once

// Exact rational arithmetic for the exponent formulas. All regime
// identities (zero-growth boundaries, branch agreements) must hold
// exactly, not up to rounding, so exponents are kept as fractions and
// converted to double only when a numeric value is needed.
//
// Self-contained: boost::rational 1.74 infinitely recurses on
// heterogeneous == under the C++20 rewritten-candidate rules, so a small
// exact type with clean comparison operators is used instead. Values stay
// tiny (p, s, and short sums of their reciprocals); intermediates go
// through __int128 and overflow throws rather than wrapping.

#include <charconv>
#include <cmath>
#include <compare>
#include <cstdint>
#include <limits>
#include <numeric>
#include <string>
#include <string_view>

#include "diagsum/errors.hpp"

namespace diagsum {

class Rational {
 public:
  Rational() = default;
  Rational(long long value) : num_(value), den_(1) {}
  Rational(long long numerator, long long denominator) {
    assign(static_cast<__int128>(numerator), static_cast<__int128>(denominator));
  }

  long long numerator() const { return num_; }
  long long denominator() const { return den_; }

  friend Rational operator-(const Rational& r) { return Rational(-r.num_, r.den_); }

  friend Rational operator+(const Rational& a, const Rational& b) {
    return make(static_cast<__int128>(a.num_) * b.den_ + static_cast<__int128>(b.num_) * a.den_,
                static_cast<__int128>(a.den_) * b.den_);
  }
  friend Rational operator-(const Rational& a, const Rational& b) { return a + (-b); }
  friend Rational operator*(const Rational& a, const Rational& b) {
    return make(static_cast<__int128>(a.num_) * b.num_, static_cast<__int128>(a.den_) * b.den_);
  }
  friend Rational operator/(const Rational& a, const Rational& b) {
    if (b.num_ == 0) throw Error("rational division by zero");
    return make(static_cast<__int128>(a.num_) * b.den_, static_cast<__int128>(a.den_) * b.num_);
  }

  Rational& operator+=(const Rational& o) { return *this = *this + o; }
  Rational& operator-=(const Rational& o) { return *this = *this - o; }
  Rational& operator*=(const Rational& o) { return *this = *this * o; }
  Rational& operator/=(const Rational& o) { return *this = *this / o; }

  friend bool operator==(const Rational& a, const Rational& b) {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }
  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
    const __int128 left = static_cast<__int128>(a.num_) * b.den_;
    const __int128 right = static_cast<__int128>(b.num_) * a.den_;
    if (left < right) return std::strong_ordering::less;
    if (left > right) return std::strong_ordering::greater;
    return std::strong_ordering::equal;
  }

 private:
  static __int128 gcd128(__int128 a, __int128 b) {
    if (a < 0) a = -a;
    if (b < 0) b = -b;
    while (b != 0) {
      const __int128 t = a % b;
      a = b;
      b = t;
    }
    return a;
  }

  static long long narrow(__int128 v) {
    if (v > std::numeric_limits<long long>::max() || v < std::numeric_limits<long long>::min()) {
      throw Error("rational arithmetic overflow");
    }
    return static_cast<long long>(v);
  }

  static Rational make(__int128 numerator, __int128 denominator) {
    Rational r;
    r.assign(numerator, denominator);
    return r;
  }

  void assign(__int128 numerator, __int128 denominator) {
    if (denominator == 0) throw Error("rational with zero denominator");
    if (denominator < 0) {
      numerator = -numerator;
      denominator = -denominator;
    }
    if (numerator == 0) {
      num_ = 0;
      den_ = 1;
      return;
    }
    const __int128 g = gcd128(numerator, denominator);
    num_ = narrow(numerator / g);
    den_ = narrow(denominator / g);
  }

  long long num_ = 0;
  long long den_ = 1;
};

inline double to_double(const Rational& r) {
  return static_cast<double>(r.numerator()) / static_cast<double>(r.denominator());
}

inline std::string to_string(const Rational& r) {
  if (r.denominator() == 1) return std::to_string(r.numerator());
  return std::to_string(r.numerator()) + "/" + std::to_string(r.denominator());
}

namespace detail {

inline long long parse_integer(std::string_view text) {
  long long value = 0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || ptr != text.data() + text.size()) {
    throw ParseError("not an integer: '" + std::string(text) + "'");
  }
  return value;
}

}  // namespace detail

/// Parses "7", "-3", "3/2" or a short decimal like "1.25" into an exact
/// rational.
inline Rational parse_rational(const std::string& text) {
  if (text.empty()) throw ParseError("empty rational literal");
  if (auto slash = text.find('/'); slash != std::string::npos) {
    long long num = detail::parse_integer(std::string_view(text).substr(0, slash));
    long long den = detail::parse_integer(std::string_view(text).substr(slash + 1));
    if (den == 0) throw ParseError("zero denominator in '" + text + "'");
    return Rational(num, den);
  }
  if (auto dot = text.find('.'); dot != std::string::npos) {
    std::string_view whole = std::string_view(text).substr(0, dot);
    std::string_view frac = std::string_view(text).substr(dot + 1);
    if (frac.size() > 12) throw ParseError("decimal literal too long: '" + text + "'");
    bool negative = !whole.empty() && whole.front() == '-';
    if (negative || (!whole.empty() && whole.front() == '+')) whole.remove_prefix(1);
    long long ipart = whole.empty() ? 0 : detail::parse_integer(whole);
    long long fpart = frac.empty() ? 0 : detail::parse_integer(frac);
    if (ipart < 0 || fpart < 0) throw ParseError("malformed decimal: '" + text + "'");
    long long scale = 1;
    for (std::size_t i = 0; i < frac.size(); ++i) scale *= 10;
    Rational r = Rational(ipart) + Rational(fpart, scale);
    return negative ? -r : r;
  }
  return Rational(detail::parse_integer(text));
}

/// n^t for an integer n >= 1 and rational t = a/b. When n^(a/b) is an
/// integer (e.g. 9^(1/2)) the result is computed exactly by integer root
/// extraction; for integer n >= 1 the value n^(a/b) is otherwise
/// irrational and the double pow is used.
inline double pow_rational(long long n, const Rational& t) {
  if (n < 1) throw Error("pow_rational requires n >= 1");
  if (n == 1 || t.numerator() == 0) return 1.0;
  const long long a = t.numerator();
  const long long b = t.denominator();  // normalized, b >= 1
  const bool invert = a < 0;
  const unsigned long long ua =
      invert ? static_cast<unsigned long long>(-(a + 1)) + 1ull : static_cast<unsigned long long>(a);

  constexpr unsigned long long kCap = 1ull << 62;
  unsigned long long power = 1;
  bool fits = true;
  for (unsigned long long i = 0; i < ua; ++i) {
    if (power > kCap / static_cast<unsigned long long>(n)) {
      fits = false;
      break;
    }
    power *= static_cast<unsigned long long>(n);
  }
  if (fits && b <= 62) {
    const double guess = std::pow(static_cast<double>(power), 1.0 / static_cast<double>(b));
    const long long center = std::llround(guess);
    for (long long root = center - 1; root <= center + 1; ++root) {
      if (root < 1) continue;
      unsigned long long acc = 1;
      bool overflow = false;
      for (long long i = 0; i < b; ++i) {
        if (acc > kCap / static_cast<unsigned long long>(root)) {
          overflow = true;
          break;
        }
        acc *= static_cast<unsigned long long>(root);
      }
      if (!overflow && acc == power) {
        const double exact = static_cast<double>(root);
        return invert ? 1.0 / exact : exact;
      }
    }
  }
  return std::pow(static_cast<double>(n), to_double(t));
}

}  // namespace diagsum
