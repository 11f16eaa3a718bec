#pragma once

#include <limits>
#include <string>

#include "diagsum/errors.hpp"
#include "diagsum/rational.hpp"

namespace diagsum {

/// Extended-real exponent in [1, inf]. Infinity is a distinct value, not a
/// large float, because the closed forms (norms, maximizers, duals) differ
/// structurally at the endpoints. Finite values are exact rationals.
class Exponent {
 public:
  Exponent(long long value) : Exponent(Rational(value)) {}
  Exponent(const Rational& value) : finite_(true), value_(value) {
    if (value < 1) {
      throw InvalidExponentError("exponent must satisfy p >= 1, got " + diagsum::to_string(value));
    }
  }

  static Exponent infinity() { return Exponent(Infinite{}); }

  bool is_infinite() const { return !finite_; }
  bool is_finite() const { return finite_; }

  const Rational& rational() const {
    if (!finite_) throw InvalidExponentError("infinite exponent has no rational value");
    return value_;
  }

  double to_double() const {
    return finite_ ? diagsum::to_double(value_) : std::numeric_limits<double>::infinity();
  }

  /// 1/p with the convention 1/inf = 0. The regime formulas are all
  /// expressible through reciprocals, which keeps infinity exact.
  Rational reciprocal() const { return finite_ ? Rational(1) / value_ : Rational(0); }

  /// Three-way comparison against a finite rational; infinity compares
  /// greater than everything.
  int compare(const Rational& r) const {
    if (!finite_) return 1;
    if (value_ < r) return -1;
    return value_ == r ? 0 : 1;
  }

  friend bool operator==(const Exponent& a, const Exponent& b) {
    if (a.finite_ != b.finite_) return false;
    return !a.finite_ || a.value_ == b.value_;
  }
  friend bool operator!=(const Exponent& a, const Exponent& b) { return !(a == b); }

  std::string str() const { return finite_ ? diagsum::to_string(value_) : "inf"; }

  static Exponent parse(const std::string& text) {
    if (text == "inf" || text == "Inf" || text == "INF" || text == "oo") return infinity();
    return Exponent(parse_rational(text));
  }

 private:
  struct Infinite {};
  explicit Exponent(Infinite) : finite_(false), value_(1) {}

  bool finite_;
  Rational value_;
};

/// Conjugate exponent p* with 1/p + 1/p* = 1; dual(1) = inf, dual(inf) = 1.
/// Exact on rationals, so the involution dual(dual(p)) = p holds in the
/// representation.
inline Exponent dual_exponent(const Exponent& p) {
  if (p.is_infinite()) return Exponent(1);
  const Rational& v = p.rational();
  if (v == 1) return Exponent::infinity();
  return Exponent(v / (v - 1));
}

}  // namespace diagsum
