#pragma once

#include <algorithm>
#include <string>

#include "diagsum/exponent.hpp"
#include "diagsum/forms.hpp"
#include "diagsum/rational.hpp"

namespace diagsum {

// Regime labels for the diagonal-summing bounds:
//   T1a/T1b/T1c — equal-exponent family (p > m, 2 <= p <= m, 1 < p < 2)
//   T2a/T2b     — general sharp constant (sum 1/p_i >= 1 vs <= 1)
//   Zalduendo   — the zero-growth boundary s = p/(p-m) of T1a
enum class Regime { T1a, T1b, T1c, T2a, T2b, Zalduendo };

inline const char* to_string(Regime r) {
  switch (r) {
    case Regime::T1a:
      return "T1a";
    case Regime::T1b:
      return "T1b";
    case Regime::T1c:
      return "T1c";
    case Regime::T2a:
      return "T2a";
    case Regime::T2b:
      return "T2b";
    case Regime::Zalduendo:
      return "Zalduendo";
  }
  return "?";
}

struct RegimeTag {
  Regime label;
  Rational exponent_of_n;  // growth exponent t in C = n^t
};

/// One instance (m, n, p_1..p_m, s) of the best-constant problem
///   (sum_j |T(e_j,...,e_j)|^s)^(1/s) <= C(m,n,p,s) ||T||.
struct ConstantQuery {
  int m;
  long long n;
  SpaceSpec exponents;
  Rational s;

  ConstantQuery(int m_, long long n_, SpaceSpec exponents_, Rational s_)
      : m(m_), n(n_), exponents(std::move(exponents_)), s(std::move(s_)) {
    if (m < 1) throw DimensionMismatchError("query needs m >= 1");
    if (exponents.order() != m) {
      throw DimensionMismatchError("query has " + std::to_string(exponents.order()) +
                                   " exponents for m = " + std::to_string(m));
    }
    if (n < 1) throw DimensionMismatchError("query needs n >= 1");
    if (!(s > 0)) throw InvalidExponentError("query needs s > 0");
  }
};

/// The exact diagonal exponent p/(p-m) for equal exponents p > m: the
/// smallest s for which the diagonal s-sum is bounded by ||T|| with
/// constant 1 and no growth in n.
inline Rational zalduendo_exponent(int m, const Exponent& p) {
  if (m < 2) throw OutOfRegimeError("diagonal exponent requires m >= 2");
  if (p.is_infinite()) throw OutOfRegimeError("diagonal exponent requires finite p");
  const Rational& v = p.rational();
  if (!(v > m)) {
    throw OutOfRegimeError("diagonal exponent requires p > m, got p = " + diagsum::to_string(v) +
                           ", m = " + std::to_string(m));
  }
  return v / (v - m);
}

/// Growth exponent of the equal-exponent bound
///   (sum |T(e_j,...,e_j)|^s)^(1/s) <= ||T|| n^t:
///   p > m,      s >= 1   : t = max{m/p + 1/s - 1, 0}         (sharp)
///   2 <= p <= m, s >= 1  : t = 0                             (sharp)
///   1 < p < 2,  s >= 2/m : t = (2ms + 2p - spm) / (2sp)      (upper bound
///                          only; the general constant is smaller, see
///                          compare_low_p_bounds)
/// Anything else is out of regime and reported as such rather than
/// extrapolated.
inline RegimeTag theorem1_exponent(int m, const Exponent& p, const Rational& s) {
  if (m < 2) throw OutOfRegimeError("equal-exponent bounds require m >= 2");
  if (!(s > 0)) throw InvalidExponentError("s must be positive");
  const long long ml = m;
  if (p.compare(Rational(ml)) > 0) {
    if (s < 1) throw OutOfRegimeError("the regime p > m requires s >= 1");
    const Rational t = Rational(ml) * p.reciprocal() + Rational(1) / s - 1;
    return {Regime::T1a, std::max(t, Rational(0))};
  }
  if (p.compare(Rational(2)) >= 0) {
    if (s < 1) throw OutOfRegimeError("the regime 2 <= p <= m requires s >= 1");
    return {Regime::T1b, Rational(0)};
  }
  if (p.compare(Rational(1)) > 0) {
    if (s < Rational(2, ml)) {
      throw OutOfRegimeError("the regime 1 < p < 2 requires s >= 2/m");
    }
    const Rational& pv = p.rational();
    const Rational t = (Rational(2 * ml) * s + 2 * pv - s * pv * ml) / (2 * s * pv);
    return {Regime::T1c, t};
  }
  throw OutOfRegimeError("p = 1 matches no equal-exponent regime (all require p > 1)");
}

/// theorem1_exponent with the boundary case s = p/(p-m) reported under its
/// own label (the exponent is exactly 0 there and the diagonal exponent is
/// exactly s).
inline RegimeTag equal_exponent_regime(int m, const Exponent& p, const Rational& s) {
  RegimeTag tag = theorem1_exponent(m, p, s);
  if (tag.label == Regime::T1a && p.is_finite() && s == zalduendo_exponent(m, p)) {
    tag.label = Regime::Zalduendo;
  }
  return tag;
}

/// Growth exponent of the sharp constant C(m, n, p_1..p_m, s):
///   sum 1/p_i >= 1 : C = n^(1/s)
///   sum 1/p_i <= 1 : C = n^max{sum 1/p_i + 1/s - 1, 0}
/// On the boundary both branches agree and the first is reported.
inline RegimeTag sharp_constant_regime(const SpaceSpec& spec, const Rational& s) {
  if (!(s > 0)) throw InvalidExponentError("s must be positive");
  Rational sum(0);
  for (const Exponent& p : spec.exponents()) sum += p.reciprocal();
  const Rational inv_s = Rational(1) / s;
  if (sum >= 1) return {Regime::T2a, inv_s};
  return {Regime::T2b, std::max(sum + inv_s - 1, Rational(0))};
}

inline RegimeTag best_constant_regime(const ConstantQuery& q) {
  return sharp_constant_regime(q.exponents, q.s);
}

/// The exact best constant C(m, n, p_1..p_m, s) = n^t.
inline double best_constant(const ConstantQuery& q) {
  return pow_rational(q.n, best_constant_regime(q).exponent_of_n);
}

/// The interpolation exponent x splitting 1/s = (p-m)/p + 1/x, used to
/// reduce a diagonal s-sum with s < p/(p-m) to the critical exponent via
/// Hoelder. For s >= p/(p-m) no split is needed and the request is out of
/// regime.
inline Exponent holder_interpolation_x(const Rational& s, const Exponent& p, int m) {
  if (m < 2) throw OutOfRegimeError("interpolation requires m >= 2");
  if (p.is_infinite() || !(p.rational() > m)) {
    throw OutOfRegimeError("interpolation requires finite p > m");
  }
  if (s < 1) throw OutOfRegimeError("interpolation requires s >= 1");
  const Rational critical = zalduendo_exponent(m, p);
  if (!(s < critical)) {
    throw OutOfRegimeError("no interpolation needed for s >= p/(p-m) = " +
                           diagsum::to_string(critical));
  }
  const Rational inv_x = Rational(1) / s - (p.rational() - m) / p.rational();
  return Exponent(Rational(1) / inv_x);
}

struct InclusionExponent {
  Rational value;    // 2sm/(sm+2)
  bool below_dual;   // 2sm/(sm+2) < p*
};

/// The inclusion exponent 2sm/(sm+2) together with the comparison against
/// the conjugate exponent p*; the comparison holds for every 1 < p < 2.
inline InclusionExponent inclusion_exponent(const Rational& s, int m, const Exponent& p) {
  if (m < 2) throw OutOfRegimeError("inclusion exponent requires m >= 2");
  const long long ml = m;
  if (s < Rational(2, ml)) throw OutOfRegimeError("inclusion exponent requires s >= 2/m");
  const Rational value = (Rational(2) * s * ml) / (s * ml + 2);
  const Exponent dual = dual_exponent(p);
  const bool below = dual.is_infinite() ? true : value < dual.rational();
  return {value, below};
}

/// Lower bound m/p + 1/s - 1 on any admissible growth exponent t, derived
/// from the product form with ||A|| <= n^((p-m)/p). Defined where the bound
/// is active, 1 <= s <= p/(p-m); it vanishes exactly at the upper boundary.
inline Rational optimality_floor(int m, const Exponent& p, const Rational& s) {
  if (m < 2) throw OutOfRegimeError("optimality floor requires m >= 2");
  if (p.is_infinite() || !(p.rational() > m)) {
    throw OutOfRegimeError("optimality floor requires finite p > m");
  }
  const Rational critical = zalduendo_exponent(m, p);
  if (s < 1 || s > critical) {
    throw OutOfRegimeError("optimality floor covers 1 <= s <= p/(p-m) = " +
                           diagsum::to_string(critical));
  }
  return Rational(m) * p.reciprocal() + Rational(1) / s - 1;
}

struct LowPComparison {
  RegimeTag direct;  // equal-exponent bound, label T1c
  RegimeTag sharp;   // general constant for the same query
  Rational gap;      // direct - sharp, >= 0: the slack of the direct route
};

/// For 1 < p < 2 the direct equal-exponent bound carries no optimality
/// claim; the general constant is the sharp one. This reports both
/// exponents and their gap without asserting where the direct route loses.
inline LowPComparison compare_low_p_bounds(int m, const Exponent& p, const Rational& s) {
  if (!(p.compare(Rational(1)) > 0 && p.compare(Rational(2)) < 0)) {
    throw OutOfRegimeError("the comparison applies for 1 < p < 2");
  }
  const RegimeTag direct = theorem1_exponent(m, p, s);
  const RegimeTag sharp = sharp_constant_regime(SpaceSpec::uniform(m, p), s);
  return {direct, sharp, direct.exponent_of_n - sharp.exponent_of_n};
}

}  // namespace diagsum
