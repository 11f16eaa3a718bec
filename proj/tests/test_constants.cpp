#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <vector>

#include "diagsum/constants.hpp"

using namespace diagsum;
using Catch::Approx;

TEST_CASE("rational parsing and arithmetic") {
  CHECK(parse_rational("3") == Rational(3));
  CHECK(parse_rational("3/2") == Rational(3, 2));
  CHECK(parse_rational("-4/6") == Rational(-2, 3));
  CHECK(parse_rational("1.25") == Rational(5, 4));
  CHECK(parse_rational("0.5") == Rational(1, 2));
  CHECK_THROWS_AS(parse_rational("x"), ParseError);
  CHECK_THROWS_AS(parse_rational("1/0"), ParseError);
  CHECK(to_string(Rational(4, 6)) == "2/3");
  CHECK(to_string(Rational(-3)) == "-3");
  CHECK(Rational(1, 3) + Rational(1, 6) == Rational(1, 2));
  CHECK(Rational(2, 3) * Rational(9, 4) == Rational(3, 2));
}

TEST_CASE("rational powers are exact on integer roots") {
  CHECK(pow_rational(9, Rational(1, 2)) == 3.0);
  CHECK(pow_rational(16, Rational(1, 2)) == 4.0);
  CHECK(pow_rational(27, Rational(2, 3)) == 9.0);
  CHECK(pow_rational(5, Rational(0)) == 1.0);
  CHECK(pow_rational(1, Rational(7, 3)) == 1.0);
  CHECK(pow_rational(2, Rational(1, 2)) == Approx(std::sqrt(2.0)).epsilon(1e-15));
  CHECK(pow_rational(4, Rational(-1, 2)) == 0.5);
}

TEST_CASE("diagonal exponent p/(p-m)") {
  CHECK(zalduendo_exponent(2, Exponent(4)) == Rational(2));
  CHECK(zalduendo_exponent(3, Exponent(6)) == Rational(2));
  CHECK(zalduendo_exponent(2, Exponent(3)) == Rational(3));
  CHECK_THROWS_AS(zalduendo_exponent(2, Exponent(2)), OutOfRegimeError);
  CHECK_THROWS_AS(zalduendo_exponent(3, Exponent(Rational(5, 2))), OutOfRegimeError);
  CHECK_THROWS_AS(zalduendo_exponent(2, Exponent::infinity()), OutOfRegimeError);
  CHECK_THROWS_AS(zalduendo_exponent(1, Exponent(4)), OutOfRegimeError);
}

TEST_CASE("equal-exponent regimes and exponents") {
  const RegimeTag a = theorem1_exponent(2, Exponent(4), Rational(1));
  CHECK(a.label == Regime::T1a);
  CHECK(a.exponent_of_n == Rational(1, 2));

  const RegimeTag b = theorem1_exponent(3, Exponent(2), Rational(5));
  CHECK(b.label == Regime::T1b);
  CHECK(b.exponent_of_n == Rational(0));

  const RegimeTag c = theorem1_exponent(2, Exponent(Rational(3, 2)), Rational(1));
  CHECK(c.label == Regime::T1c);
  CHECK(c.exponent_of_n == Rational(4, 3));

  // p = inf sits in the p > m regime with m/p = 0
  const RegimeTag inf = theorem1_exponent(2, Exponent::infinity(), Rational(1));
  CHECK(inf.label == Regime::T1a);
  CHECK(inf.exponent_of_n == Rational(0));
}

TEST_CASE("out-of-regime parameters are rejected with named preconditions") {
  CHECK_THROWS_WITH(theorem1_exponent(2, Exponent(1), Rational(1)),
                    Catch::Matchers::ContainsSubstring("p > 1"));
  CHECK_THROWS_WITH(theorem1_exponent(2, Exponent(4), Rational(1, 2)),
                    Catch::Matchers::ContainsSubstring("s >= 1"));
  CHECK_THROWS_WITH(theorem1_exponent(3, Exponent(Rational(3, 2)), Rational(1, 2)),
                    Catch::Matchers::ContainsSubstring("s >= 2/m"));
  CHECK_THROWS_AS(theorem1_exponent(1, Exponent(4), Rational(1)), OutOfRegimeError);
  CHECK_THROWS_AS(theorem1_exponent(2, Exponent(2), Rational(1, 2)), OutOfRegimeError);
}

TEST_CASE("zero-growth boundary carries its own label") {
  const RegimeTag tag = equal_exponent_regime(2, Exponent(4), Rational(2));
  CHECK(tag.label == Regime::Zalduendo);
  CHECK(tag.exponent_of_n == Rational(0));
  CHECK(equal_exponent_regime(2, Exponent(4), Rational(1)).label == Regime::T1a);
}

TEST_CASE("sharp constant branches") {
  const ConstantQuery q1(2, 9, SpaceSpec::uniform(2, Exponent(2)), Rational(2));
  CHECK(best_constant_regime(q1).label == Regime::T2a);  // boundary reports branch (a)
  CHECK(best_constant(q1) == 3.0);

  const ConstantQuery q2(2, 16, SpaceSpec::uniform(2, Exponent(4)), Rational(2));
  CHECK(best_constant_regime(q2).label == Regime::T2b);
  CHECK(best_constant(q2) == 1.0);

  const ConstantQuery q3(2, 16, SpaceSpec::uniform(2, Exponent(4)), Rational(1));
  CHECK(best_constant_regime(q3).exponent_of_n == Rational(1, 2));
  CHECK(best_constant(q3) == 4.0);

  const ConstantQuery q4(2, 1, SpaceSpec::uniform(2, Exponent(7)), Rational(3, 2));
  CHECK(best_constant(q4) == 1.0);

  // anisotropic query, sum of reciprocals 1/3 + 2/3 = 1: boundary again
  const ConstantQuery q5(2, 8, SpaceSpec({Exponent(3), Exponent(Rational(3, 2))}), Rational(1));
  CHECK(best_constant_regime(q5).label == Regime::T2a);
  CHECK(best_constant(q5) == 8.0);
}

TEST_CASE("both branches agree exactly on the reciprocal-sum boundary") {
  const std::vector<SpaceSpec> boundary{
      SpaceSpec::uniform(2, Exponent(2)),
      SpaceSpec({Exponent(3), Exponent(Rational(3, 2))}),
      SpaceSpec({Exponent(4), Exponent(2), Exponent(4)}),
  };
  for (const SpaceSpec& spec : boundary) {
    Rational sum(0);
    for (const Exponent& p : spec.exponents()) sum += p.reciprocal();
    REQUIRE(sum == Rational(1));
    for (const Rational& s : {Rational(1, 2), Rational(1), Rational(2), Rational(7, 3)}) {
      const RegimeTag reported = sharp_constant_regime(spec, s);
      const Rational branch_a = Rational(1) / s;
      const Rational branch_b = std::max(sum + Rational(1) / s - 1, Rational(0));
      REQUIRE(branch_a == branch_b);
      REQUIRE(reported.label == Regime::T2a);
      REQUIRE(reported.exponent_of_n == branch_a);
    }
  }
}

TEST_CASE("query validation") {
  CHECK_THROWS_AS(ConstantQuery(2, 4, SpaceSpec::uniform(2, Exponent(2)), Rational(0)),
                  InvalidExponentError);
  CHECK_THROWS_AS(ConstantQuery(2, 0, SpaceSpec::uniform(2, Exponent(2)), Rational(1)),
                  DimensionMismatchError);
  CHECK_THROWS_AS(ConstantQuery(3, 4, SpaceSpec::uniform(2, Exponent(2)), Rational(1)),
                  DimensionMismatchError);
  // m = 1 is legitimate for the sharp constant
  const ConstantQuery q(1, 4, SpaceSpec::uniform(1, Exponent(2)), Rational(2));
  CHECK(best_constant(q) == 1.0);
  const ConstantQuery q2(1, 4, SpaceSpec::uniform(1, Exponent(1)), Rational(2));
  CHECK(best_constant(q2) == 2.0);
}

TEST_CASE("boundary of the s-range: zero growth at s = p/(p-m)") {
  for (int m : {2, 3, 4}) {
    for (const Rational pv : {Rational(m + 1), Rational(m + 2), Rational(2 * m),
                              Rational(2 * m + 1, 2)}) {
      const Exponent p(pv);
      const Rational s = zalduendo_exponent(m, p);
      const RegimeTag tag = theorem1_exponent(m, p, s);
      REQUIRE(tag.exponent_of_n == Rational(0));
    }
  }
}

TEST_CASE("equal-exponent exponents agree with the sharp constant") {
  for (int m : {2, 3, 4}) {
    for (const Rational pv : {Rational(m + 1), Rational(m + 2), Rational(2 * m)}) {
      const Exponent p(pv);
      for (const Rational s : {Rational(1), Rational(3, 2), Rational(2), zalduendo_exponent(m, p)}) {
        const RegimeTag t1 = theorem1_exponent(m, p, s);
        const RegimeTag t2 = sharp_constant_regime(SpaceSpec::uniform(m, p), s);
        REQUIRE(t1.exponent_of_n == t2.exponent_of_n);
        for (long long n = 1; n <= 32; ++n) {
          const ConstantQuery q(m, n, SpaceSpec::uniform(m, p), s);
          REQUIRE(best_constant(q) == pow_rational(n, t1.exponent_of_n));
        }
      }
    }
  }
}

TEST_CASE("optimality floor equals the active exponent branch") {
  CHECK(optimality_floor(2, Exponent(4), Rational(1)) == Rational(1, 2));
  CHECK(optimality_floor(3, Exponent(6), Rational(1)) == Rational(1, 2));
  // boundary s = p/(p-m) = 4/3
  CHECK(optimality_floor(2, Exponent(8), Rational(4, 3)) == Rational(0));
  CHECK_THROWS_AS(optimality_floor(2, Exponent(8), Rational(3, 2)), OutOfRegimeError);
  CHECK_THROWS_AS(optimality_floor(2, Exponent(2), Rational(1)), OutOfRegimeError);

  for (int m : {2, 3}) {
    for (const Rational pv : {Rational(m + 1), Rational(2 * m)}) {
      const Exponent p(pv);
      for (const Rational s : {Rational(1), Rational(6, 5), zalduendo_exponent(m, p)}) {
        if (s > zalduendo_exponent(m, p)) continue;
        REQUIRE(optimality_floor(m, p, s) == theorem1_exponent(m, p, s).exponent_of_n);
      }
    }
  }
}

TEST_CASE("best constant is monotone in n and antitone in each p_i") {
  const Rational s(1);
  for (int m : {2, 3}) {
    double previous = 0.0;
    for (long long n = 1; n <= 16; ++n) {
      const double value = best_constant(ConstantQuery(m, n, SpaceSpec::uniform(m, Exponent(3)), s));
      REQUIRE(value >= previous);
      previous = value;
    }
  }
  const std::vector<Exponent> increasing{Exponent(1), Exponent(Rational(3, 2)), Exponent(2),
                                         Exponent(4), Exponent(10), Exponent::infinity()};
  double previous = 1e300;
  for (const Exponent& p : increasing) {
    const double value =
        best_constant(ConstantQuery(2, 7, SpaceSpec({p, Exponent(2)}), Rational(2)));
    REQUIRE(value <= previous);
    previous = value;
  }
}

TEST_CASE("interpolation exponent") {
  CHECK(holder_interpolation_x(Rational(1), Exponent(4), 2) == Exponent(2));
  CHECK(holder_interpolation_x(Rational(1), Exponent(3), 2) == Exponent(Rational(3, 2)));
  CHECK(holder_interpolation_x(Rational(3, 2), Exponent(3), 2) == Exponent(3));
  // s at or above p/(p-m) needs no split: p = 6, m = 2 has p/(p-m) = 3/2
  CHECK_THROWS_AS(holder_interpolation_x(Rational(3, 2), Exponent(6), 2), OutOfRegimeError);
  CHECK_THROWS_AS(holder_interpolation_x(Rational(1, 2), Exponent(4), 2), OutOfRegimeError);
  CHECK_THROWS_AS(holder_interpolation_x(Rational(1), Exponent(2), 2), OutOfRegimeError);

  // the split reconstructs 1/s = (p-m)/p + 1/x
  for (int m : {2, 3}) {
    for (const Rational pv : {Rational(m + 1), Rational(2 * m), Rational(4 * m + 1, 3)}) {
      const Exponent p(pv);
      for (const Rational s : {Rational(1), Rational(11, 10)}) {
        if (!(s < zalduendo_exponent(m, p))) continue;
        const Exponent x = holder_interpolation_x(s, p, m);
        REQUIRE(Rational(1) / s == (pv - m) / pv + x.reciprocal());
      }
    }
  }
}

TEST_CASE("inclusion exponent stays below the dual for 1 < p < 2") {
  const auto first = inclusion_exponent(Rational(1), 2, Exponent(Rational(3, 2)));
  CHECK(first.value == Rational(1));
  CHECK(first.below_dual);

  const auto second = inclusion_exponent(Rational(2), 2, Exponent(Rational(3, 2)));
  CHECK(second.value == Rational(4, 3));
  CHECK(second.below_dual);

  const auto third = inclusion_exponent(Rational(2, 3), 3, Exponent(Rational(3, 2)));
  CHECK(third.value == Rational(1));
  CHECK(third.below_dual);

  // p = inf has dual 1 and the comparison genuinely fails there
  CHECK_FALSE(inclusion_exponent(Rational(1), 2, Exponent::infinity()).below_dual);
  CHECK_THROWS_AS(inclusion_exponent(Rational(1, 2), 2, Exponent(Rational(3, 2))),
                  OutOfRegimeError);

  for (int m : {2, 3}) {
    for (const Rational s : {Rational(2, m), Rational(1), Rational(2)}) {
      for (const Rational pv : {Rational(5, 4), Rational(3, 2), Rational(7, 4)}) {
        REQUIRE(inclusion_exponent(s, m, Exponent(pv)).below_dual);
      }
    }
  }
}

TEST_CASE("direct low-p bound versus the sharp constant") {
  const LowPComparison cmp = compare_low_p_bounds(2, Exponent(Rational(3, 2)), Rational(1));
  CHECK(cmp.direct.label == Regime::T1c);
  CHECK(cmp.direct.exponent_of_n == Rational(4, 3));
  CHECK(cmp.sharp.label == Regime::T2a);
  CHECK(cmp.sharp.exponent_of_n == Rational(1));
  CHECK(cmp.gap == Rational(1, 3));
  CHECK_THROWS_AS(compare_low_p_bounds(2, Exponent(2), Rational(1)), OutOfRegimeError);

  // the direct route is never better than the sharp constant in its regime
  for (int m : {2, 3}) {
    for (const Rational pv : {Rational(5, 4), Rational(3, 2), Rational(7, 4)}) {
      for (const Rational s : {Rational(1), Rational(2)}) {
        REQUIRE(compare_low_p_bounds(m, Exponent(pv), s).gap >= Rational(0));
      }
    }
  }
}
