#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <string>
#include <vector>

#include "diagsum/experiments.hpp"

using namespace diagsum;
using Catch::Approx;

namespace {

MultilinearForm<double> scaled(const MultilinearForm<double>& form, double factor) {
  std::vector<double> coeffs(form.coefficients().begin(), form.coefficients().end());
  for (double& c : coeffs) c *= factor;
  return MultilinearForm<double>(form.order(), form.dim(), std::move(coeffs));
}

}  // namespace

TEST_CASE("ratio closed forms") {
  // product form under (4,4), s=1: diagonal sum n over ||A|| = n^((p-m)/p)
  const auto A44 = MultilinearForm<double>::product(2, 4);
  const auto r1 = ratio(A44, SpaceSpec::uniform(2, Exponent(4)), 1.0);
  CHECK(r1.value == Approx(2.0).epsilon(1e-6));
  CHECK(r1.norm.kind == NormKind::lower_bound);

  // identity matrix under (2,2), s=2: 9^(1/2) / 1 via the spectral oracle
  const auto A9 = MultilinearForm<double>::product(2, 9);
  const auto r2 = ratio(A9, SpaceSpec::uniform(2, Exponent(2)), 2.0);
  CHECK(r2.value == Approx(3.0).epsilon(1e-9));
  CHECK(r2.norm.kind == NormKind::exact_oracle);

  // rank-one coordinate form
  const MultilinearForm<double> e11(2, 2, {1.0, 0.0, 0.0, 0.0});
  CHECK(ratio(e11, SpaceSpec::uniform(2, Exponent(2)), 1.0).value == Approx(1.0).epsilon(1e-9));

  CHECK_THROWS_AS(ratio(MultilinearForm<double>(2, 2), SpaceSpec::uniform(2, Exponent(2)), 1.0),
                  DegenerateFormError);
}

TEST_CASE("ratio is scale invariant under oracle norms") {
  SeededRng rng(515);
  for (int round = 0; round < 10; ++round) {
    const auto f = MultilinearForm<double>::random(2, 4, rng.next_u64());
    for (const Exponent& p : {Exponent(1), Exponent(2)}) {
      const SpaceSpec spec = SpaceSpec::uniform(2, p);
      const double base = ratio(f, spec, 1.5).value;
      for (double factor : {2.0, -3.0, 0.125}) {
        const double scaled_ratio = ratio(scaled(f, factor), spec, 1.5).value;
        REQUIRE(scaled_ratio == Approx(base).epsilon(1e-12));
      }
    }
  }
}

TEST_CASE("search attains the sharp constant where the product form does") {
  // all-ell_1: the product form has diagonal sum n and oracle norm 1
  const ConstantQuery q1(2, 4, SpaceSpec::uniform(2, Exponent(1)), Rational(1));
  const auto s1 = search_best_constant<double>(q1, SearchBudget{10, 10, 0.25, 3});
  CHECK(s1.best_ratio == Approx(4.0).epsilon(1e-12));
  CHECK(s1.record.norm.kind == NormKind::exact_oracle);
  CHECK(s1.record.theoretical_constant == 4.0);

  const ConstantQuery q2(2, 2, SpaceSpec::uniform(2, Exponent(2)), Rational(2));
  const auto s2 = search_best_constant<double>(q2, SearchBudget{10, 10, 0.25, 3});
  CHECK(s2.best_ratio == Approx(std::sqrt(2.0)).epsilon(1e-6));

  const ConstantQuery q3(2, 1, SpaceSpec::uniform(2, Exponent(5)), Rational(2));
  const auto s3 = search_best_constant<double>(q3, SearchBudget{5, 5, 0.25, 3});
  CHECK(s3.best_ratio == Approx(1.0).epsilon(1e-9));
}

TEST_CASE("search never undercuts the product form") {
  SeededRng seeds(9090);
  for (int round = 0; round < 6; ++round) {
    const int m = 2 + static_cast<int>(seeds.below(2));
    const int n = 2 + static_cast<int>(seeds.below(3));
    const ConstantQuery q(m, n, SpaceSpec::uniform(m, Exponent(1)), Rational(1));
    SearchBudget budget{8, 8, 0.5, seeds.next_u64()};
    const auto outcome = search_best_constant<double>(q, budget);
    const auto product_value =
        ratio(MultilinearForm<double>::product(m, n), q.exponents, to_double(q.s)).value;
    REQUIRE(outcome.best_ratio >= product_value - 1e-12);
  }
}

TEST_CASE("search is deterministic given the seed") {
  const ConstantQuery q(2, 3, SpaceSpec::uniform(2, Exponent(4)), Rational(1));
  const SearchBudget budget{12, 12, 0.25, 777};
  const auto first = search_best_constant<double>(q, budget);
  const auto second = search_best_constant<double>(q, budget);
  CHECK(to_json(first.record).dump() == to_json(second.record).dump());
  CHECK(record_to_csv_row(first.record) == record_to_csv_row(second.record));
}

TEST_CASE("oracle-normed records respect the sharp constant") {
  SeededRng seeds(32123);
  for (int round = 0; round < 8; ++round) {
    const int n = 2 + static_cast<int>(seeds.below(4));
    for (const Exponent& p : {Exponent(1), Exponent(2)}) {
      const ConstantQuery q(2, n, SpaceSpec::uniform(2, p), Rational(2));
      const auto outcome = search_best_constant<double>(q, SearchBudget{6, 6, 0.4, seeds.next_u64()});
      REQUIRE(outcome.record.norm.kind == NormKind::exact_oracle);
      REQUIRE(outcome.record.measured_ratio <=
              outcome.record.theoretical_constant * (1.0 + 1e-8));
    }
  }
}

TEST_CASE("verify finds no violations in oracle regimes") {
  const ConstantQuery q1(2, 4, SpaceSpec::uniform(2, Exponent(1)), Rational(1));
  const VerifyReport r1 = verify_inequality<double>(q1, 100, 2024);
  CHECK(r1.violations.empty());
  CHECK(r1.max_ratio <= r1.theoretical_constant * (1.0 + 1e-8));

  const ConstantQuery q2(2, 3, SpaceSpec::uniform(2, Exponent(2)), Rational(2));
  CHECK(verify_inequality<double>(q2, 100, 2024).violations.empty());
}

TEST_CASE("verify tolerates lower-bound norms at the loose tolerance") {
  // s = p/(p-m) = 2: constant 1 with ascent norms
  const ConstantQuery q(2, 4, SpaceSpec::uniform(2, Exponent(4)), Rational(2));
  const VerifyReport report = verify_inequality<double>(q, 60, 11);
  CHECK(report.theoretical_constant == 1.0);
  CHECK(report.violations.empty());
}

TEST_CASE("violation records carry full reproduction data") {
  VerifyReport report(ConstantQuery(2, 4, SpaceSpec::uniform(2, Exponent(4)), Rational(2)));
  report.trials = 10;
  report.seed = 99;
  report.theoretical_constant = 1.0;
  report.max_ratio = 1.25;
  report.violations.push_back({3, 0xDEADu, 1.25, 1.0, 1e-2, NormKind::lower_bound, 0.8});

  const Json j = to_json(report);
  CHECK(j["violations"].size() == 1);
  const Json& v = j["violations"][0];
  CHECK(v["trial"] == 3);
  CHECK(v["form_seed"] == 0xDEADu);
  CHECK(v["measured_ratio"] == 1.25);
  CHECK(v["bound"] == 1.0);
  CHECK(v["tolerance"] == 1e-2);
  CHECK(v["norm_kind"] == "lower-bound");
}

TEST_CASE("verify reports are byte-for-byte reproducible") {
  const ConstantQuery q(2, 3, SpaceSpec::uniform(2, Exponent(4)), Rational(3, 2));
  const std::string first = to_json(verify_inequality<double>(q, 25, 5)).dump();
  const std::string second = to_json(verify_inequality<double>(q, 25, 5)).dump();
  CHECK(first == second);
}

TEST_CASE("no random form beats an oracle-certified constant") {
  // seeded sweep across the three oracle families
  SeededRng seeds(61803);
  long long checked = 0;
  for (int block = 0; block < 1350; ++block) {
    const int m = 2 + static_cast<int>(seeds.below(2));
    const int n = 2 + static_cast<int>(seeds.below(5));
    for (const double s : {0.5, 1.0, 2.0}) {
      for (int family = 0; family < 3; ++family) {
        if (family == 2 && n * m > 18) continue;  // keep the sign enumeration cheap
        if (family == 1 && m != 2) continue;
        const Exponent p = family == 0 ? Exponent(1) : family == 1 ? Exponent(2) : Exponent::infinity();
        const SpaceSpec spec = SpaceSpec::uniform(m, p);
        const ConstantQuery q(m, n, spec, parse_rational(s == 0.5 ? "1/2" : s == 1.0 ? "1" : "2"));
        const auto f = MultilinearForm<double>::random(m, n, seeds.next_u64());
        if (f.is_zero()) continue;
        const auto r = ratio(f, spec, s);
        REQUIRE(r.norm.kind == NormKind::exact_oracle);
        REQUIRE(r.value <= best_constant(q) * (1.0 + 1e-8));
        ++checked;
      }
    }
  }
  CHECK(checked >= 10000);
}

TEST_CASE("exponent fit on exact power laws") {
  const FitResult unit = fit_exponent({{2, 2.0}, {4, 4.0}, {8, 8.0}});
  CHECK(unit.slope == Approx(1.0).epsilon(1e-12));
  CHECK(unit.residual <= 1e-12);

  const FitResult half =
      fit_exponent({{2, std::sqrt(2.0)}, {4, 2.0}, {8, std::sqrt(8.0)}});
  CHECK(half.slope == Approx(0.5).epsilon(1e-12));
  CHECK(half.residual <= 1e-12);
}

TEST_CASE("fit input validation") {
  CHECK_THROWS_AS(fit_exponent({{2, 1.0}, {4, 2.0}}), InvalidFitError);
  CHECK_THROWS_AS(fit_exponent({{2, 1.0}, {2, 2.0}, {2, 3.0}}), InvalidFitError);
  CHECK_THROWS_AS(fit_exponent({{2, 1.0}, {4, 0.0}, {8, 2.0}}), InvalidFitError);
  CHECK_THROWS_AS(fit_exponent({{0, 1.0}, {4, 1.0}, {8, 2.0}}), InvalidFitError);
}

TEST_CASE("growth fit over an oracle grid recovers the exponent 1/s") {
  SearchBudget budget{5, 5, 0.25, 99};
  const FitOutcome outcome = fit_growth_exponent<double>(
      2, {Exponent(1), Exponent(1)}, Rational(1), {2, 4, 8}, budget);
  CHECK(outcome.fit.slope == Approx(1.0).epsilon(1e-9));
  CHECK(outcome.records.size() == 3);
}

TEST_CASE("default fit grid respects the capacity guard") {
  CHECK(default_fit_grid(2) == std::vector<long long>{2, 4, 8, 16, 32});
  CHECK(default_fit_grid(5) == std::vector<long long>{2, 4, 8, 16});
}

TEST_CASE("record serialization schema") {
  const ConstantQuery q(2, 4, SpaceSpec::uniform(2, Exponent(1)), Rational(1));
  const auto outcome = search_best_constant<double>(q, SearchBudget{3, 3, 0.25, 42});
  CHECK(record_csv_header() ==
        "m,n,p_list,s,regime,theoretical_constant,measured_ratio,norm_value,norm_kind,"
        "form_descriptor,seed");
  const std::string row = record_to_csv_row(outcome.record);
  CHECK(row.rfind("2,4,1;1,1,T2a,4,", 0) == 0);

  const Json j = to_json(outcome.record);
  CHECK(j["m"] == 2);
  CHECK(j["p"] == Json::array({"1", "1"}));
  CHECK(j["regime"] == "T2a");
  CHECK(j["timestamp"] == "");
  CHECK(j.contains("norm"));
  CHECK(j["norm"].contains("kind"));
}
