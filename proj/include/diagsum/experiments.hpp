#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "diagsum/constants.hpp"
#include "diagsum/normest.hpp"
#include "diagsum/tensor_io.hpp"

namespace diagsum {

struct FormDescriptor {
  enum class Kind { product, random, optimized };
  Kind kind = Kind::product;
  std::uint64_t seed = 0;    // random / optimized
  std::string distribution;  // random only
  int steps = 0;             // optimized only

  static FormDescriptor product() { return {}; }
  static FormDescriptor random(std::uint64_t seed, std::string distribution) {
    FormDescriptor d;
    d.kind = Kind::random;
    d.seed = seed;
    d.distribution = std::move(distribution);
    return d;
  }
  static FormDescriptor optimized(std::uint64_t seed, int steps) {
    FormDescriptor d;
    d.kind = Kind::optimized;
    d.seed = seed;
    d.steps = steps;
    return d;
  }

  // semicolons inside, so the string stays a single CSV field
  std::string str() const {
    switch (kind) {
      case Kind::product:
        return "product";
      case Kind::random:
        return "random(seed=" + std::to_string(seed) + ";dist=" + distribution + ")";
      case Kind::optimized:
        return "optimized(seed=" + std::to_string(seed) + ";steps=" + std::to_string(steps) + ")";
    }
    return "product";
  }
};

struct NormSummary {
  double value = 0.0;
  NormKind kind = NormKind::lower_bound;
  int sweeps = 0;
  int starts_used = 0;

  template <ScalarType S>
  static NormSummary of(const NormEstimate<S>& est) {
    return {est.value, est.kind, est.sweeps, est.starts_used};
  }
};

/// One row of experimental output. The timestamp is left empty by the
/// engines: serialized records must be byte-for-byte reproducible from
/// (query, budget, seed), and a wall clock would break that. Callers that
/// want one fill it in for human-facing views only.
struct ExperimentRecord {
  ConstantQuery query;
  double theoretical_constant = 0.0;
  double measured_ratio = 0.0;
  FormDescriptor form;
  NormSummary norm;
  std::string timestamp;
  std::uint64_t seed = 0;

  explicit ExperimentRecord(ConstantQuery q) : query(std::move(q)) {}
};

template <ScalarType S>
struct RatioResult {
  double value = 0.0;
  NormEstimate<S> norm;
};

/// diagonal_s_sum(T, s) / ||T||, the per-form quotient whose supremum over
/// all forms of the shape is the best constant.
template <ScalarType S>
RatioResult<S> ratio(const MultilinearForm<S>& form, const SpaceSpec& spec, double s,
                     const AscentOptions& budget = {}) {
  if (form.is_zero()) throw DegenerateFormError("the ratio is undefined for the zero form");
  const double numerator = diagonal_s_sum(form, s);
  NormEstimate<S> est = best_available_norm(form, spec, budget);
  if (!(est.value > 0.0)) {
    throw DegenerateFormError("the norm estimate vanished for a nonzero form");
  }
  return {numerator / est.value, std::move(est)};
}

struct SearchBudget {
  int random_trials = 50;
  int ascent_steps = 50;   // hill-climbing steps in coefficient space
  double step_size = 0.25; // perturbation scale relative to max |a|
  std::uint64_t seed = 12345;
  AscentOptions full_norm_budget{};
  // cheap inner estimates keep the search tractable; the final report is
  // re-measured with the full budget
  AscentOptions reduced_norm_budget{4, 1e-8, 100, 12345};
};

template <ScalarType S>
struct SearchOutcome {
  double best_ratio = 0.0;
  ExperimentRecord record;
  MultilinearForm<S> best_form;
};

/// Empirical maximization of the ratio over forms: the product form,
/// seeded random forms, then coefficient-space hill climbing from the best
/// candidate. The result is never below the product-form ratio and is
/// deterministic given the seed. The quotient is scale-invariant, so
/// perturbed forms are not renormalized.
template <ScalarType S>
SearchOutcome<S> search_best_constant(const ConstantQuery& q, const SearchBudget& budget = {}) {
  if (budget.random_trials < 0 || budget.ascent_steps < 0 || !(budget.step_size > 0.0)) {
    throw Error("search budget needs random_trials >= 0, ascent_steps >= 0, step_size > 0");
  }
  const SpaceSpec& spec = q.exponents;
  const double s = to_double(q.s);

  AscentOptions full = budget.full_norm_budget;
  full.seed = derive_seed(budget.seed, 1);

  MultilinearForm<S> product = MultilinearForm<S>::product(q.m, static_cast<int>(q.n));
  const RatioResult<S> product_ratio = ratio(product, spec, s, full);

  MultilinearForm<S> best_form = product;
  FormDescriptor best_descriptor = FormDescriptor::product();
  double best_screened = product_ratio.value;

  AscentOptions reduced = budget.reduced_norm_budget;
  for (int trial = 0; trial < budget.random_trials; ++trial) {
    const std::uint64_t form_seed = derive_seed(budget.seed, 100 + static_cast<std::uint64_t>(trial));
    MultilinearForm<S> candidate =
        MultilinearForm<S>::random(q.m, static_cast<int>(q.n), form_seed);
    if (candidate.is_zero()) continue;
    reduced.seed = derive_seed(budget.seed, 50000 + static_cast<std::uint64_t>(trial));
    const double r = ratio(candidate, spec, s, reduced).value;
    if (r > best_screened) {
      best_screened = r;
      best_form = std::move(candidate);
      best_descriptor = FormDescriptor::random(form_seed, "gaussian");
    }
  }

  SeededRng perturb_rng(derive_seed(budget.seed, 7));
  bool climbed = false;
  double current = best_screened;
  for (int step = 0; step < budget.ascent_steps; ++step) {
    const double scale = budget.step_size * best_form.max_abs_coefficient();
    MultilinearForm<S> candidate = best_form;
    for (std::size_t k = 0; k < candidate.size(); ++k) {
      candidate.coefficient(k) += perturb_rng.gaussian_scalar<S>() * from_real<S>(scale);
    }
    if (candidate.is_zero()) continue;
    reduced.seed = derive_seed(budget.seed, 90000 + static_cast<std::uint64_t>(step));
    const double r = ratio(candidate, spec, s, reduced).value;
    if (r > current) {
      current = r;
      best_form = std::move(candidate);
      climbed = true;
    }
  }
  if (climbed) best_descriptor = FormDescriptor::optimized(budget.seed, budget.ascent_steps);

  RatioResult<S> final_ratio = ratio(best_form, spec, s, full);
  if (final_ratio.value < product_ratio.value) {
    best_form = std::move(product);
    best_descriptor = FormDescriptor::product();
    final_ratio = product_ratio;
  }

  ExperimentRecord record(q);
  record.theoretical_constant = best_constant(q);
  record.measured_ratio = final_ratio.value;
  record.form = best_descriptor;
  record.norm = NormSummary::of(final_ratio.norm);
  record.seed = budget.seed;
  return {final_ratio.value, std::move(record), std::move(best_form)};
}

struct Violation {
  int trial = 0;
  std::uint64_t form_seed = 0;
  double measured_ratio = 0.0;
  double bound = 0.0;      // theoretical constant
  double tolerance = 0.0;  // relative slack applied to the bound
  NormKind norm_kind = NormKind::lower_bound;
  double norm_value = 0.0;
};

/// A lower-bound norm understates ||T|| and so inflates the ratio; the
/// looser tolerance there avoids false alarms about a true bound.
struct VerifyReport {
  ConstantQuery query;
  int trials = 0;
  std::uint64_t seed = 0;
  std::string distribution = "gaussian";
  double theoretical_constant = 0.0;
  double max_ratio = 0.0;
  double tol_oracle = 1e-8;
  double tol_lower_bound = 1e-2;
  int degenerate_trials = 0;
  std::vector<Violation> violations;

  explicit VerifyReport(ConstantQuery q) : query(std::move(q)) {}
};

/// Checks measured_ratio <= C * (1 + tol) for seeded random forms.
/// Violations are report content with full reproduction data, not errors.
template <ScalarType S>
VerifyReport verify_inequality(const ConstantQuery& q, int trials, std::uint64_t seed,
                               const AscentOptions& budget = {}) {
  if (trials < 1) throw Error("verify needs trials >= 1");
  VerifyReport report(q);
  report.trials = trials;
  report.seed = seed;
  report.theoretical_constant = best_constant(q);

  const SpaceSpec& spec = q.exponents;
  const double s = to_double(q.s);
  for (int trial = 0; trial < trials; ++trial) {
    const std::uint64_t form_seed = derive_seed(seed, static_cast<std::uint64_t>(trial));
    const MultilinearForm<S> form =
        MultilinearForm<S>::random(q.m, static_cast<int>(q.n), form_seed);
    if (form.is_zero()) {
      ++report.degenerate_trials;
      continue;
    }
    AscentOptions trial_budget = budget;
    trial_budget.seed = derive_seed(seed, 1000000 + static_cast<std::uint64_t>(trial));
    const RatioResult<S> r = ratio(form, spec, s, trial_budget);
    report.max_ratio = std::max(report.max_ratio, r.value);
    const double tol =
        r.norm.kind == NormKind::exact_oracle ? report.tol_oracle : report.tol_lower_bound;
    if (r.value > report.theoretical_constant * (1.0 + tol)) {
      report.violations.push_back({trial, form_seed, r.value, report.theoretical_constant, tol,
                                   r.norm.kind, r.norm.value});
    }
  }
  return report;
}

struct FitPoint {
  long long n = 0;
  double value = 0.0;
};

struct FitResult {
  std::vector<FitPoint> points;
  double slope = 0.0;
  double intercept = 0.0;
  double residual = 0.0;  // max absolute log-residual
};

/// Ordinary least squares of ln(value) against ln(n); the slope is the
/// fitted growth exponent.
inline FitResult fit_exponent(const std::vector<FitPoint>& points) {
  std::vector<long long> distinct;
  for (const FitPoint& p : points) {
    if (p.n < 1) throw InvalidFitError("fit points need n >= 1");
    if (!(p.value > 0.0)) throw InvalidFitError("fit points need positive values");
    if (std::find(distinct.begin(), distinct.end(), p.n) == distinct.end()) distinct.push_back(p.n);
  }
  if (distinct.size() < 3) throw InvalidFitError("fit needs at least 3 distinct n values");

  const double count = static_cast<double>(points.size());
  double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
  for (const FitPoint& p : points) {
    const double x = std::log(static_cast<double>(p.n));
    const double y = std::log(p.value);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  FitResult fit;
  fit.points = points;
  fit.slope = (count * sxy - sx * sy) / (count * sxx - sx * sx);
  fit.intercept = (sy - fit.slope * sx) / count;
  for (const FitPoint& p : points) {
    const double predicted = fit.slope * std::log(static_cast<double>(p.n)) + fit.intercept;
    fit.residual = std::max(fit.residual, std::abs(std::log(p.value) - predicted));
  }
  return fit;
}

/// {2, 4, 8, 16, 32} capped by the dense-storage guard.
inline std::vector<long long> default_fit_grid(int m) {
  std::vector<long long> grid;
  for (long long n : {2, 4, 8, 16, 32}) {
    bool fits = true;
    std::size_t size = 1;
    for (int i = 0; i < m; ++i) {
      if (size > 10'000'000 / static_cast<std::size_t>(n)) {
        fits = false;
        break;
      }
      size *= static_cast<std::size_t>(n);
    }
    if (fits) grid.push_back(n);
  }
  return grid;
}

struct FitOutcome {
  FitResult fit;
  std::vector<ExperimentRecord> records;
};

/// Runs the best-ratio search on each n of the grid and fits the growth
/// exponent of the measured constants.
template <ScalarType S>
FitOutcome fit_growth_exponent(int m, const std::vector<Exponent>& exponents, const Rational& s,
                               const std::vector<long long>& grid, const SearchBudget& budget = {}) {
  if (grid.size() < 3) throw InvalidFitError("fit needs at least 3 grid points");
  FitOutcome outcome;
  std::vector<FitPoint> points;
  for (const long long n : grid) {
    const ConstantQuery q(m, n, SpaceSpec(exponents), s);
    SearchBudget per_n = budget;
    per_n.seed = derive_seed(budget.seed, static_cast<std::uint64_t>(n));
    SearchOutcome<S> result = search_best_constant<S>(q, per_n);
    points.push_back({n, result.best_ratio});
    outcome.records.push_back(std::move(result.record));
  }
  outcome.fit = fit_exponent(points);
  return outcome;
}

// ---------------------------------------------------------------------------
// serialization

/// Shortest round-trip decimal representation.
inline std::string format_double(double v) {
  char buf[32];
  const auto result = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, result.ptr);
}

inline Json query_to_json(const ConstantQuery& q) {
  Json j;
  j["m"] = q.m;
  j["n"] = q.n;
  Json p = Json::array();
  for (const Exponent& e : q.exponents.exponents()) p.push_back(e.str());
  j["p"] = std::move(p);
  j["s"] = to_string(q.s);
  j["regime"] = to_string(best_constant_regime(q).label);
  return j;
}

inline Json to_json(const NormSummary& n) {
  Json j;
  j["value"] = n.value;
  j["kind"] = to_string(n.kind);
  j["sweeps"] = n.sweeps;
  j["starts_used"] = n.starts_used;
  return j;
}

inline Json to_json(const ExperimentRecord& r) {
  Json j = query_to_json(r.query);
  j["theoretical_constant"] = r.theoretical_constant;
  j["measured_ratio"] = r.measured_ratio;
  j["norm"] = to_json(r.norm);
  j["form_descriptor"] = r.form.str();
  j["timestamp"] = r.timestamp;
  j["seed"] = r.seed;
  return j;
}

inline std::string record_csv_header() {
  return "m,n,p_list,s,regime,theoretical_constant,measured_ratio,norm_value,norm_kind,"
         "form_descriptor,seed";
}

inline std::string record_to_csv_row(const ExperimentRecord& r) {
  std::string p_list;
  for (std::size_t i = 0; i < r.query.exponents.exponents().size(); ++i) {
    if (i > 0) p_list += ";";
    p_list += r.query.exponents.exponents()[i].str();
  }
  std::string row;
  row += std::to_string(r.query.m) + ",";
  row += std::to_string(r.query.n) + ",";
  row += p_list + ",";
  row += to_string(r.query.s) + ",";
  row += std::string(to_string(best_constant_regime(r.query).label)) + ",";
  row += format_double(r.theoretical_constant) + ",";
  row += format_double(r.measured_ratio) + ",";
  row += format_double(r.norm.value) + ",";
  row += std::string(to_string(r.norm.kind)) + ",";
  row += r.form.str() + ",";
  row += std::to_string(r.seed);
  return row;
}

inline Json to_json(const Violation& v) {
  Json j;
  j["trial"] = v.trial;
  j["form_seed"] = v.form_seed;
  j["measured_ratio"] = v.measured_ratio;
  j["bound"] = v.bound;
  j["tolerance"] = v.tolerance;
  j["norm_kind"] = to_string(v.norm_kind);
  j["norm_value"] = v.norm_value;
  return j;
}

inline Json to_json(const VerifyReport& r) {
  Json j = query_to_json(r.query);
  j["trials"] = r.trials;
  j["seed"] = r.seed;
  j["distribution"] = r.distribution;
  j["theoretical_constant"] = r.theoretical_constant;
  j["max_ratio"] = r.max_ratio;
  j["tol_oracle"] = r.tol_oracle;
  j["tol_lower_bound"] = r.tol_lower_bound;
  j["degenerate_trials"] = r.degenerate_trials;
  Json violations = Json::array();
  for (const Violation& v : r.violations) violations.push_back(to_json(v));
  j["violations"] = std::move(violations);
  return j;
}

inline Json to_json(const FitResult& f) {
  Json j;
  Json points = Json::array();
  for (const FitPoint& p : f.points) points.push_back(Json::array({p.n, p.value}));
  j["points"] = std::move(points);
  j["slope"] = f.slope;
  j["intercept"] = f.intercept;
  j["residual"] = f.residual;
  return j;
}

}  // namespace diagsum
