#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <string>
#include <type_traits>
#include <utility>
#include <vector>

#include "diagsum/forms.hpp"

namespace diagsum {

enum class NormKind { exact_oracle, lower_bound };

inline const char* to_string(NormKind k) {
  return k == NormKind::exact_oracle ? "exact-oracle" : "lower-bound";
}

/// A value for ||T|| together with its certainty class and the certifying
/// argument tuple. Witnesses are unit vectors in their respective ell_p
/// balls and |T(witnesses)| reproduces the value, so a lower-bound estimate
/// is always a sound lower bound.
template <ScalarType S>
struct NormEstimate {
  double value = 0.0;
  NormKind kind = NormKind::lower_bound;
  std::vector<std::vector<S>> witnesses;
  int sweeps = 0;       // sweeps of the winning start (iterations for the spectral oracle)
  int starts_used = 0;
  bool degenerate = false;  // T = 0
  // Per-start objective after each sweep; the ascent is monotone within a
  // start, which tests assert on these traces.
  std::vector<std::vector<double>> traces;
};

struct AscentOptions {
  int starts = 32;
  double tol = 1e-10;  // relative objective improvement per sweep
  int max_sweeps = 500;
  std::uint64_t seed = 12345;
};

namespace detail {

template <ScalarType S>
std::vector<S> unit_basis_vector(int n, int index) {
  std::vector<S> v(static_cast<std::size_t>(n), S(0));
  v[static_cast<std::size_t>(index)] = S(1);
  return v;
}

// n^{-1/p} (1, ..., 1); the all-ones vector for p = inf. Extremal for the
// product form, so start 0 seeds with it.
template <ScalarType S>
std::vector<S> unit_uniform_vector(int n, const Exponent& p) {
  const double scale = p.is_infinite() ? 1.0 : std::pow(static_cast<double>(n), -1.0 / p.to_double());
  return std::vector<S>(static_cast<std::size_t>(n), from_real<S>(scale));
}

template <ScalarType S>
std::vector<S> random_unit_vector(SeededRng& rng, int n, const Exponent& p) {
  std::vector<S> v(static_cast<std::size_t>(n));
  for (;;) {
    for (S& e : v) e = rng.gaussian_scalar<S>();
    const double norm = lp_norm(v, p);
    if (norm > 0.0) {
      for (S& e : v) e = e * from_real<S>(1.0 / norm);
      return v;
    }
  }
}

}  // namespace detail

/// Multi-start alternating dual-ascent for
///   ||T|| = sup { |T(x^1,...,x^m)| : ||x^i||_{p_i} <= 1 }.
/// Each sweep replaces one argument at a time by the exact closed-form
/// maximizer of the induced linear functional, so the objective is
/// nondecreasing across sweeps within a start. Returns the best start
/// (lowest index on ties) as a lower-bound estimate. Deterministic given
/// the seed.
template <ScalarType S>
NormEstimate<S> alternating_ascent(const MultilinearForm<S>& form, const SpaceSpec& spec,
                                   const AscentOptions& opt = {}) {
  if (spec.order() != form.order()) {
    throw DimensionMismatchError("space spec order does not match the form order");
  }
  if (opt.starts < 1 || !(opt.tol > 0.0) || opt.max_sweeps < 1) {
    throw Error("ascent needs starts >= 1, tol > 0, max_sweeps >= 1");
  }

  const int m = form.order();
  const int n = form.dim();

  NormEstimate<S> best;
  best.kind = NormKind::lower_bound;
  if (form.is_zero()) {
    best.degenerate = true;
    for (int i = 0; i < m; ++i) best.witnesses.push_back(detail::unit_basis_vector<S>(n, 0));
    return best;
  }

  best.value = -1.0;
  for (int start = 0; start < opt.starts; ++start) {
    SeededRng rng(derive_seed(opt.seed, static_cast<std::uint64_t>(start)));
    std::vector<std::vector<S>> xs;
    xs.reserve(static_cast<std::size_t>(m));
    for (int i = 0; i < m; ++i) {
      xs.push_back(start == 0 ? detail::unit_uniform_vector<S>(n, spec.at(i))
                              : detail::random_unit_vector<S>(rng, n, spec.at(i)));
    }

    std::vector<double> trace;
    double value = 0.0;
    double prev = -1.0;
    int sweeps_done = 0;
    for (int sweep = 0; sweep < opt.max_sweeps; ++sweep) {
      for (int slot = 0; slot < m; ++slot) {
        const std::vector<S> c = form.contract_except(xs, slot);
        FunctionalMax<S> fm = functional_norm_and_maximizer(c, spec.at(slot));
        if (fm.degenerate) {
          // slot functional vanished; the value is 0 whatever this argument
          // is, keep the previous unit vector
          value = 0.0;
        } else {
          xs[static_cast<std::size_t>(slot)] = std::move(fm.maximizer);
          value = fm.norm;
        }
      }
      trace.push_back(value);
      ++sweeps_done;
      if (prev >= 0.0 && value - prev <= opt.tol * std::max(prev, 1e-300)) break;
      prev = value;
    }

    if (value > best.value) {
      best.value = value;
      best.witnesses = xs;
      best.sweeps = sweeps_done;
    }
    best.traces.push_back(std::move(trace));
  }
  best.starts_used = opt.starts;
  return best;
}

/// Exact oracle for the all-ell_1 spec. The ell_1 unit ball is the convex
/// hull of +-e_j, so the multilinear sup over products of balls is attained
/// at a vertex tuple and equals max |a[j_1,...,j_m]|.
template <ScalarType S>
NormEstimate<S> exact_norm_l1(const MultilinearForm<S>& form) {
  NormEstimate<S> est;
  est.kind = NormKind::exact_oracle;

  const int m = form.order();
  const int n = form.dim();
  const std::span<const S> coeffs = form.coefficients();

  std::size_t arg = 0;
  double peak = 0.0;
  for (std::size_t k = 0; k < coeffs.size(); ++k) {
    const double a = abs_value(coeffs[k]);
    if (a > peak) {  // first maximum = lexicographically lowest tuple
      peak = a;
      arg = k;
    }
  }
  est.value = peak;
  est.degenerate = (peak == 0.0);

  std::vector<int> idx(static_cast<std::size_t>(m), 0);
  std::size_t rest = arg;
  for (int axis = m - 1; axis >= 0; --axis) {
    idx[static_cast<std::size_t>(axis)] = static_cast<int>(rest % static_cast<std::size_t>(n));
    rest /= static_cast<std::size_t>(n);
  }
  for (int i = 0; i < m; ++i) {
    est.witnesses.push_back(detail::unit_basis_vector<S>(n, idx[static_cast<std::size_t>(i)]));
  }
  // rotate in the last slot so T(witnesses) = |a|
  est.witnesses.back()[static_cast<std::size_t>(idx.back())] = conj_sign(coeffs[arg]);
  return est;
}

/// Exact oracle for bilinear forms on ell_2 x ell_2: the norm is the top
/// singular value of the coefficient matrix, computed by power iteration on
/// the Gram map v -> A^H (A v). A few deterministic pseudo-random starts
/// guard against a start orthogonal to the top singular space.
template <ScalarType S>
NormEstimate<S> exact_norm_bilinear_l2(const MultilinearForm<S>& form) {
  if (form.order() != 2) {
    throw UnsupportedOracleError("the spectral oracle requires a bilinear form");
  }
  const int n = form.dim();
  const std::span<const S> a = form.coefficients();

  NormEstimate<S> est;
  est.kind = NormKind::exact_oracle;
  if (form.is_zero()) {
    est.degenerate = true;
    est.witnesses = {detail::unit_basis_vector<S>(n, 0), detail::unit_basis_vector<S>(n, 0)};
    return est;
  }

  const auto apply = [&](const std::vector<S>& v, std::vector<S>& w) {
    for (int i = 0; i < n; ++i) {
      S acc(0);
      const S* row = a.data() + static_cast<std::size_t>(i) * static_cast<std::size_t>(n);
      for (int k = 0; k < n; ++k) acc += row[k] * v[static_cast<std::size_t>(k)];
      w[static_cast<std::size_t>(i)] = acc;
    }
  };
  const auto apply_adjoint = [&](const std::vector<S>& w, std::vector<S>& g) {
    for (int k = 0; k < n; ++k) g[static_cast<std::size_t>(k)] = S(0);
    for (int i = 0; i < n; ++i) {
      const S* row = a.data() + static_cast<std::size_t>(i) * static_cast<std::size_t>(n);
      const S wi = w[static_cast<std::size_t>(i)];
      for (int k = 0; k < n; ++k) g[static_cast<std::size_t>(k)] += conj_of(row[k]) * wi;
    }
  };

  constexpr double kTol = 1e-13;
  constexpr int kMaxIters = 100000;
  constexpr int kAttempts = 4;
  constexpr std::uint64_t kSalt = 0x5bec7a11u;

  double best_sigma = -1.0;
  std::vector<S> best_v, best_w;
  int best_iters = 0;

  // column of largest norm; starting there guarantees A v != 0
  int heaviest_column = 0;
  {
    double heaviest = -1.0;
    for (int k = 0; k < n; ++k) {
      double col = 0.0;
      for (int i = 0; i < n; ++i) {
        const double e = abs_value(a[static_cast<std::size_t>(i) * static_cast<std::size_t>(n) +
                                     static_cast<std::size_t>(k)]);
        col += e * e;
      }
      if (col > heaviest) {
        heaviest = col;
        heaviest_column = k;
      }
    }
  }

  const Exponent two(2);
  for (int attempt = 0; attempt < kAttempts; ++attempt) {
    SeededRng rng(derive_seed(kSalt, static_cast<std::uint64_t>(attempt)));
    std::vector<S> v = attempt == 0   ? detail::unit_uniform_vector<S>(n, two)
                       : attempt == 1 ? detail::unit_basis_vector<S>(n, heaviest_column)
                                      : detail::random_unit_vector<S>(rng, n, two);
    std::vector<S> w(static_cast<std::size_t>(n));
    std::vector<S> g(static_cast<std::size_t>(n));
    double sigma = 0.0;
    double prev = -1.0;
    int iters = 0;
    for (int it = 0; it < kMaxIters; ++it) {
      apply(v, w);
      sigma = lp_norm(w, two);
      iters = it + 1;
      if (sigma == 0.0) break;  // start landed in the kernel; try the next one
      if (prev >= 0.0 && std::abs(sigma - prev) <= kTol * sigma) break;
      prev = sigma;
      apply_adjoint(w, g);
      const double gn = lp_norm(g, two);
      if (gn == 0.0) break;
      for (int k = 0; k < n; ++k) g[static_cast<std::size_t>(k)] = g[static_cast<std::size_t>(k)] * from_real<S>(1.0 / gn);
      v.swap(g);
    }
    if (sigma > best_sigma) {
      best_sigma = sigma;
      best_v = v;
      best_w = w;
      best_iters = iters;
    }
  }

  est.value = best_sigma;
  est.sweeps = best_iters;
  est.starts_used = kAttempts;
  // witnesses: y = v, x = conj(A v)/sigma, so T(x, y) = ||A v||^2 / sigma = sigma
  std::vector<S> x(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    x[static_cast<std::size_t>(i)] = conj_of(best_w[static_cast<std::size_t>(i)]) * from_real<S>(1.0 / best_sigma);
  }
  est.witnesses = {std::move(x), std::move(best_v)};
  return est;
}

/// Exact oracle for the all-ell_inf spec over real scalars: the extreme
/// points of the real ell_inf ball are sign vectors, so the norm is the max
/// of |T| over sign tuples. Slots are enumerated depth-first with
/// progressive contraction; the last slot is closed-form (the ell_1 norm of
/// the remaining functional). Guarded to n*m <= 22.
inline NormEstimate<double> exact_norm_linf_real(const MultilinearForm<double>& form) {
  const int m = form.order();
  const int n = form.dim();
  if (static_cast<long long>(n) * m > 22) {
    throw CapacityError("sign enumeration is guarded to n*m <= 22, got n*m = " +
                        std::to_string(static_cast<long long>(n) * m));
  }

  NormEstimate<double> est;
  est.kind = NormKind::exact_oracle;
  if (form.is_zero()) {
    est.degenerate = true;
    est.witnesses.assign(static_cast<std::size_t>(m),
                         std::vector<double>(static_cast<std::size_t>(n), 1.0));
    return est;
  }

  std::vector<std::vector<double>> stack;
  std::vector<std::vector<double>> best_witnesses;
  double best = -1.0;

  const std::vector<double> flat(form.coefficients().begin(), form.coefficients().end());

  const auto descend = [&](const auto& self, const std::vector<double>& data, int rank) -> void {
    if (rank == 1) {
      double value = 0.0;
      for (double c : data) value += std::abs(c);
      if (value > best) {
        best = value;
        best_witnesses = stack;
        std::vector<double> last(static_cast<std::size_t>(n));
        for (int j = 0; j < n; ++j) last[static_cast<std::size_t>(j)] = unit_sign(data[static_cast<std::size_t>(j)]);
        best_witnesses.push_back(std::move(last));
      }
      return;
    }
    std::vector<double> signs(static_cast<std::size_t>(n));
    for (std::uint64_t mask = 0; mask < (1ull << n); ++mask) {
      for (int j = 0; j < n; ++j) signs[static_cast<std::size_t>(j)] = (mask >> j & 1ull) ? -1.0 : 1.0;
      stack.push_back(signs);
      self(self, detail::contract_first(data, n, signs), rank - 1);
      stack.pop_back();
    }
  };
  descend(descend, flat, m);

  est.value = best;
  est.witnesses = std::move(best_witnesses);
  return est;
}

/// Routes to an exact oracle when one applies, otherwise to the ascent with
/// the given budget. Never returns less than an applicable oracle would.
template <ScalarType S>
NormEstimate<S> best_available_norm(const MultilinearForm<S>& form, const SpaceSpec& spec,
                                    const AscentOptions& budget = {}) {
  if (spec.order() != form.order()) {
    throw DimensionMismatchError("space spec order does not match the form order");
  }
  bool all_one = true;
  bool all_two = true;
  bool all_inf = true;
  const Exponent one(1), two(2);
  for (const Exponent& p : spec.exponents()) {
    all_one = all_one && p == one;
    all_two = all_two && p == two;
    all_inf = all_inf && p.is_infinite();
  }
  if (all_one) return exact_norm_l1(form);
  if (form.order() == 2 && all_two) return exact_norm_bilinear_l2(form);
  if constexpr (std::is_same_v<S, double>) {
    if (all_inf && static_cast<long long>(form.dim()) * form.order() <= 22) {
      return exact_norm_linf_real(form);
    }
  }
  return alternating_ascent(form, spec, budget);
}

}  // namespace diagsum
