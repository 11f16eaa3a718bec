#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <span>
#include <vector>

#include "diagsum/errors.hpp"
#include "diagsum/exponent.hpp"
#include "diagsum/scalar.hpp"

namespace diagsum {

/// (sum |x_j|^p)^(1/p) for finite p, max_j |x_j| for p = inf.
/// Entries are scaled by the peak before exponentiation so large p stays
/// stable.
template <ScalarType S>
double lp_norm(std::span<const S> x, const Exponent& p) {
  double peak = 0.0;
  for (const S& v : x) peak = std::max(peak, abs_value(v));
  if (peak == 0.0) return 0.0;
  if (p.is_infinite()) return peak;
  const double pd = p.to_double();
  if (pd == 1.0) {
    double sum = 0.0;
    for (const S& v : x) sum += abs_value(v);
    return sum;
  }
  if (pd == 2.0) {
    double sum = 0.0;
    for (const S& v : x) {
      const double a = abs_value(v) / peak;
      sum += a * a;
    }
    return peak * std::sqrt(sum);
  }
  double sum = 0.0;
  for (const S& v : x) sum += std::pow(abs_value(v) / peak, pd);
  return peak * std::pow(sum, 1.0 / pd);
}

template <ScalarType S>
double lp_norm(const std::vector<S>& x, const Exponent& p) {
  return lp_norm(std::span<const S>(x), p);
}

template <ScalarType S>
struct FunctionalMax {
  double norm = 0.0;
  std::vector<S> maximizer;
  bool degenerate = false;  // c = 0: norm 0 and zero maximizer
};

/// Norm and maximizer of the linear functional x -> sum c_j x_j on the
/// ell_p^n unit ball. The norm is ||c||_{p*}; the maximizer is the
/// Hoelder-equality vector:
///   1 < p < inf : x_j = conj(sign(c_j)) |c_j|^{p*-1} / ||c||_{p*}^{p*-1}
///   p = inf     : x_j = conj(sign(c_j)), sign(0) = 1
///   p = 1       : signed basis vector at a largest |c_k|, lowest index on
///                 ties
/// This is the exact inner step of the alternating ascent.
template <ScalarType S>
FunctionalMax<S> functional_norm_and_maximizer(std::span<const S> c, const Exponent& p) {
  const std::size_t n = c.size();
  if (n == 0) throw DimensionMismatchError("empty coefficient vector");
  FunctionalMax<S> out;
  out.maximizer.assign(n, S(0));

  double peak = 0.0;
  std::size_t peak_at = 0;
  for (std::size_t j = 0; j < n; ++j) {
    const double a = abs_value(c[j]);
    if (a > peak) {
      peak = a;
      peak_at = j;
    }
  }
  if (peak == 0.0) {
    out.degenerate = true;
    return out;
  }

  if (p.is_finite() && p.rational() == 1) {
    out.norm = peak;
    out.maximizer[peak_at] = conj_sign(c[peak_at]);
    return out;
  }
  if (p.is_infinite()) {
    double sum = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
      out.maximizer[j] = conj_sign(c[j]);
      sum += abs_value(c[j]);
    }
    out.norm = sum;
    return out;
  }

  const double pstar = dual_exponent(p).to_double();
  if (pstar == 2.0) {
    double sum = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
      const double a = abs_value(c[j]) / peak;
      sum += a * a;
    }
    out.norm = peak * std::sqrt(sum);
    for (std::size_t j = 0; j < n; ++j) {
      out.maximizer[j] = conj_of(c[j]) * (1.0 / out.norm);
    }
    return out;
  }

  double sum = 0.0;
  for (std::size_t j = 0; j < n; ++j) sum += std::pow(abs_value(c[j]) / peak, pstar);
  out.norm = peak * std::pow(sum, 1.0 / pstar);
  const double denom = std::pow(sum, (pstar - 1.0) / pstar);
  for (std::size_t j = 0; j < n; ++j) {
    const double weight = std::pow(abs_value(c[j]) / peak, pstar - 1.0) / denom;
    out.maximizer[j] = conj_sign(c[j]) * weight;
  }
  return out;
}

template <ScalarType S>
FunctionalMax<S> functional_norm_and_maximizer(const std::vector<S>& c, const Exponent& p) {
  return functional_norm_and_maximizer(std::span<const S>(c), p);
}

}  // namespace diagsum
