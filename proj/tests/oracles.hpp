#pragma once

// Test-only oracles, independent of the library's norm-computation paths:
// brute-force enumerations go through MultilinearForm::evaluate on explicit
// argument vectors, and the 2x2 singular value has a closed form.

#include <cmath>
#include <vector>

#include "diagsum/forms.hpp"

namespace testing_oracles {

// Max of |T| over all signed vertex tuples (sigma_1 e_{j_1}, ..., sigma_m e_{j_m})
// of the ell_1 balls, evaluated through the multilinear sum.
inline double l1_vertex_enumeration(const diagsum::MultilinearForm<double>& form) {
  const int m = form.order();
  const int n = form.dim();
  std::vector<std::vector<double>> args(static_cast<std::size_t>(m),
                                        std::vector<double>(static_cast<std::size_t>(n), 0.0));
  std::vector<int> index(static_cast<std::size_t>(m), 0);
  std::vector<int> sign(static_cast<std::size_t>(m), 0);
  double best = 0.0;

  const long long tuples = [&] {
    long long t = 1;
    for (int i = 0; i < m; ++i) t *= 2LL * n;
    return t;
  }();
  for (long long code = 0; code < tuples; ++code) {
    long long rest = code;
    for (int i = 0; i < m; ++i) {
      const long long v = rest % (2LL * n);
      rest /= 2LL * n;
      index[static_cast<std::size_t>(i)] = static_cast<int>(v % n);
      sign[static_cast<std::size_t>(i)] = (v < n) ? 1 : -1;
    }
    for (int i = 0; i < m; ++i) {
      auto& arg = args[static_cast<std::size_t>(i)];
      std::fill(arg.begin(), arg.end(), 0.0);
      arg[static_cast<std::size_t>(index[static_cast<std::size_t>(i)])] =
          static_cast<double>(sign[static_cast<std::size_t>(i)]);
    }
    best = std::max(best, std::abs(form.evaluate(args)));
  }
  return best;
}

// Max of |T| over all sign-vector tuples (the extreme points of the real
// ell_inf balls), evaluated through the multilinear sum. Cost 2^(n*m)
// evaluations; for tiny forms only.
inline double linf_sign_enumeration(const diagsum::MultilinearForm<double>& form) {
  const int m = form.order();
  const int n = form.dim();
  std::vector<std::vector<double>> args(static_cast<std::size_t>(m),
                                        std::vector<double>(static_cast<std::size_t>(n), 0.0));
  double best = 0.0;
  const long long total_bits = static_cast<long long>(n) * m;
  for (long long mask = 0; mask < (1LL << total_bits); ++mask) {
    long long bit = 0;
    for (int i = 0; i < m; ++i) {
      for (int j = 0; j < n; ++j, ++bit) {
        args[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] =
            (mask >> bit & 1LL) ? -1.0 : 1.0;
      }
    }
    best = std::max(best, std::abs(form.evaluate(args)));
  }
  return best;
}

// Top singular value of [[a, b], [c, d]] in closed form.
inline double top_singular_value_2x2(double a, double b, double c, double d) {
  const double trace = a * a + b * b + c * c + d * d;
  const double det = a * d - b * c;
  const double disc = std::sqrt(std::max(trace * trace - 4.0 * det * det, 0.0));
  return std::sqrt((trace + disc) / 2.0);
}

// Nondecreasing up to relative float slack; contraction rounding can dent
// single steps by ~1e-15 of the value.
inline bool trace_is_monotone(const std::vector<double>& trace, double rel_slack = 1e-10) {
  for (std::size_t i = 1; i < trace.size(); ++i) {
    if (trace[i] < trace[i - 1] * (1.0 - rel_slack) - 1e-300) return false;
  }
  return true;
}

}  // namespace testing_oracles
