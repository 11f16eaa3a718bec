#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>
#include <random>

#include "diagsum/scalar.hpp"

namespace diagsum {

namespace detail {
inline std::uint64_t splitmix64_next(std::uint64_t& state) {
  std::uint64_t z = (state += 0x9e3779b97f4a7c15ull);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  return z ^ (z >> 31);
}
}  // namespace detail

/// Derives an independent substream seed from (seed, stream index).
inline std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream) {
  std::uint64_t state = seed ^ (0x9e3779b97f4a7c15ull * (stream + 1));
  const std::uint64_t a = detail::splitmix64_next(state);
  const std::uint64_t b = detail::splitmix64_next(state);
  return a ^ (b << 1);
}

/// Deterministic sampler. mt19937_64 output is pinned by the standard and
/// the gaussian uses an explicit Box-Muller transform, so streams are
/// byte-identical across standard libraries and platforms.
class SeededRng {
 public:
  explicit SeededRng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next_u64() { return engine_(); }

  /// Uniform in (0, 1].
  double uniform01() { return (static_cast<double>(engine_() >> 11) + 1.0) * 0x1.0p-53; }

  double gaussian() {
    if (have_spare_) {
      have_spare_ = false;
      return spare_;
    }
    const double u1 = uniform01();
    const double u2 = uniform01();
    const double radius = std::sqrt(-2.0 * std::log(u1));
    const double angle = 2.0 * std::numbers::pi * u2;
    spare_ = radius * std::sin(angle);
    have_spare_ = true;
    return radius * std::cos(angle);
  }

  double sign_pm1() { return (engine_() & 1ull) ? -1.0 : 1.0; }

  /// Uniform in [0, bound), bound >= 1; rejection keeps it unbiased.
  std::uint64_t below(std::uint64_t bound) {
    const std::uint64_t limit = UINT64_MAX - UINT64_MAX % bound;
    std::uint64_t v;
    do {
      v = engine_();
    } while (v >= limit);
    return v % bound;
  }

  template <ScalarType S>
  S gaussian_scalar();
  template <ScalarType S>
  S sign_scalar();

 private:
  std::mt19937_64 engine_;
  bool have_spare_ = false;
  double spare_ = 0.0;
};

template <>
inline double SeededRng::gaussian_scalar<double>() {
  return gaussian();
}
template <>
inline std::complex<double> SeededRng::gaussian_scalar<std::complex<double>>() {
  // standard complex gaussian: unit total variance
  const double re = gaussian();
  const double im = gaussian();
  return {re * std::numbers::sqrt2 / 2.0, im * std::numbers::sqrt2 / 2.0};
}

template <>
inline double SeededRng::sign_scalar<double>() {
  return sign_pm1();
}
template <>
inline std::complex<double> SeededRng::sign_scalar<std::complex<double>>() {
  const double angle = 2.0 * std::numbers::pi * uniform01();
  return {std::cos(angle), std::sin(angle)};
}

}  // namespace diagsum
