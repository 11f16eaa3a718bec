#pragma once

#include <cmath>
#include <complex>
#include <type_traits>

namespace diagsum {

template <class S>
struct is_supported_scalar : std::false_type {};
template <>
struct is_supported_scalar<double> : std::true_type {};
template <>
struct is_supported_scalar<std::complex<double>> : std::true_type {};

/// Scalars are real by default; complex mode is selected per computation
/// by instantiating with std::complex<double>.
template <class S>
concept ScalarType = is_supported_scalar<S>::value;

inline double abs_value(double x) { return std::abs(x); }
inline double abs_value(const std::complex<double>& z) { return std::abs(z); }

// sign with the convention sign(0) = 1, for deterministic certificates.
inline double unit_sign(double x) { return x < 0.0 ? -1.0 : 1.0; }
inline std::complex<double> unit_sign(const std::complex<double>& z) {
  const double a = std::abs(z);
  return a == 0.0 ? std::complex<double>(1.0, 0.0) : z / a;
}

// conj(sign(c)): the pairing coefficient that rotates c onto |c|.
inline double conj_sign(double x) { return unit_sign(x); }
inline std::complex<double> conj_sign(const std::complex<double>& z) {
  return std::conj(unit_sign(z));
}

inline double conj_of(double x) { return x; }
inline std::complex<double> conj_of(const std::complex<double>& z) { return std::conj(z); }

template <ScalarType S>
S from_real(double x) {
  return S(x);
}

template <ScalarType S>
constexpr const char* scalar_mode_name();
template <>
constexpr const char* scalar_mode_name<double>() {
  return "real";
}
template <>
constexpr const char* scalar_mode_name<std::complex<double>>() {
  return "complex";
}

}  // namespace diagsum
