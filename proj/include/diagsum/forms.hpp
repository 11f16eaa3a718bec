#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <unordered_set>
#include <utility>
#include <vector>

#include "diagsum/errors.hpp"
#include "diagsum/exponent.hpp"
#include "diagsum/rng.hpp"
#include "diagsum/scalar.hpp"
#include "diagsum/spaces.hpp"

namespace diagsum {

/// Domain exponents (p_1, ..., p_m), one per argument slot.
class SpaceSpec {
 public:
  explicit SpaceSpec(std::vector<Exponent> exponents) : exponents_(std::move(exponents)) {
    if (exponents_.empty()) {
      throw DimensionMismatchError("a space spec needs at least one exponent");
    }
  }

  static SpaceSpec uniform(int m, const Exponent& p) {
    if (m < 1) throw DimensionMismatchError("order must be >= 1");
    return SpaceSpec(std::vector<Exponent>(static_cast<std::size_t>(m), p));
  }

  int order() const { return static_cast<int>(exponents_.size()); }
  const Exponent& at(int slot) const { return exponents_.at(static_cast<std::size_t>(slot)); }
  const std::vector<Exponent>& exponents() const { return exponents_; }

  bool all_equal() const {
    for (const Exponent& p : exponents_) {
      if (p != exponents_.front()) return false;
    }
    return true;
  }

  /// The shared exponent; only meaningful when all slots agree.
  const Exponent& common_exponent() const {
    if (!all_equal()) {
      throw OutOfRegimeError("equal-exponent operations require p_1 = ... = p_m");
    }
    return exponents_.front();
  }

  std::string str() const {
    std::string out = "(";
    for (std::size_t i = 0; i < exponents_.size(); ++i) {
      if (i > 0) out += ",";
      out += exponents_[i].str();
    }
    out += ")";
    return out;
  }

 private:
  std::vector<Exponent> exponents_;
};

enum class DistributionKind { gaussian, uniform_sign, sparse };

struct Distribution {
  DistributionKind kind = DistributionKind::gaussian;
  long long nonzeros = 0;  // sparse only

  static Distribution gaussian() { return {}; }
  static Distribution uniform_sign() { return {DistributionKind::uniform_sign, 0}; }
  static Distribution sparse(long long k) {
    if (k < 0) throw ParseError("sparse(k) needs k >= 0");
    return {DistributionKind::sparse, k};
  }

  std::string name() const {
    switch (kind) {
      case DistributionKind::gaussian:
        return "gaussian";
      case DistributionKind::uniform_sign:
        return "uniform-sign";
      case DistributionKind::sparse:
        return "sparse(" + std::to_string(nonzeros) + ")";
    }
    return "gaussian";
  }

  /// "gaussian" | "uniform-sign" | "sparse(K)"
  static Distribution parse(const std::string& text) {
    if (text == "gaussian") return gaussian();
    if (text == "uniform-sign") return uniform_sign();
    if (text.rfind("sparse(", 0) == 0 && text.back() == ')') {
      const std::string inner = text.substr(7, text.size() - 8);
      return sparse(detail::parse_integer(inner));
    }
    throw ParseError("unknown distribution '" + text + "'");
  }
};

/// n^m entries with the dense-storage cap; desk-scale experiments never
/// need more and the guard prevents accidental blowup.
inline std::size_t dense_tensor_size(int order, int dim) {
  if (order < 1) throw DimensionMismatchError("order must be >= 1");
  if (dim < 1) throw DimensionMismatchError("dimension must be >= 1");
  constexpr std::size_t kMaxEntries = 10'000'000;
  std::size_t size = 1;
  for (int i = 0; i < order; ++i) {
    if (size > kMaxEntries / static_cast<std::size_t>(dim)) {
      throw CapacityError("dense tensor of order " + std::to_string(order) + " and dimension " +
                          std::to_string(dim) + " exceeds the 10^7 entry cap");
    }
    size *= static_cast<std::size_t>(dim);
  }
  return size;
}

namespace detail {

// Contract the last (fastest-varying) axis with v: out[J] = sum_j in[J*n+j] v_j.
template <ScalarType S>
std::vector<S> contract_last(const std::vector<S>& data, int dim, const std::vector<S>& v) {
  const std::size_t n = static_cast<std::size_t>(dim);
  const std::size_t rows = data.size() / n;
  std::vector<S> out(rows, S(0));
  for (std::size_t r = 0; r < rows; ++r) {
    S acc(0);
    const S* row = data.data() + r * n;
    for (std::size_t j = 0; j < n; ++j) acc += row[j] * v[j];
    out[r] = acc;
  }
  return out;
}

// Contract the first (slowest-varying) axis: out[K] = sum_j in[j*stride+K] v_j.
template <ScalarType S>
std::vector<S> contract_first(const std::vector<S>& data, int dim, const std::vector<S>& v) {
  const std::size_t n = static_cast<std::size_t>(dim);
  const std::size_t stride = data.size() / n;
  std::vector<S> out(stride, S(0));
  for (std::size_t j = 0; j < n; ++j) {
    const S* block = data.data() + j * stride;
    const S vj = v[j];
    for (std::size_t k = 0; k < stride; ++k) out[k] += block[k] * vj;
  }
  return out;
}

}  // namespace detail

/// Dense order-m form on n-dimensional arguments. Coefficients are stored
/// row-major in the index tuple (j_1, ..., j_m), 0-based internally;
/// a[j_1,...,j_m] = T(e_{j_1}, ..., e_{j_m}).
template <ScalarType S>
class MultilinearForm {
 public:
  MultilinearForm(int order, int dim)
      : order_(order), dim_(dim), coeffs_(dense_tensor_size(order, dim), S(0)) {}

  MultilinearForm(int order, int dim, std::vector<S> coeffs)
      : order_(order), dim_(dim), coeffs_(std::move(coeffs)) {
    if (coeffs_.size() != dense_tensor_size(order, dim)) {
      throw DimensionMismatchError("coefficient count " + std::to_string(coeffs_.size()) +
                                   " does not match n^m");
    }
  }

  /// The product form A(x^1,...,x^m) = sum_j x^1_j ... x^m_j: ones on the
  /// diagonal, zero elsewhere. Attains the sharp constants wherever they
  /// are attained at all.
  static MultilinearForm product(int order, int dim) {
    MultilinearForm f(order, dim);
    const std::size_t step = f.diagonal_stride();
    for (int j = 0; j < dim; ++j) f.coeffs_[static_cast<std::size_t>(j) * step] = S(1);
    return f;
  }

  static MultilinearForm random(int order, int dim, std::uint64_t seed,
                                const Distribution& dist = Distribution::gaussian()) {
    MultilinearForm f(order, dim);
    SeededRng rng(seed);
    switch (dist.kind) {
      case DistributionKind::gaussian:
        for (S& c : f.coeffs_) c = rng.gaussian_scalar<S>();
        break;
      case DistributionKind::uniform_sign:
        for (S& c : f.coeffs_) c = rng.sign_scalar<S>();
        break;
      case DistributionKind::sparse: {
        const std::size_t size = f.coeffs_.size();
        const std::size_t want =
            std::min<std::size_t>(static_cast<std::size_t>(std::max<long long>(dist.nonzeros, 0)), size);
        std::unordered_set<std::size_t> used;
        while (used.size() < want) {
          const std::size_t pos = static_cast<std::size_t>(rng.below(size));
          if (!used.insert(pos).second) continue;
          f.coeffs_[pos] = rng.gaussian_scalar<S>();
        }
        break;
      }
    }
    return f;
  }

  int order() const { return order_; }
  int dim() const { return dim_; }
  std::size_t size() const { return coeffs_.size(); }

  std::span<const S> coefficients() const { return coeffs_; }
  const S& coefficient(std::size_t flat) const { return coeffs_.at(flat); }
  S& coefficient(std::size_t flat) { return coeffs_.at(flat); }

  std::size_t flat_index(std::span<const int> idx) const {
    if (static_cast<int>(idx.size()) != order_) {
      throw DimensionMismatchError("index tuple length does not match the order");
    }
    std::size_t flat = 0;
    for (int axis = 0; axis < order_; ++axis) {
      const int j = idx[static_cast<std::size_t>(axis)];
      if (j < 0 || j >= dim_) throw DimensionMismatchError("index out of range");
      flat = flat * static_cast<std::size_t>(dim_) + static_cast<std::size_t>(j);
    }
    return flat;
  }

  bool is_zero() const {
    for (const S& c : coeffs_) {
      if (c != S(0)) return false;
    }
    return true;
  }

  double max_abs_coefficient() const {
    double peak = 0.0;
    for (const S& c : coeffs_) peak = std::max(peak, abs_value(c));
    return peak;
  }

  /// T(x^1, ..., x^m): linear in each slot separately.
  S evaluate(const std::vector<std::vector<S>>& args) const {
    check_args(args);
    std::vector<S> work(coeffs_.begin(), coeffs_.end());
    for (int axis = order_ - 1; axis >= 0; --axis) {
      work = detail::contract_last(work, dim_, args[static_cast<std::size_t>(axis)]);
    }
    return work[0];
  }

  /// Coefficient vector of the linear functional in one slot with all other
  /// arguments fixed: c_j = T(x^1, ..., e_j, ..., x^m).
  std::vector<S> contract_except(const std::vector<std::vector<S>>& args, int free_slot) const {
    check_args(args);
    if (free_slot < 0 || free_slot >= order_) {
      throw DimensionMismatchError("slot index out of range");
    }
    std::vector<S> work(coeffs_.begin(), coeffs_.end());
    for (int axis = order_ - 1; axis > free_slot; --axis) {
      work = detail::contract_last(work, dim_, args[static_cast<std::size_t>(axis)]);
    }
    for (int axis = 0; axis < free_slot; ++axis) {
      work = detail::contract_first(work, dim_, args[static_cast<std::size_t>(axis)]);
    }
    return work;
  }

  /// d_j = a[j, ..., j] = T(e_j, ..., e_j).
  std::vector<S> diagonal() const {
    std::vector<S> d(static_cast<std::size_t>(dim_));
    const std::size_t step = diagonal_stride();
    for (int j = 0; j < dim_; ++j) d[static_cast<std::size_t>(j)] = coeffs_[static_cast<std::size_t>(j) * step];
    return d;
  }

 private:
  void check_args(const std::vector<std::vector<S>>& args) const {
    if (static_cast<int>(args.size()) != order_) {
      throw DimensionMismatchError("expected " + std::to_string(order_) + " argument vectors, got " +
                                   std::to_string(args.size()));
    }
    for (const auto& v : args) {
      if (static_cast<int>(v.size()) != dim_) {
        throw DimensionMismatchError("argument vector length does not match dimension " +
                                     std::to_string(dim_));
      }
    }
  }

  // flat index of (j, j, ..., j) is j * sum_k n^k
  std::size_t diagonal_stride() const {
    std::size_t step = 0;
    std::size_t power = 1;
    for (int k = 0; k < order_; ++k) {
      step += power;
      power *= static_cast<std::size_t>(dim_);
    }
    return step;
  }

  int order_;
  int dim_;
  std::vector<S> coeffs_;
};

/// (sum_j |T(e_j,...,e_j)|^s)^(1/s); s < 1 is the quasi-norm regime and is
/// allowed, s <= 0 is not.
template <ScalarType S>
double diagonal_s_sum(const MultilinearForm<S>& form, double s) {
  if (!(s > 0.0)) throw InvalidExponentError("diagonal s-sum needs s > 0");
  const std::vector<S> d = form.diagonal();
  double peak = 0.0;
  for (const S& v : d) peak = std::max(peak, abs_value(v));
  if (peak == 0.0) return 0.0;
  double sum = 0.0;
  for (const S& v : d) sum += std::pow(abs_value(v) / peak, s);
  return peak * std::pow(sum, 1.0 / s);
}

}  // namespace diagsum
