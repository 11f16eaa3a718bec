#pragma once

#include <cmath>
#include <fstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "diagsum/errors.hpp"
#include "diagsum/forms.hpp"

namespace diagsum {

using Json = nlohmann::ordered_json;

/// Tensor wire format:
///   {"m": 2, "n": 2, "scalar_mode": "real", "coeffs": [1.0, 0.0, 0.0, 1.0]}
/// with coefficients flat in row-major (j_1,...,j_m) order and complex
/// entries as [re, im] pairs. Doubles are emitted shortest-round-trip, so
/// the round trip is bit-exact.
template <ScalarType S>
Json form_to_json(const MultilinearForm<S>& form) {
  Json j;
  j["m"] = form.order();
  j["n"] = form.dim();
  j["scalar_mode"] = scalar_mode_name<S>();
  Json coeffs = Json::array();
  for (const S& c : form.coefficients()) {
    if constexpr (std::is_same_v<S, double>) {
      if (!std::isfinite(c)) throw IoError("tensor serialization requires finite coefficients");
      coeffs.push_back(c);
    } else {
      if (!std::isfinite(c.real()) || !std::isfinite(c.imag())) {
        throw IoError("tensor serialization requires finite coefficients");
      }
      coeffs.push_back(Json::array({c.real(), c.imag()}));
    }
  }
  j["coeffs"] = std::move(coeffs);
  return j;
}

inline std::string scalar_mode_of(const Json& j) {
  if (!j.contains("scalar_mode") || !j["scalar_mode"].is_string()) {
    throw IoError("tensor JSON lacks a scalar_mode field");
  }
  return j["scalar_mode"].get<std::string>();
}

template <ScalarType S>
MultilinearForm<S> form_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("m") || !j.contains("n") || !j.contains("coeffs")) {
    throw IoError("tensor JSON needs fields m, n, scalar_mode, coeffs");
  }
  if (scalar_mode_of(j) != scalar_mode_name<S>()) {
    throw IoError("tensor JSON scalar_mode '" + scalar_mode_of(j) + "' does not match requested mode '" +
                  scalar_mode_name<S>() + "'");
  }
  const int m = j["m"].get<int>();
  const int n = j["n"].get<int>();
  const Json& coeffs = j["coeffs"];
  if (!coeffs.is_array() || coeffs.size() != dense_tensor_size(m, n)) {
    throw IoError("tensor JSON coefficient count does not match n^m");
  }
  std::vector<S> values;
  values.reserve(coeffs.size());
  for (const Json& entry : coeffs) {
    if constexpr (std::is_same_v<S, double>) {
      if (!entry.is_number()) throw IoError("real tensor entries must be numbers");
      values.push_back(entry.get<double>());
    } else {
      if (!entry.is_array() || entry.size() != 2) {
        throw IoError("complex tensor entries must be [re, im] pairs");
      }
      values.emplace_back(entry[0].get<double>(), entry[1].get<double>());
    }
  }
  return MultilinearForm<S>(m, n, std::move(values));
}

inline Json load_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open '" + path + "'");
  try {
    return Json::parse(in);
  } catch (const std::exception& e) {
    throw IoError("cannot parse '" + path + "': " + e.what());
  }
}

template <ScalarType S>
MultilinearForm<S> load_form(const std::string& path) {
  return form_from_json<S>(load_json_file(path));
}

template <ScalarType S>
void save_form(const MultilinearForm<S>& form, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot write '" + path + "'");
  out << form_to_json(form).dump() << "\n";
}

}  // namespace diagsum
