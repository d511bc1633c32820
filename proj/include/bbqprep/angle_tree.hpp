// Copyright 2026 The bbqprep Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include "bbqprep/error.hpp"
#include "bbqprep/fixed_point.hpp"
#include "bbqprep/matrix.hpp"
#include "bbqprep/weight_tree.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <string_view>
#include <vector>

namespace bbqprep {

enum class EncodingMode { complex, real_signed };

inline std::string_view to_string(EncodingMode mode) {
  return mode == EncodingMode::complex ? "complex" : "real_signed";
}

inline EncodingMode parse_encoding_mode(std::string_view s) {
  if (s == "complex")
    return EncodingMode::complex;
  if (s == "real_signed")
    return EncodingMode::real_signed;
  throw ParseError("unknown mode '" + std::string(s) + "'");
}

/// theta_z = 2 asin(sqrt(T_R / (T_L + T_R))), or 0 for an empty subtree.
/// R_y(theta_z)|0> then carries amplitudes sqrt(T_L/S), sqrt(T_R/S).
inline double splitting_angle(std::uint64_t z, const WeightTree &tree) {
  const auto [left, right] = sibling_weights(z, tree);
  const double total = left + right;
  if (!(total > 0.0))
    return 0.0;
  const double ratio = std::clamp(right / total, 0.0, 1.0);
  return 2.0 * std::asin(std::sqrt(ratio));
}

/// Angles theta_1 .. theta_{K-1}; element z-1 holds theta_z, and angle-tree
/// node (h, p) is theta_{2^h + p}.
inline std::vector<double> build_angle_tree(const WeightTree &tree) {
  const std::size_t K = tree.leaf_count();
  std::vector<double> thetas(K - 1);
  for (std::uint64_t z = 1; z < K; ++z)
    thetas[z - 1] = splitting_angle(z, tree);
  return thetas;
}

/// phi_z = atan2(Im a_z, Re a_z) mod 2pi, with phi_z = 0 for a_z = 0.
inline std::vector<double> build_phase_layer(const ComplexMatrix &m) {
  std::vector<double> phases;
  phases.reserve(m.size());
  for (const auto &a : m.entries())
    phases.push_back(a == Complex{} ? 0.0 : wrap_phase(std::atan2(a.imag(), a.real())));
  return phases;
}

/// s_z = 1 iff a_z < 0, for every z including the dummy cell's entry a_0.
inline std::vector<std::uint8_t> build_sign_layer(const ComplexMatrix &m) {
  if (!m.is_real())
    throw NotRealMatrix("sign layer needs every imaginary part to be exactly 0");
  std::vector<std::uint8_t> signs;
  signs.reserve(m.size());
  for (const auto &a : m.entries())
    signs.push_back(a.real() < 0.0 ? 1 : 0);
  return signs;
}

/// Angle tree plus leaf data: phases in complex mode, sign bits in
/// real_signed mode (phases are filled in both modes).
struct ComplexAngleTree {
  EncodingMode mode = EncodingMode::complex;
  std::vector<double> thetas;
  std::vector<double> phases;
  std::vector<std::uint8_t> signs;

  std::size_t size() const noexcept { return phases.size(); }
  int address_bits() const noexcept { return exact_log2(phases.size()); }

  double theta(std::uint64_t z) const {
    if (z == 0 || z > thetas.size())
      throw IndexOutOfRange("no angle for memory index " + std::to_string(z));
    return thetas[z - 1];
  }
};

inline ComplexAngleTree build_complex_angle_tree(const ComplexMatrix &m, EncodingMode mode) {
  ComplexAngleTree gamma;
  gamma.mode = mode;
  if (mode == EncodingMode::real_signed)
    gamma.signs = build_sign_layer(m);
  const auto moduli = squared_moduli(m);
  gamma.thetas = build_angle_tree(build_weight_tree(moduli));
  gamma.phases = build_phase_layer(m);
  return gamma;
}

} // namespace bbqprep
