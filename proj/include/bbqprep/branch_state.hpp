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

// Sparse statevector over the QPU registers
//
//   w_angle (angle_width) | w_aux (aux_width) | v (1) | a (k)
//
// stored as a map from basis label to amplitude. After every uncompute the
// work registers return to zero, so the number of branches stays bounded by
// the number of addresses (K) regardless of t.

#include "bbqprep/angle_tree.hpp"
#include "bbqprep/bits.hpp"
#include "bbqprep/error.hpp"
#include "bbqprep/fixed_point.hpp"

#include <array>
#include <bit>
#include <cmath>
#include <compare>
#include <complex>
#include <cstdint>
#include <map>
#include <string>
#include <utility>

namespace bbqprep {

/// How a memory cell stores its angle and phase fields.
///  - fixed_point: t-bit codes, exactly as the memory image holds them.
///  - ideal: raw IEEE-754 bit patterns of the unquantized doubles, so the
///    simulation runs at full float precision through the same XOR queries.
enum class CellEncoding { fixed_point, ideal };

inline std::string_view to_string(CellEncoding e) {
  return e == CellEncoding::fixed_point ? "fixed" : "ideal";
}

struct RegisterLayout {
  int k = 1;
  int t = 0;
  EncodingMode mode = EncodingMode::complex;
  CellEncoding encoding = CellEncoding::fixed_point;

  int angle_width() const noexcept { return encoding == CellEncoding::ideal ? 64 : t; }
  int aux_width() const noexcept {
    if (mode == EncodingMode::real_signed)
      return 1;
    return encoding == CellEncoding::ideal ? 64 : t;
  }
  /// Width of one memory cell and of the data register (angle || aux).
  int cell_width() const noexcept { return angle_width() + aux_width(); }
  /// w_angle + w_aux + v + a.
  int qubits() const noexcept { return cell_width() + 1 + k; }

  bool operator==(const RegisterLayout &) const = default;
};

struct BasisLabel {
  std::uint64_t address = 0;
  std::uint8_t v = 0;
  std::uint64_t angle_reg = 0;
  std::uint64_t aux_reg = 0;

  bool work_clean() const noexcept { return angle_reg == 0 && aux_reg == 0; }
  auto operator<=>(const BasisLabel &) const = default;
};

inline constexpr double kDefaultPruneThreshold = 1e-15;

class BranchState {
public:
  using Map = std::map<BasisLabel, Complex>;

  explicit BranchState(RegisterLayout layout) : layout_(layout) {}

  const RegisterLayout &layout() const noexcept { return layout_; }
  const Map &branches() const noexcept { return branches_; }
  std::size_t size() const noexcept { return branches_.size(); }

  Complex amplitude(const BasisLabel &label) const {
    const auto it = branches_.find(label);
    return it == branches_.end() ? Complex{} : it->second;
  }

  double norm_squared() const {
    double s = 0.0;
    for (const auto &[label, amp] : branches_)
      s += std::norm(amp);
    return s;
  }

  bool work_clean() const {
    for (const auto &[label, amp] : branches_)
      if (!label.work_clean())
        return false;
    return true;
  }

  /// Amplitudes with modulus below this are dropped after rotations; exact
  /// zeros are always dropped. Zero disables dust pruning.
  double prune_threshold() const noexcept { return prune_threshold_; }
  void set_prune_threshold(double threshold) noexcept { prune_threshold_ = threshold; }

  void set(const BasisLabel &label, Complex amp) { branches_[label] = amp; }

  /// Swaps in a rebuilt branch map and prunes it.
  void replace(Map next) {
    branches_ = std::move(next);
    prune();
  }

private:
  void prune() {
    std::erase_if(branches_, [this](const auto &kv) {
      const double mag = std::abs(kv.second);
      return mag == 0.0 || mag < prune_threshold_;
    });
  }

  RegisterLayout layout_;
  Map branches_;
  double prune_threshold_ = kDefaultPruneThreshold;
};

/// One branch, all work registers zero, v = 0, address 0^{k-1}1.
inline BranchState init_state(int k, int t, EncodingMode mode,
                              CellEncoding encoding = CellEncoding::fixed_point) {
  if (k < 1 || k > 62)
    throw InvalidDimensions("address width k = " + std::to_string(k) + " outside [1, 62]");
  if (encoding == CellEncoding::fixed_point)
    check_precision(t);
  BranchState state({k, t, mode, encoding});
  state.set({.address = 1}, Complex{1.0, 0.0});
  return state;
}

/// Value of the angle register under the state's cell encoding.
inline double decode_angle_register(const RegisterLayout &layout, std::uint64_t reg) {
  if (layout.encoding == CellEncoding::ideal)
    return std::bit_cast<double>(reg);
  return FixedAngle{reg, layout.t}.value();
}

/// e^{i phi} for the phase held in the aux register.
inline Complex decode_phase_register(const RegisterLayout &layout, std::uint64_t reg) {
  if (layout.encoding == CellEncoding::ideal)
    return std::polar(1.0, std::bit_cast<double>(reg));
  return phase_factor(FixedPhase{reg, layout.t});
}

/// Real 2x2 rotation acting on (|0>_v, |1>_v), row-major.
using Rotation2 = std::array<double, 4>;

inline Rotation2 ry_matrix(double theta) {
  const double c = std::cos(theta / 2.0);
  const double s = std::sin(theta / 2.0);
  return {c, -s, s, c};
}

inline Rotation2 compose(const Rotation2 &a, const Rotation2 &b) {
  return {a[0] * b[0] + a[1] * b[2], a[0] * b[1] + a[1] * b[3],
          a[2] * b[0] + a[3] * b[2], a[2] * b[1] + a[3] * b[3]};
}

namespace detail {

template <class RotationFor>
void apply_v_rotation(BranchState &state, RotationFor &&rotation_for) {
  BranchState::Map next;
  for (const auto &[label, amp] : state.branches()) {
    const Rotation2 r = rotation_for(label);
    BasisLabel to0 = label;
    BasisLabel to1 = label;
    to0.v = 0;
    to1.v = 1;
    // Column `label.v` of the rotation.
    next[to0] += r[label.v == 0 ? 0 : 1] * amp;
    next[to1] += r[label.v == 0 ? 2 : 3] * amp;
  }
  state.replace(std::move(next));
}

} // namespace detail

/// Controlled-R_y cascade from w_angle onto v, applied as the composed
/// rotation R_y(decoded angle).
inline void ry_cascade(BranchState &state) {
  const auto layout = state.layout();
  detail::apply_v_rotation(state, [&](const BasisLabel &label) {
    return ry_matrix(decode_angle_register(layout, label.angle_reg));
  });
}

/// Reference path: t controlled R_y(2^{j+2-t}) gates, one per set bit j,
/// multiplied out gate by gate. Only defined for fixed-point registers.
inline void ry_cascade_gatewise(BranchState &state) {
  const auto layout = state.layout();
  if (layout.encoding != CellEncoding::fixed_point)
    throw WrongMode("gate-by-gate cascade needs fixed-point registers");
  detail::apply_v_rotation(state, [&](const BasisLabel &label) {
    Rotation2 r{1.0, 0.0, 0.0, 1.0};
    for (int j = 0; j < layout.t; ++j)
      if ((label.angle_reg >> j) & 1u)
        r = compose(ry_matrix(std::ldexp(1.0, j + 2 - layout.t)), r);
    return r;
  });
}

/// Controlled-P cascade from w_aux onto v: branches with v = 1 pick up
/// e^{i phi}.
inline void phase_cascade(BranchState &state) {
  const auto layout = state.layout();
  if (layout.mode != EncodingMode::complex)
    throw WrongMode("phase cascade needs a complex-mode phase register");
  BranchState::Map next;
  for (const auto &[label, amp] : state.branches())
    next[label] = label.v == 1 ? amp * decode_phase_register(layout, label.aux_reg) : amp;
  state.replace(std::move(next));
}

/// Reference path for the phase cascade: P(2^j * 2pi/2^t) per set bit.
inline void phase_cascade_gatewise(BranchState &state) {
  const auto layout = state.layout();
  if (layout.mode != EncodingMode::complex || layout.encoding != CellEncoding::fixed_point)
    throw WrongMode("gate-by-gate phase cascade needs a fixed-point complex register");
  BranchState::Map next;
  for (const auto &[label, amp] : state.branches()) {
    Complex factor{1.0, 0.0};
    if (label.v == 1)
      for (int j = 0; j < layout.t; ++j)
        if ((label.aux_reg >> j) & 1u)
          factor *= std::polar(1.0, std::ldexp(kTwoPi, j - layout.t));
    next[label] = amp * factor;
  }
  state.replace(std::move(next));
}

/// C_{w_s} Z_v: negates branches with sign bit 1 and v = 1.
inline void controlled_z_sign(BranchState &state) {
  if (state.layout().mode != EncodingMode::real_signed)
    throw WrongMode("controlled-Z sign step needs a real_signed sign register");
  BranchState::Map next;
  for (const auto &[label, amp] : state.branches())
    next[label] = (label.v == 1 && (label.aux_reg & 1u)) ? -amp : amp;
  state.replace(std::move(next));
}

/// Left circular shift on (v, a_{k-1} .. a_0): v <- a_{k-1},
/// a <- a_{k-2} .. a_0 v.
inline void circular_shift(BranchState &state) {
  const int k = state.layout().k;
  BranchState::Map next;
  for (const auto &[label, amp] : state.branches()) {
    if (!label.work_clean())
      throw DirtyWorkRegisters("shift on a branch with nonzero work registers (address " +
                               std::to_string(label.address) + ")");
    BasisLabel out;
    out.v = static_cast<std::uint8_t>((label.address >> (k - 1)) & 1u);
    out.address = ((label.address << 1) & low_mask(k)) | label.v;
    next[out] = amp;
  }
  state.replace(std::move(next));
}

} // namespace bbqprep
