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

// Unsigned t-bit fixed-point codecs for the two angle conventions stored in
// memory cells:
//
//   magnitude angle  value = bits * 2^(2-t)   in [0, 4)
//   phase            value = bits * 2pi/2^t   in [0, 2pi)
//
// Bit j of a magnitude angle weighs 2^(j+2-t), so the MSB is worth 2 and the
// LSB 2^(2-t). Both encoders round to the nearest grid point, ties away from
// zero.

#include "bbqprep/bits.hpp"
#include "bbqprep/error.hpp"

#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>
#include <string>

namespace bbqprep {

inline constexpr int kMinPrecision = 2;
inline constexpr int kMaxPrecision = 62;
inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

inline void check_precision(int t) {
  if (t < kMinPrecision || t > kMaxPrecision)
    throw PrecisionOutOfRange("t = " + std::to_string(t) + " outside [" +
                              std::to_string(kMinPrecision) + ", " +
                              std::to_string(kMaxPrecision) + "]");
}

/// Grid spacing of magnitude angles, 2^(2-t).
inline double magnitude_step(int t) { return std::ldexp(1.0, 2 - t); }
/// Grid spacing of phases, 2pi/2^t.
inline double phase_step(int t) { return std::ldexp(kTwoPi, -t); }

struct FixedAngle {
  std::uint64_t bits = 0;
  int t = 0;

  double value() const { return std::ldexp(static_cast<double>(bits), 2 - t); }
  bool operator==(const FixedAngle &) const = default;
};

struct FixedPhase {
  std::uint64_t bits = 0;
  int t = 0;

  double value() const { return std::ldexp(static_cast<double>(bits) * kTwoPi, -t); }
  bool operator==(const FixedPhase &) const = default;
};

inline FixedAngle encode_magnitude_angle(double theta, int t) {
  check_precision(t);
  if (!(theta >= 0.0 && theta < 4.0))
    throw AngleOutOfRange("magnitude angle " + std::to_string(theta) + " outside [0, 4)");
  const double steps = std::round(std::ldexp(theta, t - 2));
  const auto bits = static_cast<std::uint64_t>(steps);
  if (bits > low_mask(t))
    throw AngleOutOfRange("magnitude angle " + std::to_string(theta) +
                          " rounds past the top of the " + std::to_string(t) + "-bit grid");
  return {bits, t};
}

/// Reduces phi into [0, 2pi).
inline double wrap_phase(double phi) {
  double r = std::fmod(phi, kTwoPi);
  if (r < 0.0)
    r += kTwoPi;
  if (r >= kTwoPi)
    r = 0.0;
  return r;
}

/// Distance between two angles on the circle, in [0, pi].
inline double circular_distance(double a, double b) {
  const double d = wrap_phase(a - b);
  return d > std::numbers::pi ? kTwoPi - d : d;
}

inline FixedPhase encode_phase(double phi, int t) {
  check_precision(t);
  if (!std::isfinite(phi))
    throw AngleOutOfRange("phase is not finite");
  // Scale before dividing so multiples of pi/2^(t-1) land exactly on the grid.
  const double steps = std::round(std::ldexp(wrap_phase(phi), t) / kTwoPi);
  return {static_cast<std::uint64_t>(steps) & low_mask(t), t};
}

inline double decode_magnitude_angle(const FixedAngle &a) { return a.value(); }
inline double decode_phase(const FixedPhase &p) { return p.value(); }

/// e^{i * bits * 2pi/2^t}. Quarter turns are returned exactly (no sin(pi)
/// residue), so a phase of pi multiplies by exactly -1.
inline std::complex<double> phase_factor(const FixedPhase &p) {
  const int t = p.t;
  if (t >= 2 && (p.bits & low_mask(t - 2)) == 0) {
    switch ((p.bits >> (t - 2)) & 3u) {
    case 0: return {1.0, 0.0};
    case 1: return {0.0, 1.0};
    case 2: return {-1.0, 0.0};
    default: return {0.0, -1.0};
    }
  }
  return std::polar(1.0, p.value());
}

} // namespace bbqprep
