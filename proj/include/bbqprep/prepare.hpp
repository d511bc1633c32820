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

// Classical preprocessing and the two preparation procedures.
//
// Both procedures share the magnitude loop
//   for h = 1..k: query, R_y cascade, query (uncompute), circular shift
// and finish with a query / leaf step / query, where the leaf step is the
// controlled-P phase cascade (complex) or the controlled-Z sign flip
// (real_signed). Every run issues exactly 2k + 2 queries.

#include "bbqprep/angle_tree.hpp"
#include "bbqprep/bbqram.hpp"
#include "bbqprep/branch_state.hpp"
#include "bbqprep/error.hpp"
#include "bbqprep/matrix.hpp"
#include "bbqprep/weight_tree.hpp"

#include <cmath>
#include <cstdint>
#include <functional>
#include <string>

namespace bbqprep {

/// Matrix -> fixed-point memory image (t bits per angle / phase field).
inline MemoryImage preprocess(const ComplexMatrix &m, EncodingMode mode, int t) {
  check_precision(t);
  return layout(build_complex_angle_tree(m, mode), t);
}

/// Matrix -> unquantized memory image.
inline MemoryImage preprocess_ideal(const ComplexMatrix &m, EncodingMode mode) {
  return layout_ideal(build_complex_angle_tree(m, mode));
}

/// Number of classical angle / phase / sign evaluations behind an image:
/// K - 1 splitting angles plus K leaf fields.
inline std::uint64_t preprocessing_ops(std::uint64_t K) { return 2 * K - 1; }

struct PrepareOptions {
  /// Called after each magnitude iteration h (after its shift), h = 1..k.
  std::function<void(int h, const BranchState &)> on_iteration;
  double prune_threshold = kDefaultPruneThreshold;
  bool record_access = false;
};

struct Preparation {
  BranchState state;
  QueryLedger ledger;
};

namespace detail {

inline Preparation run_preparation(const MemoryImage &img, EncodingMode expected,
                                   const PrepareOptions &options) {
  if (img.mode() != expected)
    throw WrongMode("memory image is " + std::string(to_string(img.mode())) + ", expected " +
                    std::string(to_string(expected)));
  const int k = img.k();
  BranchState state = init_state(k, img.t(), img.mode(), img.encoding());
  state.set_prune_threshold(options.prune_threshold);
  QueryLedger ledger;
  ledger.k = k;
  ledger.record_access = options.record_access;

  for (int h = 1; h <= k; ++h) {
    query(img, state, ledger);
    ry_cascade(state);
    query(img, state, ledger);
    circular_shift(state);
    if (options.on_iteration)
      options.on_iteration(h, state);
  }

  query(img, state, ledger);
  if (expected == EncodingMode::complex)
    phase_cascade(state);
  else
    controlled_z_sign(state);
  query(img, state, ledger);

  if (!state.work_clean())
    throw DirtyWorkRegisters("work registers not restored after the leaf step");
  return {std::move(state), std::move(ledger)};
}

} // namespace detail

inline Preparation prepare_complex(const MemoryImage &img, const PrepareOptions &options = {}) {
  return detail::run_preparation(img, EncodingMode::complex, options);
}

inline Preparation prepare_real(const MemoryImage &img, const PrepareOptions &options = {}) {
  return detail::run_preparation(img, EncodingMode::real_signed, options);
}

inline Preparation prepare(const MemoryImage &img, const PrepareOptions &options = {}) {
  return detail::run_preparation(img, img.mode(), options);
}

/// Routing-marker invariant after magnitude iteration h: every branch has
/// clean work registers, v = 0 and address 0^{k-h-1} 1 bin_h(p) for h < k
/// (v = 1 and address bin_k(p) for h = k), and the amplitude on position p
/// has modulus sqrt(T_{h,p}) / ||A||_F up to k 2^{1-t} + 1e-10.
inline bool marker_check(const BranchState &state, int h, const WeightTree &tree) {
  const auto &layout = state.layout();
  const int k = layout.k;
  if (h < 1 || h > k || tree.depth() != k)
    return false;
  const double tol = (layout.encoding == CellEncoding::fixed_point
                          ? k * std::ldexp(1.0, 1 - layout.t)
                          : 0.0) +
                     1e-10;
  const std::uint64_t marker = h < k ? (std::uint64_t{1} << h) : 0;
  const std::uint8_t v_expected = h < k ? 0 : 1;
  const std::uint64_t positions = std::uint64_t{1} << h;

  for (const auto &[label, amp] : state.branches()) {
    if (!label.work_clean() || label.v != v_expected)
      return false;
    if ((label.address & ~(positions - 1)) != marker)
      return false;
  }
  const double norm = std::sqrt(tree.root());
  for (std::uint64_t p = 0; p < positions; ++p) {
    const Complex amp = state.amplitude({.address = marker | p, .v = v_expected});
    if (std::abs(std::abs(amp) - std::sqrt(tree.at(h, p)) / norm) > tol)
      return false;
  }
  return true;
}

} // namespace bbqprep
