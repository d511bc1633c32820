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

#include "bbqprep/bits.hpp"
#include "bbqprep/error.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace bbqprep {

/// Bottom-up sum tree over K = 2^k non-negative weights.
///
/// Node (h, p), h in [0, k], p in [0, 2^h), holds the sum of the leaves
/// p*K/2^h .. (p+1)*K/2^h - 1. Height 0 is the root, height k the leaves.
class WeightTree {
public:
  int depth() const noexcept { return static_cast<int>(levels_.size()) - 1; }
  std::size_t leaf_count() const noexcept { return levels_.back().size(); }

  double at(int h, std::uint64_t p) const {
    if (h < 0 || h > depth() || p >= levels_[static_cast<std::size_t>(h)].size())
      throw IndexOutOfRange("no tree node (" + std::to_string(h) + ", " + std::to_string(p) + ")");
    return levels_[static_cast<std::size_t>(h)][p];
  }

  std::span<const double> level(int h) const {
    if (h < 0 || h > depth())
      throw IndexOutOfRange("no tree level " + std::to_string(h));
    return levels_[static_cast<std::size_t>(h)];
  }

  /// Squared Frobenius norm.
  double root() const noexcept { return levels_.front().front(); }

private:
  friend WeightTree build_weight_tree(std::span<const double> weights);
  std::vector<std::vector<double>> levels_;
};

inline WeightTree build_weight_tree(std::span<const double> weights) {
  const std::size_t K = weights.size();
  if (K < 2 || !is_power_of_two(K))
    throw NotPowerOfTwo("weight count " + std::to_string(K) + " is not 2^k with k >= 1");
  if (std::any_of(weights.begin(), weights.end(), [](double w) { return !(w >= 0.0); }))
    throw InvalidDimensions("weights must be non-negative");
  if (std::none_of(weights.begin(), weights.end(), [](double w) { return w > 0.0; }))
    throw AllZeroWeights("every weight is zero");

  const int k = exact_log2(K);
  WeightTree tree;
  tree.levels_.resize(static_cast<std::size_t>(k) + 1);
  tree.levels_[static_cast<std::size_t>(k)].assign(weights.begin(), weights.end());
  for (int h = k - 1; h >= 0; --h) {
    const auto &below = tree.levels_[static_cast<std::size_t>(h) + 1];
    auto &here = tree.levels_[static_cast<std::size_t>(h)];
    here.resize(below.size() / 2);
    for (std::size_t p = 0; p < here.size(); ++p)
      here[p] = below[2 * p] + below[2 * p + 1];
  }
  return tree;
}

/// Memory index z >= 1 addresses the splitting of node (level - 1, position);
/// level = floor(log2 z) + 1 and position = z - 2^floor(log2 z).
struct LevelPosition {
  int level = 0;
  std::uint64_t position = 0;
  bool operator==(const LevelPosition &) const = default;
};

inline LevelPosition level_position(std::uint64_t z) {
  if (z == 0)
    throw IndexOutOfRange("memory index 0 is the dummy cell and has no tree node");
  const int floor_log = 63 - std::countl_zero(z);
  return {floor_log + 1, z - (std::uint64_t{1} << floor_log)};
}

struct SiblingWeights {
  double left = 0.0;
  double right = 0.0;
};

/// The two children (T_L, T_R) split by the angle stored in cell z.
inline SiblingWeights sibling_weights(std::uint64_t z, const WeightTree &tree) {
  if (z == 0 || z >= tree.leaf_count())
    throw IndexOutOfRange("memory index " + std::to_string(z) + " outside [1, " +
                          std::to_string(tree.leaf_count() - 1) + "]");
  const auto [l, d] = level_position(z);
  return {tree.at(l, 2 * d), tree.at(l, 2 * d + 1)};
}

} // namespace bbqprep
