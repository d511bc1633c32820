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

#include <bit>
#include <cstdint>

namespace bbqprep {

inline constexpr bool is_power_of_two(std::uint64_t n) noexcept {
  return std::has_single_bit(n);
}

/// log2 of a power of two.
inline constexpr int exact_log2(std::uint64_t n) noexcept {
  return std::countr_zero(n);
}

/// Mask with the low `width` bits set; width may be 64.
inline constexpr std::uint64_t low_mask(int width) noexcept {
  return width >= 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << width) - 1;
}

} // namespace bbqprep
