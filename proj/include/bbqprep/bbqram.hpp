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

// Bucket-brigade QRAM emulated at the logical level: K cells of uniform width
// read with XOR semantics over superposed addresses, plus a query ledger that
// charges k routing steps per query.
//
// Cell z carries an angle field and an aux field:
//   complex      angle(theta_z, t bits) || phase(phi_z, t bits)
//   real_signed  angle(theta_z, t bits) || sign(s_z, 1 bit)
// Cell 0's angle field is always zero.

#include "bbqprep/angle_tree.hpp"
#include "bbqprep/bits.hpp"
#include "bbqprep/branch_state.hpp"
#include "bbqprep/error.hpp"
#include "bbqprep/fixed_point.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <bit>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace bbqprep {

struct MemoryCell {
  std::uint64_t angle = 0;
  std::uint64_t aux = 0;
  bool operator==(const MemoryCell &) const = default;
};

class MemoryImage {
public:
  MemoryImage(RegisterLayout layout, std::vector<MemoryCell> cells)
      : layout_(layout), cells_(std::move(cells)) {
    if (cells_.size() != (std::size_t{1} << layout_.k))
      throw LengthMismatch("memory image for k = " + std::to_string(layout_.k) + " needs " +
                           std::to_string(std::size_t{1} << layout_.k) + " cells, got " +
                           std::to_string(cells_.size()));
    if (cells_.front().angle != 0)
      throw InvalidDimensions("cell 0 angle field must be the zero dummy");
    for (const auto &c : cells_)
      if ((c.angle & ~low_mask(layout_.angle_width())) != 0 ||
          (c.aux & ~low_mask(layout_.aux_width())) != 0)
        throw WidthMismatch("cell field exceeds its declared width");
  }

  const RegisterLayout &layout() const noexcept { return layout_; }
  EncodingMode mode() const noexcept { return layout_.mode; }
  CellEncoding encoding() const noexcept { return layout_.encoding; }
  int t() const noexcept { return layout_.t; }
  int k() const noexcept { return layout_.k; }
  int width() const noexcept { return layout_.cell_width(); }
  std::size_t size() const noexcept { return cells_.size(); }
  std::uint64_t memory_bits() const noexcept {
    return static_cast<std::uint64_t>(width()) * cells_.size();
  }

  const MemoryCell &operator[](std::size_t z) const { return cells_.at(z); }
  std::span<const MemoryCell> cells() const noexcept { return cells_; }

private:
  RegisterLayout layout_;
  std::vector<MemoryCell> cells_;
};

namespace detail {

inline int checked_address_bits(std::size_t K) {
  if (K < 2 || !is_power_of_two(K))
    throw NotPowerOfTwo("cell count " + std::to_string(K) + " is not 2^k with k >= 1");
  return exact_log2(K);
}

} // namespace detail

inline MemoryImage layout_complex(std::span<const double> thetas, std::span<const double> phases,
                                  int t) {
  check_precision(t);
  const std::size_t K = phases.size();
  const int k = detail::checked_address_bits(K);
  if (thetas.size() + 1 != K)
    throw LengthMismatch(std::to_string(thetas.size()) + " angles for " + std::to_string(K) +
                         " phases");
  std::vector<MemoryCell> cells(K);
  for (std::size_t z = 0; z < K; ++z) {
    cells[z].angle = z == 0 ? 0 : encode_magnitude_angle(thetas[z - 1], t).bits;
    cells[z].aux = encode_phase(phases[z], t).bits;
  }
  return MemoryImage({k, t, EncodingMode::complex, CellEncoding::fixed_point}, std::move(cells));
}

inline MemoryImage layout_real_signed(std::span<const double> thetas,
                                      std::span<const std::uint8_t> signs, int t) {
  check_precision(t);
  const std::size_t K = signs.size();
  const int k = detail::checked_address_bits(K);
  if (thetas.size() + 1 != K)
    throw LengthMismatch(std::to_string(thetas.size()) + " angles for " + std::to_string(K) +
                         " sign bits");
  std::vector<MemoryCell> cells(K);
  for (std::size_t z = 0; z < K; ++z) {
    cells[z].angle = z == 0 ? 0 : encode_magnitude_angle(thetas[z - 1], t).bits;
    cells[z].aux = signs[z] ? 1 : 0;
  }
  return MemoryImage({k, t, EncodingMode::real_signed, CellEncoding::fixed_point},
                     std::move(cells));
}

/// Unquantized image: fields hold the IEEE-754 patterns of the exact angles.
inline MemoryImage layout_ideal(const ComplexAngleTree &gamma) {
  const std::size_t K = gamma.size();
  const int k = detail::checked_address_bits(K);
  if (gamma.thetas.size() + 1 != K)
    throw LengthMismatch("angle tree and phase layer sizes disagree");
  std::vector<MemoryCell> cells(K);
  for (std::size_t z = 0; z < K; ++z) {
    cells[z].angle = z == 0 ? 0 : std::bit_cast<std::uint64_t>(gamma.thetas[z - 1]);
    if (gamma.mode == EncodingMode::complex)
      cells[z].aux = std::bit_cast<std::uint64_t>(gamma.phases[z]);
    else
      cells[z].aux = gamma.signs.at(z) ? 1 : 0;
  }
  return MemoryImage({k, 0, gamma.mode, CellEncoding::ideal}, std::move(cells));
}

inline MemoryImage layout(const ComplexAngleTree &gamma, int t) {
  if (gamma.mode == EncodingMode::complex)
    return layout_complex(gamma.thetas, gamma.phases, t);
  return layout_real_signed(gamma.thetas, gamma.signs, t);
}

/// Query count and routing time (one time unit per tree level per query).
struct QueryLedger {
  std::uint64_t query_count = 0;
  int k = 0;
  /// When set, each query appends the sorted distinct addresses it served.
  bool record_access = false;
  std::vector<std::vector<std::uint64_t>> access_log;

  std::uint64_t routing_time() const noexcept {
    return query_count * static_cast<std::uint64_t>(k);
  }
};

inline std::uint64_t query_cost(const QueryLedger &ledger, int k) {
  return ledger.query_count * static_cast<std::uint64_t>(k);
}

/// |i>_a |b>_d -> |i>_a |b xor cell_i>_d on every branch. Self-inverse.
inline void query(const MemoryImage &img, BranchState &state, QueryLedger &ledger) {
  if (!(state.layout() == img.layout()))
    throw WidthMismatch("state registers (k=" + std::to_string(state.layout().k) +
                        ", width=" + std::to_string(state.layout().cell_width()) +
                        ") do not match the memory image (k=" + std::to_string(img.k()) +
                        ", width=" + std::to_string(img.width()) + ")");
  BranchState::Map next;
  std::vector<std::uint64_t> served;
  for (const auto &[label, amp] : state.branches()) {
    const auto &cell = img[label.address];
    BasisLabel out = label;
    out.angle_reg ^= cell.angle;
    out.aux_reg ^= cell.aux;
    next[out] += amp;
    if (ledger.record_access)
      served.push_back(label.address);
  }
  state.replace(std::move(next));
  ++ledger.query_count;
  if (ledger.record_access) {
    std::sort(served.begin(), served.end());
    served.erase(std::unique(served.begin(), served.end()), served.end());
    ledger.access_log.push_back(std::move(served));
  }
}

// --- JSON -------------------------------------------------------------------
//
// {"mode": "complex"|"real_signed", "t": t, "k": k, "cells": [...]}
// Each cell is the unsigned integer (angle << aux_width) | aux. Cells wider
// than 64 bits (complex mode with t > 32) are written as decimal strings.

namespace detail {

inline std::string u128_to_string(unsigned __int128 v) {
  if (v == 0)
    return "0";
  std::string s;
  while (v > 0) {
    s.push_back(static_cast<char>('0' + static_cast<int>(v % 10)));
    v /= 10;
  }
  std::reverse(s.begin(), s.end());
  return s;
}

inline unsigned __int128 u128_from_string(const std::string &s) {
  if (s.empty() || s.size() > 39)
    throw ParseError("bad cell value '" + s + "'");
  unsigned __int128 v = 0;
  for (char c : s) {
    if (c < '0' || c > '9')
      throw ParseError("bad cell value '" + s + "'");
    v = v * 10 + static_cast<unsigned>(c - '0');
  }
  return v;
}

} // namespace detail

inline nlohmann::json to_json(const MemoryImage &img) {
  if (img.encoding() != CellEncoding::fixed_point)
    throw WrongMode("only fixed-point memory images are serializable");
  const int aux_width = img.layout().aux_width();
  nlohmann::json cells = nlohmann::json::array();
  for (const auto &c : img.cells()) {
    const unsigned __int128 packed =
        (static_cast<unsigned __int128>(c.angle) << aux_width) | c.aux;
    if (img.width() <= 64)
      cells.push_back(static_cast<std::uint64_t>(packed));
    else
      cells.push_back(detail::u128_to_string(packed));
  }
  return {{"mode", std::string(to_string(img.mode()))},
          {"t", img.t()},
          {"k", img.k()},
          {"cells", std::move(cells)}};
}

inline MemoryImage memory_image_from_json(const nlohmann::json &doc) {
  try {
    const auto mode = parse_encoding_mode(doc.at("mode").get<std::string>());
    const int t = doc.at("t").get<int>();
    const int k = doc.at("k").get<int>();
    check_precision(t);
    if (k < 1 || k > 62)
      throw InvalidDimensions("k = " + std::to_string(k) + " outside [1, 62]");
    const RegisterLayout layout{k, t, mode, CellEncoding::fixed_point};
    const int aux_width = layout.aux_width();
    std::vector<MemoryCell> cells;
    for (const auto &v : doc.at("cells")) {
      unsigned __int128 packed = 0;
      if (v.is_number_unsigned())
        packed = v.get<std::uint64_t>();
      else if (v.is_string())
        packed = detail::u128_from_string(v.get<std::string>());
      else
        throw ParseError("cell values must be unsigned integers");
      if (packed >> layout.cell_width() != 0)
        throw WidthMismatch("cell value wider than " + std::to_string(layout.cell_width()) +
                            " bits");
      cells.push_back({static_cast<std::uint64_t>(packed >> aux_width),
                       static_cast<std::uint64_t>(packed) & low_mask(aux_width)});
    }
    return MemoryImage(layout, std::move(cells));
  } catch (const nlohmann::json::exception &e) {
    throw ParseError(e.what());
  }
}

} // namespace bbqprep
