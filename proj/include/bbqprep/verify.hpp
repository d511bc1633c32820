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

#include "bbqprep/bbqram.hpp"
#include "bbqprep/branch_state.hpp"
#include "bbqprep/error.hpp"
#include "bbqprep/matrix.hpp"
#include "bbqprep/prepare.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <future>
#include <iomanip>
#include <limits>
#include <numbers>
#include <ostream>
#include <span>
#include <string>
#include <vector>

namespace bbqprep {

/// Target amplitudes a_z / ||A||_F.
inline std::vector<Complex> oracle_state(const ComplexMatrix &m) {
  double norm_sq = 0.0;
  for (const auto &a : m.entries())
    norm_sq += std::norm(a);
  if (!(norm_sq > 0.0))
    throw AllZeroMatrix("oracle state of a zero matrix");
  const double norm = std::sqrt(norm_sq);
  std::vector<Complex> out;
  out.reserve(m.size());
  for (const auto &a : m.entries())
    out.push_back(a / norm);
  return out;
}

/// Address-register amplitudes of a finished preparation (clean work
/// registers, v = 1 on every branch).
inline std::vector<Complex> address_amplitudes(const BranchState &state) {
  std::vector<Complex> out(std::size_t{1} << state.layout().k);
  for (const auto &[label, amp] : state.branches()) {
    if (!label.work_clean() || label.v != 1)
      throw DirtyState("branch at address " + std::to_string(label.address) +
                       " has dirty work registers or v = 0");
    out[label.address] += amp;
  }
  return out;
}

/// l2 distance between the prepared address amplitudes and the oracle. No
/// global phase is factored out.
inline double state_error(const BranchState &prepared, std::span<const Complex> oracle) {
  const auto amps = address_amplitudes(prepared);
  if (amps.size() != oracle.size())
    throw LengthMismatch("prepared state has " + std::to_string(amps.size()) +
                         " amplitudes, oracle has " + std::to_string(oracle.size()));
  double s = 0.0;
  for (std::size_t z = 0; z < amps.size(); ++z)
    s += std::norm(amps[z] - oracle[z]);
  return std::sqrt(s);
}

/// Precision budget for exact cascades (synthesis errors eps_y = eps_phi = 0):
///   bound = k (delta_theta / 2 + eps_y) + delta_phi + eps_phi = (k + pi) 2^-t.
struct ErrorBudget {
  double delta_theta = 0.0;
  double delta_phi = 0.0;
  double eps_y = 0.0;
  double eps_phi = 0.0;

  static ErrorBudget for_precision(int t) {
    return {std::ldexp(1.0, 1 - t), std::numbers::pi * std::ldexp(1.0, -t), 0.0, 0.0};
  }

  double bound(int k) const { return k * (delta_theta / 2.0 + eps_y) + delta_phi + eps_phi; }
};

inline double error_bound(int k, int t) { return ErrorBudget::for_precision(t).bound(k); }

/// Slack applied to error_bound when it is used as a pass/fail threshold.
inline constexpr double kBoundSlack = 4.0;

/// Smallest t in [kMinPrecision, kMaxPrecision] with error_bound(k, t) <= eta.
inline int smallest_sufficient_precision(int k, double eta) {
  for (int t = kMinPrecision; t <= kMaxPrecision; ++t)
    if (error_bound(k, t) <= eta)
      return t;
  throw PrecisionOutOfRange("no codec precision reaches eta = " + std::to_string(eta));
}

struct ResourceReport {
  EncodingMode mode = EncodingMode::complex;
  std::uint64_t K = 0;
  int k = 0;
  int t = 0;
  int qpu_qubits = 0;
  /// Qubits of the magnitude loop alone (address, angle register, target).
  int magnitude_loop_qubits = 0;
  int cell_width_bits = 0;
  std::uint64_t memory_bits = 0;
  std::uint64_t query_count = 0;
  std::uint64_t routing_time = 0;
  std::uint64_t preprocessing_ops = 0;
};

inline ResourceReport resource_report(std::uint64_t K, int t, EncodingMode mode) {
  if (K < 2 || !is_power_of_two(K))
    throw NotPowerOfTwo("K = " + std::to_string(K) + " is not 2^k with k >= 1");
  check_precision(t);
  const int k = exact_log2(K);
  const RegisterLayout layout{k, t, mode, CellEncoding::fixed_point};
  ResourceReport r;
  r.mode = mode;
  r.K = K;
  r.k = k;
  r.t = t;
  r.qpu_qubits = layout.qubits();
  r.magnitude_loop_qubits = k + t + 1;
  r.cell_width_bits = layout.cell_width();
  r.memory_bits = static_cast<std::uint64_t>(r.cell_width_bits) * K;
  r.query_count = 2 * static_cast<std::uint64_t>(k) + 2;
  r.routing_time = r.query_count * static_cast<std::uint64_t>(k);
  r.preprocessing_ops = preprocessing_ops(K);
  return r;
}

inline nlohmann::json to_json(const ResourceReport &r) {
  return {{"mode", std::string(to_string(r.mode))},
          {"K", r.K},
          {"k", r.k},
          {"t", r.t},
          {"qpu_qubits", r.qpu_qubits},
          {"magnitude_loop_qubits", r.magnitude_loop_qubits},
          {"cell_width_bits", r.cell_width_bits},
          {"memory_bits", r.memory_bits},
          {"query_count", r.query_count},
          {"routing_time", r.routing_time},
          {"preprocessing_ops", r.preprocessing_ops}};
}

struct SweepRow {
  int t = 0;
  double measured_error = 0.0;
  double bound = 0.0;
};

/// Fixed-point preparation at each t, measured against the oracle. Rows come
/// back sorted by t; runs execute concurrently.
inline std::vector<SweepRow> precision_sweep(const ComplexMatrix &m, std::span<const int> t_values,
                                             EncodingMode mode = EncodingMode::complex) {
  for (int t : t_values)
    check_precision(t);
  std::vector<int> ts(t_values.begin(), t_values.end());
  std::sort(ts.begin(), ts.end());
  ts.erase(std::unique(ts.begin(), ts.end()), ts.end());

  const auto oracle = oracle_state(m);
  const auto gamma = build_complex_angle_tree(m, mode);
  std::vector<std::future<SweepRow>> runs;
  runs.reserve(ts.size());
  for (int t : ts)
    runs.push_back(std::async(std::launch::async, [&, t] {
      const auto prep = prepare(layout(gamma, t));
      return SweepRow{t, state_error(prep.state, oracle), error_bound(m.address_bits(), t)};
    }));
  std::vector<SweepRow> rows;
  rows.reserve(runs.size());
  for (auto &r : runs)
    rows.push_back(r.get());
  return rows;
}

inline void write_sweep_csv(std::ostream &out, std::span<const SweepRow> rows) {
  const auto old_precision = out.precision();
  out << "t,measured_error,bound\n" << std::setprecision(std::numeric_limits<double>::max_digits10);
  for (const auto &r : rows)
    out << r.t << ',' << r.measured_error << ',' << r.bound << '\n';
  out.precision(old_precision);
}

/// {"k": k, "branches": [{"address", "v", "amp": [re, im]}]} sorted by
/// address. Work registers must be clean.
inline nlohmann::json state_to_json(const BranchState &state) {
  nlohmann::json branches = nlohmann::json::array();
  for (const auto &[label, amp] : state.branches()) {
    if (!label.work_clean())
      throw DirtyState("cannot dump a branch with nonzero work registers");
    branches.push_back(
        {{"address", label.address}, {"v", label.v}, {"amp", {amp.real(), amp.imag()}}});
  }
  return {{"k", state.layout().k}, {"branches", std::move(branches)}};
}

} // namespace bbqprep
