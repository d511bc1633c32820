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

// End-to-end replay of the 2x4 complex reference matrix
//
//   [ 2+i  -1+2i   3   -i  ]
//   [ 1-i   2i   -2+i  1+i ]
//
// through preprocessing, the three magnitude iterations, and the phase step,
// checking every published intermediate value.

#include "bbqprep/angle_tree.hpp"
#include "bbqprep/bbqram.hpp"
#include "bbqprep/matrix.hpp"
#include "bbqprep/prepare.hpp"
#include "bbqprep/verify.hpp"
#include "bbqprep/weight_tree.hpp"

#include <array>
#include <cmath>
#include <iomanip>
#include <numbers>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

namespace bbqprep {

inline ComplexMatrix worked_example_matrix() {
  return ComplexMatrix(2, 4,
                       {{2, 1}, {-1, 2}, {3, 0}, {0, -1}, {1, -1}, {0, 2}, {-2, 1}, {1, 1}});
}

/// Reference values, rounded to three decimals where not exact.
struct WorkedExampleTable {
  static constexpr std::array<double, 8> squared_moduli{5, 5, 9, 1, 2, 4, 5, 2};
  static constexpr std::array<double, 1> level0{33};
  static constexpr std::array<double, 2> level1{20, 13};
  static constexpr std::array<double, 4> level2{10, 10, 6, 7};
  static constexpr std::array<double, 7> thetas{1.357, std::numbers::pi / 2, 1.648,
                                                std::numbers::pi / 2, 0.644, 1.911, 1.128};
  // Signed representatives; stored modulo 2pi.
  static constexpr std::array<double, 8> phases{0.464,  2.034, 0.0,   -std::numbers::pi / 2,
                                                -0.785, std::numbers::pi / 2, 2.678, 0.785};
  static constexpr double angle_tolerance = 1e-3;
  static constexpr double state_tolerance = 1e-6;
  static constexpr double final_tolerance = 1e-10;
};

struct WorkedExampleReport {
  bool passed = true;
  /// First mismatched quantity, empty on success.
  std::string failure;
  int checks = 0;
};

namespace detail {

class ExampleChecker {
public:
  explicit ExampleChecker(std::ostream &log) : log_(log) {}

  void check(bool ok, const std::string &what) {
    ++report_.checks;
    log_ << (ok ? "  ok    " : "  FAIL  ") << what << '\n';
    if (!ok && report_.passed) {
      report_.passed = false;
      report_.failure = what;
    }
  }

  void close(const std::string &what, double got, double want, double tol) {
    std::ostringstream s;
    s << what << " = " << std::setprecision(6) << got << " (expected " << want << ")";
    check(std::abs(got - want) <= tol, s.str());
  }

  WorkedExampleReport report() const { return report_; }

private:
  std::ostream &log_;
  WorkedExampleReport report_;
};

inline void check_amplitudes(ExampleChecker &c, const BranchState &state, int h,
                             std::span<const std::pair<std::uint64_t, double>> expected,
                             std::uint8_t v, double tol) {
  c.check(state.work_clean(), "h=" + std::to_string(h) + ": work registers clean");
  c.check(state.size() == expected.size(),
          "h=" + std::to_string(h) + ": " + std::to_string(expected.size()) + " branches");
  for (const auto &[address, modulus] : expected) {
    const Complex amp = state.amplitude({.address = address, .v = v});
    c.close("h=" + std::to_string(h) + ": amplitude on address " + std::to_string(address),
            amp.real(), modulus, tol);
    c.close("h=" + std::to_string(h) + ": imaginary part on address " + std::to_string(address),
            amp.imag(), 0.0, tol);
  }
}

} // namespace detail

inline WorkedExampleReport run_worked_example(std::ostream &log) {
  using Table = WorkedExampleTable;
  detail::ExampleChecker c(log);
  const auto m = worked_example_matrix();
  const double s33 = std::sqrt(33.0);

  log << "Matrix A (2x4), M = " << m.rows() << ", N = " << m.cols() << ", K = " << m.size()
      << ", k = " << m.address_bits() << "\n";
  c.check(m.rows() == 2 && m.cols() == 4 && m.size() == 8 && m.address_bits() == 3,
          "dimensions M=2, N=4, K=8, k=3");

  log << "\nClassical preprocessing\n";
  const auto moduli = squared_moduli(m);
  for (std::size_t z = 0; z < 8; ++z)
    c.check(moduli[z] == Table::squared_moduli[z],
            "|a_" + std::to_string(z) + "|^2 = " + std::to_string(static_cast<int>(moduli[z])));

  const auto tree = build_weight_tree(moduli);
  c.check(tree.root() == 33.0, "root T_{0,0} = 33 = ||A||_F^2");
  for (std::size_t p = 0; p < 2; ++p)
    c.check(tree.at(1, p) == Table::level1[p], "T_{1," + std::to_string(p) + "} = " +
                                                   std::to_string(static_cast<int>(tree.at(1, p))));
  for (std::size_t p = 0; p < 4; ++p)
    c.check(tree.at(2, p) == Table::level2[p], "T_{2," + std::to_string(p) + "} = " +
                                                   std::to_string(static_cast<int>(tree.at(2, p))));

  const auto gamma = build_complex_angle_tree(m, EncodingMode::complex);
  c.check(gamma.thetas.size() == 7, "angle tree has K-1 = 7 nodes");
  for (std::uint64_t z = 1; z <= 7; ++z)
    c.close("theta_" + std::to_string(z), gamma.theta(z), Table::thetas[z - 1],
            Table::angle_tolerance);
  for (std::size_t z = 0; z < 8; ++z) {
    std::ostringstream s;
    s << "phi_" << z << " = " << std::setprecision(6) << gamma.phases[z] << " (expected "
      << Table::phases[z] << " mod 2pi)";
    c.check(circular_distance(gamma.phases[z], Table::phases[z]) <= Table::angle_tolerance,
            s.str());
  }

  log << "\nStep 1: amplitude preparation (ideal angles)\n";
  const auto img = layout_ideal(gamma);
  const std::vector<std::pair<std::uint64_t, double>> after1{{0b010, std::sqrt(20.0) / s33},
                                                             {0b011, std::sqrt(13.0) / s33}};
  const std::vector<std::pair<std::uint64_t, double>> after2{{0b100, std::sqrt(10.0) / s33},
                                                             {0b101, std::sqrt(10.0) / s33},
                                                             {0b110, std::sqrt(6.0) / s33},
                                                             {0b111, std::sqrt(7.0) / s33}};
  std::vector<std::pair<std::uint64_t, double>> after3;
  for (std::uint64_t z = 0; z < 8; ++z)
    after3.emplace_back(z, std::sqrt(Table::squared_moduli[z]) / s33);

  PrepareOptions options;
  options.record_access = true;
  options.on_iteration = [&](int h, const BranchState &state) {
    log << " iteration h=" << h << '\n';
    if (h == 1)
      detail::check_amplitudes(c, state, h, after1, 0, Table::state_tolerance);
    else if (h == 2)
      detail::check_amplitudes(c, state, h, after2, 0, Table::state_tolerance);
    else
      detail::check_amplitudes(c, state, h, after3, 1, Table::state_tolerance);
    c.check(marker_check(state, h, tree), "h=" + std::to_string(h) + ": routing marker invariant");
  };
  const auto prep = prepare_complex(img, options);

  const auto &log_entries = prep.ledger.access_log;
  c.check(log_entries.size() == 8, "8 queries issued (2k + 2)");
  if (log_entries.size() == 8) {
    c.check(log_entries[0] == std::vector<std::uint64_t>{1}, "h=1 reads cell L_1");
    c.check(log_entries[2] == std::vector<std::uint64_t>{2, 3}, "h=2 reads cells L_2, L_3");
    c.check(log_entries[4] == std::vector<std::uint64_t>{4, 5, 6, 7}, "h=3 reads cells L_4..L_7");
    c.check(log_entries[6].size() == 8, "phase step reads all eight cells");
  }

  log << "\nStep 2: phase encoding\n";
  const auto oracle = oracle_state(m);
  const auto amps = address_amplitudes(prep.state);
  for (std::size_t z = 0; z < 8; ++z) {
    const Complex want = m[z] / s33;
    std::ostringstream s;
    s << "final amplitude on |" << z << "> = " << std::setprecision(6) << amps[z]
      << " (expected " << want << ")";
    c.check(std::abs(amps[z] - want) <= Table::final_tolerance, s.str());
  }
  const double err = state_error(prep.state, oracle);
  std::ostringstream s;
  s << "l2 error vs (1/sqrt 33) A = " << std::setprecision(3) << err;
  c.check(err <= Table::final_tolerance, s.str());
  c.check(prep.ledger.query_count == 8 && prep.ledger.routing_time() == 24,
          "ledger: 8 queries, routing time 24");

  const auto report = c.report();
  log << '\n'
      << (report.passed ? "PASS" : "FAIL: " + report.failure) << " (" << report.checks
      << " checks)\n";
  return report;
}

} // namespace bbqprep
