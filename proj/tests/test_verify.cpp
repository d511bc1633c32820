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

#include "bbqprep/verify.hpp"
#include "bbqprep/worked_example.hpp"
#include "test_support.hpp"

#include <gtest/gtest.h>

#include <numbers>
#include <random>
#include <sstream>

using namespace bbqprep;
using std::numbers::pi;

TEST(Oracle, ExampleAmplitudes) {
  const auto o = oracle_state(worked_example_matrix());
  const double n = std::sqrt(33.0);
  EXPECT_NEAR(std::abs(o[0] - Complex(2 / n, 1 / n)), 0.0, 1e-15);
  EXPECT_NEAR(std::abs(o[6] - Complex(-2 / n, 1 / n)), 0.0, 1e-15);
  const auto ref = test::normalized_entries(worked_example_matrix().entries());
  for (std::size_t z = 0; z < 8; ++z)
    EXPECT_NEAR(std::abs(o[z] - ref[z]), 0.0, 1e-15);
}

TEST(ErrorBound, Examples) {
  EXPECT_DOUBLE_EQ(error_bound(3, 10), (3 + pi) / 1024);
  EXPECT_NEAR(error_bound(3, 10), 0.0059976, 1e-7);
  for (int t = 2; t < 40; ++t)
    EXPECT_DOUBLE_EQ(error_bound(7, t + 1), error_bound(7, t) / 2);
  const auto b = ErrorBudget::for_precision(10);
  EXPECT_DOUBLE_EQ(b.delta_theta, std::ldexp(1.0, -9));
  EXPECT_DOUBLE_EQ(b.delta_phi, pi / 1024);
  const ErrorBudget synth{b.delta_theta, b.delta_phi, 1e-4, 2e-4};
  EXPECT_DOUBLE_EQ(synth.bound(3), error_bound(3, 10) + 3e-4 + 2e-4);
}

TEST(ErrorBound, SmallestSufficientPrecision) {
  EXPECT_EQ(smallest_sufficient_precision(3, 1e-3), 13);
  EXPECT_EQ(smallest_sufficient_precision(3, 1e-6), 23);
  for (int k : {1, 5, 20})
    for (double eta : {1e-2, 1e-5, 1e-9}) {
      const int t = smallest_sufficient_precision(k, eta);
      EXPECT_LE((k + pi) * std::ldexp(1.0, -t), eta);
      if (t > kMinPrecision) {
        EXPECT_GT((k + pi) * std::ldexp(1.0, 1 - t), eta);
      }
    }
  EXPECT_THROW(smallest_sufficient_precision(3, 1e-30), PrecisionOutOfRange);
}

TEST(Resources, ReferenceRows) {
  struct Row {
    int k;
    int qubits;
    std::uint64_t bits;
    std::uint64_t queries;
  };
  for (const Row &row : {Row{10, 75, 65536, 22}, Row{20, 85, std::uint64_t{64} << 20, 42},
                         Row{30, 95, std::uint64_t{64} << 30, 62}}) {
    const auto r = resource_report(std::uint64_t{1} << row.k, 32, EncodingMode::complex);
    EXPECT_EQ(r.qpu_qubits, row.qubits);
    EXPECT_EQ(r.memory_bits, row.bits);
    EXPECT_EQ(r.query_count, row.queries);
    EXPECT_EQ(r.routing_time, row.queries * row.k);
    EXPECT_EQ(r.magnitude_loop_qubits, row.k + 33);
  }
  const auto r = resource_report(8, 12, EncodingMode::real_signed);
  EXPECT_EQ(r.qpu_qubits, 3 + 12 + 2);
  EXPECT_EQ(r.memory_bits, 13u * 8);
  EXPECT_EQ(r.preprocessing_ops, 15u);
}

TEST(Resources, RandomIdentities) {
  std::mt19937_64 rng(71);
  std::uniform_int_distribution<int> kd(1, 40), td(2, 62);
  for (int i = 0; i < 50; ++i) {
    const int k = kd(rng);
    const int t = td(rng);
    const std::uint64_t K = std::uint64_t{1} << k;
    const auto c = resource_report(K, t, EncodingMode::complex);
    EXPECT_EQ(c.qpu_qubits, k + 2 * t + 1);
    EXPECT_EQ(c.memory_bits, 2 * static_cast<std::uint64_t>(t) * K);
    EXPECT_EQ(c.query_count, 2u * k + 2);
    const auto r = resource_report(K, t, EncodingMode::real_signed);
    EXPECT_EQ(r.qpu_qubits, k + t + 2);
    EXPECT_EQ(r.memory_bits, static_cast<std::uint64_t>(t + 1) * K);
    EXPECT_EQ(r.query_count, c.query_count);
    EXPECT_EQ(r.preprocessing_ops, 2 * K - 1);
  }
}

TEST(Resources, Errors) {
  EXPECT_THROW(resource_report(1000, 12, EncodingMode::complex), NotPowerOfTwo);
  EXPECT_THROW(resource_report(1, 12, EncodingMode::complex), NotPowerOfTwo);
  EXPECT_THROW(resource_report(8, 63, EncodingMode::complex), PrecisionOutOfRange);
}

TEST(Sweep, ExampleWithinBoundAndNonIncreasing) {
  std::vector<int> ts;
  for (int t = 16; t >= 6; --t)
    ts.push_back(t);
  const auto rows = precision_sweep(worked_example_matrix(), ts);
  ASSERT_EQ(rows.size(), 11u);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    EXPECT_EQ(rows[i].t, 6 + static_cast<int>(i));
    EXPECT_DOUBLE_EQ(rows[i].bound, error_bound(3, rows[i].t));
    EXPECT_LE(rows[i].measured_error, kBoundSlack * rows[i].bound) << "t=" << rows[i].t;
    if (i > 0) {
      EXPECT_LE(rows[i].measured_error, rows[i - 1].measured_error) << "t=" << rows[i].t;
    }
  }
}

TEST(Sweep, MedianErrorShrinksWithPrecision) {
  std::mt19937_64 rng(72);
  const std::vector<int> ts{6, 10, 14, 18};
  std::vector<std::vector<double>> errs(ts.size());
  for (int trial = 0; trial < 15; ++trial) {
    const auto m = test::random_test_matrix(2 + trial % 7, rng, 0.1);
    const auto rows = precision_sweep(m, ts);
    for (std::size_t i = 0; i < ts.size(); ++i) {
      EXPECT_LE(rows[i].measured_error, kBoundSlack * rows[i].bound);
      errs[i].push_back(rows[i].measured_error);
    }
  }
  std::vector<double> medians;
  for (auto &e : errs) {
    std::nth_element(e.begin(), e.begin() + e.size() / 2, e.end());
    medians.push_back(e[e.size() / 2]);
  }
  for (std::size_t i = 1; i < medians.size(); ++i)
    EXPECT_LT(medians[i], medians[i - 1]);
}

TEST(Sweep, CsvFormat) {
  std::ostringstream out;
  const std::vector<SweepRow> rows{{6, 0.5, 0.25}, {7, 0.125, 0.1}};
  write_sweep_csv(out, rows);
  EXPECT_EQ(out.str(), "t,measured_error,bound\n6,0.5,0.25\n7,0.125,0.10000000000000001\n");
}

TEST(StateError, RejectsUnfinishedState) {
  const auto s = init_state(2, 8, EncodingMode::complex);
  std::vector<Complex> oracle(4);
  EXPECT_THROW(state_error(s, oracle), DirtyState);
}
