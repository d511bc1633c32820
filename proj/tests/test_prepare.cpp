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

#include "bbqprep/prepare.hpp"
#include "bbqprep/verify.hpp"
#include "bbqprep/worked_example.hpp"
#include "test_support.hpp"

#include <gtest/gtest.h>

#include <random>
#include <sstream>

using namespace bbqprep;

namespace {

// Expected magnitude-loop state after iteration h, from direct range sums.
void expect_intermediate(const BranchState &s, int h, std::span<const double> w, double tol) {
  const int k = s.layout().k;
  const double total = test::range_sum(w, 0, 0);
  const std::uint64_t marker = h < k ? std::uint64_t{1} << h : 0;
  const std::uint8_t v = h < k ? 0 : 1;
  double seen = 0.0;
  for (std::uint64_t p = 0; p < (std::uint64_t{1} << h); ++p) {
    const Complex amp = s.amplitude({.address = marker | p, .v = v});
    seen += std::norm(amp);
    EXPECT_NEAR(std::abs(amp - std::sqrt(test::range_sum(w, h, p) / total)), 0.0, tol)
        << "h=" << h << " p=" << p;
  }
  EXPECT_NEAR(seen, s.norm_squared(), 1e-14) << "probability outside the marked block";
}

double max_error(const Preparation &prep, const ComplexMatrix &m) {
  const auto want = test::normalized_entries(m.entries());
  const auto got = address_amplitudes(prep.state);
  double e = 0.0;
  for (std::size_t z = 0; z < want.size(); ++z)
    e = std::max(e, std::abs(got[z] - want[z]));
  return e;
}

ComplexMatrix real_vector(std::vector<double> xs) {
  const std::size_t n = xs.size();
  return ComplexMatrix(1, n, std::vector<Complex>(xs.begin(), xs.end()));
}

} // namespace

TEST(Prepare, IdealWorkedExample) {
  const auto m = worked_example_matrix();
  const auto w = squared_moduli(m);
  PrepareOptions opts;
  opts.on_iteration = [&](int h, const BranchState &s) { expect_intermediate(s, h, w, 1e-12); };
  const auto prep = prepare_complex(preprocess_ideal(m, EncodingMode::complex), opts);
  EXPECT_LE(max_error(prep, m), 1e-12);
  EXPECT_EQ(prep.ledger.query_count, 8u);
  EXPECT_EQ(prep.ledger.routing_time(), 24u);
}

TEST(Prepare, WorkedExampleRunner) {
  std::ostringstream log;
  const auto report = run_worked_example(log);
  EXPECT_TRUE(report.passed) << report.failure << "\n" << log.str();
  EXPECT_GT(report.checks, 0);
}

TEST(Prepare, MarkerInvariantHoldsAndDetectsCorruption) {
  const auto m = worked_example_matrix();
  const auto tree = build_weight_tree(squared_moduli(m));
  for (int t : {8, 16, 24}) {
    int calls = 0;
    PrepareOptions opts;
    opts.on_iteration = [&](int h, const BranchState &s) {
      ++calls;
      EXPECT_TRUE(marker_check(s, h, tree)) << "t=" << t << " h=" << h;
      auto bad = s;
      const auto first = s.branches().begin();
      bad.set(first->first, first->second * 1.5);
      EXPECT_FALSE(marker_check(bad, h, tree));
      auto stray = s;
      stray.set({.address = 0, .v = 0}, {0.1, 0});
      EXPECT_FALSE(marker_check(stray, h, tree));
    };
    prepare(preprocess(m, EncodingMode::complex, t), opts);
    EXPECT_EQ(calls, 3);
  }
}

TEST(Prepare, UnitNormAfterEveryOperation) {
  std::mt19937_64 rng(61);
  for (int k : {1, 4, 7, 10})
    for (int t : {8, 16, 24}) {
      const auto m = test::random_test_matrix(k, rng, 0.2);
      const auto img = preprocess(m, EncodingMode::complex, t);
      auto s = init_state(k, t, EncodingMode::complex);
      QueryLedger ledger;
      ledger.k = k;
      auto check = [&](const char *step) {
        ASSERT_NEAR(s.norm_squared(), 1.0, 1e-12) << step << " k=" << k << " t=" << t;
      };
      for (int h = 1; h <= k; ++h) {
        query(img, s, ledger);
        check("query");
        ry_cascade(s);
        check("ry");
        query(img, s, ledger);
        check("unquery");
        ASSERT_TRUE(s.work_clean());
        circular_shift(s);
        check("shift");
      }
      query(img, s, ledger);
      phase_cascade(s);
      check("phase");
      query(img, s, ledger);
      check("final");
      EXPECT_EQ(ledger.query_count, 2u * k + 2);
    }
}

TEST(Prepare, BranchCountMatchesNonzeroSubtrees) {
  std::mt19937_64 rng(62);
  for (int trial = 0; trial < 20; ++trial) {
    const int k = 2 + trial % 9;
    const auto m = test::random_test_matrix(k, rng, 0.6);
    const auto w = squared_moduli(m);
    PrepareOptions opts;
    opts.on_iteration = [&](int h, const BranchState &s) {
      std::size_t nonzero = 0;
      for (std::uint64_t p = 0; p < (std::uint64_t{1} << h); ++p)
        nonzero += test::range_sum(w, h, p) > 0.0;
      EXPECT_EQ(s.size(), nonzero) << "k=" << k << " h=" << h;
      EXPECT_LE(s.size(), std::size_t{1} << k);
    };
    const auto prep = prepare(preprocess_ideal(m, EncodingMode::complex), opts);
    EXPECT_LE(max_error(prep, m), 1e-10);
  }
}

TEST(Prepare, QueryCountIsTwoKPlusTwo) {
  std::mt19937_64 rng(63);
  for (int k = 1; k <= 10; ++k) {
    const auto m = test::random_test_matrix(k, rng, 0.1, true);
    for (auto mode : {EncodingMode::complex, EncodingMode::real_signed}) {
      const auto prep = prepare(preprocess(m, mode, 10));
      EXPECT_EQ(prep.ledger.query_count, 2u * k + 2);
      EXPECT_EQ(prep.ledger.routing_time(), (2u * k + 2) * k);
    }
  }
}

TEST(Prepare, SmallRealVectors) {
  for (auto mode : {EncodingMode::complex, EncodingMode::real_signed}) {
    const auto a = address_amplitudes(prepare(preprocess_ideal(real_vector({3, -4}), mode)).state);
    EXPECT_NEAR(std::abs(a[0] - Complex(0.6, 0)), 0.0, 1e-15);
    EXPECT_NEAR(std::abs(a[1] - Complex(-0.8, 0)), 0.0, 1e-15);

    const auto b = address_amplitudes(prepare(preprocess_ideal(real_vector({1, -1}), mode)).state);
    const double r = 1 / std::sqrt(2.0);
    EXPECT_NEAR(std::abs(b[0] - Complex(r, 0)), 0.0, 1e-15);
    EXPECT_NEAR(std::abs(b[1] - Complex(-r, 0)), 0.0, 1e-15);
  }
}

TEST(Prepare, RealAndComplexPipelinesAgreeBitForBit) {
  std::mt19937_64 rng(64);
  for (int trial = 0; trial < 30; ++trial) {
    const int k = 1 + trial % 9;
    const int t = 4 + trial % 20;
    const auto m = test::random_test_matrix(k, rng, 0.2, true);
    const auto c = address_amplitudes(prepare_complex(preprocess(m, EncodingMode::complex, t)).state);
    const auto r = address_amplitudes(prepare_real(preprocess(m, EncodingMode::real_signed, t)).state);
    ASSERT_EQ(c, r) << "k=" << k << " t=" << t;
  }
}

TEST(Prepare, AccessLogPerLevel) {
  PrepareOptions opts;
  opts.record_access = true;
  const auto prep = prepare(preprocess(worked_example_matrix(), EncodingMode::complex, 12), opts);
  using V = std::vector<std::uint64_t>;
  const std::vector<V> want{{1}, {1}, {2, 3}, {2, 3}, {4, 5, 6, 7}, {4, 5, 6, 7},
                            {0, 1, 2, 3, 4, 5, 6, 7}, {0, 1, 2, 3, 4, 5, 6, 7}};
  EXPECT_EQ(prep.ledger.access_log, want);
}

TEST(Prepare, RandomRealWithinBound) {
  std::mt19937_64 rng(65);
  for (int trial = 0; trial < 10; ++trial) {
    const int k = 2 + trial;
    const auto m = test::random_test_matrix(k, rng, 0.1, true);
    const auto prep = prepare_real(preprocess(m, EncodingMode::real_signed, 20));
    const auto oracle = test::normalized_entries(m.entries());
    EXPECT_LE(state_error(prep.state, oracle), kBoundSlack * error_bound(k, 20));
  }
}

TEST(Prepare, ModeMismatch) {
  const auto img = preprocess(worked_example_matrix(), EncodingMode::complex, 8);
  EXPECT_THROW(prepare_real(img), WrongMode);
  const auto r = preprocess(real_vector({1, 2}), EncodingMode::real_signed, 8);
  EXPECT_THROW(prepare_complex(r), WrongMode);
}

TEST(Preprocess, OpsCount) {
  EXPECT_EQ(preprocessing_ops(8), 15u);
  EXPECT_EQ(preprocessing_ops(std::uint64_t{1} << 30), (std::uint64_t{1} << 31) - 1);
}
