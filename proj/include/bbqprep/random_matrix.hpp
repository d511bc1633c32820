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

#include "bbqprep/matrix.hpp"

#include <cstddef>
#include <random>
#include <vector>

namespace bbqprep {

/// Random 2^(k/2) x 2^(k - k/2) matrix with standard-normal real and
/// imaginary parts (imaginary parts are zero when `real` is set).
template <class Rng>
ComplexMatrix random_matrix(int k, Rng &rng, bool real = false) {
  const std::size_t rows = std::size_t{1} << (k / 2);
  const std::size_t cols = std::size_t{1} << (k - k / 2);
  std::normal_distribution<double> normal(0.0, 1.0);
  std::vector<Complex> entries(rows * cols);
  for (auto &a : entries) {
    const double re = normal(rng);
    const double im = real ? 0.0 : normal(rng);
    a = {re, im};
  }
  return ComplexMatrix(rows, cols, std::move(entries));
}

} // namespace bbqprep
