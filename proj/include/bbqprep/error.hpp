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

#include <stdexcept>
#include <string>

namespace bbqprep {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

#define BBQPREP_DEFINE_ERROR(Name)                                             \
  class Name : public Error {                                                  \
  public:                                                                      \
    explicit Name(const std::string &what) : Error(#Name ": " + what) {}       \
  }

// Matrix ingestion.
BBQPREP_DEFINE_ERROR(ParseError);
BBQPREP_DEFINE_ERROR(EmptyMatrix);
BBQPREP_DEFINE_ERROR(AllZeroMatrix);
BBQPREP_DEFINE_ERROR(InvalidDimensions);
BBQPREP_DEFINE_ERROR(IndexOutOfRange);

// Fixed-point codec.
BBQPREP_DEFINE_ERROR(AngleOutOfRange);
BBQPREP_DEFINE_ERROR(PrecisionOutOfRange);

// Trees and layouts.
BBQPREP_DEFINE_ERROR(NotPowerOfTwo);
BBQPREP_DEFINE_ERROR(AllZeroWeights);
BBQPREP_DEFINE_ERROR(NotRealMatrix);
BBQPREP_DEFINE_ERROR(LengthMismatch);

// Simulation.
BBQPREP_DEFINE_ERROR(WidthMismatch);
BBQPREP_DEFINE_ERROR(WrongMode);
BBQPREP_DEFINE_ERROR(DirtyWorkRegisters);
BBQPREP_DEFINE_ERROR(DirtyState);

#undef BBQPREP_DEFINE_ERROR

} // namespace bbqprep
