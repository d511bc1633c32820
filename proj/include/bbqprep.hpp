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

#include "bbqprep/angle_tree.hpp"
#include "bbqprep/bbqram.hpp"
#include "bbqprep/bits.hpp"
#include "bbqprep/branch_state.hpp"
#include "bbqprep/error.hpp"
#include "bbqprep/fixed_point.hpp"
#include "bbqprep/matrix.hpp"
#include "bbqprep/prepare.hpp"
#include "bbqprep/verify.hpp"
#include "bbqprep/weight_tree.hpp"
#include "bbqprep/worked_example.hpp"
