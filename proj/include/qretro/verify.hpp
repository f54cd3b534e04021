// Copyright 2026 The qretro Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace qretro {

struct CheckResult {
  std::string name;
  bool passed = false;
  std::string detail;
};

inline constexpr std::uint64_t kDefaultSeed = 20261016;
inline constexpr std::size_t kPropertyCases = 100;
inline constexpr std::size_t kMonteCarloSamples = 10'000;
inline constexpr double kMonteCarloTolerance = 1e-2;

/// One result per acceptance criterion, in order.
std::vector<CheckResult> acceptance_checks(std::uint64_t seed = kDefaultSeed);

/// Module invariants not already covered by acceptance_checks.
std::vector<CheckResult> invariant_checks(std::uint64_t seed = kDefaultSeed);

}  // namespace qretro
