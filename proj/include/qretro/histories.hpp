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
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "qretro/akrule.hpp"
#include "qretro/circuits.hpp"

namespace qretro {

enum class VBranch { zero, one, both };

VBranch parse_v_branch(std::string_view text);
std::string_view to_string(VBranch branch);

/// A sequence of sharp basis states, one per stage boundary.
struct History {
  BitString setting;
  /// State-register basis indices, input first.
  std::vector<std::uint64_t> path;
  /// Product of the stage matrix elements along the path.
  Amplitude amplitude{1.0, 0.0};
  /// Stage matrix element of each step.
  std::vector<Amplitude> steps;
  /// A-register content entering each oracle stage.
  std::vector<BitString> queries;
};

struct HistorySet {
  RegisterLayout layout;
  BitString setting;
  std::vector<std::string> stage_labels;
  /// Lexicographic path order.
  std::vector<History> histories;
};

/// Every path whose stepwise matrix elements exceed 1e-12 in magnitude.
/// The circuit is rebound to `problem`; `v_branch` fixes the initial content
/// of the minus-state registers.
HistorySet enumerate_histories(const Circuit& circuit, const OracleProblem& problem, const BitString& b,
                               VBranch v_branch = VBranch::zero);

/// Same walk from explicit starting basis indices.
HistorySet enumerate_paths(const Circuit& circuit, const OracleProblem& problem, const BitString& b,
                           std::span<const std::uint64_t> starts);

/// Sum of history amplitudes between two basis states. Throws
/// std::out_of_range for an index outside the state space.
Amplitude path_sum(const HistorySet& set, std::uint64_t initial, std::uint64_t final);

struct HistoryClassification {
  History history;
  std::vector<AkInstance> consistent;
};

/// Instances containing the history's setting for which every query attains
/// the minimax cost of the candidates left so far.
HistoryClassification classify_history(const History& history, std::span<const AkInstance> instances,
                                       DecisionTreeSolver& solver, const OracleProblem& problem);

}  // namespace qretro
