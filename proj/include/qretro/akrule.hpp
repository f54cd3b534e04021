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
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "qretro/bitstring.hpp"
#include "qretro/linalg.hpp"
#include "qretro/oracle.hpp"

namespace qretro {

/// Sorted, duplicate-free set of setting ids.
using SettingSet = std::vector<BitString>;

struct AkConfig {
  /// Retroaction as a fraction; only 1/2 is accepted.
  unsigned r_num = 1;
  unsigned r_den = 2;
  /// Measurement family; the problem's default when unset.
  std::optional<Family> family;
  bool complementary = true;
  double tolerance = kTolerance;

  /// Throws std::invalid_argument unless R = 1/2 and tolerance >= 0.
  void validate() const;
  Family family_for(const OracleProblem& problem) const { return family.value_or(problem.default_family()); }
};

/// A partial measurement on the content of B.
struct MeasurementSpec {
  Family family = Family::cells;
  /// cells: ascending table positions. linear: reduced row-echelon basis of
  /// GF(2) masks over the setting id, leading bit descending.
  std::vector<std::uint64_t> generators;

  /// Builds a linear spec from arbitrary masks, reducing them to a canonical basis.
  static MeasurementSpec linear(std::span<const std::uint64_t> masks, unsigned width);
  static MeasurementSpec cells(std::vector<std::uint64_t> positions);

  /// "cells{00,01}" or "xor{11}", labels printed at the given widths.
  std::string describe(unsigned position_width, unsigned id_width) const;
  std::string describe(const OracleProblem& problem) const;

  friend bool operator==(const MeasurementSpec&, const MeasurementSpec&) = default;
};

/// Settings whose measured content agrees with b*'s.
SettingSet realized_subset(const OracleProblem& problem, const MeasurementSpec& spec, const BitString& b_star);

/// Shannon entropy (bits) of the a_outcome distribution over uniform `subset`.
double outcome_entropy(const OracleProblem& problem, std::span<const BitString> subset);

/// outcome_entropy(all settings) - outcome_entropy(subset). Throws on an empty subset.
double delta_entropy(const OracleProblem& problem, std::span<const BitString> subset);

/// Number of distinct solution labels over `subset`.
std::size_t distinct_solutions(const OracleProblem& problem, std::span<const BitString> subset);

struct OccamPair {
  MeasurementSpec spec_i;
  SettingSet subset_i;
  MeasurementSpec spec_j;
  SettingSet subset_j;
  double epsilon = 0.0;
};

struct AkInstance {
  SettingSet subset;
  MeasurementSpec source;
  double epsilon = 0.0;
};

/// Recomputes the Occam conditions for one pair from scratch: realized
/// subsets meet exactly in {b*}, equal entropy reductions, at least two
/// solutions on each side, and complementarity when configured.
bool satisfies_occam(const OracleProblem& problem, const BitString& b_star, const MeasurementSpec& i,
                     const MeasurementSpec& j, const AkConfig& config);

/// Every valid pair, one per unordered pair of realized subsets, ordered by
/// (subset_i, subset_j) with subset_i < subset_j.
std::vector<OccamPair> enumerate_occam_pairs(const OracleProblem& problem, const BitString& b_star,
                                             const AkConfig& config);

/// Distinct subsets appearing in `pairs`, in ascending order.
std::vector<AkInstance> ak_instances(std::span<const OccamPair> pairs);

/// Instances for one setting without materialising the pair list.
std::vector<AkInstance> ak_instances_for(const OracleProblem& problem, const BitString& b_star,
                                         const AkConfig& config);

inline constexpr unsigned kUnsolvable = std::numeric_limits<unsigned>::max();

/// Minimum worst-case number of adaptive queries that pins down the solution
/// over a candidate set. Results are memoised on a canonical form of the
/// restricted problem, so one solver should serve a whole analysis.
class DecisionTreeSolver {
 public:
  explicit DecisionTreeSolver(const OracleProblem& problem);

  /// kUnsolvable when no query sequence separates the solutions.
  unsigned cost(std::span<const BitString> subset);
  /// Arguments a (as table positions) attaining the minimax cost of `subset`.
  /// Empty when the solution is already fixed.
  std::vector<std::uint64_t> optimal_queries(std::span<const BitString> subset);
  std::size_t memo_size() const { return memo_.size(); }

 private:
  struct Matrix {
    std::vector<std::uint32_t> solutions;
    std::vector<std::vector<std::uint32_t>> columns;
  };
  Matrix restrict(std::span<const BitString> subset) const;
  static Matrix normalise(const std::vector<std::uint32_t>& solutions,
                          const std::vector<std::vector<std::uint32_t>>& columns);
  unsigned solve(const Matrix& m);
  unsigned query_cost(const Matrix& m, std::size_t column, unsigned cutoff);

  const OracleProblem* problem_;
  std::vector<std::uint32_t> solution_ids_;
  std::unordered_map<std::string, unsigned> memo_;
};

unsigned decision_tree_cost(const OracleProblem& problem, std::span<const BitString> subset);

struct InstanceCost {
  BitString setting;
  AkInstance instance;
  unsigned cost = 0;
};

/// Reference counts for the search problem.
struct GroverReference {
  unsigned n = 0;
  /// 2^(n/2) - 1, even n only.
  std::optional<unsigned> formula;
  /// ceil(pi/4 * 2^(n/2)).
  unsigned optimal = 0;
  /// Odd n: 2^floor(n/2) - 1 and 2^ceil(n/2) - 1, an extrapolation.
  std::optional<unsigned> floor_split;
  std::optional<unsigned> ceil_split;
};

struct QueryReport {
  std::string problem;
  Family family = Family::cells;
  bool complementary = true;
  unsigned baseline = 0;
  /// Worst instance cost; unset when no setting has an instance.
  std::optional<unsigned> predicted;
  std::vector<InstanceCost> instances;
  std::vector<BitString> settings_without_instance;
  std::optional<GroverReference> grover;

  /// All instance costs equal.
  bool uniform() const;
};

GroverReference grover_reference(unsigned n);

QueryReport predict_queries(const OracleProblem& problem, const AkConfig& config);

}  // namespace qretro
