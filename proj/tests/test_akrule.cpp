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

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <map>
#include <set>
#include <stdexcept>

#include "qretro/akrule.hpp"

namespace qretro {
namespace {

SettingSet parse_set(std::initializer_list<const char*> text) {
  SettingSet out;
  for (const char* t : text) out.push_back(BitString::parse(t));
  std::sort(out.begin(), out.end());
  return out;
}

std::set<SettingSet> subsets_of(const std::vector<OccamPair>& pairs) {
  std::set<SettingSet> out;
  for (const OccamPair& p : pairs) {
    out.insert(p.subset_i);
    out.insert(p.subset_j);
  }
  return out;
}

// Exhaustive minimax without memo or pruning.
unsigned naive_cost(const OracleProblem& p, const SettingSet& s) {
  std::set<std::string> sol;
  for (const BitString& b : s) sol.insert(p.setting(b).solution);
  if (sol.size() <= 1) return 0;
  unsigned best = kUnsolvable;
  for (std::size_t a = 0; a < p.table_size(); ++a) {
    std::map<BitString, SettingSet> parts;
    for (const BitString& b : s) parts[p.setting(b).table[a]].push_back(b);
    if (parts.size() < 2) continue;
    unsigned worst = 0;
    for (const auto& [v, part] : parts) worst = std::max(worst, naive_cost(p, part));
    if (worst != kUnsolvable) best = std::min(best, worst + 1);
  }
  return best;
}

double entropy_by_count(const OracleProblem& p, const SettingSet& s) {
  std::map<BitString, double> count;
  for (const BitString& b : s) count[p.setting(b).a_outcome] += 1.0;
  double h = 0.0;
  for (const auto& [o, c] : count) h -= c / s.size() * std::log2(c / s.size());
  return h;
}

SettingSet all_ids(const OracleProblem& p) {
  SettingSet out;
  for (const Setting& s : p.settings()) out.push_back(s.id);
  return out;
}

TEST(AkConfig, OnlyHalfRetroaction) {
  AkConfig c;
  EXPECT_NO_THROW(c.validate());
  c.r_den = 3;
  EXPECT_THROW(c.validate(), std::invalid_argument);
  c = AkConfig{};
  c.tolerance = -1.0;
  EXPECT_THROW(c.validate(), std::invalid_argument);
  EXPECT_EQ(AkConfig{}.family_for(build_grover(2)), Family::linear);
  EXPECT_EQ(AkConfig{}.family_for(build_dj(2)), Family::cells);
}

TEST(MeasurementSpec, LinearIsCanonical) {
  const std::uint64_t a[] = {0b11, 0b01};
  const std::uint64_t b[] = {0b10, 0b01, 0b11};
  EXPECT_EQ(MeasurementSpec::linear(a, 2), MeasurementSpec::linear(b, 2));
  EXPECT_EQ(MeasurementSpec::linear(a, 2).generators, (std::vector<std::uint64_t>{0b10, 0b01}));
  const std::uint64_t one[] = {0b11};
  EXPECT_EQ(MeasurementSpec::linear(one, 2).describe(2, 2), "xor{11}");
  EXPECT_EQ(MeasurementSpec::cells({0, 1}).describe(2, 4), "cells{00,01}");
  const std::uint64_t wide[] = {0b100};
  EXPECT_THROW(MeasurementSpec::linear(wide, 2), std::invalid_argument);
}

TEST(RealizedSubset, CellsAgreeOnPositions) {
  const OracleProblem p = build_dj(2);
  const BitString star = BitString::parse("0011");
  EXPECT_EQ(realized_subset(p, MeasurementSpec::cells({0, 1}), star), parse_set({"0000", "0011"}));
  EXPECT_EQ(realized_subset(p, MeasurementSpec::cells({2, 3}), star), parse_set({"0011", "1111"}));
  const std::uint64_t m[] = {0b10};
  const OracleProblem g = build_grover(2);
  EXPECT_EQ(realized_subset(g, MeasurementSpec::linear(m, 2), BitString::parse("01")), parse_set({"00", "01"}));
}

TEST(Entropy, MatchesCounting) {
  for (const OracleProblem& p : {build_grover(3), build_dj(2), build_simon(2)}) {
    const SettingSet all = all_ids(p);
    EXPECT_NEAR(outcome_entropy(p, all), entropy_by_count(p, all), 1e-12);
    for (std::size_t i = 0; i + 1 < all.size(); ++i) {
      const SettingSet sub = {all[i], all[i + 1]};
      EXPECT_NEAR(delta_entropy(p, sub), entropy_by_count(p, all) - entropy_by_count(p, sub), 1e-12);
    }
  }
  EXPECT_THROW(delta_entropy(build_grover(2), SettingSet{}), std::invalid_argument);
  EXPECT_EQ(distinct_solutions(build_dj(2), parse_set({"0000", "1111", "0011"})), 2u);
}

TEST(OccamPairs, GroverTwoBits) {
  const OracleProblem p = build_grover(2);
  const auto pairs = enumerate_occam_pairs(p, BitString::parse("01"), AkConfig{});
  ASSERT_EQ(pairs.size(), 3u);
  EXPECT_EQ(subsets_of(pairs), (std::set<SettingSet>{parse_set({"01", "00"}), parse_set({"01", "11"}),
                                                      parse_set({"01", "10"})}));
  for (const OccamPair& pr : pairs) {
    EXPECT_NEAR(pr.epsilon, 1.0, 1e-9);
    EXPECT_LT(pr.subset_i, pr.subset_j);
    EXPECT_TRUE(satisfies_occam(p, BitString::parse("01"), pr.spec_i, pr.spec_j, AkConfig{}));
  }
  DecisionTreeSolver solver(p);
  for (const AkInstance& inst : ak_instances(pairs)) EXPECT_EQ(solver.cost(inst.subset), 1u);
  EXPECT_EQ(solver.cost(all_ids(p)), 3u);
}

TEST(OccamPairs, DeutschJozsaHalfTables) {
  const OracleProblem p = build_dj(2);
  // Balanced: only the pair of good half tables, each constant on its half.
  const auto right = enumerate_occam_pairs(p, BitString::parse("0011"), AkConfig{});
  ASSERT_EQ(right.size(), 1u);
  EXPECT_EQ(subsets_of(right), (std::set<SettingSet>{parse_set({"0011", "0000"}), parse_set({"0011", "1111"})}));
  EXPECT_NEAR(right[0].epsilon, 1.0, 1e-9);
  // Constant: left/right and even/odd among the pairs.
  const auto constant = enumerate_occam_pairs(p, BitString::parse("0000"), AkConfig{});
  EXPECT_EQ(constant.size(), 3u);
  const auto subsets = subsets_of(constant);
  for (const SettingSet& s : {parse_set({"0000", "0011"}), parse_set({"0000", "1100"}), parse_set({"0000", "0101"}),
                              parse_set({"0000", "1010"})}) {
    EXPECT_TRUE(subsets.count(s)) << s[1].str();
  }
}

TEST(OccamPairs, SimonTwoWaysToHalve) {
  const OracleProblem p = build_simon(2);
  const auto pairs = enumerate_occam_pairs(p, BitString::parse("0011"), AkConfig{});
  ASSERT_EQ(pairs.size(), 2u);
  const auto subsets = subsets_of(pairs);
  EXPECT_TRUE(subsets.count(parse_set({"0011", "0110"})));
  EXPECT_TRUE(subsets.count(parse_set({"0011", "1001"})));
  for (const OccamPair& pr : pairs) EXPECT_NEAR(pr.epsilon, 0.585, 5e-4);
  for (const OccamPair& pr : pairs) EXPECT_NEAR(pr.epsilon, std::log2(3.0) - 1.0, 1e-9);
}

TEST(OccamPairs, InstancesForAgreesWithPairs) {
  for (const OracleProblem& p : {build_grover(3), build_dj(2), build_simon(2)}) {
    for (const Setting& s : p.settings()) {
      const auto pairs = enumerate_occam_pairs(p, s.id, AkConfig{});
      const auto a = ak_instances(pairs);
      const auto b = ak_instances_for(p, s.id, AkConfig{});
      ASSERT_EQ(a.size(), b.size()) << p.name() << " " << s.id.str();
      for (std::size_t k = 0; k < a.size(); ++k) EXPECT_EQ(a[k].subset, b[k].subset);
    }
  }
}

TEST(OccamPairs, ComplementarityRejectsOverlap) {
  const OracleProblem p = build_dj(2);
  const BitString star = BitString::parse("0000");
  EXPECT_TRUE(satisfies_occam(p, star, MeasurementSpec::cells({0, 1}), MeasurementSpec::cells({2, 3}), AkConfig{}));
  EXPECT_FALSE(satisfies_occam(p, star, MeasurementSpec::cells({0, 1}), MeasurementSpec::cells({1, 2}), AkConfig{}));
  // Whole-table measurement reveals the solution.
  EXPECT_FALSE(satisfies_occam(p, star, MeasurementSpec::cells({0, 1, 2, 3}), MeasurementSpec::cells({}), AkConfig{}));
}

TEST(OccamPairs, EnumerationCaps) {
  AkConfig linear;
  linear.family = Family::linear;
  EXPECT_THROW(enumerate_occam_pairs(build_grover(7), BitString(0, 7), linear), std::length_error);
  AkConfig cells;
  cells.family = Family::cells;
  EXPECT_THROW(enumerate_occam_pairs(build_grover(5), BitString(0, 5), cells), std::length_error);
  EXPECT_THROW(enumerate_occam_pairs(build_grover(2), BitString(0, 3), AkConfig{}), std::invalid_argument);
}

TEST(DecisionTree, MatchesExhaustiveSearch) {
  for (const OracleProblem& p : {build_grover(2), build_grover(3), build_dj(2), build_simon(2), build_dj(1)}) {
    DecisionTreeSolver solver(p);
    const SettingSet all = all_ids(p);
    const std::size_t limit = std::min<std::size_t>(all.size(), 12);
    for (std::uint64_t mask = 1; mask < (std::uint64_t{1} << limit); ++mask) {
      SettingSet sub;
      for (std::size_t i = 0; i < limit; ++i)
        if (mask >> i & 1) sub.push_back(all[i]);
      ASSERT_EQ(solver.cost(sub), naive_cost(p, sub)) << p.name() << " mask " << mask;
    }
    EXPECT_EQ(decision_tree_cost(p, all), naive_cost(p, all));
  }
}

TEST(DecisionTree, Baselines) {
  EXPECT_EQ(decision_tree_cost(build_grover(2), all_ids(build_grover(2))), 3u);
  EXPECT_EQ(decision_tree_cost(build_grover(4), all_ids(build_grover(4))), 15u);
  // Constant vs balanced needs 2^(n-1) + 1 evaluations classically.
  EXPECT_EQ(decision_tree_cost(build_dj(2), all_ids(build_dj(2))), 3u);
  EXPECT_EQ(decision_tree_cost(build_simon(2), all_ids(build_simon(2))), 3u);
}

TEST(DecisionTree, Unsolvable) {
  const std::string doc = R"({"name":"t","arg_bits":1,"out_bits":1,"family":"cells","settings":[
    {"id":"0","table":["0","0"],"solution":"0"},
    {"id":"1","table":["0","0"],"solution":"1"}]})";
  const OracleProblem p = load_problem(doc);
  EXPECT_EQ(decision_tree_cost(p, all_ids(p)), kUnsolvable);
  EXPECT_THROW(decision_tree_cost(p, SettingSet{}), std::invalid_argument);
}

TEST(DecisionTree, OptimalQueriesSplit) {
  const OracleProblem p = build_grover(2);
  DecisionTreeSolver solver(p);
  const SettingSet sub = parse_set({"00", "01"});
  EXPECT_EQ(solver.optimal_queries(sub), (std::vector<std::uint64_t>{0, 1}));
  EXPECT_TRUE(solver.optimal_queries(parse_set({"10"})).empty());
}

TEST(Predict, GroverReference) {
  const GroverReference r4 = grover_reference(4);
  EXPECT_EQ(r4.formula, 3u);
  EXPECT_EQ(r4.optimal, 4u);
  const GroverReference r6 = grover_reference(6);
  EXPECT_EQ(r6.formula, 7u);
  EXPECT_EQ(r6.optimal, 7u);
  EXPECT_EQ(r6.optimal, static_cast<unsigned>(std::ceil(M_PI / 4 * 8)));
  const GroverReference r5 = grover_reference(5);
  EXPECT_FALSE(r5.formula.has_value());
  EXPECT_EQ(r5.floor_split, 3u);
  EXPECT_EQ(r5.ceil_split, 7u);
}

TEST(Predict, GroverFourBits) {
  const OracleProblem p = build_grover(4);
  const QueryReport r = predict_queries(p, AkConfig{});
  EXPECT_EQ(r.baseline, 15u);
  ASSERT_TRUE(r.predicted.has_value());
  EXPECT_EQ(*r.predicted, 3u);
  EXPECT_TRUE(r.uniform());
  EXPECT_TRUE(r.settings_without_instance.empty());
  for (const InstanceCost& ic : r.instances) {
    EXPECT_EQ(ic.instance.subset.size(), 4u);
    EXPECT_EQ(ic.cost, 3u);
  }
}

TEST(Predict, SingleQueryProblems) {
  for (const OracleProblem& p : {build_grover(2), build_dj(2), build_simon(2)}) {
    const QueryReport r = predict_queries(p, AkConfig{});
    EXPECT_EQ(r.predicted, 1u) << p.name();
    EXPECT_EQ(r.baseline, 3u) << p.name();
  }
}

}  // namespace
}  // namespace qretro
