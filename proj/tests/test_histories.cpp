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
#include <memory>
#include <numeric>
#include <stdexcept>

#include "qretro/histories.hpp"

namespace qretro {
namespace {

std::vector<std::uint64_t> every_start(const Circuit& c) {
  std::vector<std::uint64_t> s(c.layout.dimension());
  std::iota(s.begin(), s.end(), 0);
  return s;
}

const History* find_path(const HistorySet& set, const std::vector<std::uint64_t>& path) {
  for (const History& h : set.histories)
    if (h.path == path) return &h;
  return nullptr;
}

TEST(Histories, ParseBranch) {
  EXPECT_EQ(parse_v_branch("both"), VBranch::both);
  EXPECT_EQ(std::string(to_string(VBranch::one)), "1");
  EXPECT_EQ(parse_v_branch("0"), VBranch::zero);
  EXPECT_THROW(parse_v_branch("two"), std::invalid_argument);
}

TEST(Histories, PathSumEqualsMatrixElement) {
  const Circuit grover = grover_circuit();
  const Circuit dj = bind_problem(dj_circuit(2), std::make_shared<const OracleProblem>(build_dj(2)));
  for (const Circuit* c : {&grover, &dj}) {
    for (const Setting& s : c->oracle->settings()) {
      const auto starts = every_start(*c);
      const HistorySet set = enumerate_paths(*c, *c->oracle, s.id, starts);
      const OperatorD u = composed_unitary(*c, s.id);
      for (std::uint64_t i = 0; i < c->layout.dimension(); ++i)
        for (std::uint64_t f = 0; f < c->layout.dimension(); ++f)
          EXPECT_LT(std::abs(path_sum(set, i, f) - u(f, i)), 1e-9) << c->name << " " << s.id.str();
      EXPECT_THROW(path_sum(set, c->layout.dimension(), 0), std::out_of_range);
    }
  }
}

TEST(Histories, AmplitudeIsProductOfSteps) {
  const Circuit c = grover_circuit();
  const HistorySet set = enumerate_histories(c, *c.oracle, BitString::parse("01"), VBranch::both);
  EXPECT_EQ(set.stage_labels, (std::vector<std::string>{"H_A", "U_f", "Im_A"}));
  for (const History& h : set.histories) {
    ASSERT_EQ(h.steps.size(), 3u);
    Amplitude prod = 1.0;
    for (const Amplitude& a : h.steps) prod *= a;
    EXPECT_LT(std::abs(prod - h.amplitude), 1e-15);
    EXPECT_EQ(h.queries.size(), 1u);
    EXPECT_GT(std::abs(h.amplitude), 1e-12);
  }
  EXPECT_TRUE(std::is_sorted(set.histories.begin(), set.histories.end(),
                             [](const History& a, const History& b) { return a.path < b.path; }));
}

TEST(Histories, GroverQueryOfMarkedDrawer) {
  // |00>|0> -> |01>|0> -> |01>|1> -> |01>|1> for b = 01.
  const Circuit c = grover_circuit();
  const OracleProblem& p = *c.oracle;
  const HistorySet set = enumerate_histories(c, p, BitString::parse("01"));
  ASSERT_EQ(set.histories.size(), 16u);
  const History* h = find_path(set, {0b000, 0b010, 0b011, 0b011});
  ASSERT_NE(h, nullptr);
  EXPECT_NEAR(h->amplitude.real(), -0.25, 1e-12);
  EXPECT_EQ(h->queries.front().str(), "01");

  const BitString star = BitString::parse("01");
  const auto instances = ak_instances_for(p, star, AkConfig{});
  DecisionTreeSolver solver(p);
  EXPECT_EQ(classify_history(*h, instances, solver, p).consistent.size(), 3u);
  const History* other = find_path(set, {0b000, 0b110, 0b110, 0b000});
  ASSERT_NE(other, nullptr);
  const auto single = classify_history(*other, instances, solver, p).consistent;
  ASSERT_EQ(single.size(), 1u);
  EXPECT_EQ(single[0].subset, (SettingSet{BitString::parse("01"), BitString::parse("11")}));
}

TEST(Histories, DeutschJozsaRightHalfQuery) {
  // |00>|0> -H-> |10>|0> -U_f-> |10>|1> -H-> |10>|1> for b = 0011.
  const OracleProblem p = build_dj(2);
  const BitString b = BitString::parse("0011");
  const HistorySet set = enumerate_histories(dj_circuit(2), p, b);
  const History* h = find_path(set, {0b000, 0b100, 0b101, 0b101});
  ASSERT_NE(h, nullptr);
  EXPECT_GT(std::abs(h->amplitude), 1e-12);
  DecisionTreeSolver solver(p);
  const auto instances = ak_instances_for(p, b, AkConfig{});
  const auto consistent = classify_history(*h, instances, solver, p).consistent;
  ASSERT_EQ(consistent.size(), 1u);
  EXPECT_EQ(consistent[0].subset, (SettingSet{BitString::parse("0000"), BitString::parse("0011")}));
}

TEST(Histories, VBranchSelectsStarts) {
  const Circuit c = grover_circuit();
  const BitString b = BitString::parse("10");
  const auto zero = enumerate_histories(c, *c.oracle, b, VBranch::zero).histories;
  const auto one = enumerate_histories(c, *c.oracle, b, VBranch::one).histories;
  const auto both = enumerate_histories(c, *c.oracle, b, VBranch::both).histories;
  EXPECT_EQ(zero.size() + one.size(), both.size());
  for (const History& h : one) EXPECT_EQ(h.path.front(), 1u);
}

}  // namespace
}  // namespace qretro
