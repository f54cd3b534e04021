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
#include <random>

#include "qretro/akrule.hpp"
#include "qretro/circuits.hpp"
#include "test_util.hpp"

namespace qretro {
namespace {

constexpr std::uint64_t kSeed = 20261016;
constexpr int kCases = 100;

// Random family of one-bit functions on two bits with two equal solution blocks.
OracleProblem random_problem(std::mt19937_64& rng) {
  std::vector<std::uint64_t> tables(16);
  for (std::uint64_t t = 0; t < 16; ++t) tables[t] = t;
  std::shuffle(tables.begin(), tables.end(), rng);
  const std::size_t k = 2 * std::uniform_int_distribution<std::size_t>(1, 8)(rng);
  std::vector<Setting> settings;
  for (std::size_t i = 0; i < k; ++i) {
    Setting s;
    s.id = BitString(tables[i], 4);
    for (unsigned a = 0; a < 4; ++a) s.table.emplace_back(s.id.bit(a) ? 1 : 0, 1);
    s.a_outcome = BitString(i < k / 2 ? 0 : 1, 1);
    s.solution = s.a_outcome.str();
    settings.push_back(std::move(s));
  }
  return OracleProblem("random", 2, 1, Family::cells, std::move(settings));
}

SettingSet random_subset(const OracleProblem& p, std::mt19937_64& rng) {
  SettingSet out;
  std::bernoulli_distribution keep(0.5);
  for (const Setting& s : p.settings())
    if (keep(rng)) out.push_back(s.id);
  if (out.empty()) out.push_back(p.settings().front().id);
  return out;
}

BranchEnsemble random_ensemble(const OracleProblem& p, std::mt19937_64& rng) {
  RegisterLayout layout({{"B", p.id_width()}, {"A", 2}, {"V", 1}}, "B");
  std::vector<Branch> branches;
  std::uniform_real_distribution<double> u(0.1, 1.0);
  double total = 0.0;
  for (const Setting& s : p.settings()) {
    branches.push_back(Branch{s.id, s.id, u(rng), testing::random_ket(8, rng)});
    total += branches.back().weight;
  }
  for (Branch& b : branches) b.weight /= total;
  return BranchEnsemble(layout, branches);
}

Stage random_stage(const std::shared_ptr<const OracleProblem>& p, std::mt19937_64& rng) {
  switch (std::uniform_int_distribution<int>(0, 3)(rng)) {
    case 0: return Stage::hadamard("A");
    case 1: return Stage::oracle_xor(p, "A", "V");
    case 2: return Stage::inversion_about_mean("A");
    default: return Stage::oracle_phase(p, "A");
  }
}

TEST(Property, ProjectionCommutesWithStages) {
  std::mt19937_64 rng(kSeed);
  for (int c = 0; c < kCases; ++c) {
    auto p = std::make_shared<const OracleProblem>(random_problem(rng));
    const BranchEnsemble e = random_ensemble(*p, rng);
    const Stage s = random_stage(p, rng);
    const SettingSet sub = random_subset(*p, rng);
    const BranchEnsemble x = apply_stage(project_setting_subset(e, sub), s);
    const BranchEnsemble y = project_setting_subset(apply_stage(e, s), sub);
    ASSERT_TRUE(approx_equal(x, y)) << "case " << c;
  }
}

TEST(Property, SettingsSurviveStages) {
  std::mt19937_64 rng(kSeed + 1);
  for (int c = 0; c < kCases; ++c) {
    auto p = std::make_shared<const OracleProblem>(random_problem(rng));
    BranchEnsemble e = random_ensemble(*p, rng);
    const BranchEnsemble before = e;
    for (int k = 0; k < 4; ++k) e = apply_stage(e, random_stage(p, rng));
    ASSERT_EQ(e.size(), before.size());
    for (std::size_t i = 0; i < e.size(); ++i) {
      EXPECT_EQ(e.branches()[i].setting, before.branches()[i].setting);
      EXPECT_EQ(e.branches()[i].origin, before.branches()[i].origin);
      EXPECT_DOUBLE_EQ(e.branches()[i].weight, before.branches()[i].weight);
      EXPECT_NEAR(e.branches()[i].state.norm(), 1.0, 1e-9);
    }
    EXPECT_LT(testing::max_abs(reduced_density(e, "B") - reduced_density(before, "B")), 1e-12);
  }
}

TEST(Property, OracleIsInvolution) {
  std::mt19937_64 rng(kSeed + 2);
  for (int c = 0; c < kCases; ++c) {
    auto p = std::make_shared<const OracleProblem>(random_problem(rng));
    const BranchEnsemble e = random_ensemble(*p, rng);
    const Stage u = std::bernoulli_distribution(0.5)(rng) ? Stage::oracle_xor(p, "A", "V")
                                                          : Stage::oracle_phase(p, "A");
    ASSERT_TRUE(approx_equal(apply_stage(apply_stage(e, u), u), e)) << "case " << c;
  }
}

TEST(Property, DecisionTreeIsMonotone) {
  std::mt19937_64 rng(kSeed + 3);
  for (int c = 0; c < kCases; ++c) {
    const OracleProblem p = random_problem(rng);
    DecisionTreeSolver solver(p);
    const SettingSet big = random_subset(p, rng);
    SettingSet small;
    std::bernoulli_distribution keep(0.5);
    for (const BitString& b : big)
      if (keep(rng)) small.push_back(b);
    if (small.empty()) small.push_back(big.front());
    ASSERT_LE(solver.cost(small), solver.cost(big)) << "case " << c;
  }
}

TEST(Property, OccamPairsAreSymmetric) {
  std::mt19937_64 rng(kSeed + 4);
  for (int c = 0; c < kCases; ++c) {
    const OracleProblem p = random_problem(rng);
    const BitString star = p.settings()[std::uniform_int_distribution<std::size_t>(0, p.size() - 1)(rng)].id;
    std::vector<std::uint64_t> left, right;
    std::bernoulli_distribution coin(0.5);
    for (std::uint64_t a = 0; a < 4; ++a) (coin(rng) ? left : right).push_back(a);
    AkConfig config;
    config.complementary = coin(rng);
    const MeasurementSpec i = MeasurementSpec::cells(left);
    const MeasurementSpec j = MeasurementSpec::cells(right);
    ASSERT_EQ(satisfies_occam(p, star, i, j, config), satisfies_occam(p, star, j, i, config)) << "case " << c;
    for (const OccamPair& pr : enumerate_occam_pairs(p, star, config)) {
      EXPECT_TRUE(satisfies_occam(p, star, pr.spec_j, pr.spec_i, config));
    }
  }
}

TEST(Property, PhaseSamplingConverges) {
  std::mt19937_64 rng(kSeed + 5);
  const RegisterLayout layout({{"B", 2}, {"A", 1}}, "B");
  std::uniform_real_distribution<double> u(0.05, 1.0);
  for (int c = 0; c < kCases; ++c) {
    std::vector<Branch> branches;
    double total = 0.0;
    for (std::uint64_t b = 0; b < 4; ++b) {
      if (b > 0 && std::bernoulli_distribution(0.25)(rng)) continue;
      branches.push_back(Branch{BitString(b, 2), BitString(b, 2), u(rng), testing::random_ket(2, rng)});
      total += branches.back().weight;
    }
    for (Branch& b : branches) b.weight /= total;
    const BranchEnsemble e(layout, branches);
    const OperatorD mc = monte_carlo_density(e, 10000, rng());
    ASSERT_LT(testing::max_abs(mc - mixture_density(e)), 1e-2) << "case " << c;
  }
}

}  // namespace
}  // namespace qretro
