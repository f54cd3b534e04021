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

#include <cmath>
#include <memory>
#include <random>
#include <stdexcept>

#include "qretro/oracle.hpp"
#include "qretro/qstate.hpp"
#include "qretro/stage.hpp"
#include "test_util.hpp"

namespace qretro {
namespace {

RegisterLayout small_layout() { return RegisterLayout({{"B", 2}, {"A", 2}, {"V", 1}}, "B"); }

std::vector<BitString> ids(std::initializer_list<const char*> text) {
  std::vector<BitString> out;
  for (const char* t : text) out.push_back(BitString::parse(t));
  return out;
}

// Reduced density by summing over matching complements, entry by entry.
OperatorD brute_reduce(const RegisterLayout& layout, const KetD& psi, const std::string& reg) {
  const unsigned w = layout.at(reg).width;
  const std::uint64_t keep = ((std::uint64_t{1} << w) - 1) << layout.shift(reg);
  OperatorD rho = OperatorD::Zero(1 << w, 1 << w);
  for (std::uint64_t i = 0; i < layout.dimension(); ++i)
    for (std::uint64_t j = 0; j < layout.dimension(); ++j)
      if ((i & ~keep) == (j & ~keep))
        rho(layout.field(i, reg), layout.field(j, reg)) += psi(i) * std::conj(psi(j));
  return rho;
}

TEST(BranchEnsemble, ValidatesInput) {
  const RegisterLayout layout = small_layout();
  KetD psi = KetD::Unit(8, 0);
  EXPECT_THROW(BranchEnsemble(layout, {}), std::invalid_argument);
  EXPECT_THROW(BranchEnsemble(layout, {Branch{BitString(0, 2), BitString(0, 2), 0.5, psi}}),
               std::invalid_argument);
  EXPECT_THROW(BranchEnsemble(layout, {Branch{BitString(0, 2), BitString(0, 2), 1.0, 2.0 * psi}}),
               std::invalid_argument);
  EXPECT_THROW(BranchEnsemble(layout, {Branch{BitString(0, 3), BitString(0, 3), 1.0, psi}}),
               std::invalid_argument);
  EXPECT_THROW(BranchEnsemble(layout, {Branch{BitString(1, 2), BitString(1, 2), 0.5, psi},
                                       Branch{BitString(1, 2), BitString(1, 2), 0.5, psi}}),
               std::invalid_argument);
}

TEST(BranchEnsemble, UniformIsSorted) {
  const std::vector<BitString> s = ids({"11", "00", "10"});
  const BranchEnsemble e = BranchEnsemble::uniform(small_layout(), s, KetD::Unit(8, 3));
  ASSERT_EQ(e.size(), 3u);
  EXPECT_EQ(e.branches()[0].setting.str(), "00");
  EXPECT_EQ(e.branches()[2].setting.str(), "11");
  EXPECT_NEAR(e.branches()[1].weight, 1.0 / 3, 1e-15);
  EXPECT_EQ(e.find(BitString::parse("01")), nullptr);
}

TEST(Measure, RegisterAndSetting) {
  std::mt19937_64 rng(7);
  const RegisterLayout layout = small_layout();
  std::vector<Branch> branches;
  for (std::uint64_t b = 0; b < 4; ++b)
    branches.push_back(Branch{BitString(b, 2), BitString(b, 2), 0.25, testing::random_ket(8, rng)});
  const BranchEnsemble e(layout, branches);
  const OutcomeDistribution a = measure_register(e, "A");
  for (std::uint64_t x = 0; x < 4; ++x) {
    double expect = 0.0;
    for (const Branch& br : branches)
      expect += 0.25 * (std::norm(br.state(2 * x)) + std::norm(br.state(2 * x + 1)));
    EXPECT_NEAR(a.probability(BitString(x, 2)), expect, 1e-12);
  }
  const OutcomeDistribution b = measure_register(e, "B");
  EXPECT_NEAR(b.probability(BitString::parse("10")), 0.25, 1e-15);
  EXPECT_FALSE(a.certain().has_value());
  EXPECT_EQ(measure_preparation_joint(e, "V").entries().size(), 8u);
}

TEST(Measure, ReducedDensityMatchesBruteForce) {
  std::mt19937_64 rng(11);
  const RegisterLayout layout = small_layout();
  std::vector<Branch> branches;
  OperatorD expect_a = OperatorD::Zero(4, 4);
  OperatorD expect_v = OperatorD::Zero(2, 2);
  const double w[] = {0.1, 0.2, 0.3, 0.4};
  for (std::uint64_t b = 0; b < 4; ++b) {
    KetD psi = testing::random_ket(8, rng);
    expect_a += w[b] * brute_reduce(layout, psi, "A");
    expect_v += w[b] * brute_reduce(layout, psi, "V");
    branches.push_back(Branch{BitString(b, 2), BitString(b, 2), w[b], psi});
  }
  const BranchEnsemble e(layout, branches);
  EXPECT_LT(testing::max_abs(reduced_density(e, "A") - expect_a), 1e-12);
  EXPECT_LT(testing::max_abs(reduced_density(e, "V") - expect_v), 1e-12);
  const std::vector<double> p(w, w + 4);
  EXPECT_NEAR(reduced_entropy(e, "B"), shannon_bits(p), 1e-12);
  EXPECT_NEAR(reduced_density(e, "A").trace().real(), 1.0, 1e-12);
}

TEST(Measure, MixtureDensityIsBlockDiagonal) {
  const BranchEnsemble e = BranchEnsemble::uniform(small_layout(), ids({"00", "11"}), KetD::Unit(8, 5));
  const OperatorD rho = mixture_density(e);
  ASSERT_EQ(rho.rows(), 32);
  EXPECT_NEAR(rho(5, 5).real(), 0.5, 1e-15);
  EXPECT_NEAR(rho(24 + 5, 24 + 5).real(), 0.5, 1e-15);
  EXPECT_NEAR(rho(5, 29).real(), 0.0, 1e-15);
}

TEST(Preparation, CollapseAndProject) {
  const BranchEnsemble e = BranchEnsemble::uniform(small_layout(), ids({"00", "01", "10", "11"}), KetD::Unit(8, 0));
  const BranchEnsemble one = prepare_setting(e, BitString::parse("10"));
  ASSERT_EQ(one.size(), 1u);
  EXPECT_DOUBLE_EQ(one.branches()[0].weight, 1.0);
  EXPECT_THROW(prepare_setting(one, BitString::parse("00")), std::domain_error);
  const std::vector<BitString> sub = ids({"01", "11"});
  const BranchEnsemble half = project_setting_subset(e, sub);
  EXPECT_EQ(half.settings(), sub);
  EXPECT_DOUBLE_EQ(half.branches()[0].weight, 0.5);
  const std::vector<BitString> none = ids({"10"});
  EXPECT_THROW(project_setting_subset(prepare_setting(e, BitString::parse("00")), none), std::domain_error);
}

TEST(Stages, BitwiseNotRelabelsSettings) {
  std::mt19937_64 rng(3);
  const RegisterLayout layout = small_layout();
  std::vector<Branch> branches;
  for (std::uint64_t b = 0; b < 4; ++b)
    branches.push_back(Branch{BitString(b, 2), BitString(b, 2), 0.25, testing::random_ket(8, rng)});
  const BranchEnsemble e(layout, branches);
  const BranchEnsemble flipped = apply_stage(e, Stage::bitwise_not("B"));
  for (const Branch& br : flipped.branches()) {
    EXPECT_EQ(br.setting, ~br.origin);
    EXPECT_EQ((br.state - e.find(br.origin)->state).norm(), 0.0);
  }
}

TEST(Stages, MatchExplicitMatrices) {
  auto p = std::make_shared<const OracleProblem>(build_grover(2));
  const RegisterLayout layout = small_layout();
  const BitString b = BitString::parse("10");
  const OperatorD i2 = testing::identity(2);
  const OperatorD h = testing::kron(testing::kron(testing::h1(), testing::h1()), i2);
  EXPECT_LT(testing::max_abs(Stage::hadamard("A").matrix(layout, b) - h), 1e-12);
  const OperatorD hv = testing::kron(testing::identity(4), testing::h1());
  EXPECT_LT(testing::max_abs(Stage::hadamard("V").matrix(layout, b) - hv), 1e-12);
  const OperatorD uf = testing::xor_oracle(2, 1, [](std::uint64_t a) { return a == 2 ? 1u : 0u; });
  EXPECT_LT(testing::max_abs(Stage::oracle_xor(p, "A", "V").matrix(layout, b) - uf), 1e-12);
  OperatorD phase = OperatorD::Identity(8, 8);
  phase(4, 4) = phase(5, 5) = -1.0;
  EXPECT_LT(testing::max_abs(Stage::oracle_phase(p, "A").matrix(layout, b) - phase), 1e-12);
}

TEST(Stages, RejectBadUse) {
  EXPECT_THROW(Stage::custom("A", OperatorD::Ones(4, 4)), std::invalid_argument);
  EXPECT_THROW(Stage::permutation("A", {0, 0, 1, 2}), std::invalid_argument);
  const BranchEnsemble e = BranchEnsemble::uniform(small_layout(), ids({"00"}), KetD::Unit(8, 0));
  EXPECT_THROW(apply_stage(e, Stage::hadamard("Q")), std::invalid_argument);
  EXPECT_THROW(apply_stage(e, Stage::hadamard("B")), std::invalid_argument);
}

TEST(MonteCarlo, ApproachesMixture) {
  std::mt19937_64 rng(5);
  std::vector<Branch> branches;
  for (std::uint64_t b = 0; b < 4; ++b)
    branches.push_back(Branch{BitString(b, 2), BitString(b, 2), 0.25, testing::random_ket(8, rng)});
  const BranchEnsemble e(small_layout(), branches);
  const OperatorD mc = monte_carlo_density(e, 10000, 42);
  EXPECT_LT(testing::max_abs(mc - mixture_density(e)), 1e-2);
  EXPECT_NEAR(mc.trace().real(), 1.0, 1e-9);
  EXPECT_THROW(monte_carlo_density(e, 0, 1), std::invalid_argument);
}

}  // namespace
}  // namespace qretro
