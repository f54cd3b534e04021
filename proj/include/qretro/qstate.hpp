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
#include <optional>
#include <random>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "qretro/bitstring.hpp"
#include "qretro/layout.hpp"
#include "qretro/linalg.hpp"
#include "qretro/stage.hpp"

namespace qretro {

/// One setting-labelled pure state of the mixture.
struct Branch {
  /// Current content of the setting register.
  BitString setting;
  /// Setting as first prepared, before any relabelling of the setting register.
  BitString origin;
  double weight = 0.0;
  KetD state;
};

/// Classical mixture of setting-labelled pure states over the state registers.
/// This is the density-operator content of a ket whose setting components
/// carry independent uniform random phases; the phases average out of every
/// observable, so they are not stored.
///
/// Branches are kept in ascending setting order.
class BranchEnsemble {
 public:
  /// Throws std::invalid_argument if weights do not sum to one, settings
  /// repeat, or a state has the wrong dimension or norm.
  BranchEnsemble(RegisterLayout layout, std::vector<Branch> branches);

  /// Equal-weight branches sharing one initial state.
  static BranchEnsemble uniform(RegisterLayout layout, std::span<const BitString> settings,
                                const KetD& state);

  const RegisterLayout& layout() const { return layout_; }
  const std::vector<Branch>& branches() const { return branches_; }
  std::size_t size() const { return branches_.size(); }
  const Branch* find(const BitString& setting) const;
  std::vector<BitString> settings() const;

 private:
  RegisterLayout layout_;
  std::vector<Branch> branches_;
};

/// Born-rule distribution over basis outcomes, in ascending outcome order.
class OutcomeDistribution {
 public:
  OutcomeDistribution() = default;
  /// Merges repeated outcomes; throws unless probabilities sum to one.
  explicit OutcomeDistribution(std::vector<std::pair<BitString, double>> entries);

  const std::vector<std::pair<BitString, double>>& entries() const { return entries_; }
  double probability(const BitString& outcome) const;
  /// Outcome with probability 1 within `tol`, if any.
  std::optional<BitString> certain(double tol = kTolerance) const;

 private:
  std::vector<std::pair<BitString, double>> entries_;
};

/// Applies `stage` to every branch, reading the branch setting for oracles.
/// A bitwise NOT on the setting register relabels the settings instead.
BranchEnsemble apply_stage(const BranchEnsemble& ensemble, const Stage& stage);

/// Collapse onto the branch holding `outcome` (the preparation measurement).
BranchEnsemble prepare_setting(const BranchEnsemble& ensemble, const BitString& outcome);

/// Keeps branches whose setting is in `subset` and renormalises the weights.
/// Throws std::domain_error when no branch survives.
BranchEnsemble project_setting_subset(const BranchEnsemble& ensemble, std::span<const BitString> subset);

/// Distribution of a state register, or of the setting register itself.
OutcomeDistribution measure_register(const BranchEnsemble& ensemble, const std::string& reg);

/// Joint distribution of (prepared setting, register outcome), each outcome
/// being the concatenation origin|register.
OutcomeDistribution measure_preparation_joint(const BranchEnsemble& ensemble, const std::string& reg);

/// Reduced density operator of one register of the weighted mixture.
OperatorD reduced_density(const BranchEnsemble& ensemble, const std::string& reg);

/// Von Neumann entropy (bits) of reduced_density(ensemble, reg).
double reduced_entropy(const BranchEnsemble& ensemble, const std::string& reg);

double shannon_entropy(const OutcomeDistribution& dist);

/// Density matrix of the whole system, setting register included. The setting
/// register is the most significant factor, indexed by setting value.
OperatorD mixture_density(const BranchEnsemble& ensemble);

/// Independent uniform phases, one per branch.
std::vector<double> sample_phases(const BranchEnsemble& ensemble, std::mt19937_64& rng);

/// Average of |psi><psi| over `samples` explicit random-phase kets
/// sum_b sqrt(w_b) e^{i phi_b} |b>|psi_b>.
OperatorD monte_carlo_density(const BranchEnsemble& ensemble, std::size_t samples, std::uint64_t seed);

/// Branch-by-branch comparison: settings, origins, weights and amplitudes.
bool approx_equal(const BranchEnsemble& a, const BranchEnsemble& b, double tol = kTolerance);

}  // namespace qretro
