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

#include "qretro/qstate.hpp"

#include <algorithm>
#include <map>
#include <numbers>
#include <stdexcept>

namespace qretro {

BranchEnsemble::BranchEnsemble(RegisterLayout layout, std::vector<Branch> branches)
    : layout_(std::move(layout)), branches_(std::move(branches)) {
  if (!layout_.setting_register()) throw std::invalid_argument("ensemble layout needs a setting register");
  if (branches_.empty()) throw std::invalid_argument("ensemble has no branches");
  const unsigned bw = layout_.setting_width();
  const auto dim = static_cast<Eigen::Index>(layout_.dimension());
  double total = 0.0;
  for (const Branch& b : branches_) {
    if (b.setting.width() != bw || b.origin.width() != bw) {
      throw std::invalid_argument("branch setting " + b.setting.str() + " does not match the setting register width");
    }
    if (b.weight < 0.0) throw std::invalid_argument("negative branch weight");
    if (b.state.size() != dim) throw std::invalid_argument("branch state dimension does not match layout");
    if (std::abs(b.state.norm() - 1.0) > kTolerance) {
      throw std::invalid_argument("branch " + b.setting.str() + " state is not normalised");
    }
    total += b.weight;
  }
  if (std::abs(total - 1.0) > kTolerance) throw std::invalid_argument("branch weights do not sum to 1");
  std::sort(branches_.begin(), branches_.end(),
            [](const Branch& a, const Branch& b) { return a.setting < b.setting; });
  for (std::size_t i = 1; i < branches_.size(); ++i) {
    if (branches_[i].setting == branches_[i - 1].setting) {
      throw std::invalid_argument("duplicate branch setting " + branches_[i].setting.str());
    }
  }
}

BranchEnsemble BranchEnsemble::uniform(RegisterLayout layout, std::span<const BitString> settings,
                                       const KetD& state) {
  std::vector<Branch> branches;
  branches.reserve(settings.size());
  const double w = 1.0 / static_cast<double>(settings.size());
  for (const BitString& s : settings) branches.push_back(Branch{s, s, w, state});
  return BranchEnsemble(std::move(layout), std::move(branches));
}

const Branch* BranchEnsemble::find(const BitString& setting) const {
  auto it = std::lower_bound(branches_.begin(), branches_.end(), setting,
                             [](const Branch& b, const BitString& key) { return b.setting < key; });
  return (it != branches_.end() && it->setting == setting) ? &*it : nullptr;
}

std::vector<BitString> BranchEnsemble::settings() const {
  std::vector<BitString> out;
  out.reserve(branches_.size());
  for (const Branch& b : branches_) out.push_back(b.setting);
  return out;
}

OutcomeDistribution::OutcomeDistribution(std::vector<std::pair<BitString, double>> entries) {
  std::map<BitString, double> merged;
  double total = 0.0;
  for (const auto& [outcome, p] : entries) {
    if (p < -kTolerance || p > 1.0 + kTolerance) throw std::invalid_argument("probability outside [0, 1]");
    merged[outcome] += p;
    total += p;
  }
  if (std::abs(total - 1.0) > kTolerance) throw std::invalid_argument("probabilities do not sum to 1");
  entries_.assign(merged.begin(), merged.end());
}

double OutcomeDistribution::probability(const BitString& outcome) const {
  for (const auto& [o, p] : entries_) {
    if (o == outcome) return p;
  }
  return 0.0;
}

std::optional<BitString> OutcomeDistribution::certain(double tol) const {
  for (const auto& [o, p] : entries_) {
    if (std::abs(p - 1.0) <= tol) return o;
  }
  return std::nullopt;
}

BranchEnsemble apply_stage(const BranchEnsemble& ensemble, const Stage& stage) {
  const RegisterLayout& layout = ensemble.layout();
  std::vector<Branch> out = ensemble.branches();
  if (stage.kind() == StageKind::bitwise_not && layout.is_setting(stage.target())) {
    for (Branch& b : out) b.setting = ~b.setting;
  } else {
    for (Branch& b : out) b.state = stage.apply(layout, b.setting, b.state);
  }
  return BranchEnsemble(layout, std::move(out));
}

BranchEnsemble prepare_setting(const BranchEnsemble& ensemble, const BitString& outcome) {
  const Branch* b = ensemble.find(outcome);
  if (!b) throw std::domain_error("setting " + outcome.str() + " is not a branch of the ensemble");
  Branch collapsed = *b;
  collapsed.weight = 1.0;
  return BranchEnsemble(ensemble.layout(), {collapsed});
}

BranchEnsemble project_setting_subset(const BranchEnsemble& ensemble, std::span<const BitString> subset) {
  std::vector<Branch> kept;
  double total = 0.0;
  for (const Branch& b : ensemble.branches()) {
    if (std::find(subset.begin(), subset.end(), b.setting) != subset.end() && b.weight > 0.0) {
      kept.push_back(b);
      total += b.weight;
    }
  }
  if (kept.empty()) throw std::domain_error("projection onto the setting subset has probability zero");
  for (Branch& b : kept) b.weight /= total;
  return BranchEnsemble(ensemble.layout(), std::move(kept));
}

OutcomeDistribution measure_register(const BranchEnsemble& ensemble, const std::string& reg) {
  const RegisterLayout& layout = ensemble.layout();
  const Register& r = layout.at(reg);
  std::vector<std::pair<BitString, double>> entries;
  if (layout.is_setting(reg)) {
    for (const Branch& b : ensemble.branches()) entries.emplace_back(b.setting, b.weight);
    return OutcomeDistribution(std::move(entries));
  }
  std::vector<double> probs(std::size_t{1} << r.width, 0.0);
  for (const Branch& b : ensemble.branches()) {
    for (Eigen::Index i = 0; i < b.state.size(); ++i) {
      probs[layout.field(static_cast<std::uint64_t>(i), reg)] += b.weight * std::norm(b.state(i));
    }
  }
  for (std::size_t v = 0; v < probs.size(); ++v) {
    if (probs[v] > 0.0) entries.emplace_back(BitString(v, r.width), probs[v]);
  }
  return OutcomeDistribution(std::move(entries));
}

OutcomeDistribution measure_preparation_joint(const BranchEnsemble& ensemble, const std::string& reg) {
  std::vector<std::pair<BitString, double>> entries;
  for (const Branch& b : ensemble.branches()) {
    const BranchEnsemble single(ensemble.layout(), {Branch{b.setting, b.origin, 1.0, b.state}});
    const OutcomeDistribution dist = measure_register(single, reg);
    for (const auto& [outcome, p] : dist.entries()) {
      entries.emplace_back(b.origin.concat(outcome), b.weight * p);
    }
  }
  return OutcomeDistribution(std::move(entries));
}

namespace {

/// Partial trace of |psi><psi| onto register `reg`.
OperatorD reduce_pure(const RegisterLayout& layout, const KetD& psi, const std::string& reg) {
  const unsigned width = layout.at(reg).width;
  const unsigned shift = layout.shift(reg);
  const std::uint64_t sub = std::uint64_t{1} << width;
  const std::uint64_t rest = layout.dimension() / sub;
  // Rows: the other registers; columns: the kept register.
  OperatorD m(static_cast<Eigen::Index>(rest), static_cast<Eigen::Index>(sub));
  for (std::uint64_t i = 0; i < layout.dimension(); ++i) {
    const std::uint64_t low = i & low_mask(shift);
    const std::uint64_t high = i >> (shift + width);
    m(static_cast<Eigen::Index>(low | (high << shift)), static_cast<Eigen::Index>(layout.field(i, reg))) =
        psi(static_cast<Eigen::Index>(i));
  }
  return m.transpose() * m.conjugate();
}

}  // namespace

OperatorD reduced_density(const BranchEnsemble& ensemble, const std::string& reg) {
  const RegisterLayout& layout = ensemble.layout();
  const Register& r = layout.at(reg);
  if (r.width > 12) throw std::invalid_argument("reduced density of a register wider than 12 qubits");
  const auto dim = Eigen::Index{1} << r.width;
  OperatorD rho = OperatorD::Zero(dim, dim);
  if (layout.is_setting(reg)) {
    for (const Branch& b : ensemble.branches()) {
      rho(static_cast<Eigen::Index>(b.setting.value()), static_cast<Eigen::Index>(b.setting.value())) += b.weight;
    }
    return rho;
  }
  for (const Branch& b : ensemble.branches()) rho += b.weight * reduce_pure(layout, b.state, reg);
  return rho;
}

double reduced_entropy(const BranchEnsemble& ensemble, const std::string& reg) {
  const RegisterLayout& layout = ensemble.layout();
  if (layout.is_setting(reg)) {
    // Distinct settings are orthogonal, so the reduction is diagonal.
    std::vector<double> weights;
    for (const Branch& b : ensemble.branches()) weights.push_back(b.weight);
    return shannon_bits(weights);
  }
  return von_neumann_entropy(reduced_density(ensemble, reg));
}

double shannon_entropy(const OutcomeDistribution& dist) {
  std::vector<double> p;
  for (const auto& e : dist.entries()) p.push_back(e.second);
  return shannon_bits(p);
}

OperatorD mixture_density(const BranchEnsemble& ensemble) {
  const RegisterLayout& layout = ensemble.layout();
  if (layout.total_width() > 12) throw std::invalid_argument("full density matrix limited to 12 qubits");
  const auto d = static_cast<Eigen::Index>(layout.dimension());
  const auto full = d << layout.setting_width();
  OperatorD rho = OperatorD::Zero(full, full);
  for (const Branch& b : ensemble.branches()) {
    const auto off = static_cast<Eigen::Index>(b.setting.value()) * d;
    rho.block(off, off, d, d) += b.weight * b.state * b.state.adjoint();
  }
  return rho;
}

std::vector<double> sample_phases(const BranchEnsemble& ensemble, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> angle(0.0, 2.0 * std::numbers::pi);
  std::vector<double> phases(ensemble.size());
  for (double& p : phases) p = angle(rng);
  return phases;
}

OperatorD monte_carlo_density(const BranchEnsemble& ensemble, std::size_t samples, std::uint64_t seed) {
  const RegisterLayout& layout = ensemble.layout();
  if (layout.total_width() > 12) throw std::invalid_argument("full density matrix limited to 12 qubits");
  if (samples == 0) throw std::invalid_argument("need at least one phase sample");
  const auto d = static_cast<Eigen::Index>(layout.dimension());
  const auto full = d << layout.setting_width();
  std::mt19937_64 rng(seed);
  OperatorD acc = OperatorD::Zero(full, full);
  KetD psi(full);
  for (std::size_t s = 0; s < samples; ++s) {
    const std::vector<double> phases = sample_phases(ensemble, rng);
    psi.setZero();
    for (std::size_t k = 0; k < ensemble.size(); ++k) {
      const Branch& b = ensemble.branches()[k];
      const Amplitude c = std::sqrt(b.weight) * std::polar(1.0, phases[k]);
      psi.segment(static_cast<Eigen::Index>(b.setting.value()) * d, d) = c * b.state;
    }
    acc.noalias() += psi * psi.adjoint();
  }
  return acc / static_cast<double>(samples);
}

bool approx_equal(const BranchEnsemble& a, const BranchEnsemble& b, double tol) {
  if (!(a.layout() == b.layout()) || a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const Branch& x = a.branches()[i];
    const Branch& y = b.branches()[i];
    if (x.setting != y.setting || x.origin != y.origin) return false;
    if (std::abs(x.weight - y.weight) > tol) return false;
    if ((x.state - y.state).cwiseAbs().maxCoeff() > tol) return false;
  }
  return true;
}

}  // namespace qretro
