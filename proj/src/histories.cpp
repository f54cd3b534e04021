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

#include "qretro/histories.hpp"

#include <algorithm>
#include <stdexcept>

namespace qretro {

VBranch parse_v_branch(std::string_view text) {
  if (text == "0") return VBranch::zero;
  if (text == "1") return VBranch::one;
  if (text == "both") return VBranch::both;
  throw std::invalid_argument("v-branch must be 0, 1 or both, got '" + std::string(text) + "'");
}

std::string_view to_string(VBranch branch) {
  switch (branch) {
    case VBranch::zero: return "0";
    case VBranch::one: return "1";
    case VBranch::both: return "both";
  }
  return "?";
}

namespace {

struct Walker {
  const HistorySet& set;
  const std::vector<OperatorD>& stages;
  const std::vector<bool>& is_query;
  std::vector<History>& out;
  History current;

  void walk(std::size_t k) {
    if (k == stages.size()) {
      out.push_back(current);
      return;
    }
    const std::uint64_t from = current.path.back();
    const OperatorD& m = stages[k];
    if (is_query[k]) {
      current.queries.emplace_back(set.layout.field(from, "A"), set.layout.at("A").width);
    }
    for (Eigen::Index to = 0; to < m.rows(); ++to) {
      const Amplitude elem = m(to, static_cast<Eigen::Index>(from));
      if (std::abs(elem) <= kAmplitudeFloor) continue;
      const Amplitude saved = current.amplitude;
      current.amplitude *= elem;
      current.path.push_back(static_cast<std::uint64_t>(to));
      current.steps.push_back(elem);
      walk(k + 1);
      current.steps.pop_back();
      current.path.pop_back();
      current.amplitude = saved;
    }
    if (is_query[k]) current.queries.pop_back();
  }
};

}  // namespace

HistorySet enumerate_paths(const Circuit& circuit, const OracleProblem& problem, const BitString& b,
                           std::span<const std::uint64_t> starts) {
  const Circuit bound = bind_problem(circuit, std::make_shared<const OracleProblem>(problem));
  problem.setting(b);
  HistorySet set{bound.layout, b, {}, {}};
  std::vector<OperatorD> stages;
  std::vector<bool> is_query;
  for (const Stage& s : bound.stages) {
    set.stage_labels.push_back(s.label());
    stages.push_back(s.matrix(bound.layout, b));
    is_query.push_back(s.is_query());
  }
  std::vector<std::uint64_t> ordered(starts.begin(), starts.end());
  std::sort(ordered.begin(), ordered.end());
  ordered.erase(std::unique(ordered.begin(), ordered.end()), ordered.end());
  for (std::uint64_t start : ordered) {
    if (start >= bound.layout.dimension()) throw std::out_of_range("start state outside the state space");
    Walker w{set, stages, is_query, set.histories, History{b, {start}, {1.0, 0.0}, {}, {}}};
    w.walk(0);
  }
  return set;
}

HistorySet enumerate_histories(const Circuit& circuit, const OracleProblem& problem, const BitString& b,
                               VBranch v_branch) {
  std::vector<std::uint64_t> starts;
  for (std::uint64_t v : {std::uint64_t{0}, std::uint64_t{1}}) {
    if ((v_branch == VBranch::zero && v == 1) || (v_branch == VBranch::one && v == 0)) continue;
    std::uint64_t idx = circuit.initial_basis;
    for (const std::string& reg : circuit.minus_registers) idx = circuit.layout.with_field(idx, reg, v);
    starts.push_back(idx);
  }
  return enumerate_paths(circuit, problem, b, starts);
}

Amplitude path_sum(const HistorySet& set, std::uint64_t initial, std::uint64_t final) {
  const std::uint64_t dim = set.layout.dimension();
  if (initial >= dim || final >= dim) throw std::out_of_range("endpoint outside the state space");
  Amplitude total{0.0, 0.0};
  for (const History& h : set.histories) {
    if (h.path.front() == initial && h.path.back() == final) total += h.amplitude;
  }
  return total;
}

HistoryClassification classify_history(const History& history, std::span<const AkInstance> instances,
                                       DecisionTreeSolver& solver, const OracleProblem& problem) {
  HistoryClassification out{history, {}};
  const Setting& truth = problem.setting(history.setting);
  for (const AkInstance& inst : instances) {
    if (!std::binary_search(inst.subset.begin(), inst.subset.end(), history.setting)) continue;
    SettingSet candidates = inst.subset;
    bool consistent = true;
    for (const BitString& a : history.queries) {
      const std::vector<std::uint64_t> best = solver.optimal_queries(candidates);
      if (std::find(best.begin(), best.end(), a.value()) == best.end()) {
        consistent = false;
        break;
      }
      const BitString seen = truth.table[a.value()];
      std::erase_if(candidates, [&](const BitString& c) { return problem.setting(c).table[a.value()] != seen; });
    }
    if (consistent) out.consistent.push_back(inst);
  }
  return out;
}

}  // namespace qretro
