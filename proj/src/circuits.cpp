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

#include "qretro/circuits.hpp"

#include <cmath>
#include <stdexcept>

namespace qretro {

KetD Circuit::initial_state() const {
  const auto dim = static_cast<Eigen::Index>(layout.dimension());
  KetD psi = KetD::Unit(dim, static_cast<Eigen::Index>(initial_basis));
  for (const std::string& reg : minus_registers) {
    if (layout.at(reg).width != 1) throw std::invalid_argument("minus state needs a one-qubit register");
    KetD next = KetD::Zero(dim);
    for (Eigen::Index i = 0; i < dim; ++i) {
      if (psi(i) == Amplitude(0)) continue;
      const auto idx = static_cast<std::uint64_t>(i);
      next(static_cast<Eigen::Index>(layout.with_field(idx, reg, 0))) += psi(i) * M_SQRT1_2;
      next(static_cast<Eigen::Index>(layout.with_field(idx, reg, 1))) -= psi(i) * M_SQRT1_2;
    }
    psi = next;
  }
  return psi;
}

BranchEnsemble Circuit::input_ensemble() const {
  if (!oracle) throw std::logic_error("circuit is not bound to a problem");
  std::vector<BitString> ids;
  for (const Setting& s : oracle->settings()) ids.push_back(s.id);
  return input_ensemble(ids);
}

BranchEnsemble Circuit::input_ensemble(std::span<const BitString> settings) const {
  return BranchEnsemble::uniform(layout, settings, initial_state());
}

namespace {

Circuit oracle_circuit(std::string name, unsigned setting_width, unsigned n, unsigned m,
                       std::shared_ptr<const OracleProblem> problem) {
  Circuit c;
  c.name = std::move(name);
  c.layout = RegisterLayout({{"B", setting_width}, {"A", n}, {"V", m}}, "B");
  c.minus_registers = {"V"};
  c.oracle = std::move(problem);
  return c;
}

}  // namespace

Circuit grover_circuit() {
  auto problem = std::make_shared<const OracleProblem>(build_grover(2));
  Circuit c = oracle_circuit("grover:n=2", 2, 2, 1, problem);
  c.stages = {Stage::hadamard("A", "H_A"), Stage::oracle_xor(problem, "A", "V"),
              Stage::inversion_about_mean("A", "Im_A")};
  c.query_stages = {1};
  return c;
}

Circuit dj_circuit(unsigned n) {
  auto problem = std::make_shared<const OracleProblem>(dj_function_family(n));
  Circuit c = oracle_circuit("dj:n=" + std::to_string(n), 1U << n, n, 1, problem);
  c.stages = {Stage::hadamard("A", "H_A"), Stage::oracle_xor(problem, "A", "V"),
              Stage::hadamard("A", "H_A")};
  c.query_stages = {1};
  return c;
}

Circuit simon1q_circuit() {
  auto problem = std::make_shared<const OracleProblem>(build_simon(2));
  Circuit c = oracle_circuit("simon:n=2", problem->id_width(), 2, 1, problem);
  c.stages = {Stage::hadamard("A", "H_A"), Stage::oracle_xor(problem, "A", "V"),
              Stage::hadamard("A", "H_A"), Stage::permutation("A", {0, 2, 1, 3}, "P_A")};
  c.query_stages = {1};
  return c;
}

Circuit bind_problem(const Circuit& circuit, std::shared_ptr<const OracleProblem> problem) {
  if (!problem) throw std::invalid_argument("cannot bind a circuit to a null problem");
  if (problem->id_width() != circuit.layout.setting_width()) {
    throw std::invalid_argument("problem ids are " + std::to_string(problem->id_width()) +
                                " bits wide but the setting register has " +
                                std::to_string(circuit.layout.setting_width()));
  }
  Circuit out = circuit;
  out.oracle = problem;
  for (Stage& s : out.stages) s = s.with_oracle(problem);
  return out;
}

StageTrace run(const Circuit& circuit, const BranchEnsemble& ensemble) {
  if (!circuit.layout.same_state_space(ensemble.layout())) {
    throw std::invalid_argument("ensemble layout does not match circuit " + circuit.name);
  }
  StageTrace trace;
  trace.labels.push_back("input");
  trace.states.push_back(ensemble);
  for (const Stage& s : circuit.stages) {
    trace.states.push_back(apply_stage(trace.states.back(), s));
    trace.labels.push_back(s.label());
  }
  return trace;
}

OperatorD composed_unitary(const Circuit& circuit, const BitString& setting) {
  const auto dim = static_cast<Eigen::Index>(circuit.layout.dimension());
  OperatorD u = OperatorD::Identity(dim, dim);
  for (const Stage& s : circuit.stages) u = s.matrix(circuit.layout, setting) * u;
  return u;
}

BitString derive_a_outcome(const Circuit& circuit, const OracleProblem& problem, const BitString& b) {
  const Circuit bound = bind_problem(circuit, std::make_shared<const OracleProblem>(problem));
  const BitString ids[] = {b};
  const StageTrace trace = run(bound, bound.input_ensemble(ids));
  const OutcomeDistribution dist = measure_register(trace.output(), "A");
  if (auto sharp = dist.certain()) return *sharp;
  throw std::domain_error("output A state for setting " + b.str() + " is not a basis state");
}

bool realizes_inout_form(const Circuit& circuit, const OracleProblem& problem) {
  for (const Setting& s : problem.settings()) {
    try {
      if (derive_a_outcome(circuit, problem, s.id) != s.a_outcome) return false;
    } catch (const std::domain_error&) {
      return false;
    }
  }
  return true;
}

std::optional<Circuit> circuit_for(const OracleProblem& problem) {
  const std::string& name = problem.name();
  std::optional<Circuit> c;
  if (name == "grover:n=2") c = grover_circuit();
  if (name == "dj:n=1") c = dj_circuit(1);
  if (name == "dj:n=2") c = dj_circuit(2);
  if (name == "simon:n=2") c = simon1q_circuit();
  if (!c) return std::nullopt;
  try {
    return bind_problem(*c, std::make_shared<const OracleProblem>(problem));
  } catch (const std::invalid_argument&) {
    return std::nullopt;
  }
}

BranchEnsemble inout_ensemble(const OracleProblem& problem) {
  const unsigned aw = problem.a_width();
  RegisterLayout layout({{"B", problem.id_width()}, {"A", aw}}, "B");
  std::vector<Branch> branches;
  const double w = 1.0 / static_cast<double>(problem.size());
  for (const Setting& s : problem.settings()) {
    KetD psi = KetD::Unit(Eigen::Index{1} << aw, static_cast<Eigen::Index>(s.a_outcome.value()));
    branches.push_back(Branch{s.id, s.id, w, std::move(psi)});
  }
  return BranchEnsemble(std::move(layout), std::move(branches));
}

BranchEnsemble output_ensemble(const OracleProblem& problem) {
  if (auto c = circuit_for(problem)) return run(*c, c->input_ensemble()).output();
  return inout_ensemble(problem);
}

}  // namespace qretro
