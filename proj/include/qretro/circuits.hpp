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

#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "qretro/layout.hpp"
#include "qretro/linalg.hpp"
#include "qretro/oracle.hpp"
#include "qretro/qstate.hpp"
#include "qretro/stage.hpp"

namespace qretro {

/// A staged algorithm acting on the state registers, controlled by the
/// setting register through its oracle stages.
struct Circuit {
  std::string name;
  /// Layout including the setting register "B".
  RegisterLayout layout;
  /// Basis index of the initial state before the minus-state preparation.
  std::uint64_t initial_basis = 0;
  /// One-qubit registers prepared in (|0> - |1>)/sqrt(2).
  std::vector<std::string> minus_registers;
  std::vector<Stage> stages;
  /// Indices into `stages` of the oracle stages.
  std::vector<std::size_t> query_stages;
  std::shared_ptr<const OracleProblem> oracle;

  KetD initial_state() const;
  /// Uniform ensemble over every setting of the bound problem.
  BranchEnsemble input_ensemble() const;
  BranchEnsemble input_ensemble(std::span<const BitString> settings) const;
};

/// States at every stage boundary, input first.
struct StageTrace {
  std::vector<std::string> labels;
  std::vector<BranchEnsemble> states;

  const BranchEnsemble& output() const { return states.back(); }
};

/// Grover search at n = 2: H_A, U_f (xor into V), inversion about the mean.
Circuit grover_circuit();

/// H_A, U_f, H_A on n argument qubits, 1 <= n <= 3, bound to the DJ tables.
Circuit dj_circuit(unsigned n);

/// Single-query Simon algorithm at n = 2: H_A, U_f, H_A, then the swap of
/// |01>_A and |10>_A.
Circuit simon1q_circuit();

/// Same circuit with every oracle stage reading `problem`. Throws if the
/// problem's ids do not fit the setting register or its n, m do not match.
Circuit bind_problem(const Circuit& circuit, std::shared_ptr<const OracleProblem> problem);

/// Runs every stage; throws std::invalid_argument on a layout mismatch.
StageTrace run(const Circuit& circuit, const BranchEnsemble& ensemble);

/// Product of all stage matrices for one setting, last stage leftmost.
OperatorD composed_unitary(const Circuit& circuit, const BitString& setting);

/// Basis label of the sharp A state left by the circuit on setting `b`.
/// Throws std::domain_error if the reduced A state is not a basis state.
BitString derive_a_outcome(const Circuit& circuit, const OracleProblem& problem, const BitString& b);

/// Checks the |b>|s(b)>|phi(b)> output form for every setting: the output A
/// register is sharp and equals the problem's a_outcome.
bool realizes_inout_form(const Circuit& circuit, const OracleProblem& problem);

/// Built-in circuit for a built-in problem (grover:n=2, dj:n<=2, simon:n=2).
std::optional<Circuit> circuit_for(const OracleProblem& problem);

/// Output ensemble in the |b>_B |a_outcome(b)>_A form (other registers
/// traced out), synthesised from the problem alone.
BranchEnsemble inout_ensemble(const OracleProblem& problem);

/// Circuit output when a built-in circuit exists, else inout_ensemble.
BranchEnsemble output_ensemble(const OracleProblem& problem);

}  // namespace qretro
