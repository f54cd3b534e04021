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
#include <memory>
#include <string>
#include <vector>

#include "qretro/bitstring.hpp"
#include "qretro/layout.hpp"
#include "qretro/linalg.hpp"
#include "qretro/oracle.hpp"

namespace qretro {

enum class StageKind {
  hadamard,
  oracle_xor,
  oracle_phase,
  inversion_about_mean,
  permutation,
  bitwise_not,
  custom,
};

std::string_view to_string(StageKind kind);

/// One named unitary of a staged algorithm. Oracle stages are controlled by
/// the branch setting; everything else acts on a single state register.
class Stage {
 public:
  static Stage hadamard(std::string reg, std::string label = "H");
  /// |a>|v> -> |a>|v xor f_b(a)>.
  static Stage oracle_xor(std::shared_ptr<const OracleProblem> problem, std::string arg,
                          std::string target, std::string label = "U_f");
  /// |a> -> (-1)^{f_b(a)} |a>; needs one-bit outputs.
  static Stage oracle_phase(std::shared_ptr<const OracleProblem> problem, std::string arg,
                            std::string label = "U_f");
  static Stage inversion_about_mean(std::string reg, std::string label = "Im");
  /// |i> -> |map[i]>; throws unless `map` is a bijection.
  static Stage permutation(std::string reg, std::vector<std::uint64_t> map, std::string label = "P");
  /// Flips every bit. On the setting register this relabels branch settings.
  static Stage bitwise_not(std::string reg, std::string label = "U_B");
  /// Throws unless `matrix` is unitary within kTolerance.
  static Stage custom(std::string reg, OperatorD matrix, std::string label = "U");

  StageKind kind() const { return kind_; }
  const std::string& label() const { return label_; }
  /// Register acted on (the argument register for oracles).
  const std::string& target() const { return target_; }
  /// Output register of an xor oracle, empty otherwise.
  const std::string& aux() const { return aux_; }
  bool is_query() const { return kind_ == StageKind::oracle_xor || kind_ == StageKind::oracle_phase; }
  const std::shared_ptr<const OracleProblem>& oracle() const { return oracle_; }
  const std::vector<std::uint64_t>& index_map() const { return map_; }

  Stage with_oracle(std::shared_ptr<const OracleProblem> problem) const;

  /// Registers named by this stage that must exist in a layout.
  std::vector<std::string> registers() const;

  /// Action on one branch state. Throws std::invalid_argument when the stage
  /// names a register missing from `layout` or acts on the setting register.
  KetD apply(const RegisterLayout& layout, const BitString& setting, const KetD& state) const;

  /// Full matrix on the state space for one setting (small layouts only).
  OperatorD matrix(const RegisterLayout& layout, const BitString& setting) const;

  /// Matrix on the target register alone, for non-oracle stages.
  OperatorD local_matrix(unsigned width) const;

 private:
  Stage(StageKind kind, std::string target, std::string label)
      : kind_(kind), target_(std::move(target)), label_(std::move(label)) {}

  StageKind kind_;
  std::string target_;
  std::string label_;
  std::string aux_;
  std::vector<std::uint64_t> map_;
  OperatorD custom_;
  std::shared_ptr<const OracleProblem> oracle_;
};

}  // namespace qretro
