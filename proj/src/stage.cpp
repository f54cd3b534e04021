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

#include "qretro/stage.hpp"

#include <stdexcept>

namespace qretro {

std::string_view to_string(StageKind kind) {
  switch (kind) {
    case StageKind::hadamard: return "hadamard";
    case StageKind::oracle_xor: return "oracle_xor";
    case StageKind::oracle_phase: return "oracle_phase";
    case StageKind::inversion_about_mean: return "inversion_about_mean";
    case StageKind::permutation: return "permutation";
    case StageKind::bitwise_not: return "bitwise_not";
    case StageKind::custom: return "custom";
  }
  return "unknown";
}

Stage Stage::hadamard(std::string reg, std::string label) {
  return Stage(StageKind::hadamard, std::move(reg), std::move(label));
}

Stage Stage::oracle_xor(std::shared_ptr<const OracleProblem> problem, std::string arg,
                        std::string target, std::string label) {
  Stage s(StageKind::oracle_xor, std::move(arg), std::move(label));
  s.aux_ = std::move(target);
  s.oracle_ = std::move(problem);
  return s;
}

Stage Stage::oracle_phase(std::shared_ptr<const OracleProblem> problem, std::string arg,
                          std::string label) {
  if (problem && problem->out_bits() != 1) {
    throw std::invalid_argument("phase oracle needs one-bit function outputs");
  }
  Stage s(StageKind::oracle_phase, std::move(arg), std::move(label));
  s.oracle_ = std::move(problem);
  return s;
}

Stage Stage::inversion_about_mean(std::string reg, std::string label) {
  return Stage(StageKind::inversion_about_mean, std::move(reg), std::move(label));
}

Stage Stage::permutation(std::string reg, std::vector<std::uint64_t> map, std::string label) {
  permutation_matrix<double>(map);  // validates bijectivity
  Stage s(StageKind::permutation, std::move(reg), std::move(label));
  s.map_ = std::move(map);
  return s;
}

Stage Stage::bitwise_not(std::string reg, std::string label) {
  return Stage(StageKind::bitwise_not, std::move(reg), std::move(label));
}

Stage Stage::custom(std::string reg, OperatorD matrix, std::string label) {
  if (!is_unitary(matrix)) throw std::invalid_argument("custom stage matrix is not unitary");
  Stage s(StageKind::custom, std::move(reg), std::move(label));
  s.custom_ = std::move(matrix);
  return s;
}

Stage Stage::with_oracle(std::shared_ptr<const OracleProblem> problem) const {
  Stage s = *this;
  if (is_query()) s.oracle_ = std::move(problem);
  return s;
}

std::vector<std::string> Stage::registers() const {
  if (kind_ == StageKind::oracle_xor) return {target_, aux_};
  return {target_};
}

OperatorD Stage::local_matrix(unsigned width) const {
  const std::size_t dim = std::size_t{1} << width;
  switch (kind_) {
    case StageKind::hadamard: return qretro::hadamard<double>(width);
    case StageKind::inversion_about_mean: return qretro::inversion_about_mean<double>(width);
    case StageKind::permutation:
      if (map_.size() != dim) {
        throw std::invalid_argument("permutation stage '" + label_ + "' has " + std::to_string(map_.size()) +
                                    " entries for a register of dimension " + std::to_string(dim));
      }
      return permutation_matrix<double>(map_);
    case StageKind::bitwise_not: {
      std::vector<std::uint64_t> flip(dim);
      for (std::size_t i = 0; i < dim; ++i) flip[i] = ~i & (dim - 1);
      return permutation_matrix<double>(flip);
    }
    case StageKind::custom:
      if (static_cast<std::size_t>(custom_.rows()) != dim) {
        throw std::invalid_argument("custom stage '" + label_ + "' does not match register width");
      }
      return custom_;
    case StageKind::oracle_xor:
    case StageKind::oracle_phase: break;
  }
  throw std::logic_error("oracle stages have no local matrix");
}

namespace {

void check_register(const RegisterLayout& layout, const std::string& name, const std::string& label) {
  if (!layout.has(name)) throw std::invalid_argument("stage '" + label + "' references unknown register '" + name + "'");
  if (layout.is_setting(name)) {
    throw std::invalid_argument("stage '" + label + "' acts on the setting register '" + name + "'");
  }
}

}  // namespace

KetD Stage::apply(const RegisterLayout& layout, const BitString& setting, const KetD& state) const {
  for (const std::string& r : registers()) check_register(layout, r, label_);
  if (static_cast<std::size_t>(state.size()) != layout.dimension()) {
    throw std::invalid_argument("state dimension does not match layout");
  }
  const std::uint64_t dim = layout.dimension();
  KetD out = KetD::Zero(state.size());

  if (is_query()) {
    if (!oracle_) throw std::logic_error("oracle stage '" + label_ + "' is not bound to a problem");
    const Setting& s = oracle_->setting(setting);
    if (layout.at(target_).width != oracle_->arg_bits()) {
      throw std::invalid_argument("oracle argument register width differs from the problem's n");
    }
    if (kind_ == StageKind::oracle_xor) {
      if (layout.at(aux_).width != oracle_->out_bits()) {
        throw std::invalid_argument("oracle output register width differs from the problem's m");
      }
      for (std::uint64_t i = 0; i < dim; ++i) {
        const std::uint64_t a = layout.field(i, target_);
        const std::uint64_t v = layout.field(i, aux_);
        out(static_cast<Eigen::Index>(layout.with_field(i, aux_, v ^ s.table[a].value()))) +=
            state(static_cast<Eigen::Index>(i));
      }
    } else {
      for (std::uint64_t i = 0; i < dim; ++i) {
        const bool flip = s.table[layout.field(i, target_)].value() & 1U;
        out(static_cast<Eigen::Index>(i)) = flip ? -state(static_cast<Eigen::Index>(i))
                                                 : state(static_cast<Eigen::Index>(i));
      }
    }
  } else {
    const unsigned width = layout.at(target_).width;
    const OperatorD local = local_matrix(width);
    const unsigned shift = layout.shift(target_);
    const std::uint64_t sub = std::uint64_t{1} << width;
    const std::uint64_t field_mask = (sub - 1) << shift;
    KetD gathered(static_cast<Eigen::Index>(sub));
    for (std::uint64_t base = 0; base < dim; ++base) {
      if (base & field_mask) continue;
      for (std::uint64_t k = 0; k < sub; ++k) gathered(static_cast<Eigen::Index>(k)) = state(static_cast<Eigen::Index>(base | (k << shift)));
      const KetD mapped = local * gathered;
      for (std::uint64_t k = 0; k < sub; ++k) out(static_cast<Eigen::Index>(base | (k << shift))) = mapped(static_cast<Eigen::Index>(k));
    }
  }

  const double drift = std::abs(out.norm() - state.norm());
  if (drift > kTolerance) {
    throw std::runtime_error("stage '" + label_ + "' is not norm preserving (drift " + std::to_string(drift) + ")");
  }
  return out;
}

OperatorD Stage::matrix(const RegisterLayout& layout, const BitString& setting) const {
  const auto dim = static_cast<Eigen::Index>(layout.dimension());
  if (layout.state_width() > 12) throw std::invalid_argument("stage matrices are limited to 12 state qubits");
  OperatorD m(dim, dim);
  for (Eigen::Index c = 0; c < dim; ++c) {
    m.col(c) = apply(layout, setting, KetD::Unit(dim, c));
  }
  return m;
}

}  // namespace qretro
