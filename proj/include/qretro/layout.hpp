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

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace qretro {

struct Register {
  std::string name;
  unsigned width;

  friend bool operator==(const Register&, const Register&) = default;
};

/// Ordered registers. One of them may be the setting register, which is never
/// simulated as amplitudes: it labels the branches of an ensemble instead.
///
/// The remaining registers form the state space. Basis indices are
/// register-major and big-endian: the first state register holds the most
/// significant bits.
class RegisterLayout {
 public:
  RegisterLayout() = default;
  RegisterLayout(std::vector<Register> registers, std::optional<std::string> setting_register = {});

  const std::vector<Register>& registers() const { return registers_; }
  const std::optional<std::string>& setting_register() const { return setting_; }
  bool is_setting(const std::string& name) const { return setting_ && *setting_ == name; }
  bool has(const std::string& name) const;
  /// Throws std::invalid_argument for an unknown register.
  const Register& at(const std::string& name) const;
  unsigned setting_width() const;

  unsigned total_width() const;
  unsigned state_width() const;
  std::size_t dimension() const { return std::size_t{1} << state_width(); }

  /// Bit offset of a state register inside a basis index.
  unsigned shift(const std::string& name) const;
  std::uint64_t field(std::uint64_t index, const std::string& name) const;
  std::uint64_t with_field(std::uint64_t index, const std::string& name, std::uint64_t value) const;

  /// Basis label such as "|01>_A|1>_V".
  std::string label(std::uint64_t index) const;

  /// Same state registers in the same order (the setting register is ignored).
  bool same_state_space(const RegisterLayout& other) const;

  friend bool operator==(const RegisterLayout&, const RegisterLayout&) = default;

 private:
  std::vector<Register> registers_;
  std::optional<std::string> setting_;
};

}  // namespace qretro
