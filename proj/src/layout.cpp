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

#include "qretro/layout.hpp"

#include <set>
#include <stdexcept>

#include "qretro/bitstring.hpp"
#include "qretro/linalg.hpp"

namespace qretro {

RegisterLayout::RegisterLayout(std::vector<Register> registers, std::optional<std::string> setting_register)
    : registers_(std::move(registers)), setting_(std::move(setting_register)) {
  std::set<std::string> names;
  for (const Register& r : registers_) {
    if (r.name.empty()) throw std::invalid_argument("register names must not be empty");
    if (r.width == 0) throw std::invalid_argument("register " + r.name + " has zero width");
    if (!names.insert(r.name).second) throw std::invalid_argument("duplicate register name " + r.name);
  }
  if (setting_ && !names.contains(*setting_)) {
    throw std::invalid_argument("setting register " + *setting_ + " is not in the layout");
  }
  if (total_width() > kMaxTotalWidth) {
    throw std::invalid_argument("layout is " + std::to_string(total_width()) +
                                " qubits wide; the cap is " + std::to_string(kMaxTotalWidth));
  }
}

bool RegisterLayout::has(const std::string& name) const {
  for (const Register& r : registers_) {
    if (r.name == name) return true;
  }
  return false;
}

const Register& RegisterLayout::at(const std::string& name) const {
  for (const Register& r : registers_) {
    if (r.name == name) return r;
  }
  throw std::invalid_argument("unknown register '" + name + "'");
}

unsigned RegisterLayout::setting_width() const {
  if (!setting_) throw std::invalid_argument("layout has no setting register");
  return at(*setting_).width;
}

unsigned RegisterLayout::total_width() const {
  unsigned w = 0;
  for (const Register& r : registers_) w += r.width;
  return w;
}

unsigned RegisterLayout::state_width() const {
  unsigned w = 0;
  for (const Register& r : registers_) {
    if (!is_setting(r.name)) w += r.width;
  }
  return w;
}

unsigned RegisterLayout::shift(const std::string& name) const {
  if (is_setting(name)) throw std::invalid_argument("register " + name + " is the setting register");
  unsigned below = state_width();
  for (const Register& r : registers_) {
    if (is_setting(r.name)) continue;
    below -= r.width;
    if (r.name == name) return below;
  }
  throw std::invalid_argument("unknown register '" + name + "'");
}

std::uint64_t RegisterLayout::field(std::uint64_t index, const std::string& name) const {
  return (index >> shift(name)) & low_mask(at(name).width);
}

std::uint64_t RegisterLayout::with_field(std::uint64_t index, const std::string& name,
                                         std::uint64_t value) const {
  const unsigned s = shift(name);
  const std::uint64_t mask = low_mask(at(name).width) << s;
  return (index & ~mask) | ((value << s) & mask);
}

std::string RegisterLayout::label(std::uint64_t index) const {
  std::string out;
  for (const Register& r : registers_) {
    if (is_setting(r.name)) continue;
    out += "|" + BitString(field(index, r.name), r.width).str() + ">_" + r.name;
  }
  return out;
}

bool RegisterLayout::same_state_space(const RegisterLayout& other) const {
  std::vector<Register> mine;
  std::vector<Register> theirs;
  for (const Register& r : registers_) {
    if (!is_setting(r.name)) mine.push_back(r);
  }
  for (const Register& r : other.registers_) {
    if (!other.is_setting(r.name)) theirs.push_back(r);
  }
  return mine == theirs;
}

}  // namespace qretro
