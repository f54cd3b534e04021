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
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "qretro/bitstring.hpp"

namespace qretro {

/// Which partial measurements of the setting register are considered:
/// agreement on table cells, or GF(2) linear forms on the raw setting bits.
enum class Family { cells, linear };

std::string_view to_string(Family family);
Family parse_family(std::string_view text);

/// Raised for malformed or invariant-violating problem definitions. `path`
/// names the offending field, e.g. "settings[2].id".
class ProblemError : public std::invalid_argument {
 public:
  ProblemError(std::string path, const std::string& message);
  const std::string& path() const { return path_; }

 private:
  std::string path_;
};

/// One function f_b of the family.
struct Setting {
  BitString id;
  /// table[a] = f_b(a); 2^n entries of width m.
  std::vector<BitString> table;
  /// Coarse answer the solver must produce.
  std::string solution;
  /// Basis label the solver's register A ends up in; determines `solution`.
  BitString a_outcome;

  friend bool operator==(const Setting&, const Setting&) = default;
};

/// A family {f_b : {0,1}^n -> {0,1}^m} indexed by the admissible settings.
/// Settings are kept in ascending id order.
class OracleProblem {
 public:
  /// Validates every invariant; throws ProblemError naming the field.
  OracleProblem(std::string name, unsigned arg_bits, unsigned out_bits, Family default_family,
                std::vector<Setting> settings);

  const std::string& name() const { return name_; }
  unsigned arg_bits() const { return arg_bits_; }
  unsigned out_bits() const { return out_bits_; }
  Family default_family() const { return default_family_; }
  const std::vector<Setting>& settings() const { return settings_; }
  std::size_t size() const { return settings_.size(); }
  std::size_t table_size() const { return std::size_t{1} << arg_bits_; }

  unsigned id_width() const { return settings_.front().id.width(); }
  unsigned a_width() const { return settings_.front().a_outcome.width(); }

  std::optional<std::size_t> index_of(const BitString& b) const;
  /// Throws std::out_of_range for an unknown setting.
  const Setting& setting(const BitString& b) const;
  const Setting& operator[](std::size_t i) const { return settings_[i]; }

  friend bool operator==(const OracleProblem&, const OracleProblem&) = default;

 private:
  std::string name_;
  unsigned arg_bits_;
  unsigned out_bits_;
  Family default_family_;
  std::vector<Setting> settings_;
};

/// f_b(a). Throws std::out_of_range for an unknown b or a >= 2^n.
BitString eval(const OracleProblem& problem, const BitString& b, const BitString& a);

/// Unstructured search: f_b(a) = [a == b], 1 <= n <= 8.
OracleProblem build_grover(unsigned n);

/// Constant-vs-balanced tables with a_outcome taken from the circuit.
/// Only n <= 2 is supported; see dj_function_family for n = 3.
OracleProblem build_dj(unsigned n);

/// All constant and balanced tables for 1 <= n <= 3, with a_outcome set to the
/// table itself. Used to bind the DJ circuit before outcomes are known.
OracleProblem dj_function_family(unsigned n);

/// Period-finding tables for n in {2, 3}; solution = a_outcome = period h.
OracleProblem build_simon(unsigned n);

/// Parses and validates the JSON problem document.
OracleProblem load_problem(std::string_view document);

/// Inverse of load_problem (always writes a_outcome explicitly).
std::string serialize_problem(const OracleProblem& problem, int indent = 2);

/// `grover:n=K`, `dj:n=K`, `simon:n=K` or `file:PATH`.
OracleProblem select_problem(std::string_view selector);

}  // namespace qretro
