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

#include "qretro/oracle.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <map>
#include <numeric>
#include <set>
#include <sstream>

#include <json.hpp>

#include "qretro/circuits.hpp"

namespace qretro {

using nlohmann::json;

std::string_view to_string(Family family) {
  return family == Family::cells ? "cells" : "linear";
}

Family parse_family(std::string_view text) {
  if (text == "cells") return Family::cells;
  if (text == "linear") return Family::linear;
  throw std::invalid_argument("unknown measurement family '" + std::string(text) +
                              "' (expected cells or linear)");
}

ProblemError::ProblemError(std::string path, const std::string& message)
    : std::invalid_argument(path.empty() ? message : path + ": " + message), path_(std::move(path)) {}

namespace {

std::string setting_path(std::size_t i) { return "settings[" + std::to_string(i) + "]"; }

}  // namespace

OracleProblem::OracleProblem(std::string name, unsigned arg_bits, unsigned out_bits,
                             Family default_family, std::vector<Setting> settings)
    : name_(std::move(name)),
      arg_bits_(arg_bits),
      out_bits_(out_bits),
      default_family_(default_family),
      settings_(std::move(settings)) {
  if (arg_bits_ < 1 || arg_bits_ > 12) throw ProblemError("arg_bits", "must be in [1, 12]");
  if (out_bits_ < 1 || out_bits_ > arg_bits_) throw ProblemError("out_bits", "must be in [1, arg_bits]");
  if (settings_.empty()) throw ProblemError("settings", "must not be empty");

  const unsigned id_w = settings_.front().id.width();
  const unsigned a_w = settings_.front().a_outcome.width();
  for (std::size_t i = 0; i < settings_.size(); ++i) {
    const Setting& s = settings_[i];
    if (s.id.width() != id_w) throw ProblemError(setting_path(i) + ".id", "all ids must share one width");
    if (s.table.size() != table_size()) {
      throw ProblemError(setting_path(i) + ".table",
                         "expected " + std::to_string(table_size()) + " entries, got " +
                             std::to_string(s.table.size()));
    }
    for (std::size_t a = 0; a < s.table.size(); ++a) {
      if (s.table[a].width() != out_bits_) {
        throw ProblemError(setting_path(i) + ".table[" + std::to_string(a) + "]",
                           "entry width must equal out_bits");
      }
    }
    if (s.solution.empty()) throw ProblemError(setting_path(i) + ".solution", "must not be empty");
    if (s.a_outcome.width() != a_w) {
      throw ProblemError(setting_path(i) + ".a_outcome", "all a_outcome labels must share one width");
    }
  }

  std::stable_sort(settings_.begin(), settings_.end(),
                   [](const Setting& a, const Setting& b) { return a.id < b.id; });
  for (std::size_t i = 1; i < settings_.size(); ++i) {
    if (settings_[i].id == settings_[i - 1].id) {
      throw ProblemError("settings", "duplicate setting id " + settings_[i].id.str());
    }
  }

  // a_outcome must determine the solution, and its blocks must have equal size.
  std::map<BitString, std::pair<std::string, std::size_t>> blocks;
  for (const Setting& s : settings_) {
    auto [it, inserted] = blocks.try_emplace(s.a_outcome, s.solution, 0);
    if (!inserted && it->second.first != s.solution) {
      throw ProblemError("settings", "a_outcome " + s.a_outcome.str() + " maps to two solutions ('" +
                                         it->second.first + "' and '" + s.solution + "')");
    }
    ++it->second.second;
  }
  const std::size_t block = blocks.begin()->second.second;
  for (const auto& [label, entry] : blocks) {
    if (entry.second != block) {
      throw ProblemError("settings", "outcome blocks are unequal: " + blocks.begin()->first.str() +
                                         " has " + std::to_string(block) + " settings, " +
                                         label.str() + " has " + std::to_string(entry.second));
    }
  }
}

std::optional<std::size_t> OracleProblem::index_of(const BitString& b) const {
  auto it = std::lower_bound(settings_.begin(), settings_.end(), b,
                             [](const Setting& s, const BitString& key) { return s.id < key; });
  if (it == settings_.end() || it->id != b) return std::nullopt;
  return static_cast<std::size_t>(it - settings_.begin());
}

const Setting& OracleProblem::setting(const BitString& b) const {
  auto i = index_of(b);
  if (!i) throw std::out_of_range("setting " + b.str() + " is not in problem " + name_);
  return settings_[*i];
}

BitString eval(const OracleProblem& problem, const BitString& b, const BitString& a) {
  const Setting& s = problem.setting(b);
  if (a.value() >= problem.table_size()) {
    throw std::out_of_range("argument " + a.str() + " out of range for n = " +
                            std::to_string(problem.arg_bits()));
  }
  return s.table[a.value()];
}

OracleProblem build_grover(unsigned n) {
  if (n < 1 || n > 8) throw std::invalid_argument("grover: n must be in [1, 8]");
  std::vector<Setting> settings;
  const std::uint64_t count = std::uint64_t{1} << n;
  for (std::uint64_t b = 0; b < count; ++b) {
    Setting s{BitString(b, n), {}, BitString(b, n).str(), BitString(b, n)};
    s.table.reserve(count);
    for (std::uint64_t a = 0; a < count; ++a) s.table.emplace_back(a == b ? 1 : 0, 1);
    settings.push_back(std::move(s));
  }
  return OracleProblem("grover:n=" + std::to_string(n), n, 1, Family::linear, std::move(settings));
}

OracleProblem dj_function_family(unsigned n) {
  if (n < 1 || n > 3) throw std::invalid_argument("dj: n must be in [1, 3]");
  const unsigned width = 1U << n;
  std::vector<Setting> settings;
  for (std::uint64_t t = 0; t < (std::uint64_t{1} << width); ++t) {
    const auto ones = static_cast<unsigned>(__builtin_popcountll(t));
    const bool constant = ones == 0 || ones == width;
    if (!constant && ones != width / 2) continue;
    Setting s{BitString(t, width), {}, constant ? "constant" : "balanced", BitString(t, width)};
    for (unsigned a = 0; a < width; ++a) s.table.push_back(BitString(s.id.bit(a) ? 1 : 0, 1));
    settings.push_back(std::move(s));
  }
  return OracleProblem("dj:n=" + std::to_string(n), n, 1, Family::cells, std::move(settings));
}

OracleProblem build_dj(unsigned n) {
  OracleProblem family = dj_function_family(n);
  const Circuit circuit = dj_circuit(n);
  std::vector<Setting> settings = family.settings();
  for (Setting& s : settings) {
    try {
      s.a_outcome = derive_a_outcome(circuit, family, s.id);
    } catch (const std::domain_error& e) {
      throw std::domain_error("dj:n=" + std::to_string(n) +
                              " has no sharp A outcome for every setting (" + e.what() +
                              "); only n <= 2 is supported");
    }
  }
  return OracleProblem(family.name(), n, 1, Family::cells, std::move(settings));
}

OracleProblem build_simon(unsigned n) {
  if (n < 2 || n > 3) throw std::invalid_argument("simon: n must be 2 or 3");
  const unsigned m = n - 1;
  const std::uint64_t domain = std::uint64_t{1} << n;
  std::vector<Setting> settings;
  for (std::uint64_t h = 1; h < domain; ++h) {
    // Cosets {c, c ^ h}, ordered by their smaller element.
    std::vector<std::uint64_t> representative;
    for (std::uint64_t c = 0; c < domain; ++c) {
      if (c < (c ^ h)) representative.push_back(c);
    }
    std::vector<std::uint64_t> values(representative.size());
    std::iota(values.begin(), values.end(), 0);
    do {
      std::vector<BitString> table(domain, BitString(0, m));
      for (std::size_t k = 0; k < representative.size(); ++k) {
        table[representative[k]] = BitString(values[k], m);
        table[representative[k] ^ h] = BitString(values[k], m);
      }
      BitString id = table.front();
      for (std::size_t a = 1; a < table.size(); ++a) id = id.concat(table[a]);
      settings.push_back(Setting{id, std::move(table), BitString(h, n).str(), BitString(h, n)});
    } while (std::next_permutation(values.begin(), values.end()));
  }
  return OracleProblem("simon:n=" + std::to_string(n), n, m, Family::cells, std::move(settings));
}

namespace {

BitString bits_at(const json& node, const std::string& path) {
  if (!node.is_string()) throw ProblemError(path, "expected a bit string");
  try {
    return BitString::parse(node.get<std::string>());
  } catch (const std::invalid_argument& e) {
    throw ProblemError(path, e.what());
  }
}

unsigned count_at(const json& doc, const std::string& key) {
  if (!doc.contains(key)) throw ProblemError(key, "missing");
  const json& v = doc.at(key);
  if (!v.is_number_integer() || v.get<long long>() < 0) throw ProblemError(key, "expected a non-negative integer");
  return static_cast<unsigned>(v.get<long long>());
}

}  // namespace

OracleProblem load_problem(std::string_view document) {
  json doc;
  try {
    doc = json::parse(document);
  } catch (const json::parse_error& e) {
    throw ProblemError("", std::string("invalid JSON: ") + e.what());
  }
  if (!doc.is_object()) throw ProblemError("", "document must be a JSON object");
  if (!doc.contains("name") || !doc.at("name").is_string()) throw ProblemError("name", "expected a string");
  const unsigned arg_bits = count_at(doc, "arg_bits");
  const unsigned out_bits = count_at(doc, "out_bits");
  if (!doc.contains("family") || !doc.at("family").is_string()) throw ProblemError("family", "expected a string");
  Family family;
  try {
    family = parse_family(doc.at("family").get<std::string>());
  } catch (const std::invalid_argument& e) {
    throw ProblemError("family", e.what());
  }
  if (!doc.contains("settings") || !doc.at("settings").is_array()) {
    throw ProblemError("settings", "expected an array");
  }

  std::vector<Setting> settings;
  std::set<BitString> seen;
  const json& list = doc.at("settings");
  for (std::size_t i = 0; i < list.size(); ++i) {
    const json& entry = list[i];
    const std::string path = setting_path(i);
    if (!entry.is_object()) throw ProblemError(path, "expected an object");
    if (!entry.contains("id")) throw ProblemError(path + ".id", "missing");
    Setting s;
    s.id = bits_at(entry.at("id"), path + ".id");
    if (!seen.insert(s.id).second) throw ProblemError(path + ".id", "duplicate setting id " + s.id.str());
    if (!entry.contains("table") || !entry.at("table").is_array()) {
      throw ProblemError(path + ".table", "expected an array");
    }
    const json& table = entry.at("table");
    for (std::size_t a = 0; a < table.size(); ++a) {
      s.table.push_back(bits_at(table[a], path + ".table[" + std::to_string(a) + "]"));
    }
    if (!entry.contains("solution") || !entry.at("solution").is_string()) {
      throw ProblemError(path + ".solution", "expected a string");
    }
    s.solution = entry.at("solution").get<std::string>();
    if (entry.contains("a_outcome")) {
      s.a_outcome = bits_at(entry.at("a_outcome"), path + ".a_outcome");
    } else {
      s.a_outcome = bits_at(entry.at("solution"), path + ".solution");
    }
    settings.push_back(std::move(s));
  }
  return OracleProblem(doc.at("name").get<std::string>(), arg_bits, out_bits, family,
                       std::move(settings));
}

std::string serialize_problem(const OracleProblem& problem, int indent) {
  json doc;
  doc["name"] = problem.name();
  doc["arg_bits"] = problem.arg_bits();
  doc["out_bits"] = problem.out_bits();
  doc["family"] = std::string(to_string(problem.default_family()));
  json list = json::array();
  for (const Setting& s : problem.settings()) {
    json table = json::array();
    for (const BitString& v : s.table) table.push_back(v.str());
    list.push_back({{"id", s.id.str()},
                    {"table", std::move(table)},
                    {"solution", s.solution},
                    {"a_outcome", s.a_outcome.str()}});
  }
  doc["settings"] = std::move(list);
  return doc.dump(indent);
}

OracleProblem select_problem(std::string_view selector) {
  const auto colon = selector.find(':');
  if (colon == std::string_view::npos) {
    throw std::invalid_argument("problem selector must look like grover:n=K, dj:n=K, simon:n=K or file:PATH");
  }
  const std::string_view kind = selector.substr(0, colon);
  const std::string_view rest = selector.substr(colon + 1);
  if (kind == "file") {
    std::ifstream in{std::string(rest)};
    if (!in) throw std::invalid_argument("cannot open problem file '" + std::string(rest) + "'");
    std::stringstream buffer;
    buffer << in.rdbuf();
    return load_problem(buffer.str());
  }
  unsigned n = 0;
  if (rest.substr(0, 2) != "n=") throw std::invalid_argument("expected n=K after '" + std::string(kind) + ":'");
  const std::string_view digits = rest.substr(2);
  auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), n);
  if (ec != std::errc{} || ptr != digits.data() + digits.size()) {
    throw std::invalid_argument("bad problem size in selector '" + std::string(selector) + "'");
  }
  if (kind == "grover") return build_grover(n);
  if (kind == "dj") return build_dj(n);
  if (kind == "simon") return build_simon(n);
  throw std::invalid_argument("unknown problem kind '" + std::string(kind) + "'");
}

}  // namespace qretro
