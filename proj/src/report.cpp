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

#include "qretro/report.hpp"

#include <cmath>
#include <map>
#include <set>
#include <stdexcept>

#include <fmt/format.h>
#include <json.hpp>

namespace qretro {

using nlohmann::json;

Format parse_format(std::string_view text) {
  if (text == "text") return Format::text;
  if (text == "json") return Format::json;
  if (text == "dot") return Format::dot;
  throw std::invalid_argument("unknown format '" + std::string(text) + "'");
}

namespace {

double round_to(double x, int digits) {
  const double scale = std::pow(10.0, digits);
  const double r = std::round(x * scale) / scale;
  return r == 0.0 ? 0.0 : r;  // no negative zero
}

std::string set_text(std::span<const BitString> s) {
  std::string out = "{";
  for (std::size_t i = 0; i < s.size(); ++i) out += (i ? "," : "") + s[i].str();
  return out + "}";
}

json set_json(std::span<const BitString> s) {
  json out = json::array();
  for (const BitString& b : s) out.push_back(b.str());
  return out;
}

std::string amp_text(Amplitude a) { return "(" + fixed9(a.real()) + ", " + fixed9(a.imag()) + ")"; }

json amp_json(Amplitude a) { return json::array({round_to(a.real(), 9), round_to(a.imag(), 9)}); }

std::string dump(const json& j) { return j.dump(2) + "\n"; }

}  // namespace

std::string fixed6(double x) { return fmt::format("{:.6f}", round_to(x, 6)); }
std::string fixed9(double x) { return fmt::format("{:.9f}", round_to(x, 9)); }

std::string render_simulation(const Circuit& circuit, const StageTrace& trace, const BitString& setting,
                              bool stages, Format format) {
  const OutcomeDistribution dist = measure_register(trace.output(), "A");
  const double entropy = reduced_entropy(trace.output(), "A");
  const RegisterLayout& layout = circuit.layout;
  if (format == Format::json) {
    json j;
    j["problem"] = circuit.oracle ? circuit.oracle->name() : circuit.name;
    j["setting"] = setting.str();
    if (stages) {
      j["stages"] = json::array();
      for (std::size_t k = 0; k < trace.states.size(); ++k) {
        json st{{"label", trace.labels[k]}, {"branches", json::array()}};
        for (const Branch& b : trace.states[k].branches()) {
          json amps = json::array();
          for (Eigen::Index i = 0; i < b.state.size(); ++i) {
            if (std::abs(b.state(i)) <= kAmplitudeFloor) continue;
            amps.push_back(json::array({layout.label(static_cast<std::uint64_t>(i)), round_to(b.state(i).real(), 9),
                                        round_to(b.state(i).imag(), 9)}));
          }
          st["branches"].push_back({{"setting", b.setting.str()}, {"weight", round_to(b.weight, 6)}, {"amplitudes", amps}});
        }
        j["stages"].push_back(st);
      }
    }
    j["a_distribution"] = json::array();
    for (const auto& [o, p] : dist.entries()) j["a_distribution"].push_back({{"outcome", o.str()}, {"probability", round_to(p, 6)}});
    j["a_entropy"] = round_to(entropy, 6);
    return dump(j);
  }
  std::string out = fmt::format("problem  {}\nsetting  {}\n", circuit.oracle ? circuit.oracle->name() : circuit.name,
                                setting.str());
  if (stages) {
    for (std::size_t k = 0; k < trace.states.size(); ++k) {
      out += fmt::format("\nstage {}: {}\n", k, trace.labels[k]);
      for (const Branch& b : trace.states[k].branches()) {
        out += fmt::format("  branch {} weight {}\n", b.setting.str(), fixed6(b.weight));
        for (Eigen::Index i = 0; i < b.state.size(); ++i) {
          if (std::abs(b.state(i)) <= kAmplitudeFloor) continue;
          out += fmt::format("    {:<16} {}\n", layout.label(static_cast<std::uint64_t>(i)), amp_text(b.state(i)));
        }
      }
    }
    out += "\n";
  }
  out += "final A distribution\n";
  for (const auto& [o, p] : dist.entries()) out += fmt::format("  {}  {}\n", o.str(), fixed6(p));
  out += fmt::format("A entropy  {} bits\n", fixed6(entropy));
  return out;
}

std::string render_ak(const OracleProblem& problem, const BitString& setting, const AkConfig& config,
                      std::span<const OccamPair> pairs, std::span<const AkInstance> instances, Format format) {
  const Family family = config.family_for(problem);
  if (format == Format::json) {
    json j{{"problem", problem.name()},
           {"setting", setting.str()},
           {"family", std::string(to_string(family))},
           {"complementary", config.complementary},
           {"pairs", json::array()},
           {"instances", json::array()}};
    for (const OccamPair& p : pairs) {
      j["pairs"].push_back({{"spec_i", p.spec_i.describe(problem)},
                            {"subset_i", set_json(p.subset_i)},
                            {"spec_j", p.spec_j.describe(problem)},
                            {"subset_j", set_json(p.subset_j)},
                            {"epsilon", round_to(p.epsilon, 6)}});
    }
    for (const AkInstance& i : instances) {
      j["instances"].push_back(
          {{"subset", set_json(i.subset)}, {"source", i.source.describe(problem)}, {"epsilon", round_to(i.epsilon, 6)}});
    }
    return dump(j);
  }
  std::string out = fmt::format("problem  {}\nsetting  {}\nfamily   {}{}\n\n", problem.name(), setting.str(),
                                to_string(family), config.complementary ? " (complementary)" : "");
  out += fmt::format("occam pairs: {}\n", pairs.size());
  for (const OccamPair& p : pairs) {
    out += fmt::format("  {} {}  |  {} {}  epsilon {}\n", p.spec_i.describe(problem), set_text(p.subset_i),
                       p.spec_j.describe(problem), set_text(p.subset_j), fixed6(p.epsilon));
  }
  out += fmt::format("\nak instances: {}\n", instances.size());
  for (const AkInstance& i : instances) {
    out += fmt::format("  {:<24} epsilon {}  via {}\n", set_text(i.subset), fixed6(i.epsilon), i.source.describe(problem));
  }
  return out;
}

std::string render_report(const QueryReport& r, const OracleProblem& problem, Format format) {
  if (format == Format::json) {
    json j{{"problem", r.problem},
           {"family", std::string(to_string(r.family))},
           {"complementary", r.complementary},
           {"baseline", r.baseline},
           {"predicted", r.predicted ? json(*r.predicted) : json(nullptr)},
           {"uniform", r.uniform()},
           {"instances", json::array()},
           {"settings_without_instance", set_json(r.settings_without_instance)}};
    for (const InstanceCost& ic : r.instances) {
      j["instances"].push_back({{"setting", ic.setting.str()},
                                {"subset", set_json(ic.instance.subset)},
                                {"epsilon", round_to(ic.instance.epsilon, 6)},
                                {"cost", ic.cost}});
    }
    if (r.grover) {
      json g{{"n", r.grover->n}, {"optimal_reference", r.grover->optimal}};
      if (r.grover->formula) g["half_split_formula"] = *r.grover->formula;
      if (r.grover->floor_split) {
        g["extrapolated_floor_split"] = *r.grover->floor_split;
        g["extrapolated_ceil_split"] = *r.grover->ceil_split;
        g["note"] = "no exact R=1/2 split for odd n";
      }
      j["grover"] = g;
    }
    return dump(j);
  }
  std::string out;
  out += fmt::format("{:<12}{}\n", "problem", r.problem);
  out += fmt::format("{:<12}{}{}\n", "family", to_string(r.family), r.complementary ? " (complementary)" : "");
  out += fmt::format("{:<12}{}\n", "baseline", r.baseline);
  out += fmt::format("{:<12}{}\n", "predicted", r.predicted ? std::to_string(*r.predicted) : "none");
  if (r.grover) {
    if (r.grover->formula) out += fmt::format("{:<12}2^(n/2)-1 = {}\n", "formula", *r.grover->formula);
    if (r.grover->floor_split) {
      out += fmt::format("{:<12}no exact R=1/2 split for odd n; extrapolated {} (floor) / {} (ceil)\n", "formula",
                         *r.grover->floor_split, *r.grover->ceil_split);
    }
    out += fmt::format("{:<12}ceil(pi/4*2^(n/2)) = {}\n", "reference", r.grover->optimal);
  }
  if (!r.instances.empty()) {
    std::size_t width = 6;
    for (const InstanceCost& ic : r.instances) width = std::max(width, set_text(ic.instance.subset).size());
    const std::size_t first = std::max<std::size_t>(7, problem.id_width());
    out += fmt::format("\n{:<{}}  {:<{}}  {:>9}  {:>4}\n", "setting", first, "subset", width, "epsilon", "cost");
    for (const InstanceCost& ic : r.instances) {
      out += fmt::format("{:<{}}  {:<{}}  {:>9}  {:>4}\n", ic.setting.str(), first,
                         set_text(ic.instance.subset), width, fixed6(ic.instance.epsilon), ic.cost);
    }
  }
  for (const BitString& b : r.settings_without_instance) out += fmt::format("no R=1/2 instance for setting {}\n", b.str());
  return out;
}

std::string render_histories(const HistorySet& set, std::span<const HistoryClassification> classified,
                             Format format) {
  const RegisterLayout& layout = set.layout;
  if (format == Format::dot) {
    std::string out = "digraph histories {\n  rankdir=LR;\n  node [shape=box];\n";
    std::set<std::pair<std::size_t, std::uint64_t>> nodes;
    std::map<std::tuple<std::size_t, std::uint64_t, std::uint64_t>, Amplitude> edges;
    for (const HistoryClassification& hc : classified) {
      const auto& path = hc.history.path;
      for (std::size_t k = 0; k < path.size(); ++k) nodes.emplace(k, path[k]);
      for (std::size_t k = 0; k + 1 < path.size(); ++k) edges.try_emplace({k, path[k], path[k + 1]}, hc.history.steps[k]);
    }
    for (const auto& [k, idx] : nodes) {
      out += fmt::format("  \"s{}_{}\" [label=\"{}\"];\n", k, idx, layout.label(idx));
    }
    for (std::size_t k = 0; k + 1 < set.stage_labels.size() + 1; ++k) {
      std::vector<std::string> same;
      for (const auto& [kk, idx] : nodes) {
        if (kk == k) same.push_back(fmt::format("\"s{}_{}\"", k, idx));
      }
      if (!same.empty()) out += "  { rank=same; " + fmt::format("{}", fmt::join(same, "; ")) + "; }\n";
    }
    for (const auto& [key, amp] : edges) {
      const auto& [k, from, to] = key;
      out += fmt::format("  \"s{}_{}\" -> \"s{}_{}\" [label=\"{} {}\"];\n", k, from, k + 1, to, set.stage_labels[k],
                         amp_text(amp));
    }
    return out + "}\n";
  }
  std::string out;
  if (format == Format::text) {
    out += fmt::format("setting {}  stages {}  histories {}\n", set.setting.str(), fmt::join(set.stage_labels, " "),
                       classified.size());
  }
  for (const HistoryClassification& hc : classified) {
    const History& h = hc.history;
    if (format == Format::json) {
      json path = json::array();
      for (std::uint64_t i : h.path) path.push_back(layout.label(i));
      json queries = json::array();
      for (const BitString& q : h.queries) queries.push_back(q.str());
      json consistent = json::array();
      for (const AkInstance& i : hc.consistent) consistent.push_back(set_json(i.subset));
      out += json{{"setting", h.setting.str()},
                  {"path", path},
                  {"amplitude", amp_json(h.amplitude)},
                  {"queries", queries},
                  {"consistent", consistent}}
                 .dump() +
             "\n";
      continue;
    }
    std::vector<std::string> labels;
    for (std::uint64_t i : h.path) labels.push_back(layout.label(i));
    std::vector<std::string> qs;
    for (const BitString& q : h.queries) qs.push_back(q.str());
    std::vector<std::string> cs;
    for (const AkInstance& i : hc.consistent) cs.push_back(set_text(i.subset));
    out += fmt::format("{}  amp {}  queries {}  ak {}\n", fmt::join(labels, " -> "), amp_text(h.amplitude),
                       fmt::join(qs, ","), cs.empty() ? "none" : fmt::format("{}", fmt::join(cs, " ")));
  }
  return out;
}

std::string render_checks(std::span<const CheckResult> checks, Format format) {
  if (format == Format::json) {
    json j = json::array();
    for (const CheckResult& c : checks) j.push_back({{"name", c.name}, {"passed", c.passed}, {"detail", c.detail}});
    return dump(j);
  }
  std::string out;
  for (const CheckResult& c : checks) out += fmt::format("{} {}: {}\n", c.passed ? "PASS" : "FAIL", c.name, c.detail);
  return out;
}

}  // namespace qretro
