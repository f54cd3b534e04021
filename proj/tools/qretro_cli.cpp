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

// qretro: simulate oracle algorithms, enumerate advanced-knowledge pairs,
// predict query counts, list histories, and run the self-checks.

#include <cstdio>
#include <exception>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "qretro/akrule.hpp"
#include "qretro/circuits.hpp"
#include "qretro/histories.hpp"
#include "qretro/oracle.hpp"
#include "qretro/report.hpp"
#include "qretro/verify.hpp"

namespace {

constexpr int kUsage = 2;
constexpr int kFailed = 1;

struct Options {
  std::string problem;
  std::string setting;
  std::string family;
  bool complementary = true;
  std::string format = "text";
  bool stages = false;
  std::string v_branch = "0";
  std::uint64_t seed = qretro::kDefaultSeed;
};

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

qretro::BitString checked_setting(const qretro::OracleProblem& problem, const std::string& text) {
  if (text.empty()) throw UsageError("--setting is required for this subcommand");
  const qretro::BitString b = qretro::BitString::parse(text);
  if (!problem.index_of(b)) throw UsageError("setting " + text + " is not a setting of " + problem.name());
  return b;
}

qretro::AkConfig config_from(const Options& o) {
  qretro::AkConfig c;
  if (!o.family.empty()) c.family = qretro::parse_family(o.family);
  c.complementary = o.complementary;
  return c;
}

qretro::Circuit circuit_or_throw(const qretro::OracleProblem& problem) {
  auto c = qretro::circuit_for(problem);
  if (!c) throw UsageError("no built-in circuit for problem " + problem.name());
  return *c;
}

qretro::Format text_or_json(const Options& o) {
  const qretro::Format f = qretro::parse_format(o.format);
  if (f == qretro::Format::dot) throw UsageError("--format dot is only available for histories");
  return f;
}

int simulate(const Options& o) {
  const qretro::OracleProblem problem = qretro::select_problem(o.problem);
  const qretro::BitString b = checked_setting(problem, o.setting);
  const qretro::Format format = text_or_json(o);
  const qretro::Circuit c = circuit_or_throw(problem);
  const qretro::BitString ids[] = {b};
  const qretro::StageTrace trace = qretro::run(c, c.input_ensemble(ids));
  std::cout << qretro::render_simulation(c, trace, b, o.stages, format);
  return 0;
}

int ak(const Options& o) {
  const qretro::OracleProblem problem = qretro::select_problem(o.problem);
  const qretro::BitString b = checked_setting(problem, o.setting);
  const qretro::Format format = text_or_json(o);
  const qretro::AkConfig config = config_from(o);
  const auto pairs = qretro::enumerate_occam_pairs(problem, b, config);
  const auto instances = qretro::ak_instances(pairs);
  std::cout << qretro::render_ak(problem, b, config, pairs, instances, format);
  return 0;
}

int predict(const Options& o) {
  const qretro::OracleProblem problem = qretro::select_problem(o.problem);
  const qretro::Format format = text_or_json(o);
  std::cout << qretro::render_report(qretro::predict_queries(problem, config_from(o)), problem, format);
  return 0;
}

int histories(const Options& o) {
  const qretro::OracleProblem problem = qretro::select_problem(o.problem);
  const qretro::BitString b = checked_setting(problem, o.setting);
  const qretro::Format format = qretro::parse_format(o.format);
  const qretro::Circuit c = circuit_or_throw(problem);
  const qretro::HistorySet set = qretro::enumerate_histories(c, problem, b, qretro::parse_v_branch(o.v_branch));
  const auto instances = qretro::ak_instances_for(problem, b, config_from(o));
  qretro::DecisionTreeSolver solver(problem);
  std::vector<qretro::HistoryClassification> classified;
  for (const qretro::History& h : set.histories) classified.push_back(qretro::classify_history(h, instances, solver, problem));
  std::cout << qretro::render_histories(set, classified, format);
  return 0;
}

int verify(const Options& o) {
  const qretro::Format format = text_or_json(o);
  auto checks = qretro::acceptance_checks(o.seed);
  for (auto& c : qretro::invariant_checks(o.seed)) checks.push_back(std::move(c));
  std::cout << qretro::render_checks(checks, format);
  for (const auto& c : checks) {
    if (!c.passed) return kFailed;
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Oracle-algorithm laboratory: simulation, advanced-knowledge pairs, query predictions"};
  app.require_subcommand(1);
  Options o;

  const auto add_problem = [&o](CLI::App* sub) {
    sub->add_option("--problem", o.problem, "grover:n=K, dj:n=K, simon:n=K or file:PATH")->required();
  };
  const auto add_setting = [&o](CLI::App* sub) { sub->add_option("--setting", o.setting, "setting id, e.g. 0011"); };
  const auto add_format = [&o](CLI::App* sub, const char* choices) {
    sub->add_option("--format", o.format, choices)->capture_default_str();
  };
  const auto add_ak_flags = [&o](CLI::App* sub) {
    sub->add_option("--family", o.family, "cells or linear (default: the problem's)");
    sub->add_flag("--complementary,!--no-complementary", o.complementary, "require complementary pairs (default on)");
  };

  CLI::App* sim = app.add_subcommand("simulate", "run the built-in circuit on one setting");
  add_problem(sim);
  add_setting(sim);
  add_format(sim, "text or json");
  sim->add_flag("--stages", o.stages, "print the state at every stage boundary");

  CLI::App* akc = app.add_subcommand("ak", "enumerate Occam pairs and advanced-knowledge instances");
  add_problem(akc);
  add_setting(akc);
  add_format(akc, "text or json");
  add_ak_flags(akc);

  CLI::App* pred = app.add_subcommand("predict", "predicted and classical query counts");
  add_problem(pred);
  add_format(pred, "text or json");
  add_ak_flags(pred);

  CLI::App* hist = app.add_subcommand("histories", "enumerate and classify histories");
  add_problem(hist);
  add_setting(hist);
  add_format(hist, "text, json (one object per line) or dot");
  add_ak_flags(hist);
  hist->add_option("--v-branch", o.v_branch, "initial V content: 0, 1 or both")->capture_default_str();

  CLI::App* ver = app.add_subcommand("verify", "run the acceptance and invariant suites");
  add_format(ver, "text or json");
  ver->add_option("--seed", o.seed, "seed for the randomised suites")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  }

  try {
    if (sim->parsed()) return simulate(o);
    if (akc->parsed()) return ak(o);
    if (pred->parsed()) return predict(o);
    if (hist->parsed()) return histories(o);
    if (ver->parsed()) return verify(o);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  }
  return kUsage;
}
