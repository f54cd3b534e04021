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

#include "qretro/verify.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <functional>
#include <map>
#include <random>
#include <set>

#include <fmt/format.h>

#include "qretro/akrule.hpp"
#include "qretro/circuits.hpp"
#include "qretro/histories.hpp"
#include "qretro/oracle.hpp"
#include "qretro/qstate.hpp"

namespace qretro {
namespace {

class Tally {
 public:
  void expect(bool ok, const std::string& what) {
    ++checked_;
    if (!ok) {
      ++failed_;
      if (notes_.size() < 4) notes_.push_back(what);
    }
  }
  void note(std::string text) { summary_ = std::move(text); }

  CheckResult result(std::string name) const {
    CheckResult r{std::move(name), failed_ == 0 && checked_ > 0, {}};
    if (failed_ == 0) {
      r.detail = summary_.empty() ? fmt::format("{} checks", checked_) : summary_;
    } else {
      r.detail = fmt::format("{} of {} checks failed", failed_, checked_);
      for (const std::string& n : notes_) r.detail += "; " + n;
    }
    return r;
  }

 private:
  std::size_t checked_ = 0;
  std::size_t failed_ = 0;
  std::vector<std::string> notes_;
  std::string summary_;
};

CheckResult guarded(const std::string& name, const std::function<void(Tally&)>& body) {
  Tally t;
  try {
    body(t);
  } catch (const std::exception& e) {
    return CheckResult{name, false, std::string("exception: ") + e.what()};
  }
  return t.result(name);
}

BitString bs(const char* text) { return BitString::parse(text); }

SettingSet ids_of(const OracleProblem& p) {
  SettingSet out;
  for (const Setting& s : p.settings()) out.push_back(s.id);
  return out;
}

SettingSet sorted(SettingSet s) {
  std::sort(s.begin(), s.end());
  return s;
}

double single_outcome_probability(const Circuit& c, const BitString& b, const BitString& expected) {
  const BitString ids[] = {b};
  return measure_register(run(c, c.input_ensemble(ids)).output(), "A").probability(expected);
}

/// Plain minimax over raw candidate sets, memoised on the set itself.
unsigned naive_cost(const OracleProblem& p, const std::vector<std::size_t>& rows,
                    std::map<std::vector<std::size_t>, unsigned>& memo) {
  std::set<std::string> labels;
  for (std::size_t r : rows) labels.insert(p[r].solution);
  if (labels.size() <= 1) return 0;
  if (auto it = memo.find(rows); it != memo.end()) return it->second;
  unsigned best = kUnsolvable;
  for (std::size_t a = 0; a < p.table_size(); ++a) {
    std::map<std::uint64_t, std::vector<std::size_t>> split;
    for (std::size_t r : rows) split[p[r].table[a].value()].push_back(r);
    if (split.size() < 2) continue;
    unsigned worst = 0;
    for (const auto& [v, sub] : split) worst = std::max(worst, naive_cost(p, sub, memo));
    if (worst != kUnsolvable) best = std::min(best, worst + 1);
  }
  memo.emplace(rows, best);
  return best;
}

unsigned naive_cost(const OracleProblem& p, std::span<const BitString> subset) {
  std::vector<std::size_t> rows;
  for (const BitString& b : subset) rows.push_back(*p.index_of(b));
  std::sort(rows.begin(), rows.end());
  std::map<std::vector<std::size_t>, unsigned> memo;
  return naive_cost(p, rows, memo);
}

/// Simon period read straight off a table: the nonzero x with f(0) = f(x).
std::uint64_t table_period(const Setting& s) {
  for (std::uint64_t x = 1; x < s.table.size(); ++x) {
    if (s.table[x] == s.table[0]) return x;
  }
  return 0;
}

std::set<std::pair<SettingSet, SettingSet>> pair_subsets(const std::vector<OccamPair>& pairs) {
  std::set<std::pair<SettingSet, SettingSet>> out;
  for (const OccamPair& p : pairs) out.emplace(p.subset_i, p.subset_j);
  return out;
}

/// Settings that agree with `star` on every position in `half`.
SettingSet agreeing(const OracleProblem& p, const Setting& star, const std::vector<std::uint64_t>& half) {
  SettingSet out;
  for (const Setting& s : p.settings()) {
    if (std::all_of(half.begin(), half.end(), [&](std::uint64_t a) { return s.table[a] == star.table[a]; })) {
      out.push_back(s.id);
    }
  }
  return out;
}

std::set<std::pair<SettingSet, SettingSet>> half_splits(const OracleProblem& p, const Setting& star) {
  // Splits of four positions into two halves; a half is good when the values differ.
  const std::vector<std::pair<std::vector<std::uint64_t>, std::vector<std::uint64_t>>> splits = {
      {{0, 1}, {2, 3}}, {{0, 2}, {1, 3}}, {{0, 3}, {1, 2}}};
  std::set<std::pair<SettingSet, SettingSet>> out;
  for (const auto& [l, r] : splits) {
    if (star.table[l[0]] == star.table[l[1]] || star.table[r[0]] == star.table[r[1]]) continue;
    SettingSet x = agreeing(p, star, l);
    SettingSet y = agreeing(p, star, r);
    if (y < x) std::swap(x, y);
    out.emplace(std::move(x), std::move(y));
  }
  return out;
}

KetD random_state(std::size_t dim, std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  KetD psi(static_cast<Eigen::Index>(dim));
  for (Eigen::Index i = 0; i < psi.size(); ++i) psi(i) = Amplitude(g(rng), g(rng));
  return psi / psi.norm();
}

std::size_t pick(std::size_t n, std::mt19937_64& rng) {
  return std::uniform_int_distribution<std::size_t>(0, n - 1)(rng);
}

SettingSet random_subset(const SettingSet& from, std::mt19937_64& rng) {
  SettingSet out;
  while (out.empty()) {
    for (const BitString& b : from) {
      if (rng() & 1U) out.push_back(b);
    }
  }
  return out;
}

BranchEnsemble random_ensemble(const RegisterLayout& layout, const SettingSet& settings, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(0.05, 1.0);
  std::vector<Branch> branches;
  double total = 0.0;
  for (const BitString& b : random_subset(settings, rng)) {
    const double w = u(rng);
    total += w;
    branches.push_back(Branch{b, b, w, random_state(layout.dimension(), rng)});
  }
  for (Branch& b : branches) b.weight /= total;
  return BranchEnsemble(layout, std::move(branches));
}

std::vector<Circuit> builtin_circuits() {
  return {grover_circuit(), bind_problem(dj_circuit(1), std::make_shared<const OracleProblem>(build_dj(1))),
          bind_problem(dj_circuit(2), std::make_shared<const OracleProblem>(build_dj(2))), simon1q_circuit()};
}

std::vector<std::shared_ptr<const OracleProblem>> builtin_problems() {
  return {std::make_shared<const OracleProblem>(build_grover(2)),
          std::make_shared<const OracleProblem>(build_dj(2)),
          std::make_shared<const OracleProblem>(build_simon(2))};
}

CheckResult criterion_grover_end_to_end() {
  return guarded("1 grover n=2 end-to-end", [](Tally& t) {
    const Circuit g = grover_circuit();
    for (const Setting& s : g.oracle->settings()) {
      const double p = single_outcome_probability(g, s.id, s.id);
      t.expect(std::abs(p - 1.0) <= 1e-9, fmt::format("setting {} gives A={} with p={}", s.id.str(), s.id.str(), p));
    }
    Circuit prepared = g;
    prepared.stages.insert(prepared.stages.begin(), Stage::bitwise_not("B", "U_B"));
    const OutcomeDistribution joint = measure_preparation_joint(run(prepared, prepared.input_ensemble()).output(), "A");
    const std::map<std::string, double> expected = {{"0011", 0.25}, {"0110", 0.25}, {"1001", 0.25}, {"1100", 0.25}};
    t.expect(joint.entries().size() == expected.size(), "joint distribution has extra outcomes");
    for (const auto& [pair, p] : expected) {
      t.expect(std::abs(joint.probability(bs(pair.c_str())) - p) <= 1e-9, "joint pair " + pair);
    }
    t.note("A=b with p=1 for 4 settings; joint (B,A) = 4 pairs at 1/4");
  });
}

CheckResult criterion_grover_ak() {
  return guarded("2 grover n=2 advanced knowledge", [](Tally& t) {
    const OracleProblem p = build_grover(2);
    const AkConfig config;
    const auto pairs = enumerate_occam_pairs(p, bs("01"), config);
    const SettingSet a = {bs("00"), bs("01")}, b = {bs("01"), bs("10")}, c = {bs("01"), bs("11")};
    const std::set<std::pair<SettingSet, SettingSet>> expected = {{a, b}, {a, c}, {b, c}};
    t.expect(pairs.size() == 3, fmt::format("{} pairs", pairs.size()));
    t.expect(pair_subsets(pairs) == expected, "pair subsets differ from the three 2-subsets");
    DecisionTreeSolver solver(p);
    for (const AkInstance& inst : ak_instances(pairs)) {
      t.expect(solver.cost(inst.subset) == 1, "instance cost is not 1");
      t.expect(std::abs(inst.epsilon - 1.0) <= 1e-9, fmt::format("epsilon {:.9f}", inst.epsilon));
    }
    t.expect(solver.cost(ids_of(p)) == 3, "baseline is not 3");
    t.note("3 pairs, instance cost 1, baseline 3, epsilon 1.000000");
  });
}

CheckResult criterion_grover_scaling() {
  return guarded("3 grover scaling n=4,6", [](Tally& t) {
    std::string summary;
    for (unsigned n : {4U, 6U}) {
      const OracleProblem p = build_grover(n);
      const QueryReport r = predict_queries(p, AkConfig{});
      const std::size_t size = std::size_t{1} << (n / 2);
      const unsigned cost = (1U << (n / 2)) - 1;
      t.expect(r.settings_without_instance.empty(), fmt::format("n={} has settings without instances", n));
      t.expect(!r.instances.empty(), fmt::format("n={} has no instances", n));
      for (const InstanceCost& ic : r.instances) {
        t.expect(ic.instance.subset.size() == size, fmt::format("n={} instance of size {}", n, ic.instance.subset.size()));
        t.expect(ic.cost == cost, fmt::format("n={} instance cost {}", n, ic.cost));
      }
      t.expect(r.predicted == cost, fmt::format("n={} predicted", n));
      t.expect(r.grover && r.grover->formula == cost, fmt::format("n={} formula", n));
      const unsigned optimal = n == 4 ? 4 : 7;
      t.expect(r.grover && r.grover->optimal == optimal, fmt::format("n={} reference", n));
      summary += fmt::format("{}n={}: {} instances, cost {}, reference {}", summary.empty() ? "" : "; ", n,
                             r.instances.size(), cost, optimal);
    }
    t.note(summary);
  });
}

CheckResult criterion_dj() {
  return guarded("4 deutsch-jozsa n=2", [](Tally& t) {
    const OracleProblem p = build_dj(2);
    const Circuit c = bind_problem(dj_circuit(2), std::make_shared<const OracleProblem>(p));
    const std::vector<std::pair<const char*, const char*>> outcomes = {
        {"0000", "00"}, {"1111", "00"}, {"0011", "10"}, {"1100", "10"}};
    for (const auto& [b, a] : outcomes) {
      const double prob = single_outcome_probability(c, bs(b), bs(a));
      t.expect(std::abs(prob - 1.0) <= 1e-9, fmt::format("{} -> {} with p={}", b, a, prob));
    }
    const AkConfig config;
    const MeasurementSpec left = MeasurementSpec::cells({0, 1});
    const MeasurementSpec right = MeasurementSpec::cells({2, 3});
    for (const Setting& s : p.settings()) {
      const auto pairs = enumerate_occam_pairs(p, s.id, config);
      if (s.solution == "balanced") {
        t.expect(pairs.size() == 1, fmt::format("{}: {} pairs", s.id.str(), pairs.size()));
        for (const OccamPair& pr : pairs) {
          // Each side must be a half table on which b*'s values are all equal.
          for (const MeasurementSpec* spec : {&pr.spec_i, &pr.spec_j}) {
            const auto& q = spec->generators;
            t.expect(q.size() == 2 && s.table[q[0]] == s.table[q[1]], s.id.str() + ": side is not a good half table");
          }
          if (s.id == bs("0011") || s.id == bs("1100")) {
            const bool halves = (pr.spec_i == left && pr.spec_j == right) || (pr.spec_i == right && pr.spec_j == left);
            t.expect(halves, s.id.str() + ": pair is not the left/right half split");
          }
          t.expect(std::abs(pr.epsilon - 1.0) <= 1e-9, s.id.str() + ": epsilon");
        }
      } else {
        t.expect(pairs.size() == 3, fmt::format("{}: {} pairs", s.id.str(), pairs.size()));
        std::set<SettingSet> subsets;
        for (const AkInstance& i : ak_instances(pairs)) subsets.insert(i.subset);
        for (const char* x : {"0011", "1100", "0101", "1010"}) {
          t.expect(subsets.count(sorted({s.id, bs(x)})) == 1, s.id.str() + ": missing subset with " + x);
        }
      }
    }
    const QueryReport r = predict_queries(p, config);
    t.expect(r.predicted == 1U, "predicted is not 1");
    t.expect(r.baseline == 3, "baseline is not 3");
    t.expect(naive_cost(p, ids_of(p)) == 3, "brute-force baseline is not 3");
    t.note("outcomes 00,00,10,10; 1 pair per balanced, 3 per constant; predicted 1, baseline 3");
  });
}

CheckResult criterion_simon() {
  return guarded("5 simon n=2", [](Tally& t) {
    const OracleProblem p = build_simon(2);
    const double eps = std::log2(3.0) - 1.0;
    const AkConfig config;
    std::size_t subsets = 0;
    for (const Setting& s : p.settings()) {
      const auto pairs = enumerate_occam_pairs(p, s.id, config);
      t.expect(pairs.size() == 2, fmt::format("{}: {} pairs", s.id.str(), pairs.size()));
      t.expect(pair_subsets(pairs) == half_splits(p, s), s.id.str() + ": pairs differ from the good-half splits");
      for (const AkInstance& i : ak_instances(pairs)) {
        ++subsets;
        t.expect(std::abs(i.epsilon - eps) <= 1e-6, fmt::format("{}: epsilon {:.9f}", s.id.str(), i.epsilon));
      }
    }
    const QueryReport r = predict_queries(p, config);
    t.expect(r.predicted == 1U, "predicted is not 1");
    t.expect(r.baseline == 3, "baseline is not 3");
    const Circuit c = simon1q_circuit();
    for (const Setting& s : p.settings()) {
      const BitString h(table_period(s), 2);
      const double prob = single_outcome_probability(c, s.id, h);
      t.expect(std::abs(prob - 1.0) <= 1e-9, fmt::format("{}: h={} with p={}", s.id.str(), h.str(), prob));
    }
    t.note(fmt::format("2 pairs per setting, {} subsets at epsilon {:.6f}, predicted 1, baseline 3, circuit finds h", subsets, eps));
  });
}

CheckResult criterion_entropy_paths() {
  return guarded("6 entropy cross-check", [](Tally& t) {
    const std::vector<OracleProblem> problems = {build_grover(2), build_grover(4), build_grover(6), build_dj(1),
                                                 build_dj(2),     build_simon(2),  build_simon(3)};
    std::size_t count = 0;
    for (const OracleProblem& p : problems) {
      const BranchEnsemble out = output_ensemble(p);
      const double full = reduced_entropy(out, "A");
      std::set<SettingSet> subsets;
      for (const Setting& s : p.settings()) {
        for (const AkInstance& i : ak_instances_for(p, s.id, AkConfig{})) subsets.insert(i.subset);
      }
      for (const SettingSet& sub : subsets) {
        const double via_state = full - reduced_entropy(project_setting_subset(out, sub), "A");
        const double via_table = delta_entropy(p, sub);
        t.expect(std::abs(via_state - via_table) <= 1e-9,
                 fmt::format("{}: {:.12f} vs {:.12f}", p.name(), via_state, via_table));
        ++count;
      }
    }
    t.note(fmt::format("{} subsets over 7 problems agree", count));
  });
}

CheckResult criterion_histories() {
  return guarded("7 sum over histories", [](Tally& t) {
    for (const Circuit& c : {grover_circuit(), dj_circuit(2)}) {
      const OracleProblem& p = *c.oracle;
      std::vector<std::uint64_t> all(c.layout.dimension());
      for (std::uint64_t i = 0; i < all.size(); ++i) all[i] = i;
      for (const Setting& s : p.settings()) {
        const HistorySet set = enumerate_paths(c, p, s.id, all);
        const OperatorD u = composed_unitary(c, s.id);
        for (std::uint64_t i = 0; i < all.size(); ++i) {
          for (std::uint64_t f = 0; f < all.size(); ++f) {
            const Amplitude diff = path_sum(set, i, f) - u(static_cast<Eigen::Index>(f), static_cast<Eigen::Index>(i));
            t.expect(std::abs(diff) <= 1e-9, fmt::format("{} b={} <{}|U|{}>", c.name, s.id.str(), f, i));
          }
        }
      }
    }
    const auto has_path = [](const HistorySet& set, const std::vector<std::uint64_t>& path) {
      return std::any_of(set.histories.begin(), set.histories.end(), [&](const History& h) {
        return h.path == path && std::abs(h.amplitude) > kAmplitudeFloor;
      });
    };
    const Circuit g = grover_circuit();
    const auto gi = [&](const char* a, std::uint64_t v) {
      return g.layout.with_field(g.layout.with_field(0, "A", bs(a).value()), "V", v);
    };
    const HistorySet gh = enumerate_histories(g, *g.oracle, bs("01"));
    t.expect(has_path(gh, {gi("00", 0), gi("11", 0), gi("11", 0), gi("01", 0)}), "grover history missing");
    const Circuit d = dj_circuit(2);
    const auto di = [&](const char* a, std::uint64_t v) {
      return d.layout.with_field(d.layout.with_field(0, "A", bs(a).value()), "V", v);
    };
    const OracleProblem dj = build_dj(2);
    const HistorySet dh = enumerate_histories(d, dj, bs("0011"));
    t.expect(has_path(dh, {di("00", 0), di("10", 0), di("10", 1), di("10", 1)}), "dj history missing");

    const OracleProblem gp = build_grover(2);
    DecisionTreeSolver gs(gp);
    const auto instances = ak_instances_for(gp, bs("01"), AkConfig{});
    for (const History& h : gh.histories) {
      const HistoryClassification hc = classify_history(h, instances, gs, gp);
      const std::size_t want = h.queries.front() == bs("01") ? 3 : 1;
      t.expect(hc.consistent.size() == want,
               fmt::format("query {} consistent with {}", h.queries.front().str(), hc.consistent.size()));
      if (h.queries.front() == bs("11") && hc.consistent.size() == 1) {
        t.expect(hc.consistent.front().subset == SettingSet{bs("01"), bs("11")}, "query 11 not attributed to {01,11}");
      }
    }
    DecisionTreeSolver ds(dj);
    const auto dj_instances = ak_instances_for(dj, bs("0011"), AkConfig{});
    for (const History& h : dh.histories) {
      if (h.queries.front() != bs("10")) continue;
      const HistoryClassification hc = classify_history(h, dj_instances, ds, dj);
      t.expect(hc.consistent.size() == 1 && hc.consistent.front().subset == SettingSet{bs("0000"), bs("0011")},
               "dj query 10 not attributed to {0000,0011}");
    }
    t.note("path sums match U for every endpoint; reference histories present; AK attribution as expected");
  });
}

CheckResult criterion_properties(std::uint64_t seed) {
  return guarded("8 property suites", [seed](Tally& t) {
    std::mt19937_64 rng(seed);
    const std::vector<Circuit> circuits = builtin_circuits();
    for (std::size_t k = 0; k < kPropertyCases; ++k) {
      const Circuit& c = circuits[pick(circuits.size(), rng)];
      const SettingSet all = ids_of(*c.oracle);
      const BranchEnsemble e = random_ensemble(c.layout, all, rng);
      SettingSet subset = random_subset(e.settings(), rng);
      for (const BitString& extra : random_subset(all, rng)) subset.push_back(extra);
      const BranchEnsemble a = project_setting_subset(run(c, e).output(), subset);
      const BranchEnsemble b = run(c, project_setting_subset(e, subset)).output();
      t.expect(approx_equal(a, b), "projection commutation, " + c.name);
    }
    for (std::size_t k = 0; k < kPropertyCases; ++k) {
      const Circuit& c = circuits[pick(circuits.size(), rng)];
      const BranchEnsemble e = random_ensemble(c.layout, ids_of(*c.oracle), rng);
      const StageTrace trace = run(c, e);
      for (const BranchEnsemble& st : trace.states) {
        t.expect(st.settings() == e.settings(), "setting immutability, " + c.name);
      }
    }
    for (std::size_t k = 0; k < kPropertyCases; ++k) {
      const Circuit& c = circuits[pick(circuits.size(), rng)];
      const SettingSet all = ids_of(*c.oracle);
      const BitString b = all[pick(all.size(), rng)];
      const Stage& oracle = c.stages[c.query_stages.front()];
      const KetD psi = random_state(c.layout.dimension(), rng);
      const KetD twice = oracle.apply(c.layout, b, oracle.apply(c.layout, b, psi));
      t.expect((twice - psi).cwiseAbs().maxCoeff() <= 1e-9, "oracle involution, " + c.name);
    }
    const std::vector<OracleProblem> small = {build_grover(2), build_grover(3), build_dj(1), build_dj(2),
                                              build_simon(2)};
    for (std::size_t k = 0; k < kPropertyCases; ++k) {
      const OracleProblem& p = small[pick(small.size(), rng)];
      const SettingSet big = random_subset(ids_of(p), rng);
      const SettingSet part = random_subset(big, rng);
      DecisionTreeSolver solver(p);
      t.expect(solver.cost(part) <= solver.cost(big), "decision-tree monotonicity, " + p.name());
    }
    const std::vector<OracleProblem> paired = {build_grover(2), build_grover(4), build_dj(2), build_simon(2)};
    for (std::size_t k = 0; k < kPropertyCases; ++k) {
      const OracleProblem& p = paired[pick(paired.size(), rng)];
      const BitString star = p[pick(p.size(), rng)].id;
      AkConfig config;
      config.family = (rng() & 1U) ? Family::cells : Family::linear;
      config.complementary = (rng() & 3U) != 0 || (config.family == Family::cells && p.table_size() > 4);
      MeasurementSpec i, j;
      const auto pairs = (k % 2 == 0) ? enumerate_occam_pairs(p, star, config) : std::vector<OccamPair>{};
      if (!pairs.empty()) {
        const OccamPair& pr = pairs[pick(pairs.size(), rng)];
        i = pr.spec_i;
        j = pr.spec_j;
        t.expect(satisfies_occam(p, star, i, j, config), "emitted pair fails the audit, " + p.name());
      } else if (*config.family == Family::cells) {
        std::vector<std::uint64_t> qi, qj;
        for (std::uint64_t a = 0; a < p.table_size(); ++a) (rng() & 1U ? qi : qj).push_back(a);
        i = MeasurementSpec::cells(qi);
        j = MeasurementSpec::cells(qj);
      } else {
        const std::uint64_t mi[] = {rng() & low_mask(p.id_width())};
        const std::uint64_t mj[] = {rng() & low_mask(p.id_width()), rng() & low_mask(p.id_width())};
        i = MeasurementSpec::linear(mi, p.id_width());
        j = MeasurementSpec::linear(mj, p.id_width());
      }
      t.expect(satisfies_occam(p, star, i, j, config) == satisfies_occam(p, star, j, i, config),
               "pair symmetry, " + p.name());
    }
    double worst = 0.0;
    for (std::size_t k = 0; k < kPropertyCases; ++k) {
      const unsigned bw = 1 + static_cast<unsigned>(pick(2, rng));
      const unsigned sw = 1 + static_cast<unsigned>(pick(2, rng));
      const RegisterLayout layout({{"B", bw}, {"A", sw}}, "B");
      SettingSet settings;
      for (std::uint64_t v = 0; v < (std::uint64_t{1} << bw); ++v) settings.emplace_back(v, bw);
      const BranchEnsemble e = random_ensemble(layout, settings, rng);
      const OperatorD diff = monte_carlo_density(e, kMonteCarloSamples, rng()) - mixture_density(e);
      worst = std::max(worst, diff.cwiseAbs().maxCoeff());
      t.expect(diff.cwiseAbs().maxCoeff() <= kMonteCarloTolerance, "monte carlo convergence");
    }
    t.note(fmt::format("6 suites x {} cases, seed {}, worst monte carlo deviation {:.4f}", kPropertyCases, seed, worst));
  });
}

}  // namespace

std::vector<CheckResult> acceptance_checks(std::uint64_t seed) {
  return {criterion_grover_end_to_end(), criterion_grover_ak(), criterion_grover_scaling(), criterion_dj(),
          criterion_simon(),             criterion_entropy_paths(), criterion_histories(),  criterion_properties(seed)};
}

std::vector<CheckResult> invariant_checks(std::uint64_t seed) {
  std::vector<CheckResult> out;
  const std::vector<Circuit> circuits = builtin_circuits();

  out.push_back(guarded("norm preservation", [&](Tally& t) {
    for (const Circuit& c : circuits) {
      const StageTrace trace = run(c, c.input_ensemble());
      for (const BranchEnsemble& st : trace.states) {
        for (const Branch& b : st.branches()) t.expect(std::abs(b.state.norm() - 1.0) <= 1e-9, c.name);
      }
    }
  }));

  out.push_back(guarded("bitwise-NOT relabels the uniform mixture", [&](Tally& t) {
    for (const Circuit& c : circuits) {
      const BranchEnsemble in = c.input_ensemble();
      const BranchEnsemble flipped = apply_stage(in, Stage::bitwise_not("B"));
      std::multiset<std::string> before, after;
      for (const Branch& b : in.branches()) before.insert(b.setting.str());
      for (const Branch& b : flipped.branches()) {
        after.insert(b.setting.str());
        const Branch* orig = in.find(b.setting);
        t.expect(orig && std::abs(orig->weight - b.weight) <= 1e-9 &&
                     (orig->state - b.state).cwiseAbs().maxCoeff() <= 1e-9,
                 c.name + " branch " + b.setting.str());
      }
      t.expect(before == after, c.name + " setting multiset changed");
    }
  }));

  out.push_back(guarded("phase kickback", [&](Tally& t) {
    std::mt19937_64 rng(seed);
    for (const Circuit& c : circuits) {
      const OracleProblem& p = *c.oracle;
      const RegisterLayout a_only({{"B", c.layout.setting_width()}, {"A", p.arg_bits()}}, "B");
      const Stage xor_stage = c.stages[c.query_stages.front()];
      const Stage phase = Stage::oracle_phase(c.oracle, "A");
      for (const Setting& s : p.settings()) {
        const KetD a = random_state(a_only.dimension(), rng);
        KetD full = KetD::Zero(static_cast<Eigen::Index>(c.layout.dimension()));
        for (std::uint64_t x = 0; x < a_only.dimension(); ++x) {
          const std::uint64_t base = c.layout.with_field(0, "A", x);
          full(static_cast<Eigen::Index>(c.layout.with_field(base, "V", 0))) = a(static_cast<Eigen::Index>(x)) * M_SQRT1_2;
          full(static_cast<Eigen::Index>(c.layout.with_field(base, "V", 1))) = -a(static_cast<Eigen::Index>(x)) * M_SQRT1_2;
        }
        const KetD via_xor = xor_stage.apply(c.layout, s.id, full);
        const KetD via_phase = phase.apply(a_only, s.id, a);
        double err = 0.0;
        for (std::uint64_t x = 0; x < a_only.dimension(); ++x) {
          const std::uint64_t base = c.layout.with_field(0, "A", x);
          err = std::max(err, std::abs(via_xor(static_cast<Eigen::Index>(c.layout.with_field(base, "V", 0))) -
                                       via_phase(static_cast<Eigen::Index>(x)) * M_SQRT1_2));
          err = std::max(err, std::abs(via_xor(static_cast<Eigen::Index>(c.layout.with_field(base, "V", 1))) +
                                       via_phase(static_cast<Eigen::Index>(x)) * M_SQRT1_2));
        }
        t.expect(err <= 1e-9, c.name + " setting " + s.id.str());
      }
    }
  }));

  out.push_back(guarded("composed unitary equals staged run", [&](Tally& t) {
    for (const Circuit& c : circuits) {
      const BranchEnsemble outp = run(c, c.input_ensemble()).output();
      for (const Branch& b : outp.branches()) {
        const KetD direct = composed_unitary(c, b.setting) * c.initial_state();
        t.expect((direct - b.state).cwiseAbs().maxCoeff() <= 1e-9, c.name + " " + b.setting.str());
        t.expect(is_unitary(composed_unitary(c, b.setting)), c.name + " composed matrix not unitary");
      }
    }
  }));

  out.push_back(guarded("circuits realise the sharp output form", [&](Tally& t) {
    for (const Circuit& c : circuits) t.expect(realizes_inout_form(c, *c.oracle), c.name);
    t.expect(realizes_inout_form(grover_circuit(), build_grover(2)), "grover:n=2");
    t.expect(realizes_inout_form(dj_circuit(1), build_dj(1)), "dj:n=1");
    t.expect(realizes_inout_form(dj_circuit(2), build_dj(2)), "dj:n=2");
    t.expect(realizes_inout_form(simon1q_circuit(), build_simon(2)), "simon:n=2");
  }));

  out.push_back(guarded("problem validity", [&](Tally& t) {
    for (unsigned n : {2U, 3U}) {
      const OracleProblem p = build_simon(n);
      for (const Setting& s : p.settings()) {
        const std::uint64_t h = s.a_outcome.value();
        for (std::uint64_t a = 0; a < s.table.size(); ++a) {
          for (std::uint64_t c = 0; c < s.table.size(); ++c) {
            t.expect((s.table[a] == s.table[c]) == (a == c || a == (c ^ h)), "simon table " + s.id.str());
          }
        }
      }
    }
    for (unsigned n : {1U, 2U, 3U}) {
      const OracleProblem p = dj_function_family(n);
      for (const Setting& s : p.settings()) {
        std::size_t ones = 0;
        for (const BitString& v : s.table) ones += v.value();
        t.expect(ones == 0 || ones == s.table.size() || 2 * ones == s.table.size(), "dj table " + s.id.str());
      }
    }
    for (const OracleProblem& p : {build_grover(1), build_grover(2), build_grover(4), build_dj(1), build_dj(2),
                                   build_simon(2), build_simon(3)}) {
      std::map<BitString, std::size_t> blocks;
      for (const Setting& s : p.settings()) ++blocks[s.a_outcome];
      for (const auto& [k, v] : blocks) t.expect(v == blocks.begin()->second, p.name() + " unequal blocks");
      t.expect(load_problem(serialize_problem(p)) == p, p.name() + " round trip");
    }
  }));

  out.push_back(guarded("occam audit and entropy bounds", [&](Tally& t) {
    for (const auto& pp : builtin_problems()) {
      const OracleProblem& p = *pp;
      const double full = outcome_entropy(p, ids_of(p));
      for (const Setting& s : p.settings()) {
        const SettingSet single = {s.id};
        t.expect(std::abs(delta_entropy(p, single) - full) <= 1e-9, "singleton reduction");
        for (const OccamPair& pr : enumerate_occam_pairs(p, s.id, AkConfig{})) {
          t.expect(satisfies_occam(p, s.id, pr.spec_i, pr.spec_j, AkConfig{}), p.name() + " audit");
          t.expect(realized_subset(p, pr.spec_i, s.id) == pr.subset_i, p.name() + " realized subset");
          for (const SettingSet* sub : {&pr.subset_i, &pr.subset_j}) {
            const double d = delta_entropy(p, *sub);
            t.expect(d >= -1e-9 && d <= full + 1e-9, p.name() + " reduction bounds");
          }
        }
      }
    }
  }));

  out.push_back(guarded("decision tree against brute force", [&](Tally& t) {
    std::mt19937_64 rng(seed + 1);
    const std::vector<OracleProblem> small = {build_grover(2), build_grover(3), build_dj(2), build_simon(2)};
    for (std::size_t k = 0; k < kPropertyCases; ++k) {
      const OracleProblem& p = small[pick(small.size(), rng)];
      const SettingSet sub = random_subset(ids_of(p), rng);
      t.expect(decision_tree_cost(p, sub) == naive_cost(p, sub), p.name());
    }
    for (const OracleProblem& p : small) t.expect(decision_tree_cost(p, ids_of(p)) == naive_cost(p, ids_of(p)), p.name());
  }));

  out.push_back(guarded("grover instances are affine", [&](Tally& t) {
    for (unsigned n : {2U, 4U, 6U}) {
      const QueryReport r = predict_queries(build_grover(n), AkConfig{});
      for (const InstanceCost& ic : r.instances) {
        const SettingSet& s = ic.instance.subset;
        t.expect(s.size() == (std::size_t{1} << (n / 2)) && ic.cost == s.size() - 1, "size or cost");
        std::set<std::uint64_t> members;
        for (const BitString& b : s) members.insert(b.value());
        for (std::uint64_t x : members) {
          for (std::uint64_t y : members) t.expect(members.count(x ^ y ^ s.front().value()) == 1, "not affine");
        }
      }
    }
  }));

  out.push_back(guarded("history enumeration", [&](Tally& t) {
    for (const Circuit& c : circuits) {
      const OracleProblem& p = *c.oracle;
      DecisionTreeSolver solver(p);
      for (const Setting& s : p.settings()) {
        const HistorySet set = enumerate_histories(c, p, s.id, VBranch::both);
        std::set<std::vector<std::uint64_t>> seen;
        double norm = 0.0;
        std::map<std::uint64_t, Amplitude> finals;
        for (const History& h : set.histories) {
          t.expect(std::abs(h.amplitude) > kAmplitudeFloor, "zero amplitude");
          t.expect(h.path.size() == c.stages.size() + 1, "path length");
          t.expect(seen.insert(h.path).second, "duplicate path");
        }
        for (std::uint64_t start : {set.histories.front().path.front(), set.histories.back().path.front()}) {
          finals.clear();
          for (const History& h : set.histories) {
            if (h.path.front() == start) finals[h.path.back()] += h.amplitude;
          }
          norm = 0.0;
          for (const auto& [f, a] : finals) norm += std::norm(a);
          t.expect(std::abs(norm - 1.0) <= 1e-9, "final amplitudes not normalised");
        }
        const auto instances = ak_instances_for(p, s.id, AkConfig{});
        for (const History& h : set.histories) {
          const std::uint64_t a = h.queries.front().value();
          const bool informative = std::any_of(instances.begin(), instances.end(), [&](const AkInstance& i) {
            std::set<BitString> seen_values;
            for (const BitString& x : i.subset) seen_values.insert(p.setting(x).table[a]);
            return seen_values.size() > 1;
          });
          if (informative) {
            t.expect(!classify_history(h, instances, solver, p).consistent.empty(),
                     c.name + " history without a consistent instance");
          }
        }
      }
    }
  }));

  return out;
}

}  // namespace qretro
