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

#include "qretro/akrule.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <map>
#include <mutex>
#include <numbers>
#include <set>
#include <stdexcept>

namespace qretro {

void AkConfig::validate() const {
  if (r_den == 0 || 2 * r_num != r_den) {
    throw std::invalid_argument("retroaction R = " + std::to_string(r_num) + "/" + std::to_string(r_den) +
                                " is not supported; only R = 1/2 is implemented");
  }
  if (!(tolerance >= 0.0)) throw std::invalid_argument("tolerance must be non-negative");
}

MeasurementSpec MeasurementSpec::linear(std::span<const std::uint64_t> masks, unsigned width) {
  std::vector<std::uint64_t> rows;
  for (std::uint64_t m : masks) {
    if (m & ~low_mask(width)) throw std::invalid_argument("linear mask wider than the setting id");
    if (m) rows.push_back(m);
  }
  std::vector<std::uint64_t> basis;
  for (int bit = static_cast<int>(width) - 1; bit >= 0; --bit) {
    const std::uint64_t lead = std::uint64_t{1} << bit;
    auto pivot = std::find_if(rows.begin(), rows.end(), [&](std::uint64_t r) { return r & lead; });
    if (pivot == rows.end()) continue;
    const std::uint64_t p = *pivot;
    rows.erase(pivot);
    for (std::uint64_t& r : rows) {
      if (r & lead) r ^= p;
    }
    for (std::uint64_t& b : basis) {
      if (b & lead) b ^= p;
    }
    basis.push_back(p);
  }
  return MeasurementSpec{Family::linear, std::move(basis)};
}

MeasurementSpec MeasurementSpec::cells(std::vector<std::uint64_t> positions) {
  std::sort(positions.begin(), positions.end());
  positions.erase(std::unique(positions.begin(), positions.end()), positions.end());
  return MeasurementSpec{Family::cells, std::move(positions)};
}

std::string MeasurementSpec::describe(unsigned position_width, unsigned id_width) const {
  std::string out = family == Family::cells ? "cells{" : "xor{";
  const unsigned w = family == Family::cells ? position_width : id_width;
  for (std::size_t i = 0; i < generators.size(); ++i) {
    if (i) out += ",";
    out += BitString(generators[i], w).str();
  }
  return out + "}";
}

std::string MeasurementSpec::describe(const OracleProblem& problem) const {
  return describe(problem.arg_bits(), problem.id_width());
}

namespace {

bool in_spec(const MeasurementSpec& spec, const Setting& s, const Setting& star) {
  if (spec.family == Family::cells) {
    for (std::uint64_t q : spec.generators) {
      if (s.table[q] != star.table[q]) return false;
    }
    return true;
  }
  const std::uint64_t diff = s.id.value() ^ star.id.value();
  for (std::uint64_t g : spec.generators) {
    if (gf2_dot(g, diff)) return false;
  }
  return true;
}

void check_spec(const OracleProblem& problem, const MeasurementSpec& spec) {
  for (std::uint64_t g : spec.generators) {
    if (spec.family == Family::cells && g >= problem.table_size()) {
      throw std::invalid_argument("cell position " + std::to_string(g) + " outside the table");
    }
    if (spec.family == Family::linear && (g & ~low_mask(problem.id_width()))) {
      throw std::invalid_argument("linear mask wider than the setting id");
    }
  }
}

/// Bit set over setting indices.
struct IndexMask {
  std::vector<std::uint64_t> words;

  explicit IndexMask(std::size_t n = 0) : words((n + 63) / 64, 0) {}
  void set(std::size_t i) { words[i / 64] |= std::uint64_t{1} << (i % 64); }
  bool test(std::size_t i) const { return (words[i / 64] >> (i % 64)) & 1U; }
  std::size_t count() const {
    std::size_t c = 0;
    for (std::uint64_t w : words) c += static_cast<std::size_t>(std::popcount(w));
    return c;
  }
  friend auto operator<=>(const IndexMask&, const IndexMask&) = default;
};

bool meets_only_at(const IndexMask& a, const IndexMask& b, std::size_t star) {
  for (std::size_t k = 0; k < a.words.size(); ++k) {
    std::uint64_t both = a.words[k] & b.words[k];
    if (k == star / 64) both &= ~(std::uint64_t{1} << (star % 64));
    if (both) return false;
  }
  return true;
}

/// Entropy and solution counts over index masks.
class SubsetStats {
 public:
  explicit SubsetStats(const OracleProblem& problem) {
    std::map<BitString, std::uint32_t> outcomes;
    std::map<std::string, std::uint32_t> solutions;
    for (const Setting& s : problem.settings()) {
      outcome_.push_back(outcomes.try_emplace(s.a_outcome, static_cast<std::uint32_t>(outcomes.size())).first->second);
      solution_.push_back(
          solutions.try_emplace(s.solution, static_cast<std::uint32_t>(solutions.size())).first->second);
    }
    outcome_count_ = outcomes.size();
  }

  double entropy(const IndexMask& m) const {
    std::vector<double> p(outcome_count_, 0.0);
    double total = 0.0;
    for (std::size_t i = 0; i < outcome_.size(); ++i) {
      if (m.test(i)) {
        p[outcome_[i]] += 1.0;
        total += 1.0;
      }
    }
    for (double& x : p) x /= total;
    return shannon_bits(p);
  }

  bool informative(const IndexMask& m) const {
    std::optional<std::uint32_t> first;
    for (std::size_t i = 0; i < solution_.size(); ++i) {
      if (!m.test(i)) continue;
      if (!first) {
        first = solution_[i];
      } else if (*first != solution_[i]) {
        return true;
      }
    }
    return false;
  }

 private:
  std::vector<std::uint32_t> outcome_;
  std::vector<std::uint32_t> solution_;
  std::size_t outcome_count_ = 0;
};

struct Candidate {
  MeasurementSpec spec;
  IndexMask subset;
  double delta = 0.0;
  bool informative = false;
  /// Subspace membership mask (linear family only).
  std::uint64_t members = 0;
  unsigned dim = 0;
};

using SubspaceList = std::vector<std::pair<std::uint64_t, std::vector<std::uint64_t>>>;

/// Subspaces of GF(2)^width other than {0}, with a basis each.
SubspaceList enumerate_subspaces(unsigned width) {
  const std::uint64_t vectors = std::uint64_t{1} << width;
  std::vector<std::pair<std::uint64_t, std::vector<std::uint64_t>>> out;
  std::set<std::uint64_t> seen{1};
  std::vector<std::pair<std::uint64_t, std::vector<std::uint64_t>>> frontier{{1, {}}};
  while (!frontier.empty()) {
    std::vector<std::pair<std::uint64_t, std::vector<std::uint64_t>>> next;
    for (const auto& [members, basis] : frontier) {
      for (std::uint64_t v = 1; v < vectors; ++v) {
        if ((members >> v) & 1U) continue;
        std::uint64_t grown = members;
        for (std::uint64_t u = 0; u < vectors; ++u) {
          if ((members >> u) & 1U) grown |= std::uint64_t{1} << (u ^ v);
        }
        if (!seen.insert(grown).second) continue;
        std::vector<std::uint64_t> b = basis;
        b.push_back(v);
        next.emplace_back(grown, std::move(b));
      }
    }
    out.insert(out.end(), next.begin(), next.end());
    frontier = std::move(next);
  }
  return out;
}

const SubspaceList& subspaces(unsigned width) {
  static std::mutex lock;
  static std::map<unsigned, SubspaceList> cache;
  const std::lock_guard<std::mutex> guard(lock);
  auto it = cache.find(width);
  if (it == cache.end()) it = cache.emplace(width, enumerate_subspaces(width)).first;
  return it->second;
}

constexpr unsigned kMaxCellPositions = 16;
constexpr unsigned kMaxLinearWidth = 6;
constexpr std::size_t kMaxFreePairs = 50'000'000;

class PairSearch {
 public:
  PairSearch(const OracleProblem& problem, const BitString& b_star, const AkConfig& config)
      : problem_(problem), config_(config), stats_(problem) {
    config.validate();
    family_ = config.family_for(problem);
    const auto idx = problem.index_of(b_star);
    if (!idx) throw std::invalid_argument("setting " + b_star.str() + " is not in the problem");
    star_ = *idx;
    IndexMask all(problem.size());
    for (std::size_t i = 0; i < problem.size(); ++i) all.set(i);
    full_entropy_ = stats_.entropy(all);
    if (family_ == Family::cells) {
      build_cells();
    } else {
      build_linear();
    }
  }

  const std::vector<Candidate>& candidates() const { return candidates_; }
  std::size_t index_of(const Candidate& c) const { return static_cast<std::size_t>(&c - candidates_.data()); }

  template <class Visit>
  void run(Visit&& visit) const {
    if (!config_.complementary) {
      run_free(visit);
    } else if (family_ == Family::cells) {
      run_cells(visit);
    } else {
      run_linear(visit);
    }
  }

 private:
  Candidate make(MeasurementSpec spec, IndexMask subset) const {
    Candidate c{std::move(spec), std::move(subset)};
    c.delta = full_entropy_ - stats_.entropy(c.subset);
    c.informative = stats_.informative(c.subset);
    return c;
  }

  void build_cells() {
    const std::size_t t = problem_.table_size();
    if (t > kMaxCellPositions) {
      throw std::length_error("cells family enumeration is limited to " + std::to_string(kMaxCellPositions) +
                              " table positions");
    }
    const Setting& star = problem_[star_];
    std::vector<std::uint64_t> agree(problem_.size(), 0);
    for (std::size_t i = 0; i < problem_.size(); ++i) {
      for (std::size_t a = 0; a < t; ++a) {
        if (problem_[i].table[a] == star.table[a]) agree[i] |= std::uint64_t{1} << a;
      }
    }
    // Index q - 1 holds the candidate for position mask q.
    const std::uint64_t full = low_mask(static_cast<unsigned>(t));
    for (std::uint64_t q = 1; q <= full; ++q) {
      IndexMask m(problem_.size());
      for (std::size_t i = 0; i < problem_.size(); ++i) {
        if ((q & ~agree[i]) == 0) m.set(i);
      }
      std::vector<std::uint64_t> positions;
      for (std::uint64_t a = 0; a < t; ++a) {
        if ((q >> a) & 1U) positions.push_back(a);
      }
      candidates_.push_back(make(MeasurementSpec::cells(std::move(positions)), std::move(m)));
    }
  }

  void build_linear() {
    const unsigned w = problem_.id_width();
    if (w > kMaxLinearWidth) {
      throw std::length_error("linear family enumeration is limited to " + std::to_string(kMaxLinearWidth) +
                              "-bit setting ids");
    }
    const std::uint64_t star_id = problem_[star_].id.value();
    for (const auto& [members, basis] : subspaces(w)) {
      IndexMask m(problem_.size());
      for (std::size_t i = 0; i < problem_.size(); ++i) {
        const std::uint64_t diff = problem_[i].id.value() ^ star_id;
        if (std::none_of(basis.begin(), basis.end(), [&](std::uint64_t g) { return gf2_dot(g, diff); })) m.set(i);
      }
      Candidate c = make(MeasurementSpec::linear(basis, w), std::move(m));
      c.members = members;
      c.dim = static_cast<unsigned>(basis.size());
      candidates_.push_back(std::move(c));
    }
  }

  template <class Visit>
  void check(const Candidate& a, const Candidate& b, Visit& visit) const {
    if (!a.informative || !b.informative) return;
    if (std::abs(a.delta - b.delta) > config_.tolerance) return;
    if (!meets_only_at(a.subset, b.subset, star_)) return;
    visit(a, b);
  }

  template <class Visit>
  void run_cells(Visit& visit) const {
    const std::uint64_t full = candidates_.size();
    for (std::uint64_t q = 1; q < full; ++q) {
      const std::uint64_t rest = full ^ q;
      if (q < rest) check(candidates_[q - 1], candidates_[rest - 1], visit);
    }
  }

  template <class Visit>
  void run_linear(Visit& visit) const {
    const unsigned w = problem_.id_width();
    std::vector<std::vector<const Candidate*>> by_dim(w + 1);
    for (const Candidate& c : candidates_) {
      if (c.informative) by_dim[c.dim].push_back(&c);
    }
    for (unsigned d = 1; 2 * d <= w; ++d) {
      const auto& lo = by_dim[d];
      const auto& hi = by_dim[w - d];
      for (std::size_t i = 0; i < lo.size(); ++i) {
        for (std::size_t j = (2 * d == w ? i + 1 : 0); j < hi.size(); ++j) {
          if ((lo[i]->members & hi[j]->members) == 1) check(*lo[i], *hi[j], visit);
        }
      }
    }
  }

  template <class Visit>
  void run_free(Visit& visit) const {
    std::vector<const Candidate*> distinct;
    std::set<IndexMask> seen;
    for (const Candidate& c : candidates_) {
      if (c.informative && seen.insert(c.subset).second) distinct.push_back(&c);
    }
    const std::size_t d = distinct.size();
    if (d > 1 && d * (d - 1) / 2 > kMaxFreePairs) {
      throw std::length_error("too many candidate pairs (" + std::to_string(d) + " distinct subsets)");
    }
    for (std::size_t i = 0; i < d; ++i) {
      for (std::size_t j = i + 1; j < d; ++j) check(*distinct[i], *distinct[j], visit);
    }
  }

  const OracleProblem& problem_;
  const AkConfig& config_;
  SubsetStats stats_;
  Family family_ = Family::cells;
  std::size_t star_ = 0;
  double full_entropy_ = 0.0;
  std::vector<Candidate> candidates_;
};

SettingSet to_set(const OracleProblem& problem, const IndexMask& m) {
  SettingSet out;
  for (std::size_t i = 0; i < problem.size(); ++i) {
    if (m.test(i)) out.push_back(problem[i].id);
  }
  return out;
}

SettingSet sorted_ids(std::span<const BitString> subset) {
  SettingSet out(subset.begin(), subset.end());
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

SettingSet all_ids(const OracleProblem& problem) {
  SettingSet out;
  for (const Setting& s : problem.settings()) out.push_back(s.id);
  return out;
}

}  // namespace

SettingSet realized_subset(const OracleProblem& problem, const MeasurementSpec& spec, const BitString& b_star) {
  check_spec(problem, spec);
  const Setting& star = problem.setting(b_star);
  SettingSet out;
  for (const Setting& s : problem.settings()) {
    if (in_spec(spec, s, star)) out.push_back(s.id);
  }
  return out;
}

double outcome_entropy(const OracleProblem& problem, std::span<const BitString> subset) {
  if (subset.empty()) throw std::invalid_argument("entropy of an empty setting subset");
  const SettingSet ids = sorted_ids(subset);
  std::map<BitString, double> counts;
  for (const BitString& b : ids) counts[problem.setting(b).a_outcome] += 1.0;
  std::vector<double> p;
  for (const auto& [outcome, c] : counts) p.push_back(c / static_cast<double>(ids.size()));
  return shannon_bits(p);
}

double delta_entropy(const OracleProblem& problem, std::span<const BitString> subset) {
  if (subset.empty()) throw std::invalid_argument("entropy reduction of an empty setting subset");
  return outcome_entropy(problem, all_ids(problem)) - outcome_entropy(problem, subset);
}

std::size_t distinct_solutions(const OracleProblem& problem, std::span<const BitString> subset) {
  std::set<std::string> labels;
  for (const BitString& b : subset) labels.insert(problem.setting(b).solution);
  return labels.size();
}

bool satisfies_occam(const OracleProblem& problem, const BitString& b_star, const MeasurementSpec& i,
                     const MeasurementSpec& j, const AkConfig& config) {
  config.validate();
  const Family family = config.family_for(problem);
  if (i.family != family || j.family != family) return false;
  const SettingSet si = realized_subset(problem, i, b_star);
  const SettingSet sj = realized_subset(problem, j, b_star);
  SettingSet common;
  std::set_intersection(si.begin(), si.end(), sj.begin(), sj.end(), std::back_inserter(common));
  if (common != SettingSet{b_star}) return false;
  if (std::abs(delta_entropy(problem, si) - delta_entropy(problem, sj)) > config.tolerance) return false;
  if (distinct_solutions(problem, si) < 2 || distinct_solutions(problem, sj) < 2) return false;
  if (!config.complementary) return true;
  if (i.generators.empty() || j.generators.empty()) return false;
  if (family == Family::cells) {
    std::set<std::uint64_t> positions(i.generators.begin(), i.generators.end());
    for (std::uint64_t q : j.generators) {
      if (!positions.insert(q).second) return false;
    }
    return positions.size() == problem.table_size();
  }
  const unsigned w = problem.id_width();
  std::vector<std::uint64_t> joint = i.generators;
  joint.insert(joint.end(), j.generators.begin(), j.generators.end());
  const std::size_t di = MeasurementSpec::linear(i.generators, w).generators.size();
  const std::size_t dj = MeasurementSpec::linear(j.generators, w).generators.size();
  return di + dj == w && MeasurementSpec::linear(joint, w).generators.size() == w;
}

std::vector<OccamPair> enumerate_occam_pairs(const OracleProblem& problem, const BitString& b_star,
                                             const AkConfig& config) {
  const PairSearch search(problem, b_star, config);
  std::map<std::pair<SettingSet, SettingSet>, OccamPair> found;
  search.run([&](const Candidate& a, const Candidate& b) {
    OccamPair p{a.spec, to_set(problem, a.subset), b.spec, to_set(problem, b.subset), a.delta};
    if (p.subset_j < p.subset_i) {
      std::swap(p.spec_i, p.spec_j);
      std::swap(p.subset_i, p.subset_j);
    }
    found.try_emplace({p.subset_i, p.subset_j}, std::move(p));
  });
  std::vector<OccamPair> out;
  out.reserve(found.size());
  for (auto& entry : found) out.push_back(std::move(entry.second));
  return out;
}

std::vector<AkInstance> ak_instances(std::span<const OccamPair> pairs) {
  std::map<SettingSet, AkInstance> found;
  for (const OccamPair& p : pairs) {
    found.try_emplace(p.subset_i, AkInstance{p.subset_i, p.spec_i, p.epsilon});
    found.try_emplace(p.subset_j, AkInstance{p.subset_j, p.spec_j, p.epsilon});
  }
  std::vector<AkInstance> out;
  for (auto& entry : found) out.push_back(std::move(entry.second));
  return out;
}

std::vector<AkInstance> ak_instances_for(const OracleProblem& problem, const BitString& b_star,
                                         const AkConfig& config) {
  const PairSearch search(problem, b_star, config);
  std::vector<char> used(search.candidates().size(), 0);
  search.run([&](const Candidate& a, const Candidate& b) {
    used[search.index_of(a)] = 1;
    used[search.index_of(b)] = 1;
  });
  std::map<IndexMask, const Candidate*> found;
  for (std::size_t i = 0; i < used.size(); ++i) {
    if (used[i]) found.try_emplace(search.candidates()[i].subset, &search.candidates()[i]);
  }
  std::vector<AkInstance> out;
  for (const auto& [mask, c] : found) out.push_back(AkInstance{to_set(problem, mask), c->spec, c->delta});
  std::sort(out.begin(), out.end(), [](const AkInstance& x, const AkInstance& y) { return x.subset < y.subset; });
  return out;
}

DecisionTreeSolver::DecisionTreeSolver(const OracleProblem& problem) : problem_(&problem) {
  std::map<std::string, std::uint32_t> ids;
  for (const Setting& s : problem.settings()) {
    solution_ids_.push_back(ids.try_emplace(s.solution, static_cast<std::uint32_t>(ids.size())).first->second);
  }
}

DecisionTreeSolver::Matrix DecisionTreeSolver::restrict(std::span<const BitString> subset) const {
  const SettingSet rows = sorted_ids(subset);
  std::vector<std::size_t> idx;
  for (const BitString& b : rows) {
    const auto i = problem_->index_of(b);
    if (!i) throw std::invalid_argument("setting " + b.str() + " is not in the problem");
    idx.push_back(*i);
  }
  Matrix raw;
  for (std::size_t i : idx) raw.solutions.push_back(solution_ids_[i]);
  for (std::size_t a = 0; a < problem_->table_size(); ++a) {
    std::vector<std::uint32_t> col;
    for (std::size_t i : idx) col.push_back(static_cast<std::uint32_t>((*problem_)[i].table[a].value()));
    raw.columns.push_back(std::move(col));
  }
  return raw;
}

namespace {

std::vector<std::uint32_t> first_appearance(const std::vector<std::uint32_t>& values) {
  std::vector<std::uint32_t> seen;
  std::vector<std::uint32_t> out;
  out.reserve(values.size());
  for (std::uint32_t v : values) {
    const auto it = std::find(seen.begin(), seen.end(), v);
    out.push_back(static_cast<std::uint32_t>(it - seen.begin()));
    if (it == seen.end()) seen.push_back(v);
  }
  return out;
}

}  // namespace

DecisionTreeSolver::Matrix DecisionTreeSolver::normalise(const std::vector<std::uint32_t>& solutions,
                                                         const std::vector<std::vector<std::uint32_t>>& columns) {
  Matrix m;
  m.solutions = first_appearance(solutions);
  for (const auto& col : columns) {
    std::vector<std::uint32_t> c = first_appearance(col);
    if (std::any_of(c.begin(), c.end(), [](std::uint32_t v) { return v != 0; })) m.columns.push_back(std::move(c));
  }
  std::sort(m.columns.begin(), m.columns.end());
  m.columns.erase(std::unique(m.columns.begin(), m.columns.end()), m.columns.end());
  return m;
}

unsigned DecisionTreeSolver::query_cost(const Matrix& m, std::size_t column, unsigned cutoff) {
  const auto& col = m.columns[column];
  const std::uint32_t groups = *std::max_element(col.begin(), col.end()) + 1;
  std::vector<std::vector<std::size_t>> rows(groups);
  for (std::size_t r = 0; r < col.size(); ++r) rows[col[r]].push_back(r);
  std::sort(rows.begin(), rows.end(), [](const auto& x, const auto& y) { return x.size() > y.size(); });
  unsigned worst = 0;
  for (const auto& g : rows) {
    std::vector<std::uint32_t> sol;
    for (std::size_t r : g) sol.push_back(m.solutions[r]);
    std::vector<std::vector<std::uint32_t>> cols;
    cols.reserve(m.columns.size());
    for (const auto& c : m.columns) {
      std::vector<std::uint32_t> sub;
      for (std::size_t r : g) sub.push_back(c[r]);
      cols.push_back(std::move(sub));
    }
    const unsigned sc = solve(normalise(sol, cols));
    if (sc == kUnsolvable) return kUnsolvable;
    worst = std::max(worst, sc);
    if (worst + 1 >= cutoff) break;
  }
  return worst + 1;
}

unsigned DecisionTreeSolver::solve(const Matrix& m) {
  if (std::all_of(m.solutions.begin(), m.solutions.end(), [](std::uint32_t s) { return s == 0; })) return 0;
  if (m.columns.empty()) return kUnsolvable;
  std::string key;
  const auto append = [&key](std::uint32_t v) { key.append(reinterpret_cast<const char*>(&v), sizeof v); };
  append(static_cast<std::uint32_t>(m.solutions.size()));
  for (std::uint32_t s : m.solutions) append(s);
  for (const auto& c : m.columns) {
    for (std::uint32_t v : c) append(v);
  }
  if (auto it = memo_.find(key); it != memo_.end()) return it->second;
  unsigned best = kUnsolvable;
  for (std::size_t c = 0; c < m.columns.size() && best > 1; ++c) {
    best = std::min(best, query_cost(m, c, best));
  }
  memo_.emplace(std::move(key), best);
  return best;
}

unsigned DecisionTreeSolver::cost(std::span<const BitString> subset) {
  if (subset.empty()) throw std::invalid_argument("decision tree over an empty candidate set");
  const Matrix raw = restrict(subset);
  return solve(normalise(raw.solutions, raw.columns));
}

std::vector<std::uint64_t> DecisionTreeSolver::optimal_queries(std::span<const BitString> subset) {
  if (subset.empty()) throw std::invalid_argument("decision tree over an empty candidate set");
  const Matrix raw = restrict(subset);
  if (solve(normalise(raw.solutions, raw.columns)) == 0) return {};
  std::vector<unsigned> costs;
  for (std::size_t a = 0; a < raw.columns.size(); ++a) {
    const auto& col = raw.columns[a];
    if (std::all_of(col.begin(), col.end(), [&](std::uint32_t v) { return v == col.front(); })) {
      costs.push_back(kUnsolvable);
      continue;
    }
    Matrix single;
    single.solutions = raw.solutions;
    single.columns = raw.columns;
    std::swap(single.columns[0], single.columns[a]);
    single.columns[0] = first_appearance(single.columns[0]);
    costs.push_back(query_cost(single, 0, kUnsolvable));
  }
  const unsigned best = *std::min_element(costs.begin(), costs.end());
  std::vector<std::uint64_t> out;
  if (best == kUnsolvable) return out;
  for (std::size_t a = 0; a < costs.size(); ++a) {
    if (costs[a] == best) out.push_back(a);
  }
  return out;
}

unsigned decision_tree_cost(const OracleProblem& problem, std::span<const BitString> subset) {
  DecisionTreeSolver solver(problem);
  return solver.cost(subset);
}

bool QueryReport::uniform() const {
  return std::all_of(instances.begin(), instances.end(),
                     [&](const InstanceCost& c) { return c.cost == instances.front().cost; });
}

GroverReference grover_reference(unsigned n) {
  GroverReference ref;
  ref.n = n;
  ref.optimal = static_cast<unsigned>(std::ceil(std::numbers::pi / 4.0 * std::pow(2.0, n / 2.0)));
  if (n % 2 == 0) {
    ref.formula = (1U << (n / 2)) - 1;
  } else {
    ref.floor_split = (1U << (n / 2)) - 1;
    ref.ceil_split = (1U << (n / 2 + 1)) - 1;
  }
  return ref;
}

QueryReport predict_queries(const OracleProblem& problem, const AkConfig& config) {
  config.validate();
  QueryReport report;
  report.problem = problem.name();
  report.family = config.family_for(problem);
  report.complementary = config.complementary;
  DecisionTreeSolver solver(problem);
  report.baseline = solver.cost(all_ids(problem));
  for (const Setting& s : problem.settings()) {
    const std::vector<AkInstance> instances = ak_instances_for(problem, s.id, config);
    if (instances.empty()) report.settings_without_instance.push_back(s.id);
    for (const AkInstance& inst : instances) {
      const unsigned c = solver.cost(inst.subset);
      report.instances.push_back(InstanceCost{s.id, inst, c});
      report.predicted = std::max(report.predicted.value_or(0), c);
    }
  }
  if (problem.name().starts_with("grover:")) report.grover = grover_reference(problem.arg_bits());
  return report;
}

}  // namespace qretro
