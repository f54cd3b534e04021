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

#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "qretro/akrule.hpp"
#include "qretro/circuits.hpp"
#include "qretro/histories.hpp"
#include "qretro/verify.hpp"

namespace qretro {

enum class Format { text, json, dot };

Format parse_format(std::string_view text);

/// Entropies and probabilities: 6 decimals. Amplitudes: 9 decimals.
std::string fixed6(double x);
std::string fixed9(double x);

/// Final A distribution and entropy; every stage boundary when `stages` is set.
std::string render_simulation(const Circuit& circuit, const StageTrace& trace, const BitString& setting,
                              bool stages, Format format);

std::string render_ak(const OracleProblem& problem, const BitString& setting, const AkConfig& config,
                      std::span<const OccamPair> pairs, std::span<const AkInstance> instances, Format format);

std::string render_report(const QueryReport& report, const OracleProblem& problem, Format format);

/// Text table, JSON lines (one history per line) or a DOT lattice.
std::string render_histories(const HistorySet& set, std::span<const HistoryClassification> classified,
                             Format format);

std::string render_checks(std::span<const CheckResult> checks, Format format);

}  // namespace qretro
