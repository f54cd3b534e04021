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

// Runs the acceptance criteria and prints one line per criterion.

#include <cstdio>
#include <cstdlib>

#include "qretro/verify.hpp"

int main() {
  const std::vector<qretro::CheckResult> checks = qretro::acceptance_checks();
  int failed = 0;
  for (const qretro::CheckResult& c : checks) {
    std::printf("%s %s: %s\n", c.passed ? "PASS" : "FAIL", c.name.c_str(), c.detail.c_str());
    if (!c.passed) ++failed;
  }
  if (checks.size() != 8) {
    std::printf("FAIL expected 8 criteria, got %zu\n", checks.size());
    return EXIT_FAILURE;
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(checks.size()) - failed, checks.size());
  return failed == 0 ? EXIT_SUCCESS : EXIT_FAILURE;
}
