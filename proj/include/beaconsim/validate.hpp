// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace beaconsim::validate {

/// One checked claim from the result-reproduction suite.
struct CriterionResult {
  int id = 0;
  std::string name;
  bool pass = false;
  std::string detail;  // the numbers behind the verdict, one line
};

struct Context {
  /// Binary to re-invoke for the repeat-run determinism check. Empty means
  /// the check runs in-process through the same writer code paths.
  std::string cli_path;
  /// Scratch directory for the repeat-run outputs.
  std::string work_dir = "/tmp";
  /// When set, receives a progress note as each criterion starts.
  std::ostream* progress = nullptr;
};

/// Runs the full suite. Heavy: minutes of simulation.
std::vector<CriterionResult> run_all(const Context& ctx);

/// One [PASS]/[FAIL] line per criterion.
void print_results(std::ostream& os, const std::vector<CriterionResult>& results);

bool all_passed(const std::vector<CriterionResult>& results);

}  // namespace beaconsim::validate
