// SPDX-License-Identifier: Apache-2.0
// Acceptance gate: runs every release criterion and prints one line per
// result. Exits zero only when all of them hold.
//
// Usage: acceptance [cli-binary [work-dir]]
// The CLI binary path enables the end-to-end reproducibility check; without
// it that check runs in-process.
#include <iostream>

#include "beaconsim/validate.hpp"

int main(int argc, char** argv) {
  beaconsim::validate::Context ctx;
  if (argc > 1) ctx.cli_path = argv[1];
  ctx.work_dir = argc > 2 ? argv[2] : "acceptance_tmp";
  ctx.progress = &std::cerr;

  auto results = beaconsim::validate::run_all(ctx);
  beaconsim::validate::print_results(std::cout, results);
  return beaconsim::validate::all_passed(results) ? 0 : 1;
}
