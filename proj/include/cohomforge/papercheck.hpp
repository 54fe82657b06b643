#pragma once

// The reproduction manifest: every published computation the tool is expected
// to reproduce, run end to end with exact invariant-factor comparison.  Used
// both by the `papercheck` CLI command and the acceptance test binary.

#include <iosfwd>

#include "json.hpp"

#include "cohomforge/guards.hpp"

namespace cohomforge {

struct CheckItem {
  std::string id;     // stable anchor, e.g. "hs-c2-f2-period4"
  std::string claim;  // human-readable statement of the reproduced fact
  bool pass = false;
  double seconds = 0.0;
  std::string detail;  // first mismatch or error, empty when passing
};

struct CheckReport {
  std::vector<CheckItem> items;
  bool all_pass = true;
};

// Runs the whole manifest (guard-safe instances only).  When `progress` is
// given, one PASS/FAIL line per item is streamed as results arrive.
CheckReport run_papercheck(std::size_t max_basis = kDefaultMaxBasis, int threads = 1,
                           std::ostream* progress = nullptr);

nlohmann::ordered_json render_json(const CheckReport& report);

}  // namespace cohomforge
