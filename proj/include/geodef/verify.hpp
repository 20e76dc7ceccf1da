#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace geodef::verify {

struct Options {
  /// Empty means every check; otherwise exact check names.
  std::vector<std::string> only;
  std::uint64_t seed = 12022;
  unsigned threads = 2;
};

struct Outcome {
  std::string name;
  bool pass = false;
  std::string detail;
  double seconds = 0.0;
};

const std::vector<std::string>& check_names();

/// Runs the verification suites; outcomes come back in the fixed check
/// order. Each check also enforces its own runtime budget.
std::vector<Outcome> run_checks(const Options& opts);

/// The committed geometry-formula corpus driving the translation checks.
const std::string& tr_corpus_text();

/// Expected DOT output for the two-node concept diagram over gf(5).
const std::string& hasse_golden_dot();

/// Documented readings that the verification report announces.
std::vector<std::string> deviation_notes();

}  // namespace geodef::verify
