#pragma once
#include <functional>
#include <iosfwd>
#include <string>
#include <vector>

namespace pft {

// Independent cross-checks of the state-level machinery: closed forms
// against fusion-built constructions, algebraic identities, and branch
// bookkeeping on random logical states.
struct oracle_check {
  std::string name;
  std::function<void()> run;  // throws std::runtime_error on failure
};

const std::vector<oracle_check>& oracle_checks();

struct oracle_report {
  int passed = 0;
  int failed = 0;
  bool ok() const { return failed == 0; }
};

// Runs every check, one "ok"/"FAIL" line each.
oracle_report run_oracle_suite(std::ostream& out);

// Random logical states exercised by one full suite run (the branch-law
// checks sweep block sizes with fresh states per combination).
int oracle_random_state_count();

}  // namespace pft
