#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>

namespace weakarr {

struct CliOptions {
  bool eager_selects = false;
  bool dump_lemmas = false;
  bool model = false;
  bool stats = false;
  std::uint64_t seed = 0;
};

/// Runs an SMT-LIB script: one `sat` / `unsat` / `unknown` line per
/// check-sat on `out`, diagnostics, lemma dumps and statistics on `err`.
/// Returns 0 on success, 1 on input errors and 2 on internal errors.
int run_script(std::string_view text, const CliOptions& options, std::ostream& out, std::ostream& err,
               std::string_view filename = "<input>");

/// `weakarr [--eager-selects] [--dump-lemmas] [--model] [--stats] [--seed N] FILE`
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace weakarr
