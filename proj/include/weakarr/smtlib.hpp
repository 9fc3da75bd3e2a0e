#pragma once

// SMT-LIB 2 subset: QF_AX / QF_AUF scripts with declare-sort, declare-fun,
// declare-const, define-fun macros, assert, check-sat, get-model and exit.

#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "weakarr/term.hpp"

namespace weakarr::smtlib {

class ParseError : public Error {
 public:
  ParseError(std::uint32_t line, std::uint32_t column, const std::string& msg);
  [[nodiscard]] std::uint32_t line() const { return line_; }
  [[nodiscard]] std::uint32_t column() const { return column_; }

 private:
  std::uint32_t line_, column_;
};

enum class CommandKind : std::uint8_t {
  SetLogic,
  SetInfo,
  SetOption,
  DeclareSort,
  DeclareFun,
  DefineFun,
  Assert,
  CheckSat,
  GetModel,
  Exit,
};

struct Command {
  CommandKind kind = CommandKind::Exit;
  /// Logic, keyword or declared name.
  std::string symbol;
  /// Attribute value of set-info / set-option, as written.
  std::string value;
  std::vector<SortId> args;
  /// Define-fun parameters, Vars named after the formals.
  std::vector<TermId> params;
  SortId sort;
  /// Declared constant, define-fun body or asserted formula.
  TermId term;
  FunId fun;

  bool operator==(const Command&) const = default;
};

struct Script {
  std::vector<Command> commands;
  bool operator==(const Script&) const = default;
};

/// Parses `text` into `store`.  Macros are expanded inside assertions; let
/// bindings are substituted.  Throws ParseError on malformed input and
/// UnsupportedError / SortError (prefixed with the position) otherwise.
Script parse(TermStore& store, std::string_view text);

void print_script(std::ostream& os, const TermStore& store, const Script& script);
std::string script_to_string(const TermStore& store, const Script& script);

/// `(assert φ)` for each formula, preceded by the declarations it needs.
std::string formula_to_smtlib(const TermStore& store, const std::vector<TermId>& assertions);

}  // namespace weakarr::smtlib
