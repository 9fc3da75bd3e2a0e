#pragma once

#include <ostream>
#include <string>
#include <string_view>

#include "weakarr/term.hpp"

namespace weakarr {

/// SMT-LIB spelling of a symbol, quoted with |...| when it is not a simple symbol.
std::string quote_symbol(std::string_view name);

std::string sort_to_string(const TermStore& store, SortId sort);
std::string term_to_string(const TermStore& store, TermId term);
void print_term(std::ostream& os, const TermStore& store, TermId term);

}  // namespace weakarr
