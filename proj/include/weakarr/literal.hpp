#pragma once

#include <compare>
#include <string>
#include <vector>

#include "weakarr/term.hpp"

namespace weakarr {

/// A ground literal: an equality atom (or a Boolean-sorted uninterpreted term)
/// with a polarity.  Equality atoms already order their sides by id.
struct Literal {
  TermId atom;
  bool positive = true;

  [[nodiscard]] Literal operator~() const { return {atom, !positive}; }
  friend auto operator<=>(const Literal&, const Literal&) = default;
};

inline Literal mk_eq_lit(TermStore& store, TermId lhs, TermId rhs, bool positive = true) {
  return {store.mk_eq(lhs, rhs), positive};
}

std::string literal_to_string(const TermStore& store, const Literal& lit);

/// `(or l1 l2 ...)`.
std::string clause_to_string(const TermStore& store, const std::vector<Literal>& lits);

}  // namespace weakarr
