#pragma once

// Conditions of weak paths and the two lemma rules.

#include <optional>
#include <string_view>
#include <vector>

#include "weakarr/euf.hpp"
#include "weakarr/literal.hpp"
#include "weakarr/weak_forest.hpp"

namespace weakarr {

enum class Rule : std::uint8_t { ReadOverWeakeq, WeakeqExt };

std::string_view rule_name(Rule r);

struct Lemma {
  Rule rule;
  /// Negated condition literals (sorted) followed by the conclusion.
  std::vector<Literal> clause;
};

/// Literals under which `path` witnesses weak equivalence, or weak
/// equivalence modulo `avoid` when given: u = v per equality hop and
/// avoid != j per store hop on j.  Throws std::invalid_argument if a store
/// hop's index is equal to `avoid` in the arrangement.
std::vector<Literal> cond(TermStore& store, const WeakEquivalence& weq, const Path& path,
                          std::optional<TermId> avoid = std::nullopt);

/// Condition for a and b being weakly congruent modulo `index`, or nothing if
/// they are not.  The second case searches `selects` in id order for a
/// bridging pair select(a', j) ~ select(b', k).
std::optional<std::vector<Literal>> cond_weak_cong_i(TermStore& store, const WeakEquivalence& weq,
                                                     std::span<const TermId> selects, TermId a, TermId b,
                                                     TermId index);

/// Turns a condition into the negated part of a clause.  Asserted literals are
/// negated directly; other equalities are replaced by their explanation.
std::vector<Literal> negate_condition(TermStore& store, const CongruenceClosure& euf,
                                      const std::vector<Literal>& condition);

/// At most one clause per pair of select classes.
std::vector<Lemma> gen_read_over_weakeq(TermStore& store, const WeakEquivalence& weq,
                                        std::span<const TermId> selects);

/// At most one clause per pair of array classes.
std::vector<Lemma> gen_weakeq_ext(TermStore& store, const WeakEquivalence& weq, std::span<const TermId> selects);

}  // namespace weakarr
