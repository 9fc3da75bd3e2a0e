#pragma once

// Satisfiability search: propositional search over equality atoms with
// congruence closure, the weak equivalence forest and the lemma rules as
// theory, plus model construction.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "weakarr/lemmas.hpp"
#include "weakarr/model.hpp"
#include "weakarr/preprocess.hpp"

namespace weakarr {

struct SolverOptions {
  bool eager_selects = false;
  std::uint64_t seed = 0;
  std::uint64_t max_steps = 1'000'000;
};

enum class Status : std::uint8_t { Sat, Unsat, Unknown };

std::string_view status_name(Status s);

struct Stats {
  std::uint64_t read_over_weakeq = 0;
  std::uint64_t weakeq_ext = 0;
  std::uint64_t add_store_calls = 0;
  std::uint64_t edge_inversions = 0;
  std::uint64_t final_checks = 0;
  std::uint64_t decisions = 0;
  std::uint64_t conflicts = 0;
  std::uint64_t theory_conflicts = 0;
  std::uint64_t atoms = 0;
  double seconds = 0;
};

struct Verdict {
  Status status = Status::Unknown;
  /// Present iff status is Sat; satisfies every assertion.
  std::optional<Model> model;
  /// Lemmas in instantiation order.
  std::vector<Lemma> lemmas;
  std::string reason;
  Stats stats;
};

/// Decides the conjunction of `assertions`.  Index sorts must be declared
/// sorts; Boolean array elements and Boolean function arguments raise
/// UnsupportedError.  Throws InternalError if a model fails to satisfy the
/// assertions.
Verdict solve(TermStore& store, const std::vector<TermId>& assertions, const SolverOptions& options = {});

/// Array model from a saturated arrangement.  `restricted` selects fresh
/// values for modulo-i classes that no select determines.
Model build_model(TermStore& store, const CongruenceClosure& euf, const WeakEquivalence& weq,
                  const Preprocessed& pre, bool restricted);

}  // namespace weakarr
