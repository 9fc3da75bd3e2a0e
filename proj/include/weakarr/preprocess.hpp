#pragma once

#include <vector>

#include "weakarr/term.hpp"

namespace weakarr {

/// Rewrites bottom-up with exactly two rules, both guarded by syntactic
/// identity of the index terms:
///   select(store(a, i, v), i)       -> v
///   store(store(a, i, w), i, v)     -> store(a, i, v)
TermId simplify(TermStore& store, TermId t);

struct ProblemInstance {
  std::vector<TermId> assertions;
  /// Track select(a, i) for every store(a, i, v), not only the idx instances.
  bool eager_selects = false;
};

/// Result of preprocessing.  Every store/select term stands for its own shared
/// variable; the term DAG is already flat because children are referenced by id.
struct Preprocessed {
  /// Input assertions followed by one idx instance per store term.
  std::vector<TermId> assertions;
  /// select(s, index(s)) = value(s), one per entry of `stores`.
  std::vector<TermId> idx_instances;
  /// Sorted by id.
  std::vector<TermId> stores;
  std::vector<TermId> tracked_selects;
  std::vector<TermId> tracked_arrays;
};

Preprocessed preprocess(TermStore& store, const ProblemInstance& problem);

}  // namespace weakarr
