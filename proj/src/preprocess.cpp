#include "weakarr/preprocess.hpp"

#include <algorithm>
#include <unordered_map>

namespace weakarr {

namespace {

class Simplifier {
 public:
  explicit Simplifier(TermStore& store) : store_(store) {}

  TermId run(TermId root) {
    for_each_subterm(store_, std::span(&root, 1), [&](TermId t) { cache_[t] = rewrite(t); });
    return cache_.at(root);
  }

 private:
  TermId rewrite(TermId t) {
    auto kids = store_.children(t);
    std::vector<TermId> args;
    args.reserve(kids.size());
    bool changed = false;
    for (TermId c : kids) {
      args.push_back(cache_.at(c));
      changed |= args.back() != c;
    }
    switch (store_.kind(t)) {
      case Kind::Select: {
        TermId a = args[0];
        if (store_.kind(a) == Kind::Store && store_.index_of(a) == args[1]) return store_.value_of(a);
        return changed ? store_.mk_select(args[0], args[1]) : t;
      }
      case Kind::Store: {
        TermId a = args[0];
        // args are already simplified, so one contraction step reaches the fixpoint
        if (store_.kind(a) == Kind::Store && store_.index_of(a) == args[1])
          return store_.mk_store(store_.array_of(a), args[1], args[2]);
        return changed ? store_.mk_store(args[0], args[1], args[2]) : t;
      }
      default:
        break;
    }
    if (!changed) return t;
    switch (store_.kind(t)) {
      case Kind::Apply: return store_.mk_apply(store_.fun(t), args);
      case Kind::Eq: return store_.mk_eq(args[0], args[1]);
      case Kind::Not: return store_.mk_not(args[0]);
      case Kind::And: return store_.mk_and(args);
      case Kind::Or: return store_.mk_or(args);
      default: return t;
    }
  }

  TermStore& store_;
  std::unordered_map<TermId, TermId> cache_;
};

}  // namespace

TermId simplify(TermStore& store, TermId t) { return Simplifier(store).run(t); }

Preprocessed preprocess(TermStore& store, const ProblemInstance& problem) {
  Preprocessed out;
  out.assertions = problem.assertions;

  for_each_subterm(store, problem.assertions, [&](TermId t) {
    if (store.kind(t) == Kind::Store) out.stores.push_back(t);
  });
  std::sort(out.stores.begin(), out.stores.end());

  std::vector<TermId> extra_selects;
  for (TermId s : out.stores) {
    TermId read = store.mk_select(s, store.index_of(s));
    TermId idx = store.mk_eq(read, store.value_of(s));
    out.idx_instances.push_back(idx);
    out.assertions.push_back(idx);
    if (problem.eager_selects) extra_selects.push_back(store.mk_select(store.array_of(s), store.index_of(s)));
  }

  std::vector<TermId> roots = out.assertions;
  roots.insert(roots.end(), extra_selects.begin(), extra_selects.end());
  for_each_subterm(store, roots, [&](TermId t) {
    if (store.kind(t) == Kind::Select) out.tracked_selects.push_back(t);
    if (store.is_array_term(t)) out.tracked_arrays.push_back(t);
  });
  std::sort(out.tracked_selects.begin(), out.tracked_selects.end());
  std::sort(out.tracked_arrays.begin(), out.tracked_arrays.end());
  return out;
}

}  // namespace weakarr
