#include "weakarr/lemmas.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

#include "weakarr/printer.hpp"

namespace weakarr {

namespace {

void sort_unique(std::vector<Literal>& lits) {
  std::sort(lits.begin(), lits.end());
  lits.erase(std::unique(lits.begin(), lits.end()), lits.end());
}

void add_eq(TermStore& store, std::vector<Literal>& out, TermId x, TermId y) {
  if (x != y) out.push_back(mk_eq_lit(store, x, y));
}

Lemma make_lemma(TermStore& store, const CongruenceClosure& euf, Rule rule, const std::vector<Literal>& condition,
                 TermId lhs, TermId rhs) {
  Lemma lemma{rule, negate_condition(store, euf, condition)};
  lemma.clause.push_back(mk_eq_lit(store, lhs, rhs));
  return lemma;
}

std::pair<TermId, TermId> class_pair(const CongruenceClosure& euf, TermId x, TermId y) {
  TermId rx = euf.find(x);
  TermId ry = euf.find(y);
  return rx < ry ? std::pair{rx, ry} : std::pair{ry, rx};
}

}  // namespace

std::string_view rule_name(Rule r) {
  switch (r) {
    case Rule::ReadOverWeakeq: return "read-over-weakeq";
    case Rule::WeakeqExt: return "weakeq-ext";
  }
  return "?";
}

std::vector<Literal> cond(TermStore& store, const WeakEquivalence& weq, const Path& path,
                          std::optional<TermId> avoid) {
  std::vector<Literal> out;
  for (const PathStep& step : path) {
    if (step.type == PathStep::Type::Eq) {
      add_eq(store, out, step.from, step.to);
      continue;
    }
    if (!avoid) continue;
    if (weq.euf().are_equal(*avoid, step.index))
      throw std::invalid_argument("cond: path crosses a store on " + term_to_string(store, *avoid));
    out.push_back(mk_eq_lit(store, *avoid, step.index, false));
  }
  sort_unique(out);
  return out;
}

std::optional<std::vector<Literal>> cond_weak_cong_i(TermStore& store, const WeakEquivalence& weq,
                                                     std::span<const TermId> selects, TermId a, TermId b,
                                                     TermId index) {
  const CongruenceClosure& euf = weq.euf();
  if (weq.weakly_equal_mod(a, b, index)) return cond(store, weq, weq.path_mod(a, b, index), index);

  for (TermId s1 : selects) {
    TermId a1 = store.array_of(s1);
    TermId j = store.index_of(s1);
    if (!euf.are_equal(j, index) || !weq.weakly_equal_mod(a, a1, index)) continue;
    for (TermId s2 : selects) {
      TermId b1 = store.array_of(s2);
      TermId k = store.index_of(s2);
      if (s1 == s2 || !euf.are_equal(s1, s2) || !euf.are_equal(k, index)) continue;
      if (!weq.weakly_equal_mod(b1, b, index)) continue;
      std::vector<Literal> out = cond(store, weq, weq.path_mod(a, a1, index), index);
      add_eq(store, out, index, j);
      add_eq(store, out, s1, s2);
      add_eq(store, out, k, index);
      std::vector<Literal> tail = cond(store, weq, weq.path_mod(b1, b, index), index);
      out.insert(out.end(), tail.begin(), tail.end());
      sort_unique(out);
      return out;
    }
  }
  return std::nullopt;
}

std::vector<Literal> negate_condition(TermStore& store, const CongruenceClosure& euf,
                                      const std::vector<Literal>& condition) {
  std::vector<Literal> out;
  for (const Literal& l : condition) {
    if (!l.positive || euf.is_asserted(l)) {
      out.push_back(~l);
      continue;
    }
    TermId x = store.child(l.atom, 0);
    TermId y = store.child(l.atom, 1);
    for (const Literal& e : euf.explain(x, y)) out.push_back(~e);
  }
  sort_unique(out);
  return out;
}

std::vector<Lemma> gen_read_over_weakeq(TermStore& store, const WeakEquivalence& weq,
                                        std::span<const TermId> selects) {
  const CongruenceClosure& euf = weq.euf();
  std::vector<Lemma> out;
  std::set<std::pair<TermId, TermId>> done;
  for (std::size_t x = 0; x < selects.size(); ++x) {
    for (std::size_t y = x + 1; y < selects.size(); ++y) {
      TermId s1 = selects[x];
      TermId s2 = selects[y];
      if (euf.are_equal(s1, s2)) continue;
      TermId i = store.index_of(s1);
      TermId j = store.index_of(s2);
      if (!euf.are_equal(i, j)) continue;
      auto key = class_pair(euf, s1, s2);
      if (done.contains(key)) continue;
      TermId a = store.array_of(s1);
      TermId b = store.array_of(s2);
      if (!weq.weakly_equal_mod(a, b, i)) continue;
      std::vector<Literal> condition = cond(store, weq, weq.path_mod(a, b, i), i);
      add_eq(store, condition, i, j);
      out.push_back(make_lemma(store, euf, Rule::ReadOverWeakeq, condition, s1, s2));
      done.insert(key);
    }
  }
  return out;
}

std::vector<Lemma> gen_weakeq_ext(TermStore& store, const WeakEquivalence& weq, std::span<const TermId> selects) {
  const CongruenceClosure& euf = weq.euf();
  std::vector<Lemma> out;
  // first tracked array of every strong class
  std::vector<TermId> reps;
  for (const auto& terms : weq.node_terms()) reps.push_back(terms.front());
  std::sort(reps.begin(), reps.end());

  for (std::size_t x = 0; x < reps.size(); ++x) {
    for (std::size_t y = x + 1; y < reps.size(); ++y) {
      TermId a = reps[x];
      TermId b = reps[y];
      if (!weq.weakly_equal(a, b)) continue;
      Path path = weq.path(a, b);
      std::vector<Literal> condition = cond(store, weq, path);
      std::vector<TermId> seen;
      bool congruent = true;
      for (TermId i : path_stores(path)) {
        if (std::find(seen.begin(), seen.end(), i) != seen.end()) continue;
        seen.push_back(i);
        auto c = cond_weak_cong_i(store, weq, selects, a, b, i);
        if (!c) {
          congruent = false;
          break;
        }
        condition.insert(condition.end(), c->begin(), c->end());
      }
      if (!congruent) continue;
      out.push_back(make_lemma(store, euf, Rule::WeakeqExt, condition, a, b));
    }
  }
  return out;
}

}  // namespace weakarr
