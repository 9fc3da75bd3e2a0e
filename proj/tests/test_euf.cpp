#include <numeric>
#include <random>

#include "doctest.h"
#include "weakarr/euf.hpp"

using namespace weakarr;

namespace {

struct Fixture {
  TermStore s;
  SortId I = s.free_sort("I");
  SortId E = s.free_sort("E");
  SortId A = s.array_sort(I, E);
  TermId a = s.mk_var("a", A);
  TermId b = s.mk_var("b", A);
  TermId c = s.mk_var("c", A);
  TermId i = s.mk_var("i", I);
  TermId j = s.mk_var("j", I);
};

Literal eq(TermStore& s, TermId x, TermId y, bool pos = true) { return {s.mk_eq(x, y), pos}; }

bool entails(const TermStore& s, const std::vector<Literal>& lits, TermId x, TermId y,
             const std::vector<TermId>& terms) {
  CongruenceClosure cc(s);
  for (TermId t : terms) cc.register_term(t);
  for (const Literal& l : lits) cc.assert_literal(l);
  return cc.are_equal(x, y);
}

// Naive closure: union-find recomputed from scratch, congruence by fixpoint.
struct NaiveClosure {
  const TermStore& s;
  std::vector<TermId> terms;
  std::vector<std::uint32_t> parent;

  std::uint32_t root(std::uint32_t x) {
    while (parent[x] != x) x = parent[x];
    return x;
  }
  void compute(const std::vector<Literal>& lits) {
    parent.resize(s.num_terms());
    std::iota(parent.begin(), parent.end(), 0U);
    for (const Literal& l : lits)
      if (l.positive) parent[root(s.child(l.atom, 0).value)] = root(s.child(l.atom, 1).value);
    for (bool changed = true; changed;) {
      changed = false;
      for (TermId u : terms)
        for (TermId w : terms) {
          if (s.kind(u) != Kind::Apply || s.kind(w) != Kind::Apply || s.fun(u) != s.fun(w)) continue;
          if (root(u.value) == root(w.value)) continue;
          if (root(s.child(u, 0).value) != root(s.child(w, 0).value)) continue;
          parent[root(u.value)] = root(w.value);
          changed = true;
        }
    }
  }
  bool conflict(const std::vector<Literal>& lits) {
    for (const Literal& l : lits)
      if (!l.positive && root(s.child(l.atom, 0).value) == root(s.child(l.atom, 1).value)) return true;
    return false;
  }
};

}  // namespace

TEST_CASE("transitivity and congruence") {
  Fixture f;
  TermStore& s = f.s;
  TermId si = s.mk_select(f.a, f.i);
  TermId sj = s.mk_select(f.a, f.j);
  CongruenceClosure cc(s);
  for (TermId t : {f.a, f.b, f.c, si, sj}) cc.register_term(t);
  CHECK(cc.assert_literal(eq(s, f.a, f.b)).ok);
  CHECK(cc.assert_literal(eq(s, f.b, f.c)).ok);
  CHECK(cc.are_equal(f.a, f.c));
  CHECK_FALSE(cc.are_equal(si, sj));
  CHECK(cc.assert_literal(eq(s, f.i, f.j)).ok);
  CHECK(cc.are_equal(si, sj));
  CHECK(cc.explain(si, sj) == std::vector{eq(s, f.i, f.j)});
  CHECK(cc.explain(f.a, f.a).empty());
  CHECK_THROWS_AS((void)cc.explain(f.a, f.i), std::invalid_argument);
}

TEST_CASE("direct clash and backtracking") {
  Fixture f;
  TermStore& s = f.s;
  CongruenceClosure cc(s);
  for (TermId t : {f.a, f.b}) cc.register_term(t);
  cc.push();
  CHECK(cc.assert_literal(eq(s, f.a, f.b)).ok);
  auto r = cc.assert_literal(eq(s, f.a, f.b, false));
  CHECK_FALSE(r.ok);
  std::vector<Literal> expected{eq(s, f.a, f.b), eq(s, f.a, f.b, false)};
  std::sort(expected.begin(), expected.end());
  CHECK(r.conflict == expected);
  cc.pop();
  CHECK_FALSE(cc.in_conflict());
  CHECK_FALSE(cc.are_equal(f.a, f.b));
  CHECK(cc.assert_literal(eq(s, f.a, f.b, false)).ok);
  CHECK(cc.are_diseq(f.a, f.b));
}

TEST_CASE("Boolean atoms merge with true and false") {
  TermStore s;
  SortId U = s.free_sort("U");
  FunId p = s.declare_fun("p", {U}, s.bool_sort());
  TermId x = s.mk_var("x", U);
  TermId y = s.mk_var("y", U);
  TermId px = s.mk_apply(p, std::vector{x});
  TermId py = s.mk_apply(p, std::vector{y});
  CongruenceClosure cc(s);
  cc.register_term(px);
  cc.register_term(py);
  CHECK(cc.assert_literal({px, true}).ok);
  CHECK(cc.assert_literal({py, false}).ok);
  auto r = cc.assert_literal(eq(s, x, y));
  CHECK_FALSE(r.ok);
  CHECK(r.conflict.size() == 3);
}

TEST_CASE("random literal sequences agree with a naive closure") {
  std::mt19937 rng(7);
  for (int round = 0; round < 300; ++round) {
    TermStore s;
    SortId U = s.free_sort("U");
    FunId fn = s.declare_fun("f", {U}, U);
    std::vector<TermId> terms;
    for (int k = 0; k < 3; ++k) terms.push_back(s.mk_var("x" + std::to_string(k), U));
    while (terms.size() < 8) {
      TermId arg = terms[rng() % terms.size()];
      terms.push_back(s.mk_apply(fn, std::vector{arg}));
    }
    std::sort(terms.begin(), terms.end());
    terms.erase(std::unique(terms.begin(), terms.end()), terms.end());

    CongruenceClosure cc(s);
    for (TermId t : terms) cc.register_term(t);
    std::vector<Literal> asserted;
    std::vector<std::size_t> marks;
    NaiveClosure naive{s, terms, {}};
    for (int step = 0; step < 12; ++step) {
      unsigned op = rng() % 6;
      if (op == 0 && !marks.empty()) {
        cc.pop();
        asserted.resize(marks.back());
        marks.pop_back();
      } else if (op == 1) {
        cc.push();
        marks.push_back(asserted.size());
      } else if (!cc.in_conflict()) {
        TermId x = terms[rng() % terms.size()];
        TermId y = terms[rng() % terms.size()];
        if (x == y) continue;
        Literal l = eq(s, x, y, rng() % 3 != 0);
        asserted.push_back(l);
        auto r = cc.assert_literal(l);
        if (!r.ok) {
          NaiveClosure check{s, terms, {}};
          check.compute(r.conflict);
          CHECK(check.conflict(r.conflict));
        }
      }
      naive.compute(asserted);
      CHECK(cc.in_conflict() == naive.conflict(asserted));
      if (cc.in_conflict()) continue;
      for (TermId x : terms)
        for (TermId y : terms) {
          bool same = naive.root(x.value) == naive.root(y.value);
          REQUIRE(cc.are_equal(x, y) == same);
          if (same && x < y) CHECK(entails(s, cc.explain(x, y), x, y, terms));
        }
    }
  }
}
