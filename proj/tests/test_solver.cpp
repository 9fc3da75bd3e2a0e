#include "doctest.h"
#include "weakarr/solver.hpp"

using namespace weakarr;

namespace {

struct Sig {
  TermStore s;
  SortId I = s.free_sort("I");
  SortId E = s.free_sort("E");
  SortId A = s.array_sort(I, E);
  TermId a = s.mk_var("a", A), b = s.mk_var("b", A), c = s.mk_var("c", A);
  TermId d = s.mk_var("d", A), e = s.mk_var("e", A);
  TermId i = s.mk_var("i", I), j = s.mk_var("j", I), k = s.mk_var("k", I);
  TermId v = s.mk_var("v", E), w = s.mk_var("w", E);

  TermId ne(TermId x, TermId y) { return s.mk_not(s.mk_eq(x, y)); }
};

Status check(Sig& g, const std::vector<TermId>& assertions, bool eager = false) {
  SolverOptions opts;
  opts.eager_selects = eager;
  Verdict v = solve(g.s, assertions, opts);
  if (v.status == Status::Sat) {
    REQUIRE(v.model.has_value());
    for (TermId t : assertions) CHECK(evaluate(g.s, *v.model, t).as_bool());
  }
  return v.status;
}

}  // namespace

TEST_CASE("running example is satisfiable") {
  Sig g;
  TermStore& s = g.s;
  std::vector<TermId> f{s.mk_eq(g.a, s.mk_store(g.b, g.j, g.v)), s.mk_eq(g.b, s.mk_store(g.c, g.i, g.w)),
                        s.mk_eq(g.d, g.e), s.mk_eq(s.mk_select(g.c, g.i), g.w)};
  for (bool eager : {false, true}) {
    Verdict v = solve(s, f, {eager, 0, 1'000'000});
    REQUIRE(v.status == Status::Sat);
    CHECK(*v.model->var_value(g.d) == *v.model->var_value(g.e));
  }
}

TEST_CASE("single store extensionality") {
  Sig g;
  TermStore& s = g.s;
  std::vector<TermId> f{s.mk_eq(g.a, s.mk_store(g.b, g.i, g.v)), s.mk_eq(s.mk_select(g.b, g.i), g.v),
                        g.ne(g.a, g.b)};
  CHECK(check(g, f) == Status::Unsat);
  CHECK(check(g, f, true) == Status::Unsat);
  f.pop_back();
  CHECK(check(g, f) == Status::Sat);
}

TEST_CASE("store commutativity") {
  Sig g;
  TermStore& s = g.s;
  TermId l = s.mk_store(s.mk_store(g.a, g.i, g.v), g.j, g.w);
  TermId r = s.mk_store(s.mk_store(g.a, g.j, g.w), g.i, g.v);
  CHECK(check(g, {g.ne(l, r), g.ne(g.i, g.j)}) == Status::Unsat);
  CHECK(check(g, {g.ne(l, r), g.ne(g.i, g.j)}, true) == Status::Unsat);
  CHECK(check(g, {g.ne(l, r)}) == Status::Sat);
}

TEST_CASE("unconnected arrays get different values") {
  Sig g;
  Verdict v = solve(g.s, {g.s.mk_eq(g.c, g.c)});
  REQUIRE(v.status == Status::Sat);
  Verdict both = solve(g.s, {g.s.mk_eq(g.s.mk_select(g.a, g.i), g.s.mk_select(g.b, g.i))});
  REQUIRE(both.status == Status::Sat);
  CHECK(*both.model->var_value(g.a) != *both.model->var_value(g.b));
}

TEST_CASE("restricted model uses a fresh value for an unread store position") {
  Sig g;
  TermStore& s = g.s;
  // a and b differ at most at i; select(a, i) is never read
  std::vector<TermId> f{s.mk_eq(g.b, s.mk_store(g.a, g.i, g.v)), g.ne(g.a, g.b)};
  Verdict v = solve(s, f);
  REQUIRE(v.status == Status::Sat);
  const Value& va = *v.model->var_value(g.a);
  const Value& vb = *v.model->var_value(g.b);
  const Value& vi = *v.model->var_value(g.i);
  CHECK(va.read(vi) != vb.read(vi));
  CHECK(vb.read(vi) == *v.model->var_value(g.v));
}

TEST_CASE("read over a chain of stores") {
  Sig g;
  TermStore& s = g.s;
  TermId st = s.mk_store(s.mk_store(g.a, g.i, g.v), g.j, g.w);
  std::vector<TermId> f{g.ne(g.k, g.i), g.ne(g.k, g.j), g.ne(s.mk_select(st, g.k), s.mk_select(g.a, g.k))};
  CHECK(check(g, f) == Status::Unsat);
  f.erase(f.begin());
  CHECK(check(g, f) == Status::Sat);
}

TEST_CASE("Boolean structure and uninterpreted functions") {
  Sig g;
  TermStore& s = g.s;
  FunId f = s.declare_fun("f", {g.I}, g.I);
  FunId p = s.declare_fun("p", {g.E}, s.bool_sort());
  TermId fi = s.mk_apply(f, std::vector{g.i});
  TermId fj = s.mk_apply(f, std::vector{g.j});
  TermId pv = s.mk_apply(p, std::vector{s.mk_select(g.a, fi)});
  TermId pw = s.mk_apply(p, std::vector{s.mk_select(g.a, fj)});
  std::vector<TermId> formula{s.mk_eq(g.i, g.j), s.mk_or({pv, s.mk_eq(g.v, g.w)}), s.mk_not(pw),
                              s.mk_not(s.mk_eq(g.v, g.w))};
  CHECK(check(g, formula) == Status::Unsat);
  formula.erase(formula.begin());
  CHECK(check(g, formula) == Status::Sat);
  TermId q = s.mk_var("q", s.bool_sort());
  CHECK(check(g, {s.mk_eq(q, pv), q, s.mk_not(pv)}) == Status::Unsat);
}
