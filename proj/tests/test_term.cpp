#include <algorithm>

#include "doctest.h"
#include "weakarr/preprocess.hpp"
#include "weakarr/printer.hpp"
#include "weakarr/term.hpp"

using namespace weakarr;

namespace {

struct Arrays {
  TermStore s;
  SortId I = s.free_sort("I");
  SortId E = s.free_sort("E");
  SortId A = s.array_sort(I, E);
  TermId a = s.mk_var("a", A);
  TermId b = s.mk_var("b", A);
  TermId i = s.mk_var("i", I);
  TermId j = s.mk_var("j", I);
  TermId v = s.mk_var("v", E);
  TermId w = s.mk_var("w", E);
};

}  // namespace

TEST_CASE("interning is canonical") {
  Arrays t;
  CHECK(t.s.mk_eq(t.a, t.a) == t.s.mk_eq(t.a, t.a));
  CHECK(t.s.mk_eq(t.b, t.a) == t.s.mk_eq(t.a, t.b));
  CHECK(t.s.mk_store(t.a, t.i, t.v) == t.s.mk_store(t.a, t.i, t.v));
  CHECK(t.s.mk_var("a", t.A) == t.a);
  CHECK(t.s.array_sort(t.I, t.E) == t.A);
  CHECK(t.s.free_sort("I") == t.I);
  CHECK(t.s.sort_depth(t.A) == 1);
}

TEST_CASE("ill-sorted terms are rejected") {
  Arrays t;
  CHECK_THROWS_AS(t.s.mk_store(t.a, t.v, t.v), SortError);
  CHECK_THROWS_AS(t.s.mk_select(t.a, t.v), SortError);
  CHECK_THROWS_AS(t.s.mk_eq(t.a, t.i), SortError);
  CHECK_THROWS_AS(t.s.mk_not(t.i), SortError);
  try {
    (void)t.s.mk_store(t.a, t.v, t.v);
  } catch (const SortError& e) {
    CHECK(std::string(e.what()).find("index") != std::string::npos);
  }
}

TEST_CASE("printing") {
  Arrays t;
  CHECK(term_to_string(t.s, t.s.mk_select(t.s.mk_store(t.a, t.i, t.v), t.j)) == "(select (store a i v) j)");
  CHECK(sort_to_string(t.s, t.A) == "(Array I E)");
  CHECK(quote_symbol("x y") == "|x y|");
}

TEST_CASE("simplify applies exactly the two syntactic rules") {
  Arrays t;
  TermStore& s = t.s;
  TermId st = s.mk_store(t.a, t.i, t.v);
  CHECK(simplify(s, s.mk_select(st, t.i)) == t.v);
  CHECK(simplify(s, s.mk_store(s.mk_store(t.a, t.i, t.w), t.i, t.v)) == st);
  TermId other = s.mk_select(st, t.j);
  CHECK(simplify(s, other) == other);
  TermId nested = s.mk_eq(s.mk_select(s.mk_store(s.mk_store(t.b, t.j, t.w), t.j, t.v), t.j), t.w);
  TermId once = simplify(s, nested);
  CHECK(once == s.mk_eq(t.v, t.w));
  CHECK(simplify(s, once) == once);
}

TEST_CASE("preprocess adds one idx instance per store") {
  Arrays t;
  TermStore& s = t.s;
  TermId st = s.mk_store(t.a, t.i, t.v);
  ProblemInstance p;
  p.assertions = {s.mk_eq(t.b, st)};
  Preprocessed out = preprocess(s, p);
  REQUIRE(out.idx_instances.size() == 1);
  CHECK(out.idx_instances[0] == s.mk_eq(s.mk_select(st, t.i), t.v));
  CHECK(out.assertions.size() == 2);
  CHECK(out.tracked_selects == std::vector{s.mk_select(st, t.i)});
  CHECK(std::is_sorted(out.tracked_arrays.begin(), out.tracked_arrays.end()));
  CHECK(out.tracked_arrays.size() == 3);

  p.eager_selects = true;
  Preprocessed eager = preprocess(s, p);
  CHECK(eager.tracked_selects.size() == 2);
  CHECK(std::find(eager.tracked_selects.begin(), eager.tracked_selects.end(), s.mk_select(t.a, t.i)) !=
        eager.tracked_selects.end());
}

TEST_CASE("store-free input is unchanged") {
  Arrays t;
  TermStore& s = t.s;
  TermId sel = s.mk_select(t.a, t.i);
  ProblemInstance p;
  p.assertions = {s.mk_eq(sel, t.v)};
  Preprocessed out = preprocess(s, p);
  CHECK(out.assertions == p.assertions);
  CHECK(out.tracked_selects == std::vector{sel});
}
