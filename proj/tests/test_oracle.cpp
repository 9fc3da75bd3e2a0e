#include "doctest.h"
#include "weakarr/oracle.hpp"
#include "weakarr/printer.hpp"
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
  TermId i = s.mk_var("i", I), j = s.mk_var("j", I);
  TermId v = s.mk_var("v", E), w = s.mk_var("w", E);
};

}  // namespace

TEST_CASE("oracle decides the textbook instances") {
  Sig g;
  TermStore& s = g.s;
  auto t = oracle::check(s, s.mk_true());
  CHECK(t.sat);
  CHECK(t.interpretations == 1);
  CHECK_FALSE(oracle::check(s, s.mk_false()).sat);

  TermId ex1 = s.mk_and({s.mk_eq(g.a, s.mk_store(g.b, g.j, g.v)), s.mk_eq(g.b, s.mk_store(g.c, g.i, g.w)),
                         s.mk_eq(g.d, g.e), s.mk_eq(s.mk_select(g.c, g.i), g.w), s.mk_not(s.mk_eq(g.i, g.j))});
  // five array variables, one past the default cap
  oracle::Caps wide;
  wide.arrays = 5;
  CHECK_THROWS_AS((void)oracle::check(s, ex1), oracle::CapError);
  auto r = oracle::check(s, ex1, wide);
  CHECK(r.sat);
  REQUIRE(r.witness.has_value());
  CHECK(oracle::evaluate(s, *r.witness, ex1));

  TermId ext = s.mk_and({s.mk_eq(g.a, s.mk_store(g.b, g.i, g.v)), s.mk_eq(s.mk_select(g.b, g.i), g.v),
                         s.mk_not(s.mk_eq(g.a, g.b))});
  CHECK_FALSE(oracle::check(s, ext).sat);

  // distinct arrays need a position no index term names
  TermId apart = s.mk_and({s.mk_not(s.mk_eq(g.a, g.b)), s.mk_eq(s.mk_select(g.a, g.i), s.mk_select(g.b, g.i))});
  CHECK(oracle::check(s, apart).sat);
  TermId three = s.mk_and({s.mk_not(s.mk_eq(g.a, g.b)), s.mk_not(s.mk_eq(g.b, g.c)), s.mk_not(s.mk_eq(g.a, g.c))});
  CHECK(oracle::check(s, three).sat);
}

TEST_CASE("oracle bounds and caps") {
  Sig g;
  TermStore& s = g.s;
  TermId phi = s.mk_eq(s.mk_select(g.a, g.i), g.v);
  auto b = oracle::carrier_bounds(s, phi);
  CHECK(b.index_carrier == 1 + 1 + 1);
  CHECK(b.element_carrier == 2 + 1 + 2);
  TermId x = g.a;
  for (int k = 0; k < 5; ++k) x = s.mk_store(x, g.i, g.v);
  CHECK_THROWS_AS((void)oracle::check(s, s.mk_eq(x, g.b)), oracle::CapError);
}

TEST_CASE("oracle evaluation") {
  Sig g;
  TermStore& s = g.s;
  Model m;
  m.set_var(g.i, Value::element(g.I, 0));
  m.set_var(g.v, Value::element(g.E, 0));
  m.set_var(g.a, Value::array(g.A, Value::element(g.E, 1), {}));
  CHECK(oracle::evaluate(s, m, s.mk_eq(g.a, g.a)));
  CHECK_FALSE(oracle::evaluate(s, m, s.mk_not(s.mk_eq(g.a, g.a))));
  CHECK(oracle::evaluate(s, m, s.mk_eq(s.mk_select(s.mk_store(g.a, g.i, g.v), g.i), g.v)));
  CHECK_FALSE(oracle::evaluate(s, m, s.mk_eq(s.mk_store(g.a, g.i, g.v), g.a)));
  CHECK_THROWS_AS((void)oracle::evaluate(s, m, s.mk_eq(g.b, g.a)), std::invalid_argument);
}

TEST_CASE("generator is deterministic") {
  TermStore s1, s2;
  for (std::uint64_t seed : {0, 1, 17}) {
    CHECK(term_to_string(s1, oracle::generate(s1, seed)) == term_to_string(s2, oracle::generate(s2, seed)));
  }
}

TEST_CASE("families match their expected verdicts") {
  for (bool valid : {true, false}) {
    TermStore s;
    auto c = oracle::family(s, oracle::Profile::Commute, 2, valid);
    CHECK(oracle::check(s, c.formula).sat == c.expect_sat);
    TermStore s2;
    auto e = oracle::family(s2, oracle::Profile::ExtChain, 1, valid);
    CHECK(oracle::check(s2, e.formula).sat == e.expect_sat);
    TermStore s3;
    auto w = oracle::family(s3, oracle::Profile::Swap, 1, valid);
    CHECK(oracle::check(s3, w.formula).sat == w.expect_sat);
  }
  TermStore s;
  auto e = oracle::family(s, oracle::Profile::ExtChain, 1);
  Sig g;
  TermId ext = g.s.mk_and({g.s.mk_eq(g.a, g.s.mk_store(g.b, g.i, g.v)), g.s.mk_eq(g.s.mk_select(g.b, g.i), g.v),
                           g.s.mk_not(g.s.mk_eq(g.a, g.b))});
  CHECK(s.children(e.formula).size() == g.s.children(ext).size());
}

TEST_CASE("solver agrees with the oracle on generated formulas") {
  for (std::uint64_t seed = 0; seed < 150; ++seed) {
    TermStore s;
    TermId phi = oracle::generate(s, seed);
    auto expected = oracle::check(s, phi);
    Verdict v = solve(s, {phi});
    INFO("seed " << seed << ": " << term_to_string(s, phi));
    REQUIRE(v.status != Status::Unknown);
    CHECK((v.status == Status::Sat) == expected.sat);
    if (v.model) CHECK(oracle::evaluate(s, *v.model, phi));
    for (const Lemma& l : v.lemmas) {
      std::vector<TermId> negated;
      for (const Literal& lit : l.clause) negated.push_back(lit.positive ? s.mk_not(lit.atom) : lit.atom);
      CHECK_FALSE(oracle::check(s, s.mk_and(negated)).sat);
    }
  }
}
