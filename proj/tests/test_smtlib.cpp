#include <sstream>

#include "doctest.h"
#include "weakarr/cli.hpp"
#include "weakarr/oracle.hpp"
#include "weakarr/printer.hpp"
#include "weakarr/smtlib.hpp"

using namespace weakarr;

namespace {

const char* const kHeader = "(declare-sort I 0)(declare-sort E 0)(declare-fun a () (Array I E))"
                            "(declare-fun b () (Array I E))(declare-const i I)(declare-const j I)(declare-const v E)";

struct Run {
  int code;
  std::string out, err;
};

Run run(const std::string& text, CliOptions opts = {}) {
  std::ostringstream out, err;
  int code = run_script(text, opts, out, err);
  return {code, out.str(), err.str()};
}

}  // namespace

TEST_CASE("assert builds the expected term") {
  TermStore s;
  auto script = smtlib::parse(s, std::string(kHeader) + "(assert (= a (store b j v)))");
  const smtlib::Command& c = script.commands.back();
  REQUIRE(c.kind == smtlib::CommandKind::Assert);
  SortId A = s.array_sort(s.free_sort("I"), s.free_sort("E"));
  TermId expected = s.mk_eq(s.mk_var("a", A), s.mk_store(s.mk_var("b", A), s.mk_var("j", s.free_sort("I")),
                                                          s.mk_var("v", s.free_sort("E"))));
  CHECK(c.term == expected);
}

TEST_CASE("derived operators expand") {
  TermStore s;
  auto script = smtlib::parse(s, std::string(kHeader) +
                                     "(declare-const p Bool)(declare-const q Bool)"
                                     "(assert (distinct i j i))(assert (=> p q p))(assert (ite p q (not q)))"
                                     "(define-fun sel ((x (Array I E)) (k I)) E (select x k))"
                                     "(assert (= (sel a i) (sel b i) v))");
  std::vector<std::string> asserted;
  for (const auto& c : script.commands)
    if (c.kind == smtlib::CommandKind::Assert) asserted.push_back(term_to_string(s, c.term));
  REQUIRE(asserted.size() == 4);
  CHECK(asserted[0] == "(and (not (= i j)) (not (= i i)) (not (= i j)))");
  CHECK(asserted[1] == "(or (not p) (or (not q) p))");
  CHECK(asserted[2] == "(and (or (not p) q) (or p (not q)))");
  CHECK(asserted[3] == "(and (= (select a i) (select b i)) (= v (select b i)))");
}

TEST_CASE("parse errors carry positions") {
  TermStore s;
  try {
    (void)smtlib::parse(s, "(declare-sort I 0)\n(assert (= x x))");
    FAIL("expected a parse error");
  } catch (const smtlib::ParseError& e) {
    CHECK(e.line() == 2);
    CHECK(e.column() == 12);
  }
  TermStore s2;
  CHECK_THROWS_AS((void)smtlib::parse(s2, "(assert (forall ((x Bool)) x))"), UnsupportedError);
  TermStore s3;
  CHECK_THROWS_AS((void)smtlib::parse(s3, "(assert true"), smtlib::ParseError);
  TermStore s4;
  CHECK_THROWS_AS((void)smtlib::parse(s4, std::string(kHeader) + "(assert (= i v))"), SortError);
  TermStore s5;
  CHECK_THROWS_AS((void)smtlib::parse(s5, std::string(kHeader) + "(assert (= v (ite (= i j) v v)))"), UnsupportedError);
  TermStore s6;
  CHECK_THROWS_AS((void)smtlib::parse(s6, "(check-sat)(set-logic QF_AX)"), smtlib::ParseError);
  TermStore s7;
  CHECK_THROWS_AS((void)smtlib::parse(s7, "(set-logic QF_LIA)"), UnsupportedError);
  TermStore s8;
  CHECK_THROWS_AS((void)smtlib::parse(s8, "(declare-const x Int)"), smtlib::ParseError);
  TermStore s9;
  CHECK_THROWS_AS((void)smtlib::parse(s9, "(push 1)"), UnsupportedError);
}

TEST_CASE("printing a parsed script reparses to the same script") {
  std::string text = std::string("(set-logic QF_AUF)(set-info :status unsat)(set-option :produce-models true)") +
                     kHeader +
                     "(declare-fun f (I E) I)(declare-fun |odd name| () Bool)"
                     "(define-fun g ((x I)) I (f x v))"
                     "(assert (let ((z (g i))) (or |odd name| (= z (f j (select a z))))))"
                     "(assert (not (= a (store b (g j) v))))(check-sat)(get-model)(exit)";
  TermStore s;
  auto first = smtlib::parse(s, text);
  std::string printed = smtlib::script_to_string(s, first);
  auto second = smtlib::parse(s, printed);
  CHECK(first == second);
  CHECK(smtlib::script_to_string(s, second) == printed);

  TermStore fresh;
  auto third = smtlib::parse(fresh, printed);
  CHECK(smtlib::script_to_string(fresh, third) == printed);
}

TEST_CASE("generated formulas survive printing") {
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    TermStore s;
    TermId phi = oracle::generate(s, seed);
    auto script = smtlib::parse(s, smtlib::formula_to_smtlib(s, {phi}));
    CHECK(script.commands[script.commands.size() - 2].term == phi);
  }
}

TEST_CASE("run_script answers each check-sat") {
  auto r = run(std::string(kHeader) + "(check-sat)(assert (= a (store b i v)))(assert (= (select b i) v))"
                                      "(check-sat)(assert (not (= a b)))(check-sat)(get-model)");
  CHECK(r.code == 0);
  CHECK(r.out == "sat\nsat\nunsat\n(error \"no model available\")\n");

  auto empty = run("(declare-sort I 0)(declare-sort E 0)(declare-const a (Array I E))(check-sat)");
  CHECK(empty.out == "sat\n");
}

TEST_CASE("run_script flags") {
  CliOptions opts;
  opts.dump_lemmas = true;
  opts.stats = true;
  opts.model = true;
  auto r = run(std::string(kHeader) + "(assert (= a (store b i v)))(assert (= (select b i) v))"
                                      "(assert (not (= a b)))(check-sat)",
               opts);
  CHECK(r.out == "unsat\n");
  CHECK(r.err.find("weakeq-ext (or ") == 0);
  CHECK(r.err.find(":weakeq-ext-lemmas 1") != std::string::npos);
  CHECK(r.err.find(":add-store-calls") != std::string::npos);
  CHECK(r.err.find(":edge-inversions") != std::string::npos);
  CHECK(r.err.find(":time") != std::string::npos);

  auto sat = run(std::string(kHeader) + "(define-fun same ((x I)) Bool (= x x))(assert (same i))(check-sat)", opts);
  CHECK(sat.out.find("sat\n(model\n") == 0);
  CHECK(sat.out.find("define-fun x ") == std::string::npos);
  CHECK(sat.out.find("(define-fun a () (Array I E) ") != std::string::npos);
}

TEST_CASE("run_script exit codes") {
  auto bad = run("(assert (= x y))");
  CHECK(bad.code == 1);
  CHECK(bad.err.find("<input>:1:12: unknown symbol 'x'") == 0);
  auto unsupported = run("(declare-sort B 0)(declare-fun a () (Array Bool B))(assert (= a a))(check-sat)");
  CHECK(unsupported.code == 1);

  std::ostringstream out, err;
  const char* argv[] = {"weakarr", "/nonexistent/missing.smt2"};
  CHECK(run_cli(2, argv, out, err) == 1);
  CHECK(err.str().find("cannot open") != std::string::npos);
  const char* bad_flag[] = {"weakarr", "--frobnicate", "x.smt2"};
  std::ostringstream out2, err2;
  CHECK(run_cli(3, bad_flag, out2, err2) == 1);
}
