// Acceptance run: one PASS/FAIL line per criterion, nonzero exit if any fails.

#include <chrono>
#include <cstdio>
#include <iostream>
#include <sstream>

#include "forest_scenario.hpp"
#include "weakarr/lemmas.hpp"
#include "weakarr/oracle.hpp"
#include "weakarr/printer.hpp"
#include "weakarr/solver.hpp"

using namespace weakarr;

namespace {

using Clock = std::chrono::steady_clock;

double since(Clock::time_point t) { return std::chrono::duration<double>(Clock::now() - t).count(); }

struct Outcome {
  bool pass = true;
  std::string detail;

  void fail(const std::string& why) {
    if (pass) detail = why;
    pass = false;
  }
};

void report(int n, const std::string& name, const Outcome& o) {
  std::cout << "criterion " << n << " [" << name << "]: " << (o.pass ? "PASS" : "FAIL") << " - " << o.detail << "\n";
}

struct Corpus {
  std::vector<Status> verdicts;
  std::string lemma_dump;
  Outcome agreement, models, lemmas;
  double seconds = 0;
  std::uint64_t sat = 0, unsat = 0, num_lemmas = 0, num_models = 0;
};

Corpus run_corpus(bool eager) {
  Corpus c;
  auto start = Clock::now();
  for (std::uint64_t seed = 0; seed < 1000; ++seed) {
    TermStore store;
    TermId phi = oracle::generate(store, seed);
    bool expected = oracle::check(store, phi).sat;
    SolverOptions opts;
    opts.eager_selects = eager;
    Verdict v = solve(store, {phi}, opts);
    c.verdicts.push_back(v.status);
    std::string where = "seed " + std::to_string(seed) + ": ";
    if (v.status == Status::Unknown) {
      c.agreement.fail(where + "unknown");
    } else {
      bool sat = v.status == Status::Sat;
      (sat ? c.sat : c.unsat) += 1;
      if (sat != expected) c.agreement.fail(where + "solver " + std::string(status_name(v.status)) + ", oracle " +
                                            (expected ? "sat" : "unsat"));
    }
    if (v.model) {
      ++c.num_models;
      if (!oracle::evaluate(store, *v.model, phi)) c.models.fail(where + "model violates the formula");
    }
    c.lemma_dump += "; seed " + std::to_string(seed) + "\n";
    for (const Lemma& l : v.lemmas) {
      c.lemma_dump += std::string(rule_name(l.rule)) + " " + clause_to_string(store, l.clause) + "\n";
      ++c.num_lemmas;
      std::vector<TermId> negated;
      for (const Literal& lit : l.clause) negated.push_back(lit.positive ? store.mk_not(lit.atom) : lit.atom);
      try {
        if (oracle::check(store, store.mk_and(negated)).sat)
          c.lemmas.fail(where + "invalid lemma " + clause_to_string(store, l.clause));
      } catch (const oracle::CapError& e) {
        c.lemmas.fail(where + "lemma outside oracle caps: " + e.what());
      }
    }
  }
  c.seconds = since(start);
  return c;
}

void fill_details(Corpus& c) {
  std::ostringstream os;
  os << "1000 formulas, " << c.sat << " sat / " << c.unsat << " unsat, " << c.seconds << " s";
  if (c.agreement.pass) c.agreement.detail = os.str();
  if (c.seconds >= 120) c.agreement.fail(os.str() + " exceeds 120 s");
  if (c.models.pass) c.models.detail = std::to_string(c.num_models) + " models evaluated";
  if (c.lemmas.pass) c.lemmas.detail = std::to_string(c.num_lemmas) + " lemmas valid";
}

Outcome forest_scenarios() {
  Outcome o;
  std::uint64_t checks = 0, rebuilds = 0;
  for (std::uint64_t seed = 0; seed < 10000; ++seed) {
    auto r = testing::run_forest_scenario(seed, {20, 30, 5});
    checks += r.checks;
    rebuilds += r.rebuilds;
    if (!r.failure.empty()) o.fail("seed " + std::to_string(seed) + ": " + r.failure);
  }
  if (rebuilds == 0) o.fail("no scenario merged classes");
  if (o.pass) o.detail = "10000 scenarios, " + std::to_string(checks) + " checks, " + std::to_string(rebuilds) + " rebuilds";
  return o;
}

Outcome textbook_regressions() {
  Outcome o;
  TermStore s;
  SortId I = s.free_sort("I");
  SortId E = s.free_sort("E");
  SortId A = s.array_sort(I, E);
  TermId a = s.mk_var("a", A), b = s.mk_var("b", A), c = s.mk_var("c", A);
  TermId d = s.mk_var("d", A), e = s.mk_var("e", A);
  TermId i = s.mk_var("i", I), j = s.mk_var("j", I), k = s.mk_var("k", I);
  TermId v = s.mk_var("v", E), w = s.mk_var("w", E);
  TermId sb = s.mk_store(b, j, v);
  TermId sc = s.mk_store(c, i, w);

  // weak equivalence classes and Stores(P)
  std::vector<Literal> lits{mk_eq_lit(s, a, sb), mk_eq_lit(s, b, sc), mk_eq_lit(s, d, e),
                            mk_eq_lit(s, s.mk_select(c, i), w), mk_eq_lit(s, i, j, false)};
  ProblemInstance problem;
  for (const Literal& l : lits) problem.assertions.push_back(l.atom);
  Preprocessed pre = preprocess(s, problem);
  CongruenceClosure cc(s);
  for (TermId t : pre.assertions) cc.register_term(t);
  for (const Literal& l : lits)
    if (!cc.assert_literal(l).ok) o.fail("example literals conflict");
  WeakEquivalence plain(s, cc, pre.tracked_arrays, pre.stores);
  std::vector<TermId> first{a, b, c, sb, sc};
  std::sort(first.begin(), first.end());
  auto classes = plain.weak_classes();
  if (classes.size() != 2 || classes[0] != first || classes[1] != std::vector{d, e})
    o.fail("weak equivalence classes differ");
  auto stores = path_stores(plain.path(a, c));
  std::sort(stores.begin(), stores.end());
  if (stores != std::vector{i, j}) o.fail("Stores(P) differs from {i, j}");

  // Cond sets, with the idx instances asserted
  for (TermId idx : pre.idx_instances)
    if (!cc.assert_literal({idx, true}).ok) o.fail("idx instance conflicts");
  WeakEquivalence weq(s, cc, pre.tracked_arrays, pre.stores);
  auto sorted = [](std::vector<Literal> x) {
    std::sort(x.begin(), x.end());
    return x;
  };
  auto weak = cond(s, weq, weq.path_mod(a, sc, i), i);
  if (weak != sorted({mk_eq_lit(s, a, sb), mk_eq_lit(s, i, j, false), mk_eq_lit(s, b, sc)}))
    o.fail("Cond(a ~i store(c,i,w)) differs");
  auto cong = cond_weak_cong_i(s, weq, pre.tracked_selects, a, c, i);
  if (!cong || *cong != sorted({mk_eq_lit(s, a, sb), mk_eq_lit(s, i, j, false), mk_eq_lit(s, b, sc),
                                mk_eq_lit(s, s.mk_select(sc, i), s.mk_select(c, i))}))
    o.fail("Cond(a ~=i c) differs");

  // add_store golden
  WeakForest f(8);
  f.add_store(0, 1, i, TermId());
  f.add_store(1, 2, j, TermId());
  f.add_store(2, 3, i, TermId());
  f.add_store(3, 4, k, TermId());
  f.add_store(1, 5, k, TermId());
  f.add_store(0, 6, j, TermId());
  f.add_store(6, 7, k, TermId());
  NodeId before = f.get_rep_i(4, i);
  WeakForest::Node node1 = f.node(1);
  f.add_store(4, 0, k, TermId());
  std::vector<std::pair<NodeId, NodeId>> secondary;
  for (NodeId n = 0; n < f.size(); ++n)
    if (f.node(n).s != kNoNode) secondary.emplace_back(n, f.node(n).s);
  if (secondary != std::vector<std::pair<NodeId, NodeId>>{{2, 0}, {3, 0}}) o.fail("secondary edges differ from {3->0, 2->0}");
  if (f.node(1).p != node1.p || f.node(1).pi != node1.pi || f.node(1).s != node1.s) o.fail("node 1 changed");
  if (before != 3 || f.get_rep_i(4, i) != 0) o.fail("get_rep_i(4, i) does not move from 3 to 0");
  if (o.pass) o.detail = "classes, Stores(P) = {i, j}, both Cond sets, secondary edges {3->0, 2->0}";
  return o;
}

Outcome families() {
  Outcome o;
  double worst = 0;
  unsigned count = 0;
  struct Range {
    oracle::Profile profile;
    unsigned lo, hi;
  };
  for (Range r : {Range{oracle::Profile::Commute, 2, 5}, Range{oracle::Profile::Swap, 1, 5},
                  Range{oracle::Profile::ExtChain, 1, 5}}) {
    for (unsigned n = r.lo; n <= r.hi; ++n) {
      for (bool valid : {true, false}) {
        TermStore store;
        auto inst = oracle::family(store, r.profile, n, valid);
        std::string where = std::string(oracle::profile_name(r.profile)) + " n=" + std::to_string(n) +
                            (valid ? " valid" : " sat variant") + ": ";
        try {
          if (oracle::check(store, inst.formula).sat != inst.expect_sat) o.fail(where + "oracle disagrees with family");
        } catch (const oracle::CapError&) {
        }
        auto start = Clock::now();
        Verdict v = solve(store, {inst.formula});
        double t = since(start);
        worst = std::max(worst, t);
        ++count;
        if (v.status != (inst.expect_sat ? Status::Sat : Status::Unsat))
          o.fail(where + "solver answered " + std::string(status_name(v.status)));
        if (t >= 1.0) o.fail(where + "took " + std::to_string(t) + " s");
      }
    }
  }
  if (o.pass) o.detail = std::to_string(count) + " instances, slowest " + std::to_string(worst) + " s";
  return o;
}

}  // namespace

int main() {
  bool all = true;
  auto note = [&](int n, const std::string& name, const Outcome& o) {
    report(n, name, o);
    all = all && o.pass;
  };

  Corpus lazy = run_corpus(false);
  fill_details(lazy);
  note(1, "differential correctness", lazy.agreement);
  note(2, "model soundness", lazy.models);
  note(3, "lemma validity", lazy.lemmas);
  note(4, "forest oracle equivalence", forest_scenarios());
  note(5, "textbook regressions", textbook_regressions());
  note(6, "benchmark families", families());

  Corpus eager = run_corpus(true);
  fill_details(eager);
  Outcome modes;
  if (!eager.agreement.pass) modes.fail("eager: " + eager.agreement.detail);
  if (!eager.models.pass) modes.fail("eager: " + eager.models.detail);
  if (!eager.lemmas.pass) modes.fail("eager: " + eager.lemmas.detail);
  for (std::size_t k = 0; k < lazy.verdicts.size(); ++k)
    if (eager.verdicts[k] != lazy.verdicts[k]) modes.fail("verdicts differ at seed " + std::to_string(k));
  if (modes.pass)
    modes.detail = "identical verdicts, " + std::to_string(eager.num_models) + " models and " +
                   std::to_string(eager.num_lemmas) + " lemmas checked, " + std::to_string(eager.seconds) + " s";
  note(7, "mode equivalence", modes);

  Corpus again = run_corpus(false);
  Outcome det;
  if (again.verdicts != lazy.verdicts) det.fail("verdicts differ between runs");
  if (again.lemma_dump != lazy.lemma_dump) det.fail("lemma dumps differ between runs");
  if (det.pass) det.detail = "identical verdicts and " + std::to_string(lazy.lemma_dump.size()) + "-byte lemma dump";
  note(8, "determinism", det);

  std::cout << (all ? "all criteria pass" : "some criteria fail") << "\n";
  return all ? 0 : 1;
}
