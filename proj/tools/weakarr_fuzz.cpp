// Differential fuzzing of the solver against the enumeration oracle.

#include <CLI11.hpp>
#include <chrono>
#include <iostream>

#include "weakarr/oracle.hpp"
#include "weakarr/printer.hpp"
#include "weakarr/smtlib.hpp"
#include "weakarr/solver.hpp"

using namespace weakarr;

namespace {

struct Tally {
  std::uint64_t sat = 0, unsat = 0, lemmas = 0, unchecked = 0;
};

bool disagree(const TermStore& store, TermId phi, const std::string& what) {
  std::cerr << "disagreement: " << what << "\n";
  std::cout << smtlib::formula_to_smtlib(store, {phi});
  return false;
}

// false on the first disagreement
bool run_one(TermStore& store, TermId phi, std::optional<bool> expect_sat, const SolverOptions& options,
             Tally& tally) {
  std::optional<bool> oracle_sat;
  try {
    oracle_sat = oracle::check(store, phi).sat;
  } catch (const oracle::CapError&) {
    ++tally.unchecked;
  }
  if (expect_sat && oracle_sat && *expect_sat != *oracle_sat)
    return disagree(store, phi, "oracle contradicts the family's expected verdict");
  if (!expect_sat) expect_sat = oracle_sat;

  Verdict v = solve(store, {phi}, options);
  if (v.status == Status::Unknown) return disagree(store, phi, "solver answered unknown (" + v.reason + ")");
  bool sat = v.status == Status::Sat;
  (sat ? tally.sat : tally.unsat) += 1;
  if (expect_sat && sat != *expect_sat)
    return disagree(store, phi, std::string("solver says ") + (sat ? "sat" : "unsat") + ", expected " +
                                    (*expect_sat ? "sat" : "unsat"));
  if (v.model && !oracle::evaluate(store, *v.model, phi)) return disagree(store, phi, "model violates the formula");
  for (const Lemma& l : v.lemmas) {
    std::vector<TermId> negated;
    for (const Literal& lit : l.clause) negated.push_back(lit.positive ? store.mk_not(lit.atom) : lit.atom);
    try {
      if (oracle::check(store, store.mk_and(negated)).sat)
        return disagree(store, phi, "invalid lemma " + clause_to_string(store, l.clause));
      ++tally.lemmas;
    } catch (const oracle::CapError&) {
      ++tally.unchecked;
    }
  }
  return true;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Differential fuzzing against a brute-force oracle", "weakarr-fuzz"};
  std::uint64_t count = 100, seed = 0;
  std::string profile_name = "tiny";
  SolverOptions options;
  app.add_option("--count", count, "number of formulas (family size limit for families)")->required();
  app.add_option("--seed", seed, "first seed")->required();
  app.add_option("--profile", profile_name, "tiny, commute, swap or ext-chain");
  app.add_flag("--eager-selects", options.eager_selects, "solve with eager select instantiation");
  CLI11_PARSE(app, argc, argv);
  auto profile = oracle::parse_profile(profile_name);
  if (!profile) {
    std::cerr << "weakarr-fuzz: unknown profile " << profile_name << "\n";
    return 2;
  }

  auto start = std::chrono::steady_clock::now();
  Tally tally;
  std::uint64_t formulas = 0;
  try {
    if (*profile == oracle::Profile::Tiny) {
      for (std::uint64_t s = seed; s < seed + count; ++s, ++formulas) {
        TermStore store;
        TermId phi = oracle::generate(store, s);
        options.seed = s;
        if (!run_one(store, phi, std::nullopt, options, tally)) {
          std::cerr << "seed " << s << "\n";
          return 1;
        }
      }
    } else {
      unsigned first = *profile == oracle::Profile::Commute ? 2 : 1;
      for (unsigned n = first; n < first + count; ++n) {
        for (bool valid : {true, false}) {
          TermStore store;
          auto inst = oracle::family(store, *profile, n, valid);
          ++formulas;
          if (!run_one(store, inst.formula, inst.expect_sat, options, tally)) {
            std::cerr << profile_name << " n=" << n << "\n";
            return 1;
          }
        }
      }
    }
  } catch (const std::exception& e) {
    std::cerr << "weakarr-fuzz: " << e.what() << "\n";
    return 2;
  }
  double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  std::cout << formulas << " formulas agree (" << tally.sat << " sat, " << tally.unsat << " unsat), " << tally.lemmas
            << " lemmas validated, " << tally.unchecked << " oracle checks over caps, " << secs << " s\n";
  return 0;
}
