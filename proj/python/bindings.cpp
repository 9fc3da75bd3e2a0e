#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "weakarr/cli.hpp"
#include "weakarr/literal.hpp"
#include "weakarr/model.hpp"
#include "weakarr/oracle.hpp"
#include "weakarr/smtlib.hpp"
#include "weakarr/solver.hpp"

namespace py = pybind11;
using namespace weakarr;

namespace {

py::dict stats_dict(const Stats& s) {
  py::dict d;
  d["read_over_weakeq_lemmas"] = s.read_over_weakeq;
  d["weakeq_ext_lemmas"] = s.weakeq_ext;
  d["add_store_calls"] = s.add_store_calls;
  d["edge_inversions"] = s.edge_inversions;
  d["final_checks"] = s.final_checks;
  d["decisions"] = s.decisions;
  d["conflicts"] = s.conflicts;
  d["atoms"] = s.atoms;
  d["seconds"] = s.seconds;
  return d;
}

// One dict per check-sat in the script.
py::list solve_script(const std::string& text, bool eager_selects, std::uint64_t seed) {
  TermStore store;
  smtlib::Script script = smtlib::parse(store, text);
  SolverOptions options;
  options.eager_selects = eager_selects;
  options.seed = seed;
  std::vector<TermId> assertions;
  py::list results;
  for (const smtlib::Command& c : script.commands) {
    if (c.kind == smtlib::CommandKind::Exit) break;
    if (c.kind == smtlib::CommandKind::Assert) assertions.push_back(c.term);
    if (c.kind != smtlib::CommandKind::CheckSat) continue;
    Verdict v = solve(store, assertions, options);
    py::dict r;
    r["status"] = std::string(status_name(v.status));
    py::list lemmas;
    for (const Lemma& l : v.lemmas)
      lemmas.append(py::make_tuple(std::string(rule_name(l.rule)), clause_to_string(store, l.clause)));
    r["lemmas"] = lemmas;
    if (v.model) {
      std::ostringstream os;
      print_model(os, store, *v.model);
      r["model"] = os.str();
    } else {
      r["model"] = py::none();
    }
    r["stats"] = stats_dict(v.stats);
    results.append(r);
  }
  return results;
}

TermId conjunction(TermStore& store, const std::string& text) {
  std::vector<TermId> assertions;
  for (const smtlib::Command& c : smtlib::parse(store, text).commands)
    if (c.kind == smtlib::CommandKind::Assert) assertions.push_back(c.term);
  return store.mk_and(assertions);
}

oracle::Profile profile_of(const std::string& name) {
  auto p = oracle::parse_profile(name);
  if (!p) throw py::value_error("unknown profile '" + name + "'");
  return *p;
}

}  // namespace

PYBIND11_MODULE(_weakarr, m) {
  m.doc() = "Decision procedure for quantifier-free extensional arrays";

  // later registrations are tried first, so the base class goes first
  auto base = py::register_exception<Error>(m, "Error", PyExc_RuntimeError);
  py::register_exception<smtlib::ParseError>(m, "ParseError", base.ptr());
  py::register_exception<UnsupportedError>(m, "UnsupportedError", base.ptr());
  py::register_exception<oracle::CapError>(m, "CapError", PyExc_ValueError);

  m.def("solve", &solve_script, py::arg("text"), py::arg("eager_selects") = false, py::arg("seed") = 0,
        "Solve an SMT-LIB script; returns one result dict per check-sat.");

  m.def(
      "run",
      [](const std::string& text, bool eager_selects, bool dump_lemmas, bool model, bool stats, std::uint64_t seed) {
        CliOptions opts{eager_selects, dump_lemmas, model, stats, seed};
        std::ostringstream out, err;
        int code = run_script(text, opts, out, err);
        return py::make_tuple(code, out.str(), err.str());
      },
      py::arg("text"), py::arg("eager_selects") = false, py::arg("dump_lemmas") = false, py::arg("model") = false,
      py::arg("stats") = false, py::arg("seed") = 0, "Run a script like the weakarr CLI; returns (code, stdout, stderr).");

  m.def(
      "oracle_check",
      [](const std::string& text) {
        TermStore store;
        return oracle::check(store, conjunction(store, text)).sat;
      },
      py::arg("text"), "Decide the conjunction of the script's assertions by finite model enumeration.");

  m.def(
      "generate",
      [](std::uint64_t seed) {
        TermStore store;
        TermId phi = oracle::generate(store, seed);
        return smtlib::formula_to_smtlib(store, {phi});
      },
      py::arg("seed"), "Random tiny formula as an SMT-LIB script.");

  m.def(
      "family",
      [](const std::string& profile, unsigned n, bool valid) {
        TermStore store;
        auto inst = oracle::family(store, profile_of(profile), n, valid);
        return py::make_tuple(smtlib::formula_to_smtlib(store, {inst.formula}), inst.expect_sat);
      },
      py::arg("profile"), py::arg("n"), py::arg("valid") = true,
      "Benchmark family instance; returns (script, expect_sat).");
}
