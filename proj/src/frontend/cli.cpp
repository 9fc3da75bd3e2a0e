#include "weakarr/cli.hpp"

#include <CLI11.hpp>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>

#include "weakarr/smtlib.hpp"
#include "weakarr/solver.hpp"

namespace weakarr {

namespace {

void print_stats(std::ostream& err, const Stats& s) {
  err << "(:read-over-weakeq-lemmas " << s.read_over_weakeq << "\n :weakeq-ext-lemmas " << s.weakeq_ext
      << "\n :add-store-calls " << s.add_store_calls << "\n :edge-inversions " << s.edge_inversions
      << "\n :final-checks " << s.final_checks << "\n :decisions " << s.decisions << "\n :conflicts " << s.conflicts
      << "\n :atoms " << s.atoms << "\n :time " << std::fixed << std::setprecision(3) << s.seconds
      << std::defaultfloat << ")\n";
}

// only symbols the script declared, not macro parameters
Model declared_part(const smtlib::Script& script, const Model& m) {
  Model out;
  for (const smtlib::Command& c : script.commands) {
    if (c.kind != smtlib::CommandKind::DeclareFun) continue;
    if (c.args.empty()) {
      if (const Value* v = m.var_value(c.term)) out.set_var(c.term, *v);
    } else if (const FunctionTable* t = m.fun_table(c.fun)) {
      out.set_fun(c.fun, *t);
    }
  }
  return out;
}

}  // namespace

int run_script(std::string_view text, const CliOptions& options, std::ostream& out, std::ostream& err,
               std::string_view filename) {
  TermStore store;
  smtlib::Script script;
  try {
    script = smtlib::parse(store, text);
  } catch (const Error& e) {
    err << filename << ":" << e.what() << "\n";
    return 1;
  }

  SolverOptions solver_options;
  solver_options.eager_selects = options.eager_selects;
  solver_options.seed = options.seed;
  std::vector<TermId> assertions;
  std::optional<Model> model;
  try {
    for (const smtlib::Command& c : script.commands) {
      switch (c.kind) {
        case smtlib::CommandKind::Assert: assertions.push_back(c.term); break;
        case smtlib::CommandKind::CheckSat: {
          Verdict v = solve(store, assertions, solver_options);
          out << status_name(v.status) << "\n";
          if (options.dump_lemmas)
            for (const Lemma& l : v.lemmas) err << rule_name(l.rule) << ' ' << clause_to_string(store, l.clause) << "\n";
          if (options.stats) {
            if (!v.reason.empty()) err << "; " << v.reason << "\n";
            print_stats(err, v.stats);
          }
          model.reset();
          if (v.model) model = declared_part(script, *v.model);
          if (options.model && model) print_model(out, store, *model);
          break;
        }
        case smtlib::CommandKind::GetModel:
          if (model)
            print_model(out, store, *model);
          else
            out << "(error \"no model available\")\n";
          break;
        case smtlib::CommandKind::Exit: return 0;
        default: break;
      }
      out.flush();
    }
  } catch (const Error& e) {
    err << filename << ": " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    err << filename << ": internal error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Decision procedure for quantifier-free extensional arrays", "weakarr"};
  CliOptions options;
  std::string file;
  app.add_flag("--eager-selects", options.eager_selects, "add select(a,i) for every store(a,i,v) in a's class");
  app.add_flag("--dump-lemmas", options.dump_lemmas, "print instantiated lemmas to stderr");
  app.add_flag("--model", options.model, "print a model after every sat answer");
  app.add_flag("--stats", options.stats, "print statistics to stderr");
  app.add_option("--seed", options.seed, "initial phase seed");
  app.add_option("FILE", file, "SMT-LIB script")->required();
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, out, err);
    return code == 0 ? 0 : 1;
  }
  std::ifstream in(file, std::ios::binary);
  if (!in) {
    err << "weakarr: cannot open " << file << "\n";
    return 1;
  }
  std::stringstream buf;
  buf << in.rdbuf();
  return run_script(buf.str(), options, out, err, file);
}

}  // namespace weakarr
