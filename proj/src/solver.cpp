#include "weakarr/solver.hpp"

#include <chrono>
#include <map>

#include "weakarr/printer.hpp"
#include "weakarr/sat.hpp"

namespace weakarr {

namespace {

using sat::Lit;

class Encoder {
 public:
  Encoder(TermStore& store, sat::Solver& solver) : store_(store), solver_(solver) {
    true_var_ = solver_.new_var();
    solver_.add_clause({Lit::make(true_var_)});
  }

  Lit atom_lit(TermId atom) {
    auto it = atom_var_.find(atom);
    if (it != atom_var_.end()) return Lit::make(it->second);
    sat::Var v = solver_.new_var();
    atom_var_.emplace(atom, v);
    if (var_atom_.size() <= v) var_atom_.resize(v + 1);
    var_atom_[v] = atom;
    return Lit::make(v);
  }

  Lit literal(const Literal& l) { return l.positive ? atom_lit(l.atom) : ~atom_lit(l.atom); }

  [[nodiscard]] TermId atom_of(sat::Var v) const { return v < var_atom_.size() ? var_atom_[v] : TermId(); }
  [[nodiscard]] std::size_t num_atoms() const { return atom_var_.size(); }

  Lit encode(TermId root) {
    for_each_subterm(store_, std::span(&root, 1), [&](TermId t) {
      if (cache_.contains(t) || !store_.is_bool(store_.sort(t))) return;
      cache_.emplace(t, encode_node(t));
    });
    return cache_.at(root);
  }

  void assert_formula(TermId t) {
    if (store_.kind(t) == Kind::And) {
      for (TermId c : store_.children(t)) assert_formula(c);
      return;
    }
    solver_.add_clause({encode(t)});
  }

 private:
  Lit encode_node(TermId t) {
    auto kid = [&](std::size_t k) { return cache_.at(store_.child(t, k)); };
    switch (store_.kind(t)) {
      case Kind::True: return Lit::make(true_var_);
      case Kind::False: return ~Lit::make(true_var_);
      case Kind::Not: return ~kid(0);
      case Kind::And:
      case Kind::Or: {
        bool is_and = store_.kind(t) == Kind::And;
        Lit x = Lit::make(solver_.new_var());
        std::vector<Lit> big{is_and ? x : ~x};
        for (std::size_t k = 0; k < store_.children(t).size(); ++k) {
          Lit c = kid(k);
          if (is_and) {
            solver_.add_clause({~x, c});
            big.push_back(~c);
          } else {
            solver_.add_clause({x, ~c});
            big.push_back(c);
          }
        }
        solver_.add_clause(big);
        return x;
      }
      case Kind::Eq:
        if (store_.is_bool(store_.sort(store_.child(t, 0)))) {
          Lit x = Lit::make(solver_.new_var());
          Lit a = kid(0);
          Lit b = kid(1);
          solver_.add_clause({~x, ~a, b});
          solver_.add_clause({~x, a, ~b});
          solver_.add_clause({x, a, b});
          solver_.add_clause({x, ~a, ~b});
          return x;
        }
        return atom_lit(t);
      default:
        return atom_lit(t);
    }
  }

  TermStore& store_;
  sat::Solver& solver_;
  sat::Var true_var_;
  std::map<TermId, Lit> cache_;
  std::map<TermId, sat::Var> atom_var_;
  std::vector<TermId> var_atom_;
};

class ArrayTheory final : public sat::Theory {
 public:
  ArrayTheory(TermStore& store, const Preprocessed& pre, const SolverOptions& options, Encoder& encoder,
              Verdict& verdict)
      : store_(store), pre_(pre), options_(options), encoder_(encoder), verdict_(verdict), euf_(store) {
    for (TermId t : pre.assertions) euf_.register_term(t);
    for (TermId s : pre.tracked_selects) euf_.register_term(s);
  }

  void push() override { euf_.push(); }
  void pop(unsigned levels) override { euf_.pop(levels); }

  bool assign(Lit lit, std::vector<Lit>& conflict) override {
    TermId atom = encoder_.atom_of(lit.var());
    if (!atom.valid()) return true;
    auto r = euf_.assert_literal({atom, !lit.negated()});
    if (r.ok) return true;
    for (const Literal& l : r.conflict) conflict.push_back(~encoder_.literal(l));
    return false;
  }

  void final_check(std::vector<std::vector<Lit>>& clauses) override {
    WeakEquivalence weq(store_, euf_, pre_.tracked_arrays, pre_.stores);
    verdict_.stats.add_store_calls += weq.forest().counters().add_store_calls;
    verdict_.stats.edge_inversions += weq.forest().counters().inversions;
    std::vector<Lemma> lemmas = gen_read_over_weakeq(store_, weq, pre_.tracked_selects);
    if (lemmas.empty()) lemmas = gen_weakeq_ext(store_, weq, pre_.tracked_selects);
    if (lemmas.empty()) {
      model_ = build_model(store_, euf_, weq, pre_, !options_.eager_selects);
      return;
    }
    for (Lemma& lemma : lemmas) {
      std::vector<Lit> clause;
      for (const Literal& l : lemma.clause) clause.push_back(encoder_.literal(l));
      clauses.push_back(std::move(clause));
      (lemma.rule == Rule::ReadOverWeakeq ? verdict_.stats.read_over_weakeq : verdict_.stats.weakeq_ext) += 1;
      verdict_.lemmas.push_back(std::move(lemma));
    }
  }

  std::optional<Model>& model() { return model_; }

 private:
  TermStore& store_;
  const Preprocessed& pre_;
  const SolverOptions& options_;
  Encoder& encoder_;
  Verdict& verdict_;
  CongruenceClosure euf_;
  std::optional<Model> model_;
};

void check_fragment(const TermStore& store, const std::vector<TermId>& assertions) {
  for_each_subterm(store, assertions, [&](TermId t) {
    SortId sort = store.sort(t);
    if (store.is_array(sort)) {
      if (store.sort_kind(store.index_sort(sort)) != SortKind::Free)
        throw UnsupportedError("array index sort must be a declared sort: " + term_to_string(store, t));
      if (store.is_bool(store.element_sort(sort)))
        throw UnsupportedError("Boolean array elements: " + term_to_string(store, t));
    }
    if (store.kind(t) == Kind::Apply)
      for (TermId c : store.children(t))
        if (store.is_bool(store.sort(c))) throw UnsupportedError("Boolean function argument: " + term_to_string(store, t));
  });
}

}  // namespace

std::string_view status_name(Status s) {
  switch (s) {
    case Status::Sat: return "sat";
    case Status::Unsat: return "unsat";
    case Status::Unknown: return "unknown";
  }
  return "?";
}

Verdict solve(TermStore& store, const std::vector<TermId>& assertions, const SolverOptions& options) {
  auto start = std::chrono::steady_clock::now();
  Verdict verdict;

  check_fragment(store, assertions);
  ProblemInstance problem;
  problem.eager_selects = options.eager_selects;
  for (TermId a : assertions) {
    if (!store.is_bool(store.sort(a))) throw SortError("assertion is not Boolean: " + term_to_string(store, a));
    problem.assertions.push_back(simplify(store, a));
  }
  Preprocessed pre = preprocess(store, problem);

  sat::Solver solver(options.seed);
  Encoder encoder(store, solver);
  for (TermId a : pre.assertions) encoder.assert_formula(a);

  // every pair of index terms gets an atom so index disequalities are decided
  std::vector<TermId> indices;
  for (TermId s : pre.tracked_selects) indices.push_back(store.index_of(s));
  for (TermId s : pre.stores) indices.push_back(store.index_of(s));
  std::sort(indices.begin(), indices.end());
  indices.erase(std::unique(indices.begin(), indices.end()), indices.end());
  for (std::size_t x = 0; x < indices.size(); ++x)
    for (std::size_t y = x + 1; y < indices.size(); ++y)
      if (store.sort(indices[x]) == store.sort(indices[y])) encoder.atom_lit(store.mk_eq(indices[x], indices[y]));

  ArrayTheory theory(store, pre, options, encoder, verdict);
  switch (solver.solve(theory, options.max_steps)) {
    case sat::Solver::Result::Sat: {
      verdict.status = Status::Sat;
      verdict.model = std::move(theory.model());
      if (!verdict.model) throw InternalError("satisfiable search ended without a model");
      for (TermId a : assertions)
        if (!evaluate(store, *verdict.model, a).as_bool())
          throw InternalError("model violates assertion " + term_to_string(store, a));
      break;
    }
    case sat::Solver::Result::Unsat: verdict.status = Status::Unsat; break;
    case sat::Solver::Result::Unknown:
      verdict.status = Status::Unknown;
      verdict.reason = "step limit";
      break;
  }

  const auto& st = solver.stats();
  verdict.stats.final_checks = st.final_checks;
  verdict.stats.decisions = st.decisions;
  verdict.stats.conflicts = st.conflicts;
  verdict.stats.theory_conflicts = st.theory_conflicts;
  verdict.stats.atoms = encoder.num_atoms();
  verdict.stats.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return verdict;
}

}  // namespace weakarr
