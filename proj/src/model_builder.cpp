#include <algorithm>
#include <map>
#include <set>

#include "weakarr/printer.hpp"
#include "weakarr/solver.hpp"

namespace weakarr {

namespace {

class ModelBuilder {
 public:
  ModelBuilder(TermStore& store, const CongruenceClosure& euf, const WeakEquivalence& weq, const Preprocessed& pre,
               bool restricted)
      : store_(store), euf_(euf), weq_(weq), pre_(pre), restricted_(restricted) {}

  Model run() {
    for (TermId t : euf_.registered_terms()) {
      if (store_.sort_kind(store_.sort(t)) != SortKind::Free) continue;
      TermId root = euf_.find(t);
      if (!values_.contains(root)) values_.emplace(root, fresh(store_.sort(t)));
    }

    std::set<std::pair<unsigned, SortId>> array_sorts;
    for (TermId a : weq_.arrays()) array_sorts.insert({store_.sort_depth(store_.sort(a)), store_.sort(a)});
    for (const auto& [depth, sort] : array_sorts) build_sort(sort);

    Model model;
    for (std::uint32_t k = 0; k < store_.num_terms(); ++k) {
      TermId t(k);
      if (store_.kind(t) != Kind::Var) continue;
      model.set_var(t, euf_.is_registered(t) ? value_of(t) : fresh(store_.sort(t)));
    }
    std::map<FunId, FunctionTable> tables;
    for (TermId t : euf_.registered_terms()) {
      if (store_.kind(t) != Kind::Apply) continue;
      std::vector<Value> args;
      for (TermId c : store_.children(t)) args.push_back(value_of(c));
      tables[store_.fun(t)].entries.emplace(std::move(args), value_of(t));
    }
    for (std::uint32_t k = 0; k < store_.num_funs(); ++k) {
      FunId f(k);
      FunctionTable& table = tables[f];
      table.otherwise = fresh(store_.fun_decl(f).result);
      model.set_fun(f, std::move(table));
    }
    return model;
  }

 private:
  Value fresh(SortId sort) {
    switch (store_.sort_kind(sort)) {
      case SortKind::Bool: return Value::boolean(false);
      case SortKind::Free: return Value::element(sort, next_element_++);
      case SortKind::Array: return Value::array(sort, fresh(store_.element_sort(sort)), {});
    }
    return {};
  }

  Value value_of(TermId t) {
    if (store_.is_bool(store_.sort(t))) return Value::boolean(euf_.are_equal(t, store_.mk_true()));
    auto it = values_.find(euf_.find(t));
    if (it == values_.end()) throw InternalError("no model value for " + term_to_string(store_, t));
    return it->second;
  }

  void build_sort(SortId sort) {
    const WeakForest& forest = weq_.forest();
    SortId elem = store_.element_sort(sort);
    Value v1 = fresh(elem);
    Value v2 = fresh(elem);
    std::map<NodeId, Value> weak_fresh;
    std::map<std::pair<NodeId, TermId>, Value> mod_i_fresh;

    for (const auto& terms : weq_.node_terms()) {
      TermId a = terms.front();
      if (store_.sort(a) != sort) continue;
      NodeId node = weq_.node_of(a);
      std::map<Value, Value> entries;

      for (TermId s : pre_.tracked_selects) {
        TermId b = store_.array_of(s);
        if (store_.sort(b) != sort) continue;
        TermId i = store_.index_of(s);
        if (!weq_.weakly_equal_mod(a, b, i)) continue;
        Value idx = value_of(i);
        Value val = value_of(s);
        auto [it, inserted] = entries.emplace(idx, val);
        if (!inserted && it->second != val)
          throw InternalError("selects " + term_to_string(store_, s) + " disagree under a saturated arrangement");
      }

      NodeId rep = forest.get_rep(node);
      if (restricted_) {
        for (TermId st : weq_.stores()) {
          if (store_.sort(st) != sort || forest.get_rep(weq_.node_of(st)) != rep) continue;
          TermId i = store_.index_of(st);
          Value idx = value_of(i);
          if (entries.contains(idx)) continue;
          auto key = std::pair{forest.get_rep_i(node, i), euf_.find(i)};
          auto it = mod_i_fresh.find(key);
          if (it == mod_i_fresh.end()) it = mod_i_fresh.emplace(key, fresh(elem)).first;
          entries.emplace(idx, it->second);
        }
      }

      auto wit = weak_fresh.find(rep);
      if (wit == weak_fresh.end()) wit = weak_fresh.emplace(rep, fresh(store_.index_sort(sort))).first;
      entries.emplace(wit->second, v2);

      Value value = Value::array(sort, v1, std::move(entries));
      for (TermId t : terms) values_.insert_or_assign(euf_.find(t), value);
    }
  }

  TermStore& store_;
  const CongruenceClosure& euf_;
  const WeakEquivalence& weq_;
  const Preprocessed& pre_;
  bool restricted_;
  std::map<TermId, Value> values_;
  std::uint32_t next_element_ = 0;
};

}  // namespace

Model build_model(TermStore& store, const CongruenceClosure& euf, const WeakEquivalence& weq,
                  const Preprocessed& pre, bool restricted) {
  return ModelBuilder(store, euf, weq, pre, restricted).run();
}

}  // namespace weakarr
