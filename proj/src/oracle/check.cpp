#include <algorithm>
#include <map>
#include <set>

#include "weakarr/oracle.hpp"

namespace weakarr::oracle {

namespace {

struct Scan {
  std::vector<TermId> terms;
  std::set<SortId> index_sorts;
  std::set<SortId> element_sorts;
  std::map<SortId, std::uint32_t> terms_of_sort;
  unsigned array_vars = 0, array_terms = 0, index_terms = 0, element_terms = 0, stores = 0;
};

Scan scan(const TermStore& store, TermId phi) {
  Scan s;
  for_each_subterm(store, std::span(&phi, 1), [&](TermId t) { s.terms.push_back(t); });
  // classify by the signature so sub-formulas without arrays count the same way
  for (std::uint32_t k = 0; k < store.num_sorts(); ++k) {
    SortId sort(k);
    if (!store.is_array(sort)) continue;
    s.index_sorts.insert(store.index_sort(sort));
    s.element_sorts.insert(store.element_sort(sort));
  }
  for (TermId t : s.terms) {
    SortId sort = store.sort(t);
    if (store.is_array(sort)) {
      ++s.array_terms;
      if (store.kind(t) == Kind::Var) ++s.array_vars;
      if (store.kind(t) == Kind::Store) ++s.stores;
    } else if (store.sort_kind(sort) == SortKind::Free) {
      ++s.terms_of_sort[sort];
      if (s.index_sorts.contains(sort))
        ++s.index_terms;
      else if (store.kind(t) != Kind::Select)
        ++s.element_terms;
    }
  }
  return s;
}

void require_fragment(const TermStore& store, const Scan& s) {
  for (SortId e : s.element_sorts) {
    if (store.sort_kind(e) != SortKind::Free) throw CapError("oracle: array elements must have a free sort");
    if (s.index_sorts.contains(e)) throw CapError("oracle: a sort is used both as index and as element");
  }
  for (SortId i : s.index_sorts)
    if (store.sort_kind(i) != SortKind::Free) throw CapError("oracle: array indices must have a free sort");
  for (TermId t : s.terms) {
    if (store.kind(t) != Kind::Apply) continue;
    const FunDecl& d = store.fun_decl(store.fun(t));
    if (store.is_array(d.result)) throw CapError("oracle: array-valued function " + d.name);
    for (SortId a : d.args)
      if (store.is_array(a)) throw CapError("oracle: function over arrays " + d.name);
  }
}

std::map<SortId, std::uint32_t> sort_bounds(const Scan& s) {
  std::map<SortId, std::uint32_t> b;
  for (SortId sort : s.index_sorts) b[sort] = s.array_terms + 1;
  for (SortId sort : s.element_sorts) b[sort] = s.array_terms + 2;
  for (const auto& [sort, n] : s.terms_of_sort)
    b[sort] = n + (s.index_sorts.contains(sort) ? s.array_terms + 1 : s.array_terms + 2);
  return b;
}

Bounds summarize(const Scan& s, const std::map<SortId, std::uint32_t>& bounds) {
  Bounds out;
  for (const auto& [sort, n] : bounds) {
    auto& slot = s.index_sorts.contains(sort) ? out.index_carrier : out.element_carrier;
    slot = std::max(slot, n);
  }
  return out;
}

struct ArrayVal {
  TermId base;
  std::map<std::uint32_t, std::uint32_t> writes;
};

class Enumerator {
 public:
  Enumerator(const TermStore& store, TermId phi, const Scan& s, std::uint64_t budget)
      : store_(store), phi_(phi), scan_(s), budget_(budget), bound_(sort_bounds(s)) {
    for (TermId t : s.terms)
      if (s.index_sorts.contains(store.sort(t))) index_terms_.push_back(t);
    stamp_.assign(store.num_terms(), 0);
    scalar_.resize(store.num_terms());
    array_.resize(store.num_terms());
  }

  CheckResult run() {
    CheckResult result;
    result.bounds = summarize(scan_, bound_);
    for (;;) {
      if (++result.interpretations > budget_) throw CapError("oracle: enumeration budget exhausted");
      reset();
      for (TermId t : index_terms_) (void)scalar(t);
      if (scalar(phi_)) {
        result.sat = true;
        result.witness = witness();
        if (!oracle::evaluate(store_, *result.witness, phi_))
          throw std::logic_error("oracle: witness does not satisfy formula");
        return result;
      }
      if (!advance()) return result;
    }
  }

 private:
  void reset() {
    ++run_;
    pos_ = 0;
    used_.clear();
    anon_used_.clear();
    entries_.clear();
    tables_.clear();
    anon_.clear();
  }

  std::uint32_t choose(std::uint32_t options) {
    if (pos_ < trail_.size()) return trail_[pos_++].first;
    trail_.emplace_back(0, options);
    ++pos_;
    return 0;
  }

  bool advance() {
    trail_.resize(pos_);
    while (!trail_.empty()) {
      auto& [c, n] = trail_.back();
      if (c + 1 < n) {
        ++c;
        return true;
      }
      trail_.pop_back();
    }
    return false;
  }

  // values are 0..used-1; choosing `used` opens the next carrier element
  std::uint32_t choose_value(SortId sort) {
    if (store_.is_bool(sort)) return choose(2);
    std::uint32_t& used = used_[sort];
    std::uint32_t c = choose(std::min(used + 1, bound_.at(sort)));
    if (c == used) ++used;
    return c;
  }

  std::uint32_t read(const ArrayVal& a, std::uint32_t x) {
    if (auto it = a.writes.find(x); it != a.writes.end()) return it->second;
    auto key = std::pair{a.base, x};
    if (auto it = entries_.find(key); it != entries_.end()) return it->second;
    std::uint32_t v = choose_value(store_.element_sort(store_.sort(a.base)));
    entries_.emplace(key, v);
    return v;
  }

  std::uint32_t anon_class(TermId var) {
    if (auto it = anon_.find(var); it != anon_.end()) return it->second;
    SortId sort = store_.sort(var);
    std::uint32_t& used = anon_used_[sort];
    std::uint32_t c = choose(std::min(used + 1, bound_.at(store_.element_sort(sort))));
    if (c == used) ++used;
    anon_.emplace(var, c);
    return c;
  }

  bool arrays_equal(const ArrayVal& a, const ArrayVal& b) {
    std::uint32_t named = used_[store_.index_sort(store_.sort(a.base))];
    for (std::uint32_t x = 0; x < named; ++x)
      if (read(a, x) != read(b, x)) return false;
    return a.base == b.base || anon_class(a.base) == anon_class(b.base);
  }

  const ArrayVal& array(TermId t) {
    if (stamp_[t.value] == run_) return array_[t.value];
    ArrayVal v;
    if (store_.kind(t) == Kind::Var) {
      v.base = t;
    } else if (store_.kind(t) == Kind::Store) {
      v = array(store_.array_of(t));
      std::uint32_t x = scalar(store_.index_of(t));
      v.writes[x] = scalar(store_.value_of(t));
    } else {
      throw CapError("oracle: unsupported array term");
    }
    stamp_[t.value] = run_;
    return array_[t.value] = std::move(v);
  }

  std::uint32_t scalar(TermId t) {
    if (stamp_[t.value] == run_) return scalar_[t.value];
    std::uint32_t v = 0;
    switch (store_.kind(t)) {
      case Kind::True: v = 1; break;
      case Kind::False: v = 0; break;
      case Kind::Var: v = choose_value(store_.sort(t)); break;
      case Kind::Apply: {
        std::vector<std::uint32_t> args;
        for (TermId c : store_.children(t)) args.push_back(scalar(c));
        auto key = std::pair{store_.fun(t), std::move(args)};
        auto it = tables_.find(key);
        if (it == tables_.end()) it = tables_.emplace(std::move(key), choose_value(store_.sort(t))).first;
        v = it->second;
        break;
      }
      case Kind::Select: {
        ArrayVal a = array(store_.array_of(t));
        v = read(a, scalar(store_.index_of(t)));
        break;
      }
      case Kind::Eq: {
        TermId l = store_.child(t, 0), r = store_.child(t, 1);
        if (store_.is_array_term(l)) {
          ArrayVal a = array(l);
          v = arrays_equal(a, array(r));
        } else {
          v = scalar(l) == scalar(r);
        }
        break;
      }
      case Kind::Not: v = !scalar(store_.child(t, 0)); break;
      case Kind::And:
        v = 1;
        for (TermId c : store_.children(t))
          if (!scalar(c)) {
            v = 0;
            break;
          }
        break;
      case Kind::Or:
        for (TermId c : store_.children(t))
          if (scalar(c)) {
            v = 1;
            break;
          }
        break;
      case Kind::Store: throw CapError("oracle: store used as a scalar");
    }
    stamp_[t.value] = run_;
    return scalar_[t.value] = v;
  }

  Value scalar_value(SortId sort, std::uint32_t v) const {
    return store_.is_bool(sort) ? Value::boolean(v != 0) : Value::element(sort, v);
  }

  Model witness() {
    Model m;
    // anonymous positions hold one value per agreement class, above the chosen ones
    std::map<TermId, std::uint32_t> extra_class;
    for (TermId t : scan_.terms) {
      if (store_.kind(t) == Kind::Var && store_.is_array_term(t) && !anon_.contains(t)) {
        std::uint32_t& used = anon_used_[store_.sort(t)];
        anon_.emplace(t, used++);
      }
    }
    for (TermId t : scan_.terms) {
      if (store_.kind(t) != Kind::Var) continue;
      SortId sort = store_.sort(t);
      if (store_.is_array(sort)) {
        SortId idx = store_.index_sort(sort), elem = store_.element_sort(sort);
        Value def = Value::element(elem, used_[elem] + anon_.at(t));
        std::map<Value, Value> entries;
        for (std::uint32_t x = 0; x < used_[idx]; ++x) {
          auto it = entries_.find({t, x});
          if (it != entries_.end()) entries.emplace(Value::element(idx, x), Value::element(elem, it->second));
        }
        m.set_var(t, Value::array(sort, def, std::move(entries)));
      } else {
        m.set_var(t, scalar_value(sort, stamp_[t.value] == run_ ? scalar_[t.value] : 0));
      }
    }
    std::map<FunId, FunctionTable> funs;
    for (TermId t : scan_.terms) {
      if (store_.kind(t) != Kind::Apply) continue;
      const FunDecl& d = store_.fun_decl(store_.fun(t));
      funs[store_.fun(t)].otherwise = scalar_value(d.result, 0);
    }
    for (const auto& [key, v] : tables_) {
      const FunDecl& d = store_.fun_decl(key.first);
      std::vector<Value> args;
      for (std::size_t k = 0; k < key.second.size(); ++k) args.push_back(scalar_value(d.args[k], key.second[k]));
      funs[key.first].entries.emplace(std::move(args), scalar_value(d.result, v));
    }
    for (auto& [f, table] : funs) m.set_fun(f, std::move(table));
    return m;
  }

  const TermStore& store_;
  TermId phi_;
  const Scan& scan_;
  std::uint64_t budget_;
  std::map<SortId, std::uint32_t> bound_;
  std::vector<TermId> index_terms_;

  std::vector<std::pair<std::uint32_t, std::uint32_t>> trail_;
  std::size_t pos_ = 0;

  std::uint32_t run_ = 0;
  std::vector<std::uint32_t> stamp_;
  std::vector<std::uint32_t> scalar_;
  std::vector<ArrayVal> array_;
  std::map<SortId, std::uint32_t> used_;
  std::map<SortId, std::uint32_t> anon_used_;
  std::map<std::pair<TermId, std::uint32_t>, std::uint32_t> entries_;
  std::map<std::pair<FunId, std::vector<std::uint32_t>>, std::uint32_t> tables_;
  std::map<TermId, std::uint32_t> anon_;
};

}  // namespace

Bounds carrier_bounds(const TermStore& store, TermId phi) {
  Scan s = scan(store, phi);
  return summarize(s, sort_bounds(s));
}

CheckResult check(const TermStore& store, TermId phi, const Caps& caps) {
  if (!store.is_bool(store.sort(phi))) throw std::invalid_argument("oracle: formula is not Boolean");
  Scan s = scan(store, phi);
  require_fragment(store, s);
  if (s.array_vars > caps.arrays || s.index_terms > caps.index_terms || s.element_terms > caps.element_terms ||
      s.stores > caps.stores)
    throw CapError("oracle: instance exceeds caps (" + std::to_string(s.array_vars) + " arrays, " +
                   std::to_string(s.index_terms) + " index terms, " + std::to_string(s.element_terms) +
                   " element terms, " + std::to_string(s.stores) + " stores)");
  return Enumerator(store, phi, s, caps.max_interpretations).run();
}

}  // namespace weakarr::oracle
