#include <stdexcept>

#include "weakarr/oracle.hpp"
#include "weakarr/printer.hpp"

namespace weakarr::oracle {

namespace {

bool same(const Value& x, const Value& y);

Value read(const Value& a, const Value& i) {
  for (const auto& [k, v] : a.entries())
    if (same(k, i)) return v;
  return a.array_default();
}

bool same(const Value& x, const Value& y) {
  if (x.type() != y.type()) return false;
  switch (x.type()) {
    case Value::Type::Bool: return x.as_bool() == y.as_bool();
    case Value::Type::Element: return x.sort() == y.sort() && x.element_id() == y.element_id();
    case Value::Type::Array:
      // index sorts are unbounded, so some position reads both defaults
      if (!same(x.array_default(), y.array_default())) return false;
      for (const auto& [k, v] : x.entries())
        if (!same(v, read(y, k))) return false;
      for (const auto& [k, v] : y.entries())
        if (!same(read(x, k), v)) return false;
      return true;
  }
  return false;
}

class Evaluator {
 public:
  Evaluator(const TermStore& store, const Model& m) : store_(store), m_(m) {}

  Value eval(TermId t) {
    switch (store_.kind(t)) {
      case Kind::True: return Value::boolean(true);
      case Kind::False: return Value::boolean(false);
      case Kind::Var: {
        const Value* v = m_.var_value(t);
        if (v == nullptr) throw std::invalid_argument("no value for " + term_to_string(store_, t));
        return *v;
      }
      case Kind::Apply: {
        const FunctionTable* table = m_.fun_table(store_.fun(t));
        if (table == nullptr) throw std::invalid_argument("no table for " + term_to_string(store_, t));
        std::vector<Value> args;
        for (TermId c : store_.children(t)) args.push_back(eval(c));
        for (const auto& [key, v] : table->entries) {
          bool match = key.size() == args.size();
          for (std::size_t k = 0; match && k < args.size(); ++k) match = same(key[k], args[k]);
          if (match) return v;
        }
        return table->otherwise;
      }
      case Kind::Select: return read(eval(store_.array_of(t)), eval(store_.index_of(t)));
      case Kind::Store: {
        Value a = eval(store_.array_of(t));
        Value i = eval(store_.index_of(t));
        Value v = eval(store_.value_of(t));
        std::map<Value, Value> entries;
        for (const auto& [k, e] : a.entries())
          if (!same(k, i)) entries.emplace(k, e);
        entries.emplace(i, v);
        return Value::array(store_.sort(t), a.array_default(), std::move(entries));
      }
      case Kind::Eq: return Value::boolean(same(eval(store_.child(t, 0)), eval(store_.child(t, 1))));
      case Kind::Not: return Value::boolean(!eval(store_.child(t, 0)).as_bool());
      case Kind::And:
        for (TermId c : store_.children(t))
          if (!eval(c).as_bool()) return Value::boolean(false);
        return Value::boolean(true);
      case Kind::Or:
        for (TermId c : store_.children(t))
          if (eval(c).as_bool()) return Value::boolean(true);
        return Value::boolean(false);
    }
    throw std::invalid_argument("unknown term kind");
  }

 private:
  const TermStore& store_;
  const Model& m_;
};

}  // namespace

bool evaluate(const TermStore& store, const Model& m, TermId phi) {
  if (!store.is_bool(store.sort(phi))) throw std::invalid_argument("evaluate: formula is not Boolean");
  return Evaluator(store, m).eval(phi).as_bool();
}

}  // namespace weakarr::oracle
