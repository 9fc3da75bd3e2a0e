#include "weakarr/model.hpp"

#include <algorithm>
#include <sstream>

#include "weakarr/printer.hpp"

namespace weakarr {

namespace {

const std::map<Value, Value> kNoEntries;

bool is_index_sort(const TermStore& store, SortId s) {
  for (std::uint32_t k = 0; k < store.num_sorts(); ++k) {
    SortId a(k);
    if (store.is_array(a) && store.index_sort(a) == s) return true;
  }
  return false;
}

}  // namespace

Value Value::boolean(bool b) {
  Value v;
  v.type_ = Type::Bool;
  v.id_ = b ? 1 : 0;
  return v;
}

Value Value::element(SortId sort, std::uint32_t id) {
  Value v;
  v.type_ = Type::Element;
  v.sort_ = sort;
  v.id_ = id;
  return v;
}

Value Value::array(SortId sort, Value default_value, std::map<Value, Value> entries) {
  std::erase_if(entries, [&](const auto& kv) { return kv.second == default_value; });
  Value v;
  v.type_ = Type::Array;
  v.sort_ = sort;
  v.array_ = std::make_shared<const ArrayValue>(ArrayValue{std::move(default_value), std::move(entries)});
  return v;
}

const Value& Value::array_default() const {
  if (type_ != Type::Array) throw std::logic_error("not an array value");
  return array_->default_value;
}

const std::map<Value, Value>& Value::entries() const {
  return type_ == Type::Array ? array_->entries : kNoEntries;
}

Value Value::read(const Value& index) const {
  const auto& e = entries();
  auto it = e.find(index);
  return it == e.end() ? array_default() : it->second;
}

Value Value::write(const Value& index, const Value& v) const {
  std::map<Value, Value> e = entries();
  e[index] = v;
  return array(sort_, array_default(), std::move(e));
}

std::strong_ordering operator<=>(const Value& x, const Value& y) {
  if (auto c = x.type_ <=> y.type_; c != 0) return c;
  if (auto c = x.sort_ <=> y.sort_; c != 0) return c;
  if (x.type_ != Value::Type::Array) return x.id_ <=> y.id_;
  if (x.array_ == y.array_) return std::strong_ordering::equal;
  if (auto c = x.array_->default_value <=> y.array_->default_value; c != 0) return c;
  const auto& ex = x.array_->entries;
  const auto& ey = y.array_->entries;
  return std::lexicographical_compare_three_way(ex.begin(), ex.end(), ey.begin(), ey.end(),
                                                [](const auto& p, const auto& q) {
                                                  if (auto c = p.first <=> q.first; c != 0) return c;
                                                  return p.second <=> q.second;
                                                });
}

const Value* Model::var_value(TermId var) const {
  auto it = vars_.find(var);
  return it == vars_.end() ? nullptr : &it->second;
}

const FunctionTable* Model::fun_table(FunId f) const {
  auto it = funs_.find(f);
  return it == funs_.end() ? nullptr : &it->second;
}

Value evaluate(const TermStore& store, const Model& model, TermId t) {
  std::map<TermId, Value> memo;
  std::vector<TermId> roots{t};
  for_each_subterm(store, roots, [&](TermId u) {
    auto arg = [&](std::size_t k) -> const Value& { return memo.at(store.child(u, k)); };
    Value v;
    switch (store.kind(u)) {
      case Kind::True: v = Value::boolean(true); break;
      case Kind::False: v = Value::boolean(false); break;
      case Kind::Var: {
        const Value* x = model.var_value(u);
        if (!x) throw Error("model has no value for " + std::string(store.name(u)));
        v = *x;
        break;
      }
      case Kind::Apply: {
        const FunctionTable* table = model.fun_table(store.fun(u));
        if (!table) throw Error("model has no interpretation for " + store.fun_decl(store.fun(u)).name);
        std::vector<Value> args;
        for (std::size_t k = 0; k < store.children(u).size(); ++k) args.push_back(arg(k));
        auto it = table->entries.find(args);
        v = it == table->entries.end() ? table->otherwise : it->second;
        break;
      }
      case Kind::Select: v = arg(0).read(arg(1)); break;
      case Kind::Store: v = arg(0).write(arg(1), arg(2)); break;
      case Kind::Eq: v = Value::boolean(arg(0) == arg(1)); break;
      case Kind::Not: v = Value::boolean(!arg(0).as_bool()); break;
      case Kind::And: {
        bool all = true;
        for (std::size_t k = 0; k < store.children(u).size(); ++k) all = all && arg(k).as_bool();
        v = Value::boolean(all);
        break;
      }
      case Kind::Or: {
        bool any = false;
        for (std::size_t k = 0; k < store.children(u).size(); ++k) any = any || arg(k).as_bool();
        v = Value::boolean(any);
        break;
      }
    }
    memo.emplace(u, std::move(v));
  });
  return memo.at(t);
}

std::string value_to_string(const TermStore& store, const Value& v) {
  switch (v.type()) {
    case Value::Type::Bool: return v.as_bool() ? "true" : "false";
    case Value::Type::Element:
      return (is_index_sort(store, v.sort()) ? "@idx!" : "@elem!") + std::to_string(v.element_id());
    case Value::Type::Array: {
      std::string out = "((as const " + sort_to_string(store, v.sort()) + ") " +
                        value_to_string(store, v.array_default()) + ")";
      for (const auto& [idx, val] : v.entries())
        out = "(store " + out + " " + value_to_string(store, idx) + " " + value_to_string(store, val) + ")";
      return out;
    }
  }
  return "?";
}

void print_model(std::ostream& os, const TermStore& store, const Model& model) {
  auto sort_of = [&](const Value& v) { return v.type() == Value::Type::Bool ? store.bool_sort() : v.sort(); };
  os << "(model\n";
  for (const auto& [var, value] : model.vars())
    os << "  (define-fun " << quote_symbol(store.name(var)) << " () " << sort_to_string(store, sort_of(value)) << ' '
       << value_to_string(store, value) << ")\n";
  for (const auto& [f, table] : model.funs()) {
    const FunDecl& d = store.fun_decl(f);
    os << "  (define-fun " << quote_symbol(d.name) << " (";
    for (std::size_t k = 0; k < d.args.size(); ++k)
      os << (k ? " " : "") << "(x!" << k << ' ' << sort_to_string(store, d.args[k]) << ')';
    os << ") " << sort_to_string(store, d.result) << ' ';
    std::string body = value_to_string(store, table.otherwise);
    for (auto it = table.entries.rbegin(); it != table.entries.rend(); ++it) {
      std::string guard;
      for (std::size_t k = 0; k < it->first.size(); ++k)
        guard += " (= x!" + std::to_string(k) + " " + value_to_string(store, it->first[k]) + ")";
      if (it->first.size() > 1) guard = "(and" + guard + ")";
      else guard = guard.substr(1);
      body = "(ite " + guard + " " + value_to_string(store, it->second) + " " + body + ")";
    }
    os << body << ")\n";
  }
  os << ")\n";
}

}  // namespace weakarr
