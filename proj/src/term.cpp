#include "weakarr/term.hpp"

#include <algorithm>
#include <cassert>

namespace weakarr {

std::string_view kind_name(Kind k) {
  switch (k) {
    case Kind::True: return "true";
    case Kind::False: return "false";
    case Kind::Var: return "var";
    case Kind::Apply: return "apply";
    case Kind::Select: return "select";
    case Kind::Store: return "store";
    case Kind::Eq: return "=";
    case Kind::Not: return "not";
    case Kind::And: return "and";
    case Kind::Or: return "or";
  }
  return "?";
}

std::size_t TermStore::KeyHash::operator()(const Key& k) const noexcept {
  std::size_t h = static_cast<std::size_t>(k.kind) * 0x9e3779b97f4a7c15ULL;
  h ^= k.payload + 0x9e3779b9 + (h << 6) + (h >> 2);
  h ^= k.sort.value + 0x9e3779b9 + (h << 6) + (h >> 2);
  for (TermId c : k.children) h ^= c.value + 0x9e3779b9 + (h << 6) + (h >> 2);
  return h;
}

TermStore::TermStore() {
  sorts_.push_back({SortKind::Bool, "Bool", {}, {}, 0});
  bool_sort_ = SortId(0);
  true_ = intern(Kind::True, bool_sort_, 0, {});
  false_ = intern(Kind::False, bool_sort_, 0, {});
}

SortId TermStore::free_sort(std::string_view name) {
  std::string key(name);
  if (key == "Bool") return bool_sort_;
  if (auto it = free_sorts_.find(key); it != free_sorts_.end()) return it->second;
  SortId id(static_cast<std::uint32_t>(sorts_.size()));
  sorts_.push_back({SortKind::Free, key, {}, {}, 0});
  free_sorts_.emplace(std::move(key), id);
  return id;
}

SortId TermStore::array_sort(SortId index, SortId element) {
  if (index.value >= sorts_.size() || element.value >= sorts_.size())
    throw SortError("array sort built from an unknown sort");
  std::uint64_t key = (static_cast<std::uint64_t>(index.value) << 32) | element.value;
  if (auto it = array_sorts_.find(key); it != array_sorts_.end()) return it->second;
  SortId id(static_cast<std::uint32_t>(sorts_.size()));
  std::string name = "(Array " + sorts_[index.value].name + " " + sorts_[element.value].name + ")";
  unsigned depth = 1 + std::max(sorts_[index.value].depth, sorts_[element.value].depth);
  sorts_.push_back({SortKind::Array, std::move(name), index, element, depth});
  array_sorts_.emplace(key, id);
  return id;
}

SortId TermStore::index_sort(SortId array) const {
  assert(is_array(array));
  return sorts_[array.value].index;
}

SortId TermStore::element_sort(SortId array) const {
  assert(is_array(array));
  return sorts_[array.value].element;
}

FunId TermStore::declare_fun(std::string_view name, std::vector<SortId> args, SortId result) {
  std::string key(name);
  if (auto it = fun_index_.find(key); it != fun_index_.end()) {
    const FunDecl& d = funs_[it->second.value];
    if (d.args != args || d.result != result)
      throw SortError("function '" + key + "' redeclared with a different signature");
    return it->second;
  }
  FunId id(static_cast<std::uint32_t>(funs_.size()));
  funs_.push_back({key, std::move(args), result});
  fun_index_.emplace(std::move(key), id);
  return id;
}

std::uint32_t TermStore::intern_name(std::string_view name) {
  std::string key(name);
  if (auto it = name_index_.find(key); it != name_index_.end()) return it->second;
  auto id = static_cast<std::uint32_t>(names_.size());
  names_.push_back(key);
  name_index_.emplace(std::move(key), id);
  return id;
}

TermId TermStore::intern(Kind kind, SortId sort, std::uint32_t payload, std::span<const TermId> children) {
  Key key{kind, payload, sort, std::vector<TermId>(children.begin(), children.end())};
  if (auto it = table_.find(key); it != table_.end()) return it->second;
  TermId id(static_cast<std::uint32_t>(terms_.size()));
  terms_.push_back({kind, sort, payload, static_cast<std::uint32_t>(child_pool_.size()),
                    static_cast<std::uint32_t>(children.size())});
  child_pool_.insert(child_pool_.end(), children.begin(), children.end());
  table_.emplace(std::move(key), id);
  return id;
}

std::span<const TermId> TermStore::children(TermId t) const {
  const TermData& d = terms_[t.value];
  return {child_pool_.data() + d.first_child, d.num_children};
}

std::string_view TermStore::name(TermId t) const {
  assert(kind(t) == Kind::Var);
  return names_[terms_[t.value].payload];
}

FunId TermStore::fun(TermId t) const {
  assert(kind(t) == Kind::Apply);
  return FunId(terms_[t.value].payload);
}

bool TermStore::is_formula_node(TermId t) const {
  switch (kind(t)) {
    case Kind::True:
    case Kind::False:
    case Kind::Eq:
    case Kind::Not:
    case Kind::And:
    case Kind::Or:
      return true;
    default:
      return false;
  }
}

TermId TermStore::mk_var(std::string_view name, SortId sort) {
  if (sort.value >= sorts_.size()) throw SortError("variable '" + std::string(name) + "' has an unknown sort");
  return intern(Kind::Var, sort, intern_name(name), {});
}

TermId TermStore::mk_apply(FunId f, std::span<const TermId> args) {
  const FunDecl& d = funs_.at(f.value);
  if (args.size() != d.args.size())
    throw SortError("'" + d.name + "' expects " + std::to_string(d.args.size()) + " arguments, got " +
                    std::to_string(args.size()));
  for (std::size_t k = 0; k < args.size(); ++k) {
    if (sort(args[k]) != d.args[k])
      throw SortError("'" + d.name + "' argument " + std::to_string(k + 1) + " has sort " +
                      std::string(sort_name(sort(args[k]))) + ", expected " + std::string(sort_name(d.args[k])));
  }
  return intern(Kind::Apply, d.result, f.value, args);
}

TermId TermStore::mk_select(TermId array, TermId index) {
  SortId as = sort(array);
  if (!is_array(as))
    throw SortError("select: array argument has non-array sort " + std::string(sort_name(as)));
  if (sort(index) != index_sort(as))
    throw SortError("select: index argument has sort " + std::string(sort_name(sort(index))) + ", expected " +
                    std::string(sort_name(index_sort(as))));
  const TermId kids[] = {array, index};
  return intern(Kind::Select, element_sort(as), 0, kids);
}

TermId TermStore::mk_store(TermId array, TermId index, TermId value) {
  SortId as = sort(array);
  if (!is_array(as))
    throw SortError("store: array argument has non-array sort " + std::string(sort_name(as)));
  if (sort(index) != index_sort(as))
    throw SortError("store: index argument has sort " + std::string(sort_name(sort(index))) + ", expected " +
                    std::string(sort_name(index_sort(as))));
  if (sort(value) != element_sort(as))
    throw SortError("store: value argument has sort " + std::string(sort_name(sort(value))) + ", expected " +
                    std::string(sort_name(element_sort(as))));
  const TermId kids[] = {array, index, value};
  return intern(Kind::Store, as, 0, kids);
}

TermId TermStore::mk_eq(TermId lhs, TermId rhs) {
  if (sort(lhs) != sort(rhs))
    throw SortError("=: operands have sorts " + std::string(sort_name(sort(lhs))) + " and " +
                    std::string(sort_name(sort(rhs))));
  if (rhs < lhs) std::swap(lhs, rhs);
  const TermId kids[] = {lhs, rhs};
  return intern(Kind::Eq, bool_sort_, 0, kids);
}

void TermStore::check_bool(TermId t, std::string_view where) const {
  if (!is_bool(sort(t)))
    throw SortError(std::string(where) + ": operand has sort " + std::string(sort_name(sort(t))) + ", expected Bool");
}

TermId TermStore::mk_not(TermId arg) {
  check_bool(arg, "not");
  const TermId kids[] = {arg};
  return intern(Kind::Not, bool_sort_, 0, kids);
}

TermId TermStore::mk_and(std::span<const TermId> args) {
  for (TermId a : args) check_bool(a, "and");
  if (args.empty()) return true_;
  if (args.size() == 1) return args[0];
  return intern(Kind::And, bool_sort_, 0, args);
}

TermId TermStore::mk_or(std::span<const TermId> args) {
  for (TermId a : args) check_bool(a, "or");
  if (args.empty()) return false_;
  if (args.size() == 1) return args[0];
  return intern(Kind::Or, bool_sort_, 0, args);
}

void for_each_subterm(const TermStore& store, std::span<const TermId> roots,
                      const std::function<void(TermId)>& visit) {
  std::vector<char> seen(store.num_terms(), 0);
  std::vector<std::pair<TermId, bool>> stack;
  for (TermId r : roots) stack.emplace_back(r, false);
  while (!stack.empty()) {
    auto [t, expanded] = stack.back();
    stack.pop_back();
    if (expanded) {
      visit(t);
      continue;
    }
    if (seen[t.value]) continue;
    seen[t.value] = 1;
    stack.emplace_back(t, true);
    auto kids = store.children(t);
    for (auto it = kids.rbegin(); it != kids.rend(); ++it)
      if (!seen[it->value]) stack.emplace_back(*it, false);
  }
}

}  // namespace weakarr
