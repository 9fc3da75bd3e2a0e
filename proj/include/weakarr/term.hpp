#pragma once

// Hash-consed sorts and terms for quantifier-free array formulas.

#include <compare>
#include <cstdint>
#include <functional>
#include <limits>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace weakarr {

/// Strongly typed dense index.  Default-constructed ids are invalid.
template <class Tag>
struct Id {
  static constexpr std::uint32_t kInvalid = std::numeric_limits<std::uint32_t>::max();

  std::uint32_t value = kInvalid;

  constexpr Id() = default;
  constexpr explicit Id(std::uint32_t v) : value(v) {}

  [[nodiscard]] constexpr bool valid() const { return value != kInvalid; }
  friend constexpr auto operator<=>(Id, Id) = default;
};

using SortId = Id<struct SortTag>;
using TermId = Id<struct TermTag>;
using FunId = Id<struct FunTag>;

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Ill-sorted term construction.
class SortError : public Error {
 public:
  using Error::Error;
};

/// A construct outside the supported fragment (quantifiers, non-Boolean ite, ...).
class UnsupportedError : public Error {
 public:
  using Error::Error;
};

/// A solver invariant was violated; always a bug.
class InternalError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

enum class SortKind : std::uint8_t { Bool, Free, Array };

enum class Kind : std::uint8_t { True, False, Var, Apply, Select, Store, Eq, Not, And, Or };

std::string_view kind_name(Kind k);

struct FunDecl {
  std::string name;
  std::vector<SortId> args;
  SortId result;
};

/// Owns every sort, function symbol and term of one solving session.
///
/// Structurally identical terms are interned to the same TermId, and term ids
/// grow monotonically, so children always have smaller ids than their parents.
/// Equalities order their two children by id.
class TermStore {
 public:
  TermStore();

  TermStore(const TermStore&) = delete;
  TermStore& operator=(const TermStore&) = delete;
  TermStore(TermStore&&) = default;
  TermStore& operator=(TermStore&&) = default;

  // sorts
  [[nodiscard]] SortId bool_sort() const { return bool_sort_; }
  SortId free_sort(std::string_view name);
  SortId array_sort(SortId index, SortId element);

  [[nodiscard]] SortKind sort_kind(SortId s) const { return sorts_[s.value].kind; }
  [[nodiscard]] bool is_array(SortId s) const { return sort_kind(s) == SortKind::Array; }
  [[nodiscard]] bool is_bool(SortId s) const { return sort_kind(s) == SortKind::Bool; }
  [[nodiscard]] std::string_view sort_name(SortId s) const { return sorts_[s.value].name; }
  [[nodiscard]] SortId index_sort(SortId array) const;
  [[nodiscard]] SortId element_sort(SortId array) const;
  /// Rank in the structural sub-sort order: 0 for Bool and free sorts,
  /// otherwise one more than the maximum rank of the index and element sorts.
  [[nodiscard]] unsigned sort_depth(SortId s) const { return sorts_[s.value].depth; }
  [[nodiscard]] std::size_t num_sorts() const { return sorts_.size(); }

  // function symbols
  FunId declare_fun(std::string_view name, std::vector<SortId> args, SortId result);
  [[nodiscard]] const FunDecl& fun_decl(FunId f) const { return funs_[f.value]; }
  [[nodiscard]] std::size_t num_funs() const { return funs_.size(); }

  // term construction
  [[nodiscard]] TermId mk_true() const { return true_; }
  [[nodiscard]] TermId mk_false() const { return false_; }
  TermId mk_var(std::string_view name, SortId sort);
  TermId mk_apply(FunId f, std::span<const TermId> args);
  TermId mk_select(TermId array, TermId index);
  TermId mk_store(TermId array, TermId index, TermId value);
  TermId mk_eq(TermId lhs, TermId rhs);
  TermId mk_not(TermId arg);
  TermId mk_and(std::span<const TermId> args);
  TermId mk_or(std::span<const TermId> args);
  TermId mk_and(std::initializer_list<TermId> args) { return mk_and(std::span(args.begin(), args.size())); }
  TermId mk_or(std::initializer_list<TermId> args) { return mk_or(std::span(args.begin(), args.size())); }

  // term access
  [[nodiscard]] Kind kind(TermId t) const { return terms_[t.value].kind; }
  [[nodiscard]] SortId sort(TermId t) const { return terms_[t.value].sort; }
  [[nodiscard]] std::span<const TermId> children(TermId t) const;
  [[nodiscard]] TermId child(TermId t, std::size_t i) const { return children(t)[i]; }
  /// Name of a Var.
  [[nodiscard]] std::string_view name(TermId t) const;
  /// Function symbol of an Apply.
  [[nodiscard]] FunId fun(TermId t) const;
  [[nodiscard]] std::size_t num_terms() const { return terms_.size(); }

  // shorthands for array operations
  [[nodiscard]] TermId array_of(TermId select_or_store) const { return child(select_or_store, 0); }
  [[nodiscard]] TermId index_of(TermId select_or_store) const { return child(select_or_store, 1); }
  [[nodiscard]] TermId value_of(TermId store) const { return child(store, 2); }

  [[nodiscard]] bool is_array_term(TermId t) const { return is_array(sort(t)); }
  /// Boolean connective or constant (True, False, Not, And, Or) or equality.
  [[nodiscard]] bool is_formula_node(TermId t) const;

 private:
  struct SortData {
    SortKind kind;
    std::string name;
    SortId index;
    SortId element;
    unsigned depth = 0;
  };
  struct TermData {
    Kind kind;
    SortId sort;
    std::uint32_t payload;  // name id for Var, fun id for Apply
    std::uint32_t first_child;
    std::uint32_t num_children;
  };
  struct Key {
    Kind kind;
    std::uint32_t payload;
    SortId sort;
    std::vector<TermId> children;
    bool operator==(const Key&) const = default;
  };
  struct KeyHash {
    std::size_t operator()(const Key& k) const noexcept;
  };

  TermId intern(Kind kind, SortId sort, std::uint32_t payload, std::span<const TermId> children);
  std::uint32_t intern_name(std::string_view name);
  void check_bool(TermId t, std::string_view where) const;

  std::vector<SortData> sorts_;
  std::unordered_map<std::string, SortId> free_sorts_;
  std::unordered_map<std::uint64_t, SortId> array_sorts_;
  SortId bool_sort_;

  std::vector<FunDecl> funs_;
  std::unordered_map<std::string, FunId> fun_index_;

  std::vector<std::string> names_;
  std::unordered_map<std::string, std::uint32_t> name_index_;

  std::vector<TermData> terms_;
  std::vector<TermId> child_pool_;
  std::unordered_map<Key, TermId, KeyHash> table_;
  TermId true_;
  TermId false_;
};

/// Visits every subterm of `roots` exactly once, children before parents.
void for_each_subterm(const TermStore& store, std::span<const TermId> roots,
                      const std::function<void(TermId)>& visit);

}  // namespace weakarr

template <class Tag>
struct std::hash<weakarr::Id<Tag>> {
  std::size_t operator()(weakarr::Id<Tag> id) const noexcept { return std::hash<std::uint32_t>{}(id.value); }
};
