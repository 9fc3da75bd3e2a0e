#pragma once

// Values, models and evaluation.  Free sorts have an unbounded supply of
// abstract elements; arrays are a default value plus finitely many entries.

#include <compare>
#include <map>
#include <memory>
#include <ostream>
#include <string>
#include <vector>

#include "weakarr/term.hpp"

namespace weakarr {

struct ArrayValue;

class Value {
 public:
  enum class Type : std::uint8_t { Bool, Element, Array };

  Value() = default;
  static Value boolean(bool b);
  static Value element(SortId sort, std::uint32_t id);
  /// Entries equal to the default are dropped, so equal arrays compare equal.
  static Value array(SortId sort, Value default_value, std::map<Value, Value> entries);

  [[nodiscard]] Type type() const { return type_; }
  [[nodiscard]] SortId sort() const { return sort_; }
  [[nodiscard]] bool as_bool() const { return id_ != 0; }
  [[nodiscard]] std::uint32_t element_id() const { return id_; }
  [[nodiscard]] const Value& array_default() const;
  [[nodiscard]] const std::map<Value, Value>& entries() const;

  [[nodiscard]] Value read(const Value& index) const;
  [[nodiscard]] Value write(const Value& index, const Value& v) const;

  friend std::strong_ordering operator<=>(const Value& x, const Value& y);
  friend bool operator==(const Value& x, const Value& y) { return (x <=> y) == 0; }

 private:
  Type type_ = Type::Bool;
  SortId sort_;
  std::uint32_t id_ = 0;
  std::shared_ptr<const ArrayValue> array_;
};

struct ArrayValue {
  Value default_value;
  std::map<Value, Value> entries;
};

struct FunctionTable {
  std::map<std::vector<Value>, Value> entries;
  Value otherwise;
};

class Model {
 public:
  void set_var(TermId var, Value v) { vars_[var] = std::move(v); }
  void set_fun(FunId f, FunctionTable table) { funs_[f] = std::move(table); }

  [[nodiscard]] const Value* var_value(TermId var) const;
  [[nodiscard]] const FunctionTable* fun_table(FunId f) const;
  [[nodiscard]] const std::map<TermId, Value>& vars() const { return vars_; }
  [[nodiscard]] const std::map<FunId, FunctionTable>& funs() const { return funs_; }

 private:
  std::map<TermId, Value> vars_;
  std::map<FunId, FunctionTable> funs_;
};

/// Value of `t` under `model`.  Throws Error if a symbol has no value.
Value evaluate(const TermStore& store, const Model& model, TermId t);

/// SMT-LIB rendering: elements of sorts used as array indices print as
/// `@idx!n`, other elements as `@elem!n`, arrays as a store spine over a
/// constant array.
std::string value_to_string(const TermStore& store, const Value& v);

/// `(model (define-fun ...) ...)` listing every variable and function of the model.
void print_model(std::ostream& os, const TermStore& store, const Model& model);

}  // namespace weakarr
