#include "weakarr/smtlib.hpp"

#include <cctype>
#include <map>
#include <set>
#include <sstream>
#include <unordered_map>

#include "weakarr/printer.hpp"

namespace weakarr::smtlib {

ParseError::ParseError(std::uint32_t line, std::uint32_t column, const std::string& msg)
    : Error(std::to_string(line) + ":" + std::to_string(column) + ": " + msg), line_(line), column_(column) {}

namespace {

struct SExpr {
  enum class Type : std::uint8_t { Symbol, Keyword, String, Numeral, List };
  Type type = Type::List;
  std::string text;
  std::vector<SExpr> items;
  std::uint32_t line = 0, column = 0;

  [[nodiscard]] bool is_symbol(std::string_view s) const { return type == Type::Symbol && text == s; }
};

class Reader {
 public:
  explicit Reader(std::string_view text) : text_(text) {}

  std::vector<SExpr> read_all() {
    std::vector<SExpr> out;
    for (;;) {
      skip_space();
      if (at_ == text_.size()) return out;
      out.push_back(read());
    }
  }

 private:
  [[noreturn]] void fail(const std::string& msg) const { throw ParseError(line_, column_, msg); }

  char peek() const { return text_[at_]; }

  void bump() {
    if (text_[at_] == '\n') {
      ++line_;
      column_ = 1;
    } else {
      ++column_;
    }
    ++at_;
  }

  void skip_space() {
    while (at_ < text_.size()) {
      char c = peek();
      if (c == ';') {
        while (at_ < text_.size() && peek() != '\n') bump();
      } else if (c == ' ' || c == '\t' || c == '\n' || c == '\r') {
        bump();
      } else {
        return;
      }
    }
  }

  static bool symbol_char(char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || std::string_view("~!@$%^&*_-+=<>.?/").find(c) != std::string_view::npos ||
           static_cast<unsigned char>(c) >= 0x80;
  }

  SExpr read() {
    SExpr e;
    e.line = line_;
    e.column = column_;
    char c = peek();
    if (c == '(') {
      bump();
      for (;;) {
        skip_space();
        if (at_ == text_.size()) throw ParseError(e.line, e.column, "unbalanced '('");
        if (peek() == ')') {
          bump();
          return e;
        }
        e.items.push_back(read());
      }
    }
    if (c == ')') fail("unexpected ')'");
    if (c == '|') {
      bump();
      e.type = SExpr::Type::Symbol;
      while (at_ < text_.size() && peek() != '|') {
        e.text += peek();
        bump();
      }
      if (at_ == text_.size()) throw ParseError(e.line, e.column, "unterminated quoted symbol");
      bump();
      return e;
    }
    if (c == '"') {
      bump();
      e.type = SExpr::Type::String;
      for (;;) {
        if (at_ == text_.size()) throw ParseError(e.line, e.column, "unterminated string");
        char d = peek();
        bump();
        if (d == '"') {
          if (at_ < text_.size() && peek() == '"') {
            e.text += '"';
            bump();
            continue;
          }
          return e;
        }
        e.text += d;
      }
    }
    bool keyword = c == ':';
    if (keyword) bump();
    while (at_ < text_.size() && symbol_char(peek())) {
      e.text += peek();
      bump();
    }
    if (e.text.empty()) fail(std::string("unexpected character '") + c + "'");
    if (keyword)
      e.type = SExpr::Type::Keyword;
    else if (std::isdigit(static_cast<unsigned char>(e.text[0])))
      e.type = SExpr::Type::Numeral;
    else
      e.type = SExpr::Type::Symbol;
    return e;
  }

  std::string_view text_;
  std::size_t at_ = 0;
  std::uint32_t line_ = 1, column_ = 1;
};

std::string sexpr_to_string(const SExpr& e) {
  switch (e.type) {
    case SExpr::Type::Symbol: return quote_symbol(e.text);
    case SExpr::Type::Keyword: return ":" + e.text;
    case SExpr::Type::Numeral: return e.text;
    case SExpr::Type::String: {
      std::string out = "\"";
      for (char c : e.text) out += c == '"' ? std::string("\"\"") : std::string(1, c);
      return out + "\"";
    }
    case SExpr::Type::List: {
      std::string out = "(";
      for (std::size_t k = 0; k < e.items.size(); ++k) out += (k ? " " : "") + sexpr_to_string(e.items[k]);
      return out + ")";
    }
  }
  return {};
}

// carries its position already
class PositionedSortError : public SortError {
 public:
  using SortError::SortError;
};

struct Macro {
  std::vector<TermId> params;
  TermId body;
};

class Elaborator {
 public:
  explicit Elaborator(TermStore& store) : store_(store) {}

  Script run(const std::vector<SExpr>& exprs) {
    Script script;
    for (const SExpr& e : exprs) {
      if (e.type != SExpr::Type::List || e.items.empty() || e.items[0].type != SExpr::Type::Symbol)
        fail<ParseError>(e, "expected a command");
      script.commands.push_back(command(e, script.commands.empty()));
    }
    return script;
  }

 private:
  template <class E>
  [[noreturn]] void fail(const SExpr& at, const std::string& msg) const {
    if constexpr (std::is_same_v<E, ParseError>)
      throw ParseError(at.line, at.column, msg);
    else if constexpr (std::is_same_v<E, SortError>)
      throw PositionedSortError(std::to_string(at.line) + ":" + std::to_string(at.column) + ": " + msg);
    else
      throw E(std::to_string(at.line) + ":" + std::to_string(at.column) + ": " + msg);
  }

  void arity(const SExpr& e, std::size_t n) const {
    if (e.items.size() != n + 1)
      fail<ParseError>(e, "'" + e.items[0].text + "' expects " + std::to_string(n) + " argument(s)");
  }

  const std::string& symbol(const SExpr& e) const {
    if (e.type != SExpr::Type::Symbol) fail<ParseError>(e, "expected a symbol");
    return e.text;
  }

  void fresh_name(const SExpr& at, const std::string& name) const {
    if (consts_.contains(name) || funs_.contains(name) || macros_.contains(name) || builtin(name))
      fail<ParseError>(at, "symbol '" + name + "' already declared");
  }

  static bool builtin(std::string_view name) {
    static const std::set<std::string_view> names{"true", "false", "not", "and", "or", "=>", "xor", "=",
                                                  "distinct", "ite", "select", "store", "let", "forall", "exists", "!"};
    return names.contains(name);
  }

  Command command(const SExpr& e, bool first) {
    const std::string& head = e.items[0].text;
    Command c;
    if (head == "set-logic") {
      arity(e, 1);
      if (!first) fail<ParseError>(e, "set-logic must be the first command");
      c.kind = CommandKind::SetLogic;
      c.symbol = symbol(e.items[1]);
      if (c.symbol != "QF_AX" && c.symbol != "QF_AUF" && c.symbol != "ALL")
        fail<UnsupportedError>(e.items[1], "logic " + c.symbol);
    } else if (head == "set-info" || head == "set-option") {
      if (e.items.size() < 2 || e.items[1].type != SExpr::Type::Keyword) fail<ParseError>(e, "expected a keyword");
      if (e.items.size() > 3) fail<ParseError>(e, "'" + head + "' takes one attribute");
      c.kind = head == "set-info" ? CommandKind::SetInfo : CommandKind::SetOption;
      c.symbol = e.items[1].text;
      if (e.items.size() == 3) c.value = sexpr_to_string(e.items[2]);
    } else if (head == "declare-sort") {
      if (e.items.size() != 2 && e.items.size() != 3) fail<ParseError>(e, "'declare-sort' expects a name and an arity");
      c.kind = CommandKind::DeclareSort;
      c.symbol = symbol(e.items[1]);
      if (e.items.size() == 3 && (e.items[2].type != SExpr::Type::Numeral || e.items[2].text != "0"))
        fail<UnsupportedError>(e.items[2], "sort constructors of non-zero arity");
      if (c.symbol == "Bool" || c.symbol == "Array" || sorts_.contains(c.symbol))
        fail<ParseError>(e.items[1], "sort '" + c.symbol + "' already declared");
      sorts_.insert(c.symbol);
      c.sort = store_.free_sort(c.symbol);
    } else if (head == "declare-fun" || head == "declare-const") {
      c.kind = CommandKind::DeclareFun;
      if (head == "declare-fun") {
        arity(e, 3);
        if (e.items[2].type != SExpr::Type::List) fail<ParseError>(e.items[2], "expected a sort list");
        for (const SExpr& s : e.items[2].items) c.args.push_back(sort(s));
        c.sort = sort(e.items[3]);
      } else {
        arity(e, 2);
        c.sort = sort(e.items[2]);
      }
      c.symbol = symbol(e.items[1]);
      fresh_name(e.items[1], c.symbol);
      if (c.args.empty()) {
        c.term = store_.mk_var(c.symbol, c.sort);
        consts_.emplace(c.symbol, c.term);
      } else {
        c.fun = store_.declare_fun(c.symbol, c.args, c.sort);
        funs_.emplace(c.symbol, c.fun);
      }
    } else if (head == "define-fun") {
      arity(e, 4);
      c.kind = CommandKind::DefineFun;
      c.symbol = symbol(e.items[1]);
      fresh_name(e.items[1], c.symbol);
      if (e.items[2].type != SExpr::Type::List) fail<ParseError>(e.items[2], "expected a parameter list");
      std::map<std::string, TermId> scope;
      for (const SExpr& p : e.items[2].items) {
        if (p.type != SExpr::Type::List || p.items.size() != 2) fail<ParseError>(p, "expected (name sort)");
        const std::string& name = symbol(p.items[0]);
        SortId s = sort(p.items[1]);
        TermId v = store_.mk_var(name, s);
        if (!scope.emplace(name, v).second) fail<ParseError>(p, "duplicate parameter '" + name + "'");
        c.args.push_back(s);
        c.params.push_back(v);
      }
      c.sort = sort(e.items[3]);
      scopes_.push_back(std::move(scope));
      c.term = term(e.items[4]);
      scopes_.pop_back();
      if (store_.sort(c.term) != c.sort) fail<SortError>(e.items[4], "body of '" + c.symbol + "' has the wrong sort");
      macros_.emplace(c.symbol, Macro{c.params, c.term});
    } else if (head == "assert") {
      arity(e, 1);
      c.kind = CommandKind::Assert;
      c.term = term(e.items[1]);
      if (!store_.is_bool(store_.sort(c.term))) fail<SortError>(e.items[1], "assertion is not Boolean");
    } else if (head == "check-sat") {
      arity(e, 0);
      c.kind = CommandKind::CheckSat;
    } else if (head == "get-model") {
      arity(e, 0);
      c.kind = CommandKind::GetModel;
    } else if (head == "exit") {
      arity(e, 0);
      c.kind = CommandKind::Exit;
    } else {
      fail<UnsupportedError>(e, "command '" + head + "'");
    }
    return c;
  }

  SortId sort(const SExpr& e) {
    if (e.type == SExpr::Type::Symbol) {
      if (e.text == "Bool") return store_.bool_sort();
      if (!sorts_.contains(e.text)) fail<ParseError>(e, "unknown sort '" + e.text + "'");
      return store_.free_sort(e.text);
    }
    if (e.type == SExpr::Type::List && e.items.size() == 3 && e.items[0].is_symbol("Array"))
      return store_.array_sort(sort(e.items[1]), sort(e.items[2]));
    if (e.type == SExpr::Type::Numeral) fail<UnsupportedError>(e, "indexed or numeric sorts");
    fail<UnsupportedError>(e, "sort " + sexpr_to_string(e));
  }

  TermId lookup(const SExpr& e) {
    for (auto it = scopes_.rbegin(); it != scopes_.rend(); ++it)
      if (auto f = it->find(e.text); f != it->end()) return f->second;
    if (e.text == "true") return store_.mk_true();
    if (e.text == "false") return store_.mk_false();
    if (auto it = consts_.find(e.text); it != consts_.end()) return it->second;
    if (auto it = macros_.find(e.text); it != macros_.end()) {
      if (!it->second.params.empty()) fail<SortError>(e, "'" + e.text + "' expects arguments");
      return it->second.body;
    }
    if (funs_.contains(e.text)) fail<SortError>(e, "'" + e.text + "' expects arguments");
    fail<ParseError>(e, "unknown symbol '" + e.text + "'");
  }

  TermId substitute(TermId t, std::unordered_map<TermId, TermId>& map) {
    if (auto it = map.find(t); it != map.end()) return it->second;
    std::vector<TermId> kids;
    for (TermId c : store_.children(t)) kids.push_back(substitute(c, map));
    TermId r = t;
    switch (store_.kind(t)) {
      case Kind::True:
      case Kind::False:
      case Kind::Var: break;
      case Kind::Apply: r = store_.mk_apply(store_.fun(t), kids); break;
      case Kind::Select: r = store_.mk_select(kids[0], kids[1]); break;
      case Kind::Store: r = store_.mk_store(kids[0], kids[1], kids[2]); break;
      case Kind::Eq: r = store_.mk_eq(kids[0], kids[1]); break;
      case Kind::Not: r = store_.mk_not(kids[0]); break;
      case Kind::And: r = store_.mk_and(kids); break;
      case Kind::Or: r = store_.mk_or(kids); break;
    }
    map.emplace(t, r);
    return r;
  }

  TermId term(const SExpr& e) {
    switch (e.type) {
      case SExpr::Type::Symbol: return lookup(e);
      case SExpr::Type::Numeral: fail<UnsupportedError>(e, "numerals");
      case SExpr::Type::String: fail<UnsupportedError>(e, "string literals");
      case SExpr::Type::Keyword: fail<ParseError>(e, "unexpected keyword");
      case SExpr::Type::List: break;
    }
    if (e.items.empty()) fail<ParseError>(e, "empty term");
    const SExpr& h = e.items[0];
    if (h.type != SExpr::Type::Symbol) fail<UnsupportedError>(h, "qualified identifier " + sexpr_to_string(h));
    const std::string& op = h.text;

    if (op == "forall" || op == "exists") fail<UnsupportedError>(h, "quantifier '" + op + "'");
    if (op == "let") {
      arity(e, 2);
      if (e.items[1].type != SExpr::Type::List) fail<ParseError>(e.items[1], "expected let bindings");
      std::map<std::string, TermId> scope;
      for (const SExpr& b : e.items[1].items) {
        if (b.type != SExpr::Type::List || b.items.size() != 2) fail<ParseError>(b, "expected (name term)");
        if (!scope.emplace(symbol(b.items[0]), term(b.items[1])).second)
          fail<ParseError>(b, "duplicate binding '" + b.items[0].text + "'");
      }
      scopes_.push_back(std::move(scope));
      TermId body = term(e.items[2]);
      scopes_.pop_back();
      return body;
    }
    if (op == "!") {
      if (e.items.size() < 2) fail<ParseError>(e, "annotation without a term");
      return term(e.items[1]);
    }

    std::vector<TermId> args;
    for (std::size_t k = 1; k < e.items.size(); ++k) args.push_back(term(e.items[k]));
    auto at_least = [&](std::size_t n) {
      if (args.size() < n) fail<ParseError>(e, "'" + op + "' expects at least " + std::to_string(n) + " argument(s)");
    };
    try {
      if (op == "not") {
        arity(e, 1);
        return store_.mk_not(args[0]);
      }
      if (op == "and") return store_.mk_and(args);
      if (op == "or") return store_.mk_or(args);
      if (op == "=>") {
        at_least(2);
        TermId r = args.back();
        for (std::size_t k = args.size() - 1; k-- > 0;) r = store_.mk_or({store_.mk_not(args[k]), r});
        return r;
      }
      if (op == "xor") {
        at_least(2);
        TermId r = args[0];
        for (std::size_t k = 1; k < args.size(); ++k) r = store_.mk_not(store_.mk_eq(r, args[k]));
        return r;
      }
      if (op == "=") {
        at_least(2);
        std::vector<TermId> eqs;
        for (std::size_t k = 0; k + 1 < args.size(); ++k) eqs.push_back(store_.mk_eq(args[k], args[k + 1]));
        return store_.mk_and(eqs);
      }
      if (op == "distinct") {
        at_least(2);
        std::vector<TermId> diseqs;
        for (std::size_t x = 0; x < args.size(); ++x)
          for (std::size_t y = x + 1; y < args.size(); ++y) diseqs.push_back(store_.mk_not(store_.mk_eq(args[x], args[y])));
        return store_.mk_and(diseqs);
      }
      if (op == "ite") {
        arity(e, 3);
        if (!store_.is_bool(store_.sort(args[1]))) fail<UnsupportedError>(e, "ite on non-Boolean terms");
        return store_.mk_and({store_.mk_or({store_.mk_not(args[0]), args[1]}), store_.mk_or({args[0], args[2]})});
      }
      if (op == "select") {
        arity(e, 2);
        return store_.mk_select(args[0], args[1]);
      }
      if (op == "store") {
        arity(e, 3);
        return store_.mk_store(args[0], args[1], args[2]);
      }
      if (auto it = funs_.find(op); it != funs_.end()) return store_.mk_apply(it->second, args);
      if (auto it = macros_.find(op); it != macros_.end()) {
        const Macro& m = it->second;
        if (m.params.size() != args.size())
          fail<SortError>(e, "'" + op + "' expects " + std::to_string(m.params.size()) + " argument(s)");
        std::unordered_map<TermId, TermId> map;
        for (std::size_t k = 0; k < args.size(); ++k) {
          if (store_.sort(args[k]) != store_.sort(m.params[k]))
            fail<SortError>(e.items[k + 1], "argument " + std::to_string(k + 1) + " of '" + op + "' has the wrong sort");
          map.emplace(m.params[k], args[k]);
        }
        return substitute(m.body, map);
      }
    } catch (const PositionedSortError&) {
      throw;
    } catch (const SortError& err) {
      fail<SortError>(e, err.what());
    }
    fail<ParseError>(h, "unknown function '" + op + "'");
  }

  TermStore& store_;
  std::set<std::string> sorts_;
  std::map<std::string, TermId> consts_;
  std::map<std::string, FunId> funs_;
  std::map<std::string, Macro> macros_;
  std::vector<std::map<std::string, TermId>> scopes_;
};

}  // namespace

Script parse(TermStore& store, std::string_view text) {
  return Elaborator(store).run(Reader(text).read_all());
}

void print_script(std::ostream& os, const TermStore& store, const Script& script) {
  for (const Command& c : script.commands) {
    switch (c.kind) {
      case CommandKind::SetLogic: os << "(set-logic " << c.symbol << ")\n"; break;
      case CommandKind::SetInfo:
      case CommandKind::SetOption:
        os << (c.kind == CommandKind::SetInfo ? "(set-info :" : "(set-option :") << c.symbol;
        if (!c.value.empty()) os << ' ' << c.value;
        os << ")\n";
        break;
      case CommandKind::DeclareSort: os << "(declare-sort " << quote_symbol(c.symbol) << " 0)\n"; break;
      case CommandKind::DeclareFun:
        os << "(declare-fun " << quote_symbol(c.symbol) << " (";
        for (std::size_t k = 0; k < c.args.size(); ++k) os << (k ? " " : "") << sort_to_string(store, c.args[k]);
        os << ") " << sort_to_string(store, c.sort) << ")\n";
        break;
      case CommandKind::DefineFun:
        os << "(define-fun " << quote_symbol(c.symbol) << " (";
        for (std::size_t k = 0; k < c.params.size(); ++k)
          os << (k ? " " : "") << '(' << quote_symbol(store.name(c.params[k])) << ' ' << sort_to_string(store, c.args[k])
             << ')';
        os << ") " << sort_to_string(store, c.sort) << ' ' << term_to_string(store, c.term) << ")\n";
        break;
      case CommandKind::Assert: os << "(assert " << term_to_string(store, c.term) << ")\n"; break;
      case CommandKind::CheckSat: os << "(check-sat)\n"; break;
      case CommandKind::GetModel: os << "(get-model)\n"; break;
      case CommandKind::Exit: os << "(exit)\n"; break;
    }
  }
}

std::string script_to_string(const TermStore& store, const Script& script) {
  std::ostringstream os;
  print_script(os, store, script);
  return os.str();
}

std::string formula_to_smtlib(const TermStore& store, const std::vector<TermId>& assertions) {
  std::set<SortId> sorts;
  std::set<TermId> vars;
  std::set<FunId> funs;
  for_each_subterm(store, assertions, [&](TermId t) {
    std::vector<SortId> todo{store.sort(t)};
    if (store.kind(t) == Kind::Apply) {
      funs.insert(store.fun(t));
      const FunDecl& d = store.fun_decl(store.fun(t));
      todo.insert(todo.end(), d.args.begin(), d.args.end());
    }
    while (!todo.empty()) {
      SortId s = todo.back();
      todo.pop_back();
      if (store.sort_kind(s) == SortKind::Free) sorts.insert(s);
      if (store.is_array(s)) {
        todo.push_back(store.index_sort(s));
        todo.push_back(store.element_sort(s));
      }
    }
    if (store.kind(t) == Kind::Var) vars.insert(t);
  });
  std::ostringstream os;
  for (SortId s : sorts) os << "(declare-sort " << quote_symbol(store.sort_name(s)) << " 0)\n";
  for (FunId f : funs) {
    const FunDecl& d = store.fun_decl(f);
    os << "(declare-fun " << quote_symbol(d.name) << " (";
    for (std::size_t k = 0; k < d.args.size(); ++k) os << (k ? " " : "") << sort_to_string(store, d.args[k]);
    os << ") " << sort_to_string(store, d.result) << ")\n";
  }
  for (TermId v : vars)
    os << "(declare-fun " << quote_symbol(store.name(v)) << " () " << sort_to_string(store, store.sort(v)) << ")\n";
  for (TermId a : assertions) os << "(assert " << term_to_string(store, a) << ")\n";
  os << "(check-sat)\n";
  return os.str();
}

}  // namespace weakarr::smtlib
