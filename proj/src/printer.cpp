#include "weakarr/printer.hpp"

#include "weakarr/literal.hpp"

#include <cctype>
#include <sstream>

namespace weakarr {

namespace {

bool is_simple_symbol(std::string_view s) {
  static constexpr std::string_view kExtra = "~!@$%^&*_-+=<>.?/";
  if (s.empty() || std::isdigit(static_cast<unsigned char>(s[0]))) return false;
  for (char c : s) {
    if (std::isalnum(static_cast<unsigned char>(c))) continue;
    if (kExtra.find(c) == std::string_view::npos) return false;
  }
  return true;
}

}  // namespace

std::string quote_symbol(std::string_view name) {
  if (is_simple_symbol(name)) return std::string(name);
  return "|" + std::string(name) + "|";
}

std::string sort_to_string(const TermStore& store, SortId sort) {
  switch (store.sort_kind(sort)) {
    case SortKind::Bool: return "Bool";
    case SortKind::Free: return quote_symbol(store.sort_name(sort));
    case SortKind::Array:
      return "(Array " + sort_to_string(store, store.index_sort(sort)) + " " +
             sort_to_string(store, store.element_sort(sort)) + ")";
  }
  return "?";
}

void print_term(std::ostream& os, const TermStore& store, TermId t) {
  switch (store.kind(t)) {
    case Kind::True: os << "true"; return;
    case Kind::False: os << "false"; return;
    case Kind::Var: os << quote_symbol(store.name(t)); return;
    case Kind::Apply: {
      const FunDecl& d = store.fun_decl(store.fun(t));
      os << '(' << quote_symbol(d.name);
      for (TermId c : store.children(t)) {
        os << ' ';
        print_term(os, store, c);
      }
      os << ')';
      return;
    }
    default: break;
  }
  os << '(' << kind_name(store.kind(t));
  for (TermId c : store.children(t)) {
    os << ' ';
    print_term(os, store, c);
  }
  os << ')';
}

std::string term_to_string(const TermStore& store, TermId term) {
  std::ostringstream os;
  print_term(os, store, term);
  return os.str();
}

std::string literal_to_string(const TermStore& store, const Literal& lit) {
  std::string atom = term_to_string(store, lit.atom);
  return lit.positive ? atom : "(not " + atom + ")";
}

std::string clause_to_string(const TermStore& store, const std::vector<Literal>& lits) {
  std::string out = "(or";
  for (const Literal& l : lits) out += " " + literal_to_string(store, l);
  return out + ")";
}

}  // namespace weakarr
