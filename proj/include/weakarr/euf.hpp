#pragma once

// Backtrackable congruence closure with proof-forest explanations.

#include <cstdint>
#include <optional>
#include <unordered_map>
#include <vector>

#include "weakarr/literal.hpp"
#include "weakarr/term.hpp"

namespace weakarr {

class CongruenceClosure {
 public:
  struct Result {
    bool ok = true;
    /// Asserted literals whose conjunction is unsatisfiable in EUF; empty when ok.
    std::vector<Literal> conflict;
  };

  explicit CongruenceClosure(const TermStore& store);

  /// Registers `t` and all its non-Boolean-connective subterms.  Only allowed
  /// at decision level 0; congruences among registered terms are merged at once.
  void register_term(TermId t);
  [[nodiscard]] bool is_registered(TermId t) const {
    return t.value < nodes_.size() && nodes_[t.value].registered;
  }

  /// Asserts an equality atom (either polarity) or a Boolean-sorted
  /// uninterpreted term, which is merged with true or false.
  Result assert_literal(const Literal& lit);

  [[nodiscard]] TermId find(TermId t) const { return nodes_[t.value].root; }
  [[nodiscard]] bool are_equal(TermId s, TermId t) const { return find(s) == find(t); }
  /// True if a stored disequality separates the classes of s and t.
  [[nodiscard]] bool are_diseq(TermId s, TermId t) const;
  /// Asserted literals entailing s = t.  Throws std::invalid_argument if s and t
  /// are not in the same class.
  [[nodiscard]] std::vector<Literal> explain(TermId s, TermId t) const;
  [[nodiscard]] bool is_asserted(const Literal& lit) const;
  [[nodiscard]] bool in_conflict() const { return conflict_.has_value(); }

  void push();
  void pop(unsigned levels = 1);
  [[nodiscard]] unsigned level() const { return static_cast<unsigned>(levels_.size()); }

  /// Registered terms in increasing id order.
  [[nodiscard]] const std::vector<TermId>& registered_terms() const { return registered_; }
  [[nodiscard]] std::uint64_t num_merges() const { return num_merges_; }

 private:
  struct Node {
    bool registered = false;
    TermId root;
    TermId next;
    std::uint32_t size = 1;
    std::vector<TermId> uses;
    TermId proof_parent;
    std::uint32_t proof_edge = 0;
  };
  struct ProofEdge {
    bool congruence;
    Literal reason;
    TermId lhs;
    TermId rhs;
  };
  struct Diseq {
    TermId lhs;
    TermId rhs;
    std::optional<Literal> reason;
  };
  enum class Op : std::uint8_t { Merge, Diseq, Asserted };
  struct TrailEntry {
    Op op;
    TermId small;
    TermId large;
    std::uint32_t old_uses = 0;
    std::uint64_t lit_key = 0;
  };
  struct Pending {
    TermId lhs;
    TermId rhs;
    bool congruence;
    Literal reason;
  };

  static std::uint64_t key(const Literal& l) { return (static_cast<std::uint64_t>(l.atom.value) << 1) | l.positive; }

  void ensure_node(TermId t);
  [[nodiscard]] bool is_app(TermId t) const;
  [[nodiscard]] bool congruent(TermId u, TermId w) const;
  void merge(TermId a, TermId b, bool congruence, Literal reason);
  void reroot(TermId t);
  void undo(const TrailEntry& e);
  void check_diseqs();
  void set_conflict(std::vector<Literal> lits);

  const TermStore& store_;
  std::vector<Node> nodes_;
  std::vector<TermId> registered_;
  std::vector<ProofEdge> edges_;
  std::vector<Diseq> diseqs_;
  std::unordered_map<std::uint64_t, unsigned> asserted_;
  std::vector<TrailEntry> trail_;
  std::vector<std::size_t> levels_;
  std::vector<Pending> pending_;
  std::optional<std::vector<Literal>> conflict_;
  unsigned conflict_level_ = 0;
  std::uint64_t num_merges_ = 0;
};

}  // namespace weakarr
