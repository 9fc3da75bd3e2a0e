#pragma once

// Minimal CDCL core: two watched literals, first-UIP learning, no restarts,
// decisions on the lowest unassigned variable with phase saving.  A theory
// sees assigned literals after unit propagation and may add clauses at any
// point of the search.

#include <cstdint>
#include <random>
#include <vector>

namespace weakarr::sat {

using Var = std::uint32_t;

struct Lit {
  std::uint32_t x = 0;

  static Lit make(Var v, bool negated = false) { return {2 * v + (negated ? 1U : 0U)}; }
  [[nodiscard]] Var var() const { return x >> 1; }
  [[nodiscard]] bool negated() const { return x & 1U; }
  Lit operator~() const { return {x ^ 1U}; }
  friend auto operator<=>(Lit, Lit) = default;
};

enum class Value : std::uint8_t { False, True, Undef };

class Theory {
 public:
  virtual ~Theory() = default;
  virtual void push() = 0;
  virtual void pop(unsigned levels) = 0;
  /// Returns false and fills `conflict` with a clause whose literals are all
  /// false under the current assignment when `lit` is inconsistent.
  virtual bool assign(Lit lit, std::vector<Lit>& conflict) = 0;
  /// Called on a full, theory-consistent assignment.  Clauses added here must
  /// be valid; none means the assignment is accepted.
  virtual void final_check(std::vector<std::vector<Lit>>& clauses) = 0;
};

class Solver {
 public:
  enum class Result : std::uint8_t { Sat, Unsat, Unknown };

  struct Stats {
    std::uint64_t decisions = 0;
    std::uint64_t conflicts = 0;
    std::uint64_t theory_conflicts = 0;
    std::uint64_t propagations = 0;
    std::uint64_t final_checks = 0;
    std::uint64_t steps = 0;
  };

  /// Seed 0 starts every variable with phase false; other seeds draw initial
  /// phases at random.
  explicit Solver(std::uint64_t seed = 0) : rng_(seed), random_phase_(seed != 0) {}

  Var new_var();
  [[nodiscard]] std::size_t num_vars() const { return assigns_.size(); }

  /// Adds a clause before solving.  Returns false once the clause set is
  /// known to be unsatisfiable.
  bool add_clause(std::vector<Lit> lits);

  Result solve(Theory& theory, std::uint64_t max_steps);

  [[nodiscard]] Value value(Var v) const { return assigns_[v]; }
  [[nodiscard]] Value value(Lit l) const;
  [[nodiscard]] const Stats& stats() const { return stats_; }

 private:
  struct Clause {
    std::vector<Lit> lits;
  };

  [[nodiscard]] unsigned decision_level() const { return static_cast<unsigned>(trail_lim_.size()); }
  void enqueue(Lit l, int reason);
  int propagate();
  void attach(int ci);
  int store_clause(std::vector<Lit> lits);
  void backtrack(unsigned level);
  /// Learns from a conflicting clause whose literals include at least one at
  /// the current level, backjumps and asserts the learnt literal.
  void resolve_conflict(int ci);
  /// Adds a clause mid-search, fixing up the trail.  Returns false on
  /// unsatisfiability.
  bool add_clause_in_search(std::vector<Lit> lits);

  std::vector<Clause> clauses_;
  std::vector<std::vector<int>> watches_;
  std::vector<Value> assigns_;
  std::vector<unsigned> level_;
  std::vector<int> reason_;
  std::vector<bool> phase_;
  std::vector<char> seen_;
  std::vector<Lit> trail_;
  std::vector<std::size_t> trail_lim_;
  std::size_t qhead_ = 0;
  std::size_t theory_head_ = 0;
  Theory* theory_ = nullptr;
  bool ok_ = true;
  std::mt19937_64 rng_;
  bool random_phase_;
  Stats stats_;
};

}  // namespace weakarr::sat
