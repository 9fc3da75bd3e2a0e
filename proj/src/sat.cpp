#include "weakarr/sat.hpp"

#include <algorithm>
#include <stdexcept>

namespace weakarr::sat {

Var Solver::new_var() {
  auto v = static_cast<Var>(assigns_.size());
  assigns_.push_back(Value::Undef);
  level_.push_back(0);
  reason_.push_back(-1);
  phase_.push_back(random_phase_ ? (rng_() & 1U) != 0 : false);
  seen_.push_back(0);
  watches_.emplace_back();
  watches_.emplace_back();
  return v;
}

Value Solver::value(Lit l) const {
  Value v = assigns_[l.var()];
  if (v == Value::Undef) return v;
  return (v == Value::True) != l.negated() ? Value::True : Value::False;
}

void Solver::enqueue(Lit l, int reason) {
  assigns_[l.var()] = l.negated() ? Value::False : Value::True;
  level_[l.var()] = decision_level();
  reason_[l.var()] = reason;
  trail_.push_back(l);
}

void Solver::attach(int ci) {
  const auto& lits = clauses_[ci].lits;
  watches_[lits[0].x].push_back(ci);
  watches_[lits[1].x].push_back(ci);
}

int Solver::store_clause(std::vector<Lit> lits) {
  clauses_.push_back({std::move(lits)});
  return static_cast<int>(clauses_.size() - 1);
}

namespace {

// Sorts, drops duplicates and reports tautologies.
bool normalize(std::vector<Lit>& lits) {
  std::sort(lits.begin(), lits.end());
  lits.erase(std::unique(lits.begin(), lits.end()), lits.end());
  for (std::size_t k = 1; k < lits.size(); ++k)
    if (lits[k] == ~lits[k - 1]) return false;
  return true;
}

}  // namespace

bool Solver::add_clause(std::vector<Lit> lits) {
  if (!ok_) return false;
  if (decision_level() != 0) throw std::logic_error("add_clause outside decision level 0");
  if (!normalize(lits)) return true;
  std::vector<Lit> kept;
  for (Lit l : lits) {
    Value v = value(l);
    if (v == Value::True) return true;
    if (v == Value::Undef) kept.push_back(l);
  }
  if (kept.empty()) return ok_ = false;
  if (kept.size() == 1) {
    enqueue(kept[0], -1);
    return true;
  }
  attach(store_clause(std::move(kept)));
  return true;
}

int Solver::propagate() {
  while (qhead_ < trail_.size()) {
    Lit p = trail_[qhead_++];
    Lit false_lit = ~p;
    ++stats_.propagations;
    auto& ws = watches_[false_lit.x];
    std::size_t i = 0;
    std::size_t j = 0;
    int conflict = -1;
    while (i < ws.size()) {
      int ci = ws[i++];
      auto& c = clauses_[ci].lits;
      if (c[0] == false_lit) std::swap(c[0], c[1]);
      if (value(c[0]) == Value::True) {
        ws[j++] = ci;
        continue;
      }
      bool moved = false;
      for (std::size_t k = 2; k < c.size(); ++k) {
        if (value(c[k]) != Value::False) {
          std::swap(c[1], c[k]);
          watches_[c[1].x].push_back(ci);
          moved = true;
          break;
        }
      }
      if (moved) continue;
      ws[j++] = ci;
      if (value(c[0]) == Value::False) {
        conflict = ci;
        while (i < ws.size()) ws[j++] = ws[i++];
        break;
      }
      enqueue(c[0], ci);
    }
    ws.resize(j);
    if (conflict >= 0) {
      qhead_ = trail_.size();
      return conflict;
    }
  }
  return -1;
}

void Solver::backtrack(unsigned level) {
  if (decision_level() <= level) return;
  std::size_t keep = trail_lim_[level];
  for (std::size_t k = trail_.size(); k-- > keep;) {
    Var v = trail_[k].var();
    phase_[v] = assigns_[v] == Value::True;
    assigns_[v] = Value::Undef;
    reason_[v] = -1;
  }
  unsigned popped = decision_level() - level;
  trail_.resize(keep);
  trail_lim_.resize(level);
  qhead_ = trail_.size();
  theory_head_ = std::min(theory_head_, trail_.size());
  if (theory_) theory_->pop(popped);
}

void Solver::resolve_conflict(int ci) {
  ++stats_.conflicts;
  std::vector<Lit> learnt{Lit{}};
  int path = 0;
  Lit p{};
  bool have_p = false;
  std::size_t idx = trail_.size();
  std::vector<Var> touched;
  for (;;) {
    if (ci < 0) throw std::logic_error("conflict analysis reached a decision");
    const auto& c = clauses_[ci].lits;
    for (std::size_t k = have_p ? 1 : 0; k < c.size(); ++k) {
      Lit q = c[k];
      Var v = q.var();
      if (seen_[v] || level_[v] == 0) continue;
      seen_[v] = 1;
      touched.push_back(v);
      if (level_[v] == decision_level()) {
        ++path;
      } else {
        learnt.push_back(q);
      }
    }
    do {
      --idx;
    } while (!seen_[trail_[idx].var()]);
    p = trail_[idx];
    have_p = true;
    seen_[p.var()] = 0;
    ci = reason_[p.var()];
    if (--path == 0) break;
  }
  learnt[0] = ~p;
  for (Var v : touched) seen_[v] = 0;

  unsigned back = 0;
  for (std::size_t k = 1; k < learnt.size(); ++k) {
    if (level_[learnt[k].var()] > back) {
      back = level_[learnt[k].var()];
      std::swap(learnt[1], learnt[k]);
    }
  }
  backtrack(back);
  if (learnt.size() == 1) {
    enqueue(learnt[0], -1);
    return;
  }
  Lit asserting = learnt[0];
  int lc = store_clause(std::move(learnt));
  attach(lc);
  enqueue(asserting, lc);
}

bool Solver::add_clause_in_search(std::vector<Lit> lits) {
  if (!normalize(lits)) return true;
  // literals false at level 0 never help
  std::erase_if(lits, [&](Lit l) { return value(l) == Value::False && level_[l.var()] == 0; });
  if (lits.empty()) return ok_ = false;

  auto rank = [&](Lit l) {
    // true first, then unassigned, then false by decreasing level
    Value v = value(l);
    if (v == Value::True) return std::pair{0, 0};
    if (v == Value::Undef) return std::pair{1, 0};
    return std::pair{2, -static_cast<int>(level_[l.var()])};
  };
  std::stable_sort(lits.begin(), lits.end(), [&](Lit x, Lit y) { return rank(x) < rank(y); });

  Value first = value(lits[0]);
  if (first == Value::True) {
    if (lits.size() > 1) attach(store_clause(std::move(lits)));
    return true;
  }
  if (first == Value::Undef) {
    if (lits.size() == 1 || value(lits[1]) == Value::Undef) {
      if (lits.size() == 1) {
        backtrack(0);
        enqueue(lits[0], -1);
      } else {
        attach(store_clause(std::move(lits)));
      }
      return true;
    }
    backtrack(level_[lits[1].var()]);
    Lit unit = lits[0];
    int ci = store_clause(std::move(lits));
    attach(ci);
    enqueue(unit, ci);
    return true;
  }

  // every literal is false
  unsigned top = level_[lits[0].var()];
  if (lits.size() == 1) {
    backtrack(0);
    enqueue(lits[0], -1);
    return true;
  }
  unsigned second = level_[lits[1].var()];
  if (second < top) {
    backtrack(second);
    Lit unit = lits[0];
    int ci = store_clause(std::move(lits));
    attach(ci);
    enqueue(unit, ci);
    return true;
  }
  backtrack(top);
  int ci = store_clause(std::move(lits));
  attach(ci);
  if (top == 0) return ok_ = false;
  resolve_conflict(ci);
  return true;
}

Solver::Result Solver::solve(Theory& theory, std::uint64_t max_steps) {
  theory_ = &theory;
  struct Reset {
    Theory*& t;
    ~Reset() { t = nullptr; }
  } reset{theory_};
  if (!ok_) return Result::Unsat;
  std::vector<Lit> conflict;
  std::vector<std::vector<Lit>> lemmas;
  for (;;) {
    if (++stats_.steps > max_steps) return Result::Unknown;
    int ci = propagate();
    if (ci >= 0) {
      if (decision_level() == 0) return Result::Unsat;
      resolve_conflict(ci);
      continue;
    }

    bool theory_conflict = false;
    while (theory_head_ < trail_.size()) {
      Lit l = trail_[theory_head_++];
      conflict.clear();
      if (theory.assign(l, conflict)) continue;
      ++stats_.theory_conflicts;
      if (!add_clause_in_search(conflict)) return Result::Unsat;
      theory_conflict = true;
      break;
    }
    if (theory_conflict) continue;

    Var next = 0;
    while (next < assigns_.size() && assigns_[next] != Value::Undef) ++next;
    if (next == assigns_.size()) {
      ++stats_.final_checks;
      lemmas.clear();
      theory.final_check(lemmas);
      if (lemmas.empty()) return Result::Sat;
      for (auto& clause : lemmas)
        if (!add_clause_in_search(std::move(clause))) return Result::Unsat;
      continue;
    }

    ++stats_.decisions;
    trail_lim_.push_back(trail_.size());
    theory.push();
    enqueue(Lit::make(next, !phase_[next]), -1);
  }
}

}  // namespace weakarr::sat
