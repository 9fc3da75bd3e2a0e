#include "weakarr/euf.hpp"

#include <algorithm>
#include <stdexcept>
#include <unordered_set>

#include "weakarr/printer.hpp"

namespace weakarr {

CongruenceClosure::CongruenceClosure(const TermStore& store) : store_(store) {
  register_term(store.mk_true());
  register_term(store.mk_false());
  diseqs_.push_back({store.mk_true(), store.mk_false(), std::nullopt});
}

void CongruenceClosure::ensure_node(TermId t) {
  if (nodes_.size() <= t.value) nodes_.resize(std::max<std::size_t>(store_.num_terms(), t.value + 1));
}

bool CongruenceClosure::is_app(TermId t) const {
  Kind k = store_.kind(t);
  return k == Kind::Apply || k == Kind::Select || k == Kind::Store;
}

void CongruenceClosure::register_term(TermId root) {
  if (level() != 0) throw std::logic_error("terms can only be registered at decision level 0");
  for_each_subterm(store_, std::span(&root, 1), [&](TermId t) {
    switch (store_.kind(t)) {
      case Kind::Eq:
      case Kind::Not:
      case Kind::And:
      case Kind::Or:
        return;
      default:
        break;
    }
    ensure_node(t);
    Node& n = nodes_[t.value];
    if (n.registered) return;
    n.registered = true;
    n.root = t;
    n.next = t;
    registered_.insert(std::upper_bound(registered_.begin(), registered_.end(), t), t);
    if (!is_app(t)) return;
    std::optional<TermId> match;
    for (TermId arg : store_.children(t)) {
      auto& uses = nodes_[find(arg).value].uses;
      if (!match) {
        for (TermId w : uses)
          if (congruent(t, w)) {
            match = w;
            break;
          }
      }
      uses.push_back(t);
    }
    if (match) {
      merge(t, *match, true, {});
      check_diseqs();
    }
  });
}

bool CongruenceClosure::congruent(TermId u, TermId w) const {
  if (u == w || store_.kind(u) != store_.kind(w)) return false;
  if (store_.kind(u) == Kind::Apply && store_.fun(u) != store_.fun(w)) return false;
  auto cu = store_.children(u);
  auto cw = store_.children(w);
  if (cu.size() != cw.size()) return false;
  for (std::size_t k = 0; k < cu.size(); ++k)
    if (find(cu[k]) != find(cw[k])) return false;
  return true;
}

bool CongruenceClosure::are_diseq(TermId s, TermId t) const {
  TermId rs = find(s);
  TermId rt = find(t);
  for (const Diseq& d : diseqs_) {
    TermId a = find(d.lhs);
    TermId b = find(d.rhs);
    if ((a == rs && b == rt) || (a == rt && b == rs)) return true;
  }
  return false;
}

bool CongruenceClosure::is_asserted(const Literal& lit) const {
  auto it = asserted_.find(key(lit));
  return it != asserted_.end() && it->second > 0;
}

void CongruenceClosure::push() { levels_.push_back(trail_.size()); }

void CongruenceClosure::pop(unsigned levels) {
  if (levels > level()) throw std::logic_error("pop below decision level 0");
  if (levels == 0) return;
  std::size_t target = levels_[levels_.size() - levels];
  levels_.resize(levels_.size() - levels);
  while (trail_.size() > target) {
    TrailEntry e = trail_.back();
    trail_.pop_back();
    undo(e);
  }
  pending_.clear();
  if (conflict_ && conflict_level_ > level()) conflict_.reset();
}

void CongruenceClosure::undo(const TrailEntry& e) {
  switch (e.op) {
    case Op::Asserted:
      if (--asserted_[e.lit_key] == 0) asserted_.erase(e.lit_key);
      return;
    case Op::Diseq:
      diseqs_.pop_back();
      return;
    case Op::Merge: {
      Node& large = nodes_[e.large.value];
      Node& small = nodes_[e.small.value];
      large.uses.resize(e.old_uses);
      large.size -= small.size;
      std::swap(small.next, large.next);
      TermId x = e.small;
      do {
        nodes_[x.value].root = e.small;
        x = nodes_[x.value].next;
      } while (x != e.small);
      // later reroots may have flipped the edge
      const ProofEdge& pe = edges_.back();
      auto edge_id = static_cast<std::uint32_t>(edges_.size() - 1);
      Node& l = nodes_[pe.lhs.value];
      Node& r = nodes_[pe.rhs.value];
      if (l.proof_parent == pe.rhs && l.proof_edge == edge_id) {
        l.proof_parent = TermId();
      } else {
        r.proof_parent = TermId();
      }
      edges_.pop_back();
      return;
    }
  }
}

void CongruenceClosure::reroot(TermId t) {
  TermId prev;
  std::uint32_t prev_edge = 0;
  TermId cur = t;
  while (cur.valid()) {
    Node& n = nodes_[cur.value];
    TermId next = n.proof_parent;
    std::uint32_t next_edge = n.proof_edge;
    n.proof_parent = prev;
    n.proof_edge = prev_edge;
    prev = cur;
    prev_edge = next_edge;
    cur = next;
  }
}

void CongruenceClosure::merge(TermId a, TermId b, bool congruence, Literal reason) {
  pending_.push_back({a, b, congruence, reason});
  for (std::size_t head = 0; head < pending_.size(); ++head) {
    Pending p = pending_[head];
    TermId ra = find(p.lhs);
    TermId rb = find(p.rhs);
    if (ra == rb) continue;
    ++num_merges_;

    reroot(p.lhs);
    nodes_[p.lhs.value].proof_parent = p.rhs;
    nodes_[p.lhs.value].proof_edge = static_cast<std::uint32_t>(edges_.size());
    edges_.push_back({p.congruence, p.reason, p.lhs, p.rhs});

    if (nodes_[ra.value].size > nodes_[rb.value].size) std::swap(ra, rb);
    Node& small = nodes_[ra.value];
    Node& large = nodes_[rb.value];
    TermId x = ra;
    do {
      nodes_[x.value].root = rb;
      x = nodes_[x.value].next;
    } while (x != ra);
    std::swap(small.next, large.next);
    large.size += small.size;

    auto old_uses = static_cast<std::uint32_t>(large.uses.size());
    for (TermId u : small.uses)
      for (std::uint32_t k = 0; k < old_uses; ++k) {
        TermId w = large.uses[k];
        if (find(u) != find(w) && congruent(u, w)) pending_.push_back({u, w, true, {}});
      }
    large.uses.insert(large.uses.end(), small.uses.begin(), small.uses.end());
    trail_.push_back({Op::Merge, ra, rb, old_uses, 0});
  }
  pending_.clear();
}

void CongruenceClosure::set_conflict(std::vector<Literal> lits) {
  std::sort(lits.begin(), lits.end());
  lits.erase(std::unique(lits.begin(), lits.end()), lits.end());
  conflict_ = std::move(lits);
  conflict_level_ = level();
}

void CongruenceClosure::check_diseqs() {
  if (conflict_) return;
  for (const Diseq& d : diseqs_) {
    if (find(d.lhs) != find(d.rhs)) continue;
    std::vector<Literal> lits = explain(d.lhs, d.rhs);
    if (d.reason) lits.push_back(*d.reason);
    set_conflict(std::move(lits));
    return;
  }
}

CongruenceClosure::Result CongruenceClosure::assert_literal(const Literal& lit) {
  if (conflict_) return {false, *conflict_};
  trail_.push_back({Op::Asserted, {}, {}, 0, key(lit)});
  ++asserted_[key(lit)];

  if (store_.kind(lit.atom) == Kind::Eq) {
    TermId lhs = store_.child(lit.atom, 0);
    TermId rhs = store_.child(lit.atom, 1);
    if (store_.is_bool(store_.sort(lhs)))
      throw std::invalid_argument("equalities between Boolean terms are not theory atoms");
    if (!is_registered(lhs) || !is_registered(rhs))
      throw std::invalid_argument("literal over unregistered terms: " + literal_to_string(store_, lit));
    if (lit.positive) {
      merge(lhs, rhs, false, lit);
    } else {
      diseqs_.push_back({lhs, rhs, lit});
      trail_.push_back({Op::Diseq, {}, {}, 0, 0});
    }
  } else {
    if (!is_registered(lit.atom))
      throw std::invalid_argument("literal over unregistered term: " + literal_to_string(store_, lit));
    merge(lit.atom, lit.positive ? store_.mk_true() : store_.mk_false(), false, lit);
  }
  check_diseqs();
  if (conflict_) return {false, *conflict_};
  return {};
}

std::vector<Literal> CongruenceClosure::explain(TermId s, TermId t) const {
  if (find(s) != find(t))
    throw std::invalid_argument("explain: " + term_to_string(store_, s) + " and " + term_to_string(store_, t) +
                                " are not equal");
  std::vector<Literal> out;
  std::unordered_set<std::uint32_t> done_edges;
  std::vector<std::pair<TermId, TermId>> work{{s, t}};
  std::unordered_set<std::uint32_t> ancestors;

  auto take_edge = [&](TermId node) {
    std::uint32_t e = nodes_[node.value].proof_edge;
    if (!done_edges.insert(e).second) return;
    const ProofEdge& edge = edges_[e];
    if (!edge.congruence) {
      out.push_back(edge.reason);
      return;
    }
    auto cl = store_.children(edge.lhs);
    auto cr = store_.children(edge.rhs);
    for (std::size_t k = 0; k < cl.size(); ++k)
      if (cl[k] != cr[k]) work.emplace_back(cl[k], cr[k]);
  };

  while (!work.empty()) {
    auto [x, y] = work.back();
    work.pop_back();
    if (x == y) continue;
    ancestors.clear();
    for (TermId n = x; n.valid(); n = nodes_[n.value].proof_parent) ancestors.insert(n.value);
    TermId lca = y;
    while (!ancestors.contains(lca.value)) lca = nodes_[lca.value].proof_parent;
    for (TermId n = x; n != lca; n = nodes_[n.value].proof_parent) take_edge(n);
    for (TermId n = y; n != lca; n = nodes_[n.value].proof_parent) take_edge(n);
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

}  // namespace weakarr
