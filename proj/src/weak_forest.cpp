#include "weakarr/weak_forest.hpp"

#include <algorithm>
#include <map>
#include <sstream>
#include <stdexcept>

#include "weakarr/euf.hpp"
#include "weakarr/printer.hpp"

namespace weakarr {

WeakForest::WeakForest(std::size_t num_nodes, IndexRep index_rep)
    : nodes_(num_nodes), index_rep_(std::move(index_rep)) {}

NodeId WeakForest::add_node() {
  nodes_.emplace_back();
  return static_cast<NodeId>(nodes_.size() - 1);
}

bool WeakForest::same_index(TermId x, TermId y) const {
  if (!x.valid() || !y.valid()) return false;
  if (x == y) return true;
  return index_rep_ && index_rep_(x) == index_rep_(y);
}

void WeakForest::guard(std::uint64_t& budget) const {
  ++counters_.steps;
  if (budget-- == 0) throw InternalError("weak forest traversal does not terminate");
}

NodeId WeakForest::get_rep(NodeId n) const {
  std::uint64_t budget = nodes_.size() + 1;
  while (nodes_[n].p != kNoNode) {
    guard(budget);
    n = nodes_[n].p;
  }
  return n;
}

NodeId WeakForest::get_rep_i(NodeId n, TermId index) const {
  std::uint64_t budget = (nodes_.size() + 1) * (nodes_.size() + 1);
  for (;;) {
    const Node& node = nodes_[n];
    if (node.p == kNoNode) return n;
    guard(budget);
    if (!same_index(node.pi, index)) {
      n = node.p;
    } else if (node.s == kNoNode) {
      return n;
    } else {
      n = node.s;
    }
  }
}

void WeakForest::make_rep(NodeId n) {
  std::vector<NodeId> chain{n};
  std::uint64_t budget = nodes_.size() + 1;
  while (nodes_[chain.back()].p != kNoNode) {
    guard(budget);
    chain.push_back(nodes_[chain.back()].p);
  }
  // Invert from the top so every node becomes a root just before its own
  // secondary chain is inverted.
  for (std::size_t j = chain.size() - 1; j-- > 0;) {
    NodeId c = chain[j];
    Node& cn = nodes_[c];
    Node& q = nodes_[cn.p];
    TermId label = cn.pi;
    q.p = c;
    q.pi = label;
    q.p_edge = cn.p_edge;
    cn.p = kNoNode;
    ++counters_.inversions;
    make_rep_i(c, label);
    cn.pi = TermId();
  }
}

void WeakForest::make_rep_i(NodeId n) {
  if (nodes_[n].p == kNoNode) return;
  make_rep_i(n, nodes_[n].pi);
}

void WeakForest::make_rep_i(NodeId n, TermId index) {
  std::vector<NodeId> chain{n};
  std::uint64_t budget = (nodes_.size() + 1) * (nodes_.size() + 1);
  for (;;) {
    Node& cur = nodes_[chain.back()];
    if (cur.s == kNoNode) break;
    guard(budget);
    const Node& target = nodes_[cur.s];
    if (!same_index(target.pi, index)) {
      if (target.p == kNoNode) throw InternalError("secondary edge into a weak-class root");
      cur.s = target.p;  // move towards the representative
    } else {
      chain.push_back(cur.s);
    }
  }
  for (std::size_t j = chain.size() - 1; j > 0; --j) {
    Node& from = nodes_[chain[j - 1]];
    Node& to = nodes_[chain[j]];
    const StoreEdge& e = edges_[from.s_edge];
    to.s = chain[j - 1];
    to.s_edge = from.s_edge;
    to.s_near = e.a == from.s_near ? e.b : e.a;
    from.s = kNoNode;
    ++counters_.inversions;
  }
}

void WeakForest::add_store(NodeId a, NodeId b, TermId index, TermId reason) {
  ++counters_.add_store_calls;
  auto e = static_cast<std::uint32_t>(edges_.size());
  edges_.push_back({a, b, index, reason});
  make_rep(b);
  if (get_rep(a) != b) {
    Node& bn = nodes_[b];
    bn.p = a;
    bn.pi = index;
    bn.p_edge = e;
  } else {
    add_secondary(a, b, index, e);
  }
}

void WeakForest::add_secondary(NodeId a, NodeId b, TermId index, std::uint32_t edge) {
  std::vector<TermId> forbidden{index};
  auto is_forbidden = [&](TermId x) {
    return std::any_of(forbidden.begin(), forbidden.end(), [&](TermId f) { return same_index(f, x); });
  };
  std::uint64_t budget = nodes_.size() + 1;
  for (NodeId cur = a; cur != b; cur = nodes_[cur].p) {
    guard(budget);
    TermId label = nodes_[cur].pi;
    if (!is_forbidden(label) && get_rep_i(cur, label) != b) {
      make_rep_i(cur);
      Node& cn = nodes_[cur];
      cn.s = b;
      cn.s_edge = edge;
      cn.s_near = a;
    }
    forbidden.push_back(label);
  }
}

std::size_t WeakForest::edge_count() const {
  std::size_t count = 0;
  for (const Node& n : nodes_) count += (n.p != kNoNode) + (n.s != kNoNode);
  return count;
}

void WeakForest::append_tree_path(NodeId from, NodeId to, std::vector<NodeHop>& out) const {
  std::vector<NodeId> up_from{from};
  while (nodes_[up_from.back()].p != kNoNode) up_from.push_back(nodes_[up_from.back()].p);
  std::vector<NodeId> up_to{to};
  while (std::find(up_from.begin(), up_from.end(), up_to.back()) == up_from.end()) {
    NodeId p = nodes_[up_to.back()].p;
    if (p == kNoNode) throw InternalError("tree path between different weak classes");
    up_to.push_back(p);
  }
  NodeId lca = up_to.back();
  for (NodeId n = from; n != lca; n = nodes_[n].p) out.push_back({n, nodes_[n].p, nodes_[n].p_edge});
  for (std::size_t k = up_to.size() - 1; k > 0; --k) {
    NodeId child = up_to[k - 1];
    out.push_back({up_to[k], child, nodes_[child].p_edge});
  }
}

void WeakForest::append_walk_to_rep_i(NodeId n, TermId index, std::vector<NodeHop>& out) const {
  std::uint64_t budget = (nodes_.size() + 1) * (nodes_.size() + 1);
  for (;;) {
    const Node& node = nodes_[n];
    if (node.p == kNoNode) return;
    guard(budget);
    if (!same_index(node.pi, index)) {
      out.push_back({n, node.p, node.p_edge});
      n = node.p;
    } else if (node.s == kNoNode) {
      return;
    } else {
      const StoreEdge& e = edges_[node.s_edge];
      NodeId far = e.a == node.s_near ? e.b : e.a;
      append_tree_path(n, node.s_near, out);
      out.push_back({node.s_near, far, node.s_edge});
      append_tree_path(far, node.s, out);
      n = node.s;
    }
  }
}

std::vector<NodeHop> WeakForest::path(NodeId a, NodeId b) const {
  if (get_rep(a) != get_rep(b)) throw std::invalid_argument("path: nodes are not weakly equivalent");
  std::vector<NodeHop> out;
  append_tree_path(a, b, out);
  return out;
}

std::vector<NodeHop> WeakForest::path_mod_i(NodeId a, NodeId b, TermId index) const {
  if (get_rep_i(a, index) != get_rep_i(b, index))
    throw std::invalid_argument("path_mod_i: nodes are not weakly equivalent modulo the index");
  std::vector<NodeHop> walk;
  append_walk_to_rep_i(a, index, walk);
  std::vector<NodeHop> back;
  append_walk_to_rep_i(b, index, back);
  for (auto it = back.rbegin(); it != back.rend(); ++it) walk.push_back({it->to, it->from, it->edge});

  // Loop erasure keeps a subsequence of the walk's edges.
  std::vector<NodeId> visited{a};
  std::vector<NodeHop> out;
  for (const NodeHop& h : walk) {
    auto seen = std::find(visited.begin(), visited.end(), h.to);
    if (seen != visited.end()) {
      auto keep = static_cast<std::size_t>(seen - visited.begin());
      visited.resize(keep + 1);
      out.resize(keep);
    } else {
      visited.push_back(h.to);
      out.push_back(h);
    }
  }
  for (const NodeHop& h : out)
    if (same_index(edges_[h.edge].index, index)) throw InternalError("modulo-i path crosses an edge labelled i");
  return out;
}

std::string WeakForest::dump(const std::function<std::string(TermId)>& label) const {
  std::ostringstream os;
  for (NodeId n = 0; n < nodes_.size(); ++n) {
    const Node& node = nodes_[n];
    os << n << " p=";
    if (node.p == kNoNode) os << '-'; else os << node.p;
    os << " pi=" << (node.pi.valid() ? label(node.pi) : "-") << " s=";
    if (node.s == kNoNode) os << '-'; else os << node.s;
    os << '\n';
  }
  return os.str();
}

std::vector<TermId> path_stores(const Path& path) {
  std::vector<TermId> out;
  for (const PathStep& s : path)
    if (s.type == PathStep::Type::Store) out.push_back(s.index);
  return out;
}

WeakEquivalence::WeakEquivalence(const TermStore& store, const CongruenceClosure& euf, std::span<const TermId> arrays,
                                 std::span<const TermId> stores)
    : store_(store),
      euf_(euf),
      arrays_(arrays.begin(), arrays.end()),
      stores_(stores.begin(), stores.end()),
      forest_(0, [&euf](TermId t) { return euf.find(t); }) {
  std::sort(arrays_.begin(), arrays_.end());
  std::sort(stores_.begin(), stores_.end());
  node_index_.assign(store.num_terms(), kNoNode);
  std::map<TermId, NodeId> by_root;
  for (TermId a : arrays_) {
    auto [it, fresh] = by_root.try_emplace(euf.find(a), static_cast<NodeId>(node_terms_.size()));
    if (fresh) {
      forest_.add_node();
      node_terms_.emplace_back();
    }
    node_index_[a.value] = it->second;
    node_terms_[it->second].push_back(a);
  }
  for (TermId s : stores_) forest_.add_store(node_of(s), node_of(store.array_of(s)), store.index_of(s), s);
}

bool WeakEquivalence::has_node(TermId array) const {
  return array.value < node_index_.size() && node_index_[array.value] != kNoNode;
}

NodeId WeakEquivalence::node_of(TermId array) const {
  if (!has_node(array)) throw std::invalid_argument("not a tracked array term: " + term_to_string(store_, array));
  return node_index_[array.value];
}

bool WeakEquivalence::weakly_equal(TermId a, TermId b) const {
  return forest_.get_rep(node_of(a)) == forest_.get_rep(node_of(b));
}

bool WeakEquivalence::weakly_equal_mod(TermId a, TermId b, TermId index) const {
  return forest_.get_rep_i(node_of(a), index) == forest_.get_rep_i(node_of(b), index);
}

Path WeakEquivalence::path(TermId a, TermId b) const {
  return to_term_path(a, b, forest_.path(node_of(a), node_of(b)));
}

Path WeakEquivalence::path_mod(TermId a, TermId b, TermId index) const {
  return to_term_path(a, b, forest_.path_mod_i(node_of(a), node_of(b), index));
}

Path WeakEquivalence::to_term_path(TermId a, TermId b, const std::vector<NodeHop>& hops) const {
  Path out;
  TermId cur = a;
  auto eq_hop = [&](TermId to) {
    if (cur != to) out.push_back({PathStep::Type::Eq, cur, to, TermId(), TermId()});
    cur = to;
  };
  for (const NodeHop& h : hops) {
    TermId st = forest_.edge(h.edge).store;
    TermId arr = store_.array_of(st);
    bool forward = node_of(st) == h.from;
    TermId from = forward ? st : arr;
    TermId to = forward ? arr : st;
    eq_hop(from);
    out.push_back({PathStep::Type::Store, from, to, st, store_.index_of(st)});
    cur = to;
  }
  eq_hop(b);
  return out;
}

std::vector<std::vector<TermId>> WeakEquivalence::weak_classes() const {
  std::map<NodeId, std::vector<TermId>> by_rep;
  for (TermId a : arrays_) by_rep[forest_.get_rep(node_of(a))].push_back(a);
  std::vector<std::vector<TermId>> out;
  for (auto& [rep, terms] : by_rep) out.push_back(std::move(terms));
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace weakarr
