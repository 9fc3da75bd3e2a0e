#pragma once

// Forest representation of weak equivalence and weak equivalence modulo an
// index.  Each node stands for one strong equivalence class of arrays and has
// up to two outgoing edges: a primary edge p labelled with a store index pi,
// and a secondary edge s that get_rep_i follows instead of p when pi is the
// queried index.  A node without a primary edge represents its weak class and
// all of its modulo-i classes.

#include <cstdint>
#include <functional>
#include <limits>
#include <span>
#include <string>
#include <vector>

#include "weakarr/term.hpp"

namespace weakarr {

class CongruenceClosure;

using NodeId = std::uint32_t;
inline constexpr NodeId kNoNode = std::numeric_limits<NodeId>::max();

/// One add_store call: a store edge between nodes a and b labelled `index`.
struct StoreEdge {
  NodeId a;
  NodeId b;
  TermId index;
  TermId store;
};

/// Traversal of one store edge of the naive weak equivalence graph.
struct NodeHop {
  NodeId from;
  NodeId to;
  std::uint32_t edge;
};

class WeakForest {
 public:
  /// Maps an index term to the representative of its strong class.
  using IndexRep = std::function<TermId(TermId)>;

  struct Node {
    NodeId p = kNoNode;
    TermId pi;
    std::uint32_t p_edge = 0;
    NodeId s = kNoNode;
    std::uint32_t s_edge = 0;
    /// Endpoint of s_edge on this node's side of the secondary path.
    NodeId s_near = kNoNode;
  };

  struct Counters {
    std::uint64_t add_store_calls = 0;
    std::uint64_t inversions = 0;
    std::uint64_t steps = 0;
  };

  explicit WeakForest(std::size_t num_nodes = 0, IndexRep index_rep = nullptr);

  NodeId add_node();
  [[nodiscard]] std::size_t size() const { return nodes_.size(); }

  [[nodiscard]] NodeId get_rep(NodeId n) const;
  [[nodiscard]] NodeId get_rep_i(NodeId n, TermId index) const;
  void make_rep(NodeId n);
  /// Makes a non-root node the representative of its modulo-pi class.
  void make_rep_i(NodeId n);
  void add_store(NodeId a, NodeId b, TermId index, TermId reason);

  /// A store-edge walk from a to b through the primary tree.  Throws
  /// std::invalid_argument if a and b are not weakly equivalent.
  [[nodiscard]] std::vector<NodeHop> path(NodeId a, NodeId b) const;
  /// A simple store-edge path from a to b none of whose labels is equal to
  /// `index`.  Throws std::invalid_argument if get_rep_i differs.
  [[nodiscard]] std::vector<NodeHop> path_mod_i(NodeId a, NodeId b, TermId index) const;

  [[nodiscard]] bool same_index(TermId x, TermId y) const;
  [[nodiscard]] const Node& node(NodeId n) const { return nodes_[n]; }
  [[nodiscard]] const StoreEdge& edge(std::uint32_t e) const { return edges_[e]; }
  [[nodiscard]] std::size_t num_store_edges() const { return edges_.size(); }
  /// Number of non-nil primary and secondary edges.
  [[nodiscard]] std::size_t edge_count() const;
  [[nodiscard]] const Counters& counters() const { return counters_; }

  /// One line per node: `<id> p=<node|-> pi=<label|-> s=<node|->`.
  [[nodiscard]] std::string dump(const std::function<std::string(TermId)>& label) const;

 private:
  void make_rep_i(NodeId n, TermId index);
  void add_secondary(NodeId a, NodeId b, TermId index, std::uint32_t edge);
  void append_tree_path(NodeId from, NodeId to, std::vector<NodeHop>& out) const;
  void append_walk_to_rep_i(NodeId n, TermId index, std::vector<NodeHop>& out) const;
  void guard(std::uint64_t& budget) const;

  std::vector<Node> nodes_;
  std::vector<StoreEdge> edges_;
  IndexRep index_rep_;
  mutable Counters counters_;
};

/// One edge of a term-level weak path.  Store hops connect a store term with
/// its array argument (in either direction); equality hops connect two
/// distinct, strongly equal terms.
struct PathStep {
  enum class Type : std::uint8_t { Store, Eq };
  Type type;
  TermId from;
  TermId to;
  TermId store;  // Store hops only
  TermId index;  // Store hops only
  friend bool operator==(const PathStep&, const PathStep&) = default;
};
using Path = std::vector<PathStep>;

/// Store-hop indices of a path, in order.
std::vector<TermId> path_stores(const Path& path);

/// Weak equivalence over the array terms of a problem under the current
/// arrangement of a congruence closure: one forest node per strong class,
/// one add_store per store term.  Rebuilt from scratch whenever the
/// arrangement changes.
class WeakEquivalence {
 public:
  WeakEquivalence(const TermStore& store, const CongruenceClosure& euf, std::span<const TermId> arrays,
                  std::span<const TermId> stores);

  [[nodiscard]] NodeId node_of(TermId array) const;
  [[nodiscard]] bool has_node(TermId array) const;
  [[nodiscard]] bool weakly_equal(TermId a, TermId b) const;
  [[nodiscard]] bool weakly_equal_mod(TermId a, TermId b, TermId index) const;
  [[nodiscard]] Path path(TermId a, TermId b) const;
  [[nodiscard]] Path path_mod(TermId a, TermId b, TermId index) const;

  [[nodiscard]] const WeakForest& forest() const { return forest_; }
  [[nodiscard]] const CongruenceClosure& euf() const { return euf_; }
  [[nodiscard]] const TermStore& store() const { return store_; }
  [[nodiscard]] std::span<const TermId> arrays() const { return arrays_; }
  [[nodiscard]] std::span<const TermId> stores() const { return stores_; }
  /// Array terms grouped by forest node.
  [[nodiscard]] const std::vector<std::vector<TermId>>& node_terms() const { return node_terms_; }
  /// Weak equivalence classes as sorted term lists, ordered by first member.
  [[nodiscard]] std::vector<std::vector<TermId>> weak_classes() const;

 private:
  Path to_term_path(TermId a, TermId b, const std::vector<NodeHop>& hops) const;

  const TermStore& store_;
  const CongruenceClosure& euf_;
  std::vector<TermId> arrays_;
  std::vector<TermId> stores_;
  std::vector<NodeId> node_index_;  // by term id
  std::vector<std::vector<TermId>> node_terms_;
  WeakForest forest_;
};

}  // namespace weakarr
