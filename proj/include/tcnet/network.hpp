#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "tcnet/types.hpp"

namespace tcnet {

using NodeId = std::size_t;

enum class NodeKind { Root, Leaf, TreeNode, Reticulation };

/// Rooted phylogenetic network stored as a directed multigraph with labeled leaves.
///
/// The class itself only enforces label uniqueness; structural invariants
/// (single outdegree-1 root, outdegree-2 tree nodes, outdegree-1 reticulations,
/// acyclicity, no parallel edges) are reported by validate(). Node ids are
/// opaque and are never compared across networks; use isomorphic() for equality.
class Network {
 public:
  Network() = default;

  static Network single_leaf(const Taxon& label);

  NodeId add_node();
  // throws std::invalid_argument on empty or duplicate label
  NodeId add_leaf(const Taxon& label);
  void add_edge(NodeId from, NodeId to);
  // removes one copy of the edge; throws std::invalid_argument when absent
  void remove_edge(NodeId from, NodeId to);
  void remove_node(NodeId v);

  // splices out v when it has exactly one parent and one child
  bool suppress(NodeId v);
  // suppresses every indegree-1/outdegree-1 node until none is left
  void suppress_all();

  bool contains(NodeId v) const { return v < nodes_.size() && nodes_[v].alive; }
  std::vector<NodeId> node_ids() const;
  std::size_t node_count() const { return alive_count_; }
  std::size_t edge_count() const;

  std::span<const NodeId> parents(NodeId v) const { return node(v).parents; }
  std::span<const NodeId> children(NodeId v) const { return node(v).children; }
  std::size_t indegree(NodeId v) const { return node(v).parents.size(); }
  std::size_t outdegree(NodeId v) const { return node(v).children.size(); }
  bool has_edge(NodeId from, NodeId to) const;

  // empty label for unlabeled nodes
  const Taxon& label(NodeId v) const { return node(v).label; }
  bool is_labeled(NodeId v) const { return !node(v).label.empty(); }
  std::optional<NodeId> leaf(const Taxon& label) const;
  bool has_leaf(const Taxon& label) const { return leaves_.contains(label); }
  // labels in ascending order
  std::vector<Taxon> taxa() const;
  std::size_t leaf_count() const { return leaves_.size(); }

  // the unique indegree-0 node, if there is exactly one
  std::optional<NodeId> root() const;

  // in-place reduction; returns false (and leaves the network untouched) when
  // the pair is neither a cherry nor a reticulated cherry. Assumes a valid network.
  bool reduce(const Pair& p);
  // in-place addition of a pair; throws std::invalid_argument if p.second is not a leaf
  void add(const Pair& p);

 private:
  struct Node {
    std::vector<NodeId> parents;
    std::vector<NodeId> children;
    Taxon label;
    bool alive = true;
  };

  const Node& node(NodeId v) const;
  Node& node(NodeId v);
  // inserts a fresh node on the single incoming edge of v and returns it
  NodeId subdivide_in_edge(NodeId v);

  std::vector<Node> nodes_;
  std::map<Taxon, NodeId> leaves_;
  std::size_t alive_count_ = 0;
};

struct Diagnostic {
  enum class Code {
    Empty,
    Cycle,
    NoRoot,
    MultipleRoots,
    RootDegree,
    LeafDegree,
    UnlabeledLeaf,
    BadDegree,
    ParallelEdge,
  };
  Code code;
  std::string message;
  std::vector<NodeId> nodes;
};

// empty iff every structural invariant holds
std::vector<Diagnostic> validate(const Network& n);
bool is_valid(const Network& n);

// throws std::out_of_range for an unknown id, std::logic_error if the degrees fit no kind
NodeKind node_kind(const Network& n, NodeId v);

int reticulation_number(const Network& n);
bool is_binary(const Network& n);
bool is_stack_free(const Network& n);
bool is_tree_child(const Network& n);
bool is_tree(const Network& n);
// single-leaf tree: root -> leaf
bool is_single_leaf(const Network& n);

// sorted; every cherry {x,y} appears as (x,y) and (y,x)
std::vector<ReduciblePair> reducible_pairs(const Network& n);
std::optional<PairKind> pair_kind(const Network& n, const Pair& p);

// Reduce p in a copy of n. A pair that is not reducible returns n unchanged.
// Throws std::invalid_argument if n is not a valid network.
Network reduce_pair(const Network& n, const Pair& p);
// Inverse of reduce_pair. Throws std::invalid_argument if n is invalid,
// p.second is not a leaf of n, or the coordinates coincide.
Network add_pair(const Network& n, const Pair& p);

// Label-preserving isomorphism; both networks must be acyclic.
bool isomorphic(const Network& a, const Network& b);
// Bottom-up canonical code of the structure below the root. Equal codes are
// necessary for isomorphism and sufficient for tree-child networks.
std::string canonical_code(const Network& n);
// canonical code of every node, keyed by id
std::unordered_map<NodeId, std::string> canonical_codes(const Network& n);

}  // namespace tcnet
