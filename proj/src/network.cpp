#include "tcnet/network.hpp"

#include <algorithm>
#include <deque>
#include <stdexcept>
#include <unordered_map>
#include <unordered_set>

namespace tcnet {

namespace {

bool is_reticulation_shape(const Network& n, NodeId v) {
  return n.indegree(v) >= 2 && n.outdegree(v) == 1;
}

bool is_tree_node_shape(const Network& n, NodeId v) {
  return !n.is_labeled(v) && n.indegree(v) == 1 && n.outdegree(v) == 2;
}

// Kahn's algorithm; the order is shorter than node_count() iff there is a cycle
std::vector<NodeId> topological_order(const Network& n) {
  std::unordered_map<NodeId, std::size_t> pending;
  std::deque<NodeId> ready;
  for (NodeId v : n.node_ids()) {
    pending[v] = n.indegree(v);
    if (n.indegree(v) == 0) ready.push_back(v);
  }
  std::vector<NodeId> order;
  order.reserve(n.node_count());
  while (!ready.empty()) {
    NodeId v = ready.front();
    ready.pop_front();
    order.push_back(v);
    for (NodeId c : n.children(v))
      if (--pending[c] == 0) ready.push_back(c);
  }
  return order;
}

std::string describe(const Network& n, NodeId v) {
  std::string s = "node " + std::to_string(v);
  if (n.is_labeled(v)) s += " '" + n.label(v) + "'";
  s += " (indegree " + std::to_string(n.indegree(v)) + ", outdegree " +
       std::to_string(n.outdegree(v)) + ")";
  return s;
}

using CodeMap = std::unordered_map<NodeId, std::string>;

CodeMap node_codes(const Network& n) {
  auto order = topological_order(n);
  if (order.size() != n.node_count())
    throw std::invalid_argument("canonical code requires an acyclic network");
  CodeMap codes;
  for (auto it = order.rbegin(); it != order.rend(); ++it) {
    NodeId v = *it;
    if (n.is_labeled(v)) {
      codes[v] = std::to_string(n.label(v).size()) + ":" + n.label(v);
      continue;
    }
    std::vector<const std::string*> child_codes;
    for (NodeId c : n.children(v)) child_codes.push_back(&codes.at(c));
    std::sort(child_codes.begin(), child_codes.end(),
              [](const std::string* a, const std::string* b) { return *a < *b; });
    char tag = n.indegree(v) == 0 ? '^' : (n.indegree(v) >= 2 ? 'R' : 'T');
    std::string code(1, tag);
    code += '(';
    for (std::size_t i = 0; i < child_codes.size(); ++i) {
      if (i) code += ',';
      code += *child_codes[i];
    }
    code += ')';
    codes[v] = std::move(code);
  }
  return codes;
}

bool codes_injective(const CodeMap& codes) {
  std::vector<const std::string*> all;
  for (const auto& [v, c] : codes) all.push_back(&c);
  std::sort(all.begin(), all.end(), [](auto* a, auto* b) { return *a < *b; });
  return std::adjacent_find(all.begin(), all.end(),
                            [](auto* a, auto* b) { return *a == *b; }) == all.end();
}

std::vector<NodeId> sorted_children(const Network& n, NodeId v) {
  std::vector<NodeId> out(n.children(v).begin(), n.children(v).end());
  std::sort(out.begin(), out.end());
  return out;
}

// Backtracking matcher for networks whose codes collide (twin nodes). Nodes of
// `a` are matched children-first so every edge check only involves mapped nodes.
class Matcher {
 public:
  Matcher(const Network& a, const Network& b, const CodeMap& ca, const CodeMap& cb)
      : a_(a), b_(b), ca_(ca) {
    auto order = topological_order(a);
    order_.assign(order.rbegin(), order.rend());
    for (const auto& [v, code] : cb) by_code_[code].push_back(v);
  }

  bool run() { return assign(0); }

 private:
  bool assign(std::size_t i) {
    if (i == order_.size()) return true;
    NodeId u = order_[i];
    for (NodeId w : by_code_[ca_.at(u)]) {
      if (used_.contains(w) || !children_match(u, w)) continue;
      used_.insert(w);
      map_[u] = w;
      if (assign(i + 1)) return true;
      map_.erase(u);
      used_.erase(w);
    }
    return false;
  }

  bool children_match(NodeId u, NodeId w) const {
    std::vector<NodeId> mapped;
    for (NodeId c : a_.children(u)) mapped.push_back(map_.at(c));
    std::sort(mapped.begin(), mapped.end());
    return mapped == sorted_children(b_, w);
  }

  const Network& a_;
  const Network& b_;
  const CodeMap& ca_;
  std::vector<NodeId> order_;
  std::unordered_map<std::string, std::vector<NodeId>> by_code_;
  std::unordered_map<NodeId, NodeId> map_;
  std::unordered_set<NodeId> used_;
};

}  // namespace

Network Network::single_leaf(const Taxon& label) {
  Network n;
  NodeId r = n.add_node();
  NodeId x = n.add_leaf(label);
  n.add_edge(r, x);
  return n;
}

const Network::Node& Network::node(NodeId v) const {
  if (!contains(v)) throw std::out_of_range("unknown node id " + std::to_string(v));
  return nodes_[v];
}

Network::Node& Network::node(NodeId v) {
  if (!contains(v)) throw std::out_of_range("unknown node id " + std::to_string(v));
  return nodes_[v];
}

NodeId Network::add_node() {
  nodes_.emplace_back();
  ++alive_count_;
  return nodes_.size() - 1;
}

NodeId Network::add_leaf(const Taxon& label) {
  if (label.empty()) throw std::invalid_argument("leaf label must be non-empty");
  if (leaves_.contains(label)) throw std::invalid_argument("duplicate leaf label '" + label + "'");
  NodeId v = add_node();
  nodes_[v].label = label;
  leaves_.emplace(label, v);
  return v;
}

void Network::add_edge(NodeId from, NodeId to) {
  node(from).children.push_back(to);
  node(to).parents.push_back(from);
}

void Network::remove_edge(NodeId from, NodeId to) {
  auto& out = node(from).children;
  auto& in = node(to).parents;
  auto oi = std::find(out.begin(), out.end(), to);
  auto ii = std::find(in.begin(), in.end(), from);
  if (oi == out.end() || ii == in.end())
    throw std::invalid_argument("no edge " + std::to_string(from) + "->" + std::to_string(to));
  out.erase(oi);
  in.erase(ii);
}

void Network::remove_node(NodeId v) {
  Node& nd = node(v);
  while (!nd.parents.empty()) remove_edge(nd.parents.back(), v);
  while (!nd.children.empty()) remove_edge(v, nd.children.back());
  if (!nd.label.empty()) leaves_.erase(nd.label);
  nd.alive = false;
  --alive_count_;
}

bool Network::suppress(NodeId v) {
  Node& nd = node(v);
  if (nd.parents.size() != 1 || nd.children.size() != 1 || !nd.label.empty()) return false;
  NodeId u = nd.parents.front();
  NodeId c = nd.children.front();
  // keep u's child order stable
  std::replace(nodes_[u].children.begin(), nodes_[u].children.end(), v, c);
  std::replace(nodes_[c].parents.begin(), nodes_[c].parents.end(), v, u);
  nd.parents.clear();
  nd.children.clear();
  nd.alive = false;
  --alive_count_;
  return true;
}

void Network::suppress_all() {
  bool changed = true;
  while (changed) {
    changed = false;
    for (NodeId v = 0; v < nodes_.size(); ++v)
      if (nodes_[v].alive && suppress(v)) changed = true;
  }
}

std::vector<NodeId> Network::node_ids() const {
  std::vector<NodeId> ids;
  ids.reserve(alive_count_);
  for (NodeId v = 0; v < nodes_.size(); ++v)
    if (nodes_[v].alive) ids.push_back(v);
  return ids;
}

std::size_t Network::edge_count() const {
  std::size_t e = 0;
  for (const auto& nd : nodes_)
    if (nd.alive) e += nd.children.size();
  return e;
}

bool Network::has_edge(NodeId from, NodeId to) const {
  const auto& out = node(from).children;
  return std::find(out.begin(), out.end(), to) != out.end();
}

std::optional<NodeId> Network::leaf(const Taxon& label) const {
  auto it = leaves_.find(label);
  if (it == leaves_.end()) return std::nullopt;
  return it->second;
}

std::vector<Taxon> Network::taxa() const {
  std::vector<Taxon> out;
  out.reserve(leaves_.size());
  for (const auto& [label, v] : leaves_) out.push_back(label);
  return out;
}

std::optional<NodeId> Network::root() const {
  std::optional<NodeId> r;
  for (NodeId v = 0; v < nodes_.size(); ++v) {
    if (!nodes_[v].alive || !nodes_[v].parents.empty()) continue;
    if (r) return std::nullopt;
    r = v;
  }
  return r;
}

bool Network::reduce(const Pair& p) {
  auto x = leaf(p.first);
  auto y = leaf(p.second);
  if (!x || !y || *x == *y) return false;
  NodeId px = nodes_[*x].parents.front();
  NodeId py = nodes_[*y].parents.front();
  if (px == py) {
    remove_node(*x);
    suppress(px);
    return true;
  }
  if (nodes_[px].parents.size() >= 2 && has_edge(py, px)) {
    remove_edge(py, px);
    suppress(px);
    suppress(py);
    return true;
  }
  return false;
}

NodeId Network::subdivide_in_edge(NodeId v) {
  if (node(v).parents.size() != 1)
    throw std::logic_error("subdivide_in_edge: node " + std::to_string(v) + " has no unique parent");
  NodeId u = nodes_[v].parents.front();
  NodeId w = add_node();
  std::replace(nodes_[u].children.begin(), nodes_[u].children.end(), v, w);
  nodes_[v].parents.front() = w;
  nodes_[w].parents.push_back(u);
  nodes_[w].children.push_back(v);
  return w;
}

void Network::add(const Pair& p) {
  if (p.first == p.second) throw std::invalid_argument("pair coordinates must differ");
  auto y = leaf(p.second);
  if (!y) throw std::invalid_argument("'" + p.second + "' is not a leaf of the network");
  if (auto x = leaf(p.first)) {
    NodeId px = nodes_[*x].parents.front();
    NodeId target = nodes_[px].parents.size() >= 2 ? px : subdivide_in_edge(*x);
    NodeId q = subdivide_in_edge(*y);
    add_edge(q, target);
  } else {
    NodeId q = subdivide_in_edge(*y);
    NodeId xn = add_leaf(p.first);
    add_edge(q, xn);
  }
}

std::vector<Diagnostic> validate(const Network& n) {
  using Code = Diagnostic::Code;
  std::vector<Diagnostic> out;
  if (n.node_count() == 0) {
    out.push_back({Code::Empty, "network has no nodes", {}});
    return out;
  }

  std::vector<NodeId> roots;
  for (NodeId v : n.node_ids())
    if (n.indegree(v) == 0) roots.push_back(v);
  if (roots.empty()) {
    out.push_back({Code::NoRoot, "no node of indegree 0", {}});
  } else if (roots.size() > 1) {
    out.push_back({Code::MultipleRoots, std::to_string(roots.size()) + " nodes of indegree 0", roots});
  } else if (n.outdegree(roots.front()) != 1) {
    out.push_back({Code::RootDegree, "root must have outdegree 1: " + describe(n, roots.front()),
                   {roots.front()}});
  }

  for (NodeId v : n.node_ids()) {
    std::size_t in = n.indegree(v), outd = n.outdegree(v);
    if (n.is_labeled(v)) {
      if (in != 1 || outd != 0)
        out.push_back({Code::LeafDegree, "labeled " + describe(n, v) + " is not a leaf", {v}});
      continue;
    }
    if (in == 0) continue;
    if (outd == 0) {
      out.push_back({Code::UnlabeledLeaf, describe(n, v) + " is an unlabeled leaf", {v}});
    } else if (!(in == 1 && outd == 2) && !(in >= 2 && outd == 1)) {
      out.push_back({Code::BadDegree, describe(n, v) + " is not a tree node/reticulation", {v}});
    }
  }

  for (NodeId v : n.node_ids()) {
    auto kids = sorted_children(n, v);
    for (std::size_t i = 1; i < kids.size(); ++i)
      if (kids[i] == kids[i - 1])
        out.push_back({Code::ParallelEdge,
                       "parallel edges " + std::to_string(v) + "->" + std::to_string(kids[i]),
                       {v, kids[i]}});
  }

  auto order = topological_order(n);
  if (order.size() != n.node_count()) {
    std::vector<NodeId> stuck;
    std::vector<NodeId> sorted_order(order);
    std::sort(sorted_order.begin(), sorted_order.end());
    for (NodeId v : n.node_ids())
      if (!std::binary_search(sorted_order.begin(), sorted_order.end(), v)) stuck.push_back(v);
    out.push_back({Code::Cycle, "directed cycle through " + std::to_string(stuck.size()) + " nodes",
                   stuck});
  }
  return out;
}

bool is_valid(const Network& n) { return validate(n).empty(); }

NodeKind node_kind(const Network& n, NodeId v) {
  if (!n.contains(v)) throw std::out_of_range("unknown node id " + std::to_string(v));
  std::size_t in = n.indegree(v), out = n.outdegree(v);
  if (in == 0 && out == 1) return NodeKind::Root;
  if (n.is_labeled(v) && in == 1 && out == 0) return NodeKind::Leaf;
  if (!n.is_labeled(v) && in == 1 && out == 2) return NodeKind::TreeNode;
  if (!n.is_labeled(v) && in >= 2 && out == 1) return NodeKind::Reticulation;
  throw std::logic_error(describe(n, v) + " has no valid kind");
}

int reticulation_number(const Network& n) {
  int r = 0;
  for (NodeId v : n.node_ids())
    if (n.indegree(v) >= 2) r += static_cast<int>(n.indegree(v)) - 1;
  return r;
}

bool is_binary(const Network& n) {
  for (NodeId v : n.node_ids())
    if (n.indegree(v) > 2) return false;
  return true;
}

bool is_stack_free(const Network& n) {
  for (NodeId v : n.node_ids()) {
    if (!is_reticulation_shape(n, v)) continue;
    if (n.indegree(n.children(v).front()) >= 2) return false;
  }
  return true;
}

bool is_tree_child(const Network& n) {
  if (!is_stack_free(n)) return false;
  for (NodeId v : n.node_ids()) {
    if (!is_tree_node_shape(n, v)) continue;
    auto kids = n.children(v);
    if (std::all_of(kids.begin(), kids.end(), [&](NodeId c) { return n.indegree(c) >= 2; }))
      return false;
  }
  return true;
}

bool is_tree(const Network& n) {
  for (NodeId v : n.node_ids())
    if (n.indegree(v) >= 2) return false;
  return true;
}

bool is_single_leaf(const Network& n) {
  if (n.node_count() != 2 || n.leaf_count() != 1) return false;
  auto r = n.root();
  return r && n.outdegree(*r) == 1 && n.is_labeled(n.children(*r).front());
}

std::vector<ReduciblePair> reducible_pairs(const Network& n) {
  std::vector<ReduciblePair> out;
  for (const Taxon& xl : n.taxa()) {
    NodeId x = *n.leaf(xl);
    if (n.indegree(x) != 1) continue;
    NodeId px = n.parents(x).front();
    if (n.indegree(px) >= 2) {
      for (NodeId q : n.parents(px))
        for (NodeId c : n.children(q))
          if (c != px && n.is_labeled(c))
            out.push_back({{xl, n.label(c)}, PairKind::ReticulatedCherry});
    } else {
      for (NodeId c : n.children(px))
        if (c != x && n.is_labeled(c)) out.push_back({{xl, n.label(c)}, PairKind::Cherry});
    }
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::optional<PairKind> pair_kind(const Network& n, const Pair& p) {
  auto x = n.leaf(p.first);
  auto y = n.leaf(p.second);
  if (!x || !y || *x == *y || n.indegree(*x) != 1 || n.indegree(*y) != 1) return std::nullopt;
  NodeId px = n.parents(*x).front();
  NodeId py = n.parents(*y).front();
  if (px == py) return PairKind::Cherry;
  if (n.indegree(px) >= 2 && n.has_edge(py, px)) return PairKind::ReticulatedCherry;
  return std::nullopt;
}

namespace {

void require_valid(const Network& n, const char* op) {
  auto diags = validate(n);
  if (!diags.empty())
    throw std::invalid_argument(std::string(op) + ": invalid network: " + diags.front().message);
}

}  // namespace

Network reduce_pair(const Network& n, const Pair& p) {
  require_valid(n, "reduce_pair");
  Network out = n;
  out.reduce(p);
  return out;
}

Network add_pair(const Network& n, const Pair& p) {
  require_valid(n, "add_pair");
  Network out = n;
  out.add(p);
  return out;
}

std::unordered_map<NodeId, std::string> canonical_codes(const Network& n) { return node_codes(n); }

std::string canonical_code(const Network& n) {
  auto r = n.root();
  if (!r) throw std::invalid_argument("canonical_code: network has no unique root");
  return node_codes(n).at(*r);
}

bool isomorphic(const Network& a, const Network& b) {
  if (a.node_count() != b.node_count() || a.edge_count() != b.edge_count()) return false;
  if (a.taxa() != b.taxa()) return false;
  CodeMap ca = node_codes(a);
  CodeMap cb = node_codes(b);
  std::vector<std::string> la, lb;
  for (const auto& [v, c] : ca) la.push_back(c);
  for (const auto& [v, c] : cb) lb.push_back(c);
  std::sort(la.begin(), la.end());
  std::sort(lb.begin(), lb.end());
  if (la != lb) return false;
  // With pairwise distinct codes every child list resolves to unique nodes, so
  // the code multiset fixes the whole edge set.
  if (codes_injective(ca)) return true;
  return Matcher(a, b, ca, cb).run();
}

}  // namespace tcnet
