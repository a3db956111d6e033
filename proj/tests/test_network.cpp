#include <doctest.h>

#include <algorithm>
#include <map>

#include "helpers.hpp"
#include "tcnet/network.hpp"

using namespace tcnet;
using namespace tcnet::test;

namespace {

bool has_code(const std::vector<Diagnostic>& diags, Diagnostic::Code code) {
  return std::any_of(diags.begin(), diags.end(), [&](const Diagnostic& d) { return d.code == code; });
}

// root -> t, t -> p, t -> q, q -> p, q -> y, p -> x
Network binary_reticulated_cherry() {
  Network n;
  NodeId r = n.add_node(), t = n.add_node(), p = n.add_node(), q = n.add_node();
  NodeId x = n.add_leaf("x"), y = n.add_leaf("y");
  n.add_edge(r, t);
  n.add_edge(t, p);
  n.add_edge(t, q);
  n.add_edge(q, p);
  n.add_edge(q, y);
  n.add_edge(p, x);
  return n;
}

}  // namespace

TEST_CASE("validate accepts the single-leaf tree") {
  CHECK(validate(Network::single_leaf("x")).empty());
}

TEST_CASE("validate reports a node that is neither tree node nor reticulation") {
  Network n;
  NodeId r = n.add_node(), v = n.add_node();
  n.add_edge(r, v);
  for (const char* l : {"a", "b", "c"}) n.add_edge(v, n.add_leaf(l));
  auto diags = validate(n);
  REQUIRE(has_code(diags, Diagnostic::Code::BadDegree));
  auto it = std::find_if(diags.begin(), diags.end(), [](auto& d) { return d.code == Diagnostic::Code::BadDegree; });
  CHECK(it->message.find("not a tree node/reticulation") != std::string::npos);
  CHECK(it->nodes == std::vector<NodeId>{v});
}

TEST_CASE("validate reports a directed cycle") {
  Network n;
  NodeId r = n.add_node(), a = n.add_node(), b = n.add_node();
  NodeId x = n.add_leaf("x");
  n.add_edge(r, a);
  n.add_edge(a, b);
  n.add_edge(b, a);
  n.add_edge(b, x);
  auto diags = validate(n);
  REQUIRE(has_code(diags, Diagnostic::Code::Cycle));
  auto it = std::find_if(diags.begin(), diags.end(), [](auto& d) { return d.code == Diagnostic::Code::Cycle; });
  CHECK(it->message.find("cycle") != std::string::npos);
  std::vector<NodeId> nodes = it->nodes;
  std::sort(nodes.begin(), nodes.end());
  CHECK(std::find(nodes.begin(), nodes.end(), a) != nodes.end());
  CHECK(std::find(nodes.begin(), nodes.end(), b) != nodes.end());
}

TEST_CASE("validate covers roots, leaves and parallel edges") {
  CHECK(has_code(validate(Network{}), Diagnostic::Code::Empty));

  Network two_roots;
  NodeId r1 = two_roots.add_node(), r2 = two_roots.add_node();
  two_roots.add_edge(r1, two_roots.add_leaf("a"));
  two_roots.add_edge(r2, two_roots.add_leaf("b"));
  CHECK(has_code(validate(two_roots), Diagnostic::Code::MultipleRoots));

  Network wide_root;
  NodeId r = wide_root.add_node();
  wide_root.add_edge(r, wide_root.add_leaf("a"));
  wide_root.add_edge(r, wide_root.add_leaf("b"));
  CHECK(has_code(validate(wide_root), Diagnostic::Code::RootDegree));

  Network bare;
  NodeId br = bare.add_node(), t = bare.add_node(), u = bare.add_node();
  bare.add_edge(br, t);
  bare.add_edge(t, u);
  bare.add_edge(t, bare.add_leaf("a"));
  CHECK(has_code(validate(bare), Diagnostic::Code::UnlabeledLeaf));

  Network parallel;
  NodeId pr = parallel.add_node(), pt = parallel.add_node(), ret = parallel.add_node();
  parallel.add_edge(pr, pt);
  parallel.add_edge(pt, ret);
  parallel.add_edge(pt, ret);
  parallel.add_edge(ret, parallel.add_leaf("a"));
  CHECK(has_code(validate(parallel), Diagnostic::Code::ParallelEdge));

  Network leafy;
  NodeId lr = leafy.add_node(), lt = leafy.add_node();
  NodeId a = leafy.add_leaf("a");
  leafy.add_edge(lr, lt);
  leafy.add_edge(lt, a);
  leafy.add_edge(lt, leafy.add_leaf("b"));
  leafy.add_edge(a, leafy.add_leaf("c"));
  CHECK(has_code(validate(leafy), Diagnostic::Code::LeafDegree));
}

TEST_CASE("leaf labels are unique and non-empty") {
  Network n;
  n.add_leaf("a");
  CHECK_THROWS_AS(n.add_leaf("a"), std::invalid_argument);
  CHECK_THROWS_AS(n.add_leaf(""), std::invalid_argument);
}

TEST_CASE("node_kind classifies by degree") {
  Network leaf = Network::single_leaf("x");
  CHECK(node_kind(leaf, *leaf.root()) == NodeKind::Root);
  CHECK(node_kind(leaf, *leaf.leaf("x")) == NodeKind::Leaf);
  CHECK_THROWS_AS(node_kind(leaf, 99), std::out_of_range);

  Network n = binary_reticulated_cherry();
  NodeId x = *n.leaf("x");
  NodeId p = n.parents(x).front();
  CHECK(node_kind(n, p) == NodeKind::Reticulation);
  NodeId y = *n.leaf("y");
  CHECK(node_kind(n, n.parents(y).front()) == NodeKind::TreeNode);
}

TEST_CASE("reticulation number") {
  CHECK(reticulation_number(net("((1,2),(3,4));")) == 0);
  // two binary reticulations
  CHECK(reticulation_number(net("(((1)#H1,(#H1,2)),((3)#H2,(#H2,4)));")) == 2);
  // one reticulation of indegree 3
  Network three = net("((((1)#H1,(#H1,2)),(#H1,3)),4);");
  CHECK(reticulation_number(three) == 2);
  CHECK_FALSE(is_binary(three));
}

TEST_CASE("binary, stack-free and tree-child flags") {
  Network tree = net("((1,2),3);");
  CHECK(is_binary(tree));
  CHECK(is_stack_free(tree));
  CHECK(is_tree_child(tree));

  // reticulation whose only child is a reticulation
  Network stack;
  NodeId r = stack.add_node(), t = stack.add_node(), a = stack.add_node(), b = stack.add_node();
  NodeId h1 = stack.add_node(), h2 = stack.add_node();
  stack.add_edge(r, t);
  stack.add_edge(t, a);
  stack.add_edge(t, b);
  stack.add_edge(a, h1);
  stack.add_edge(b, h1);
  stack.add_edge(h1, h2);
  NodeId c = stack.add_node();
  stack.add_edge(a, c);
  stack.add_edge(c, h2);
  stack.add_edge(c, stack.add_leaf("y"));
  stack.add_edge(h2, stack.add_leaf("x"));
  stack.add_edge(b, stack.add_leaf("z"));
  // a now has outdegree 2 (h1, c) and b has (h1, z)
  REQUIRE(validate(stack).empty());
  CHECK_FALSE(is_stack_free(stack));
  CHECK_FALSE(is_tree_child(stack));

  // stack-free, but a tree node with two reticulation children
  Network tc_violation = net("((((1)#H1,(2)#H2),(#H1,3)),(#H2,4));");
  CHECK(is_stack_free(tc_violation));
  CHECK_FALSE(is_tree_child(tc_violation));
}

TEST_CASE("reducible pairs") {
  auto cherry = reducible_pairs(net("(x,y);"));
  CHECK(cherry == std::vector<ReduciblePair>{{{"x", "y"}, PairKind::Cherry}, {{"y", "x"}, PairKind::Cherry}});

  auto ret = reducible_pairs(binary_reticulated_cherry());
  CHECK(ret == std::vector<ReduciblePair>{{{"x", "y"}, PairKind::ReticulatedCherry}});

  CHECK(reducible_pairs(Network::single_leaf("x")).empty());
}

TEST_CASE("reduce_pair") {
  Network cherry = net("(x,y);");
  CHECK(isomorphic(reduce_pair(cherry, {"x", "y"}), Network::single_leaf("y")));

  Network ret = binary_reticulated_cherry();
  CHECK(isomorphic(reduce_pair(ret, {"x", "y"}), cherry));

  Network tree = net("((a,b),c);");
  CHECK(isomorphic(reduce_pair(tree, {"a", "c"}), tree));
  CHECK(isomorphic(reduce_pair(tree, {"q", "c"}), tree));
  // (y,x) is not a reticulated cherry
  CHECK(isomorphic(reduce_pair(ret, {"y", "x"}), ret));

  Network broken;
  broken.add_node();
  CHECK_THROWS_AS(reduce_pair(broken, {"a", "b"}), std::invalid_argument);
}

TEST_CASE("add_pair follows the three construction cases") {
  // case 2: new leaf
  CHECK(isomorphic(add_pair(Network::single_leaf("y"), {"x", "y"}), net("(x,y);")));

  // case 1b: hand-applied on the cherry gives the binary reticulated cherry
  Network built = add_pair(net("(x,y);"), {"x", "y"});
  CHECK(isomorphic(built, binary_reticulated_cherry()));
  CHECK(reticulation_number(built) == 1);
  CHECK(isomorphic(reduce_pair(built, {"x", "y"}), net("(x,y);")));

  // case 1a: x already hangs below a reticulation, which gains a third parent
  Network base = net("(((x)#H1,(#H1,y)),z);");
  Network grown = add_pair(base, {"x", "z"});
  NodeId px = grown.parents(*grown.leaf("x")).front();
  CHECK(grown.indegree(px) == 3);
  CHECK(reticulation_number(grown) == 2);
  CHECK(is_stack_free(grown));
  CHECK(is_tree_child(grown));
  CHECK(isomorphic(reduce_pair(grown, {"x", "z"}), base));

  CHECK_THROWS_AS(add_pair(net("(x,y);"), {"x", "w"}), std::invalid_argument);
  CHECK_THROWS_AS(add_pair(net("(x,y);"), {"y", "y"}), std::invalid_argument);
}

TEST_CASE("isomorphism fixes labels and ignores ids") {
  Network n = net("((1,2),3);");
  CHECK(isomorphic(n, n));
  CHECK_FALSE(isomorphic(net("(x,y);"), net("(x,z);")));
  CHECK(isomorphic(net("((1,2),3);"), net("(3,(2,1));")));
  CHECK_FALSE(isomorphic(net("((1,2),3);"), net("((1,3),2);")));

  // same network, nodes created in a different order
  Network a = binary_reticulated_cherry();
  Network b;
  NodeId y = b.add_leaf("y"), x = b.add_leaf("x");
  NodeId q = b.add_node(), p = b.add_node(), t = b.add_node(), r = b.add_node();
  b.add_edge(p, x);
  b.add_edge(q, y);
  b.add_edge(q, p);
  b.add_edge(t, q);
  b.add_edge(t, p);
  b.add_edge(r, t);
  CHECK(isomorphic(a, b));

  CHECK_FALSE(isomorphic(net("(((x)#H1,(#H1,y)),z);"), net("((x,y),z);")));
}

TEST_CASE("isomorphism with twin nodes falls back to matching") {
  // two tree nodes with identical children: codes collide
  auto twins = [](bool swap_leaves) {
    Network n;
    NodeId r = n.add_node(), t = n.add_node(), u = n.add_node(), v = n.add_node();
    NodeId h1 = n.add_node(), h2 = n.add_node(), w = n.add_node();
    n.add_edge(r, w);
    n.add_edge(w, t);
    n.add_edge(w, n.add_leaf("c"));
    n.add_edge(t, u);
    n.add_edge(t, v);
    n.add_edge(u, h1);
    n.add_edge(u, h2);
    n.add_edge(v, h1);
    n.add_edge(v, h2);
    n.add_edge(h1, n.add_leaf(swap_leaves ? "b" : "a"));
    n.add_edge(h2, n.add_leaf(swap_leaves ? "a" : "b"));
    return n;
  };
  REQUIRE(validate(twins(false)).empty());
  CHECK(isomorphic(twins(false), twins(true)));
  CHECK_FALSE(isomorphic(twins(false), net("((a,b),c);")));
}

TEST_CASE("property: reduce/add round trip on random tree-child networks") {
  for (std::uint64_t seed = 1; seed <= 60; ++seed) {
    Network n = random_network(2 + static_cast<int>(seed % 6), static_cast<int>(seed % 4), seed);
    REQUIRE(validate(n).empty());
    REQUIRE(is_tree_child(n));
    for (const auto& rp : reducible_pairs(n)) {
      Network reduced = reduce_pair(n, rp.pair);
      CHECK(validate(reduced).empty());
      CHECK(is_tree_child(reduced));
      CHECK(reticulation_number(reduced) <= reticulation_number(n));
      CHECK(isomorphic(add_pair(reduced, rp.pair), n));
    }
  }
}

TEST_CASE("property: each leaf is the second coordinate of at most one reducible pair") {
  for (std::uint64_t seed = 1; seed <= 80; ++seed) {
    Network n = random_network(2 + static_cast<int>(seed % 7), static_cast<int>(seed % 5), seed * 7);
    std::map<Taxon, int> seconds;
    for (const auto& rp : reducible_pairs(n)) ++seconds[rp.pair.second];
    for (const auto& [t, count] : seconds) CHECK(count == 1);
  }
}

TEST_CASE("property: reduce_pair changes the network iff the pair is reducible") {
  for (std::uint64_t seed = 1; seed <= 40; ++seed) {
    Network n = random_network(2 + static_cast<int>(seed % 5), static_cast<int>(seed % 3), seed * 13);
    auto pairs = pair_list(reducible_pairs(n));
    for (const Taxon& a : n.taxa())
      for (const Taxon& b : n.taxa()) {
        if (a == b) continue;
        bool listed = std::binary_search(pairs.begin(), pairs.end(), Pair{a, b});
        CHECK(listed == !isomorphic(reduce_pair(n, {a, b}), n));
        CHECK(listed == pair_kind(n, {a, b}).has_value());
      }
  }
}
