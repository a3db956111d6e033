#include "tcnet/oracle.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace tcnet {

namespace {

class Exhaustive {
 public:
  Exhaustive(const Instance& inst, std::uint64_t limit) : inst_(inst), limit_(limit) {}

  // first sequence (in lexicographic DFS order) of length <= max_len reducing everything
  std::optional<std::vector<Pair>> search(std::size_t max_len) {
    max_len_ = max_len;
    std::vector<Pair> seq;
    std::set<Taxon> used_first;
    if (dfs(inst_.networks(), seq, used_first)) return seq;
    return std::nullopt;
  }

  std::uint64_t explored() const { return explored_; }
  bool exhausted() const { return explored_ > limit_; }

 private:
  bool dfs(const std::vector<Network>& networks, std::vector<Pair>& seq, std::set<Taxon>& used_first) {
    if (++explored_ > limit_) return false;
    if (reduces_everything(networks) && is_tcs(seq)) return true;
    if (seq.size() >= max_len_) return false;
    std::set<Pair> options;
    for (const Network& n : networks)
      for (const auto& rp : reducible_pairs(n)) options.insert(rp.pair);
    for (const Pair& p : options) {
      if (used_first.contains(p.second)) continue;
      std::vector<Network> next = networks;
      for (Network& n : next) n.reduce(p);
      seq.push_back(p);
      bool inserted = used_first.insert(p.first).second;
      if (dfs(next, seq, used_first)) return true;
      if (inserted) used_first.erase(p.first);
      seq.pop_back();
      if (explored_ > limit_) return false;
    }
    return false;
  }

  static bool reduces_everything(const std::vector<Network>& networks) {
    std::optional<Taxon> leaf;
    for (const Network& n : networks) {
      if (!is_single_leaf(n)) return false;
      Taxon t = n.taxa().front();
      if (leaf && *leaf != t) return false;
      leaf = t;
    }
    return true;
  }

  const Instance& inst_;
  std::uint64_t limit_;
  std::size_t max_len_ = 0;
  std::uint64_t explored_ = 0;
};

// drops unlabeled sinks and suppresses degree-2 nodes until stable
void tidy(Network& n) {
  bool changed = true;
  while (changed) {
    changed = false;
    for (NodeId v : n.node_ids()) {
      if (!n.contains(v)) continue;
      if (!n.is_labeled(v) && n.outdegree(v) == 0 && n.indegree(v) > 0) {
        n.remove_node(v);
        changed = true;
      } else if (n.suppress(v)) {
        changed = true;
      }
    }
  }
}

std::vector<std::pair<NodeId, NodeId>> reticulation_edges(const Network& n) {
  std::vector<std::pair<NodeId, NodeId>> out;
  for (NodeId v : n.node_ids())
    if (n.indegree(v) >= 2)
      for (NodeId u : n.parents(v)) out.emplace_back(u, v);
  return out;
}

// merges the child end of every selected reticulation->reticulation edge into its parent
bool contracts_to(const Network& candidate, const Network& guest) {
  std::vector<std::pair<NodeId, NodeId>> stacked;
  for (NodeId v : candidate.node_ids())
    if (candidate.indegree(v) >= 2)
      for (NodeId c : candidate.children(v))
        if (candidate.indegree(c) >= 2) stacked.emplace_back(v, c);
  if (stacked.size() > 16) throw ResourceCeiling("too many stacked reticulations to contract");
  for (std::uint32_t mask = 1; mask < (1u << stacked.size()); ++mask) {
    Network n = candidate;
    bool ok = true;
    std::map<NodeId, NodeId> merged_into;
    for (std::size_t i = 0; i < stacked.size() && ok; ++i) {
      if (!(mask >> i & 1u)) continue;
      auto [upper, lower] = stacked[i];
      while (merged_into.contains(lower)) lower = merged_into.at(lower);
      merged_into[upper] = lower;
      // upper's only child is lower; lower takes over upper's in-edges
      std::vector<NodeId> ups(n.parents(upper).begin(), n.parents(upper).end());
      for (NodeId p : ups) {
        if (n.has_edge(p, lower)) ok = false;
        n.add_edge(p, lower);
      }
      n.remove_node(upper);
    }
    if (ok && is_valid(n) && isomorphic(n, guest)) return true;
  }
  return false;
}

}  // namespace

OracleReport brute_force_min_tcs(const Instance& inst, int k_max, std::uint64_t state_limit) {
  OracleReport report;
  std::size_t x = inst.taxa().size();
  Exhaustive search(inst, state_limit);
  for (std::size_t len = x - 1; len + 1 <= x + static_cast<std::size_t>(std::max(0, k_max)); ++len) {
    auto found = search.search(len);
    if (search.exhausted()) {
      report.inconclusive = true;
      break;
    }
    if (found) {
      report.min_weight = weight(*found);
      report.witness_sequence = TCSequence(std::move(*found), inst.taxa());
      break;
    }
  }
  report.states_explored = search.explored();
  return report;
}

bool displays_bruteforce(const Network& host, const Network& guest, int max_reticulation_edges) {
  auto guest_taxa = guest.taxa();
  for (const Taxon& t : guest_taxa)
    if (!host.has_leaf(t)) return false;
  auto edges = reticulation_edges(host);
  if (static_cast<int>(edges.size()) > max_reticulation_edges)
    throw ResourceCeiling("host has " + std::to_string(edges.size()) + " reticulation edges");
  bool contract = !is_binary(guest);

  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << edges.size()); ++mask) {
    Network n = host;
    for (std::size_t i = 0; i < edges.size(); ++i)
      if (mask >> i & 1u) n.remove_edge(edges[i].first, edges[i].second);
    // every reticulation keeps at least one incoming edge
    bool keeps_all = true;
    for (const auto& [u, v] : edges)
      if (n.indegree(v) == 0) keeps_all = false;
    if (!keeps_all) continue;
    for (const Taxon& t : host.taxa())
      if (!std::binary_search(guest_taxa.begin(), guest_taxa.end(), t)) n.remove_node(*n.leaf(t));
    tidy(n);
    if (!is_valid(n)) continue;
    if (isomorphic(n, guest)) return true;
    if (contract && contracts_to(n, guest)) return true;
  }
  return false;
}

}  // namespace tcnet
