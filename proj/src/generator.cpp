#include "tcnet/generator.hpp"

#include <algorithm>
#include <random>
#include <set>
#include <stdexcept>

namespace tcnet {

namespace {

std::size_t pick(std::mt19937_64& rng, std::size_t n) {
  return std::uniform_int_distribution<std::size_t>(0, n - 1)(rng);
}

struct Option {
  Taxon first;
  Taxon second;
  bool new_leaf;
};

}  // namespace

void check_config(const GeneratorConfig& cfg) {
  if (cfg.taxa_count < 1 || cfg.taxa_count > kMaxGeneratorTaxa)
    throw std::invalid_argument("taxa count must be in [1, " + std::to_string(kMaxGeneratorTaxa) + "]");
  if (cfg.target_weight < 0 || cfg.target_weight > kMaxGeneratorWeight)
    throw std::invalid_argument("target weight must be in [0, " + std::to_string(kMaxGeneratorWeight) + "]");
  if (cfg.subnetwork_count < 1) throw std::invalid_argument("subnetwork count must be at least 1");
  if (cfg.taxa_count == 1 && cfg.target_weight > 0)
    throw std::invalid_argument("a single taxon admits only weight 0");
}

TCSequence random_tcs(const GeneratorConfig& cfg) {
  check_config(cfg);
  std::mt19937_64 rng(cfg.seed);
  std::vector<Taxon> labels;
  for (int i = 1; i <= cfg.taxa_count; ++i) labels.push_back(std::to_string(i));
  std::shuffle(labels.begin(), labels.end(), rng);
  std::set<Taxon> universe(labels.begin(), labels.end());
  if (cfg.taxa_count == 1) return TCSequence({}, universe);

  // Built from the last pair backwards. `active` holds the leaves placed so
  // far, `seconds` those already used as a second coordinate (so they may no
  // longer be a first coordinate of an earlier pair).
  std::set<Taxon> active{labels.front()};
  std::set<Taxon> seconds{labels.front()};
  std::size_t next_label = 1;
  int new_left = cfg.taxa_count - 1;
  int reticulations_left = cfg.target_weight;
  std::vector<Pair> backwards;

  while (new_left + reticulations_left > 0) {
    std::vector<Option> options;
    if (new_left > 0)
      for (const Taxon& y : active) options.push_back({labels[next_label], y, true});
    if (reticulations_left > 0) {
      for (const Taxon& x : active) {
        if (seconds.contains(x)) continue;
        for (const Taxon& y : active) {
          if (y == x) continue;
          // an existing-leaf step needs a leaf that is not yet a second coordinate
          std::size_t free_after = active.size() - seconds.size() - (seconds.contains(y) ? 0 : 1);
          if (free_after == 0 && new_left == 0 && reticulations_left > 1) continue;
          options.push_back({x, y, false});
        }
      }
    }
    if (options.empty()) throw std::logic_error("random_tcs: no feasible step");
    const Option& o = options[pick(rng, options.size())];
    backwards.push_back({o.first, o.second});
    seconds.insert(o.second);
    if (o.new_leaf) {
      active.insert(o.first);
      ++next_label;
      --new_left;
    } else {
      --reticulations_left;
    }
  }
  std::reverse(backwards.begin(), backwards.end());
  return TCSequence(std::move(backwards), universe);
}

Network delete_reticulation_edges(const Network& n, const std::vector<std::pair<NodeId, NodeId>>& edges) {
  Network out = n;
  for (const auto& [u, v] : edges) out.remove_edge(u, v);
  out.suppress_all();
  return out;
}

GeneratedInstance generate_instance(const GeneratorConfig& cfg) {
  TCSequence seq = random_tcs(cfg);
  Network host = construct_network(seq);
  std::mt19937_64 rng(cfg.seed ^ 0x9e3779b97f4a7c15ULL);

  std::vector<NodeId> reticulations;
  for (NodeId v : host.node_ids())
    if (host.indegree(v) >= 2) reticulations.push_back(v);

  std::vector<Network> derived;
  for (int i = 0; i < cfg.subnetwork_count; ++i) {
    if (reticulations.empty()) {
      derived.push_back(host);
      continue;
    }
    std::vector<std::pair<NodeId, NodeId>> chosen;
    while (chosen.empty()) {
      for (NodeId r : reticulations) {
        std::vector<NodeId> parents(host.parents(r).begin(), host.parents(r).end());
        std::shuffle(parents.begin(), parents.end(), rng);
        std::size_t drop = pick(rng, parents.size());  // 0 .. indegree-1
        for (std::size_t j = 0; j < drop; ++j) chosen.emplace_back(parents[j], r);
      }
    }
    derived.push_back(delete_reticulation_edges(host, chosen));
  }
  return {std::move(seq), std::move(host), Instance(std::move(derived))};
}

}  // namespace tcnet
