#pragma once

#include <cstdint>
#include <vector>

#include "tcnet/network.hpp"
#include "tcnet/sequence.hpp"
#include "tcnet/solver.hpp"

namespace tcnet {

struct GeneratorConfig {
  int taxa_count = 4;
  int target_weight = 1;
  std::uint64_t seed = 1;
  int subnetwork_count = 2;
};

inline constexpr int kMaxGeneratorTaxa = 12;
inline constexpr int kMaxGeneratorWeight = 6;

// throws std::invalid_argument for out-of-range or infeasible configurations
void check_config(const GeneratorConfig& cfg);

// Labels "1".."taxa_count". The sequence is drawn backwards: each step picks
// uniformly among the pairs that keep it a tree-child sequence and can still
// reach the exact target weight.
TCSequence random_tcs(const GeneratorConfig& cfg);

struct GeneratedInstance {
  TCSequence sequence;
  // network built from the sequence; displays every instance network
  Network host;
  Instance instance;
};

// Each instance network is the host with a random non-empty set of
// reticulation edges deleted (every reticulation keeps an incoming edge).
GeneratedInstance generate_instance(const GeneratorConfig& cfg);

// Deletes the given reticulation edges and suppresses the nodes left with one
// parent and one child. Used by the generator and by tests that need
// displayed networks.
Network delete_reticulation_edges(const Network& n, const std::vector<std::pair<NodeId, NodeId>>& edges);

}  // namespace tcnet
