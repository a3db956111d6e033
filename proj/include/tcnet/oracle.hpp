#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <vector>

#include "tcnet/network.hpp"
#include "tcnet/sequence.hpp"
#include "tcnet/solver.hpp"

namespace tcnet {

// Thrown when an oracle would exceed its size ceiling.
class ResourceCeiling : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct OracleReport {
  std::optional<int> min_weight;
  std::optional<TCSequence> witness_sequence;
  std::uint64_t states_explored = 0;
  // the state limit was hit before the search finished
  bool inconclusive = false;
};

// Exhaustive depth-first search for a minimum-weight tree-child sequence.
// Every reducible pair is tried at every state; the only restrictions are
// condition 2 and the length bound implied by k_max. None of the solver's
// shortcuts (trivial pairs, the 8k cutoff) are used.
OracleReport brute_force_min_tcs(const Instance& inst, int k_max, std::uint64_t state_limit = 20'000'000);

// Whether `guest` arises from `host` by deleting reticulation edges, removing
// leaves outside the guest's taxa, suppressing degree-2 nodes, and merging
// stacked reticulations. Throws ResourceCeiling above max_reticulation_edges.
bool displays_bruteforce(const Network& host, const Network& guest, int max_reticulation_edges = 20);

}  // namespace tcnet
