#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <vector>

#include "tcnet/network.hpp"
#include "tcnet/sequence.hpp"

namespace tcnet {

/// Input of the hybridization problem: tree-child networks on one taxon set.
class Instance {
 public:
  // throws std::invalid_argument when empty, when a network is invalid or not
  // tree-child, or when the leaf sets differ
  explicit Instance(std::vector<Network> networks);

  const std::vector<Network>& networks() const { return networks_; }
  const std::set<Taxon>& taxa() const { return taxa_; }

 private:
  std::vector<Network> networks_;
  std::set<Taxon> taxa_;
};

struct SearchStats {
  std::uint64_t nodes_expanded = 0;
  std::uint64_t trivial_reductions = 0;
  // largest reducible-pair count at a state that was branched on
  std::size_t max_branch_width = 0;
  // "forbidden-pair", "too-many-pairs", "budget", "dead-end"
  std::map<std::string, std::uint64_t> failures_by_reason;

  void merge(const SearchStats& other);
};

struct IncompatibilityWitness {
  Pair pair;  // (x,y) reticulated cherry in network_a, (y,x) in network_b
  std::size_t network_a = 0;
  std::size_t network_b = 0;
};

struct SolverOptions {
  // tighten the budget to the best weight found so far while branching
  bool prune = false;
  // worker threads for the first branching level; 1 = sequential
  unsigned threads = 1;
  // shuffle the branch order; the result is the same for every order
  std::optional<std::uint64_t> shuffle_seed;
};

struct SolveResult {
  TCSequence sequence;
  Network network;
  int weight = 0;
  // budget of the accepting run
  int budget = 0;
  SearchStats stats;
  std::uint64_t total_nodes_expanded = 0;
};

struct SolveOutcome {
  enum class Status {
    Solved,
    // conflicting reticulated cherries
    Incompatible,
    // searched up to the sequence-length bound without success
    NoSolution,
    // stopped at a caller-supplied k_max below that bound
    BudgetExhausted,
  };
  Status status = Status::NoSolution;
  std::optional<SolveResult> result;
  std::optional<IncompatibilityWitness> witness;
  int last_budget = -1;
};

// Ordered pairs (x,y) such that every network lacks x or has the reducible
// pair (x,y), and at least one network has it. Sorted.
std::vector<Pair> trivial_pairs(std::span<const Network> networks);

// Union of the reducible pairs of all networks, sorted.
std::vector<Pair> all_reducible_pairs(std::span<const Network> networks);

std::optional<IncompatibilityWitness> quick_incompatibility(std::span<const Network> networks);
inline std::optional<IncompatibilityWitness> quick_incompatibility(const Instance& inst) {
  return quick_incompatibility(std::span<const Network>(inst.networks()));
}

// Minimum-weight completion of `prefix` with weight <= k, or nullopt.
// Throws std::invalid_argument if the prefix is not extendable or k < 0.
std::optional<TCSequence> tree_child_sequence(const Instance& inst, const PartialTCS& prefix, int k,
                                              const SolverOptions& options = {},
                                              SearchStats* stats = nullptr);

std::optional<Network> tree_child_network(const Instance& inst, int k, const SolverOptions& options = {},
                                          SearchStats* stats = nullptr);

// Weight bound covering every sequence the search can produce: each pair
// reduces something in at least one network.
int exhaustive_budget(const Instance& inst);

// Iterative deepening over k = 0, 1, ... up to k_max (default: exhaustive_budget).
SolveOutcome solve(const Instance& inst, std::optional<int> k_max = std::nullopt,
                   const SolverOptions& options = {});

}  // namespace tcnet
