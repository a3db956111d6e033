#include "tcnet/solver.hpp"

#include <algorithm>
#include <atomic>
#include <random>
#include <stdexcept>
#include <thread>

namespace tcnet {

Instance::Instance(std::vector<Network> networks) : networks_(std::move(networks)) {
  if (networks_.empty()) throw std::invalid_argument("instance needs at least one network");
  for (std::size_t i = 0; i < networks_.size(); ++i) {
    auto diags = validate(networks_[i]);
    if (!diags.empty())
      throw std::invalid_argument("network " + std::to_string(i + 1) + " is invalid: " + diags.front().message);
    if (!is_tree_child(networks_[i]))
      throw std::invalid_argument("network " + std::to_string(i + 1) + " is not tree-child");
  }
  auto first = networks_.front().taxa();
  taxa_ = std::set<Taxon>(first.begin(), first.end());
  for (std::size_t i = 1; i < networks_.size(); ++i)
    if (networks_[i].taxa() != first)
      throw std::invalid_argument("network " + std::to_string(i + 1) + " has a different leaf set");
}

void SearchStats::merge(const SearchStats& other) {
  nodes_expanded += other.nodes_expanded;
  trivial_reductions += other.trivial_reductions;
  max_branch_width = std::max(max_branch_width, other.max_branch_width);
  for (const auto& [reason, count] : other.failures_by_reason) failures_by_reason[reason] += count;
}

namespace {

std::vector<Pair> pairs_of(const Network& n) {
  std::vector<Pair> out;
  for (const auto& rp : reducible_pairs(n)) out.push_back(rp.pair);
  return out;
}

}  // namespace

std::vector<Pair> all_reducible_pairs(std::span<const Network> networks) {
  std::vector<Pair> out;
  for (const Network& n : networks) {
    auto ps = pairs_of(n);
    out.insert(out.end(), ps.begin(), ps.end());
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::vector<Pair> trivial_pairs(std::span<const Network> networks) {
  std::vector<std::vector<Pair>> per_network;
  for (const Network& n : networks) per_network.push_back(pairs_of(n));
  std::vector<Pair> out;
  for (const Pair& candidate : all_reducible_pairs(networks)) {
    bool trivial = true;
    for (std::size_t i = 0; i < networks.size() && trivial; ++i) {
      if (!networks[i].has_leaf(candidate.first)) continue;
      trivial = std::binary_search(per_network[i].begin(), per_network[i].end(), candidate);
    }
    if (trivial) out.push_back(candidate);
  }
  return out;
}

std::optional<IncompatibilityWitness> quick_incompatibility(std::span<const Network> networks) {
  std::vector<std::vector<Pair>> reticulated(networks.size());
  for (std::size_t i = 0; i < networks.size(); ++i)
    for (const auto& rp : reducible_pairs(networks[i]))
      if (rp.kind == PairKind::ReticulatedCherry) reticulated[i].push_back(rp.pair);
  for (std::size_t a = 0; a < networks.size(); ++a)
    for (const Pair& p : reticulated[a])
      for (std::size_t b = 0; b < networks.size(); ++b) {
        Pair flipped{p.second, p.first};
        if (std::binary_search(reticulated[b].begin(), reticulated[b].end(), flipped))
          return IncompatibilityWitness{p, a, b};
      }
  return std::nullopt;
}

namespace {

struct State {
  std::vector<Network> networks;
  std::vector<Pair> sequence;
  std::set<Taxon> forbidden;

  void apply(const Pair& p) {
    for (Network& n : networks) n.reduce(p);
    sequence.push_back(p);
    forbidden.insert(p.first);
  }
};

using Candidate = std::optional<std::vector<Pair>>;

// minimum weight first, then the lexicographically least sequence
bool better(const std::vector<Pair>& a, const Candidate& b) {
  if (!b) return true;
  int wa = weight(a), wb = weight(*b);
  return wa != wb ? wa < wb : a < *b;
}

class Search {
 public:
  Search(std::size_t taxa_count, const SolverOptions& options)
      : taxa_count_(static_cast<int>(taxa_count)), options_(options), rng_(options.shuffle_seed.value_or(0)) {}

  Candidate run(State state, int k, SearchStats& stats, bool may_fork) {
    ++stats.nodes_expanded;

    while (true) {
      auto trivial = trivial_pairs(state.networks);
      auto it = std::find_if(trivial.begin(), trivial.end(),
                             [&](const Pair& p) { return !state.forbidden.contains(p.second); });
      if (it == trivial.end()) break;
      state.apply(*it);
      ++stats.trivial_reductions;
    }

    if (has_forbidden_pair(state)) return fail(stats, "forbidden-pair");

    std::set<Taxon> present;
    for (const Network& n : state.networks)
      for (const Taxon& t : n.taxa()) present.insert(t);
    int current = static_cast<int>(state.sequence.size()) - taxa_count_ + static_cast<int>(present.size());

    auto pairs = all_reducible_pairs(state.networks);
    if (pairs.empty()) {
      if (current > k) return fail(stats, "budget");
      return state.sequence;
    }
    if (pairs.size() > 8 * static_cast<std::size_t>(k)) return fail(stats, "too-many-pairs");
    if (current >= k) return fail(stats, "budget");
    stats.max_branch_width = std::max(stats.max_branch_width, pairs.size());

    std::vector<Pair> branches;
    for (const Pair& p : pairs)
      if (!state.forbidden.contains(p.second)) branches.push_back(p);
    if (options_.shuffle_seed) std::shuffle(branches.begin(), branches.end(), rng_);

    Candidate best = may_fork && options_.threads > 1 ? run_parallel(state, branches, k, stats)
                                                      : run_sequential(state, branches, k, stats);
    if (!best) return fail(stats, "dead-end");
    return best;
  }

 private:
  Candidate run_sequential(const State& state, const std::vector<Pair>& branches, int k, SearchStats& stats) {
    Candidate best;
    int budget = k;
    for (const Pair& p : branches) {
      State child = state;
      child.apply(p);
      auto found = run(std::move(child), budget, stats, false);
      if (!found || !better(*found, best)) continue;
      best = std::move(found);
      if (!options_.prune) continue;
      // in lexicographic order a later branch can only win with a smaller weight
      budget = options_.shuffle_seed ? weight(*best) : weight(*best) - 1;
      if (budget < 0) break;
    }
    return best;
  }

  Candidate run_parallel(const State& state, const std::vector<Pair>& branches, int k, SearchStats& stats) {
    std::vector<Candidate> results(branches.size());
    std::vector<SearchStats> branch_stats(branches.size());
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
      // each worker owns its search object so the shuffle RNG is not shared
      Search local(static_cast<std::size_t>(taxa_count_), options_);
      for (std::size_t i = next++; i < branches.size(); i = next++) {
        State child = state;
        child.apply(branches[i]);
        results[i] = local.run(std::move(child), k, branch_stats[i], false);
      }
    };
    std::vector<std::jthread> pool;
    unsigned count = std::min<unsigned>(options_.threads, static_cast<unsigned>(branches.size()));
    for (unsigned t = 0; t < count; ++t) pool.emplace_back(worker);
    pool.clear();
    Candidate best;
    for (std::size_t i = 0; i < branches.size(); ++i) {
      stats.merge(branch_stats[i]);
      if (results[i] && better(*results[i], best)) best = std::move(results[i]);
    }
    return best;
  }

  static bool has_forbidden_pair(const State& state) {
    for (const Network& n : state.networks)
      for (const auto& rp : reducible_pairs(n)) {
        bool second_forbidden = state.forbidden.contains(rp.pair.second);
        if (rp.kind == PairKind::ReticulatedCherry && second_forbidden) return true;
        if (rp.kind == PairKind::Cherry && second_forbidden && state.forbidden.contains(rp.pair.first))
          return true;
      }
    return false;
  }

  static Candidate fail(SearchStats& stats, const char* reason) {
    ++stats.failures_by_reason[reason];
    return std::nullopt;
  }

  int taxa_count_;
  const SolverOptions& options_;
  std::mt19937_64 rng_;
};

}  // namespace

std::optional<TCSequence> tree_child_sequence(const Instance& inst, const PartialTCS& prefix, int k,
                                              const SolverOptions& options, SearchStats* stats) {
  if (k < 0) throw std::invalid_argument("budget must be non-negative");
  if (!is_extendable(prefix.pairs(), inst.taxa())) throw std::invalid_argument("prefix is not extendable");
  State start{inst.networks(), {}, {}};
  for (const Pair& p : prefix.pairs()) start.apply(p);

  SearchStats local;
  SearchStats& s = stats ? *stats : local;
  Search search(inst.taxa().size(), options);
  auto found = search.run(std::move(start), k, s, true);
  if (!found) return std::nullopt;
  return TCSequence(std::move(*found), inst.taxa());
}

std::optional<Network> tree_child_network(const Instance& inst, int k, const SolverOptions& options,
                                          SearchStats* stats) {
  auto seq = tree_child_sequence(inst, PartialTCS{}, k, options, stats);
  if (!seq) return std::nullopt;
  return construct_network(*seq);
}

int exhaustive_budget(const Instance& inst) {
  int x = static_cast<int>(inst.taxa().size());
  int reductions = 0;
  for (const Network& n : inst.networks()) reductions += x - 1 + reticulation_number(n);
  return std::max(0, reductions - x + 1);
}

SolveOutcome solve(const Instance& inst, std::optional<int> k_max, const SolverOptions& options) {
  SolveOutcome outcome;
  if (auto w = quick_incompatibility(inst)) {
    outcome.status = SolveOutcome::Status::Incompatible;
    outcome.witness = w;
    return outcome;
  }
  int bound = exhaustive_budget(inst);
  int limit = std::min(k_max.value_or(bound), bound);
  std::uint64_t total = 0;
  for (int k = 0; k <= limit; ++k) {
    SearchStats stats;
    auto seq = tree_child_sequence(inst, PartialTCS{}, k, options, &stats);
    total += stats.nodes_expanded;
    outcome.last_budget = k;
    if (!seq) continue;
    SolveResult result;
    result.network = construct_network(*seq);
    result.weight = weight(*seq);
    result.sequence = std::move(*seq);
    result.budget = k;
    result.stats = std::move(stats);
    result.total_nodes_expanded = total;
    outcome.status = SolveOutcome::Status::Solved;
    outcome.result = std::move(result);
    return outcome;
  }
  outcome.status = limit >= bound ? SolveOutcome::Status::NoSolution : SolveOutcome::Status::BudgetExhausted;
  return outcome;
}

}  // namespace tcnet
