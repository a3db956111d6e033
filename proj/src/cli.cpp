#include "tcnet/cli.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <optional>
#include <sstream>

#include "tcnet/enewick.hpp"
#include "tcnet/generator.hpp"
#include "tcnet/sequence.hpp"
#include "tcnet/solver.hpp"

namespace tcnet {

namespace {

// thrown for unreadable or malformed input; carries the message for stderr
struct InputError {
  std::string message;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError{"cannot read '" + path + "'"};
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

ENewickDocument read_networks(const std::string& path) {
  std::string text = read_file(path);
  try {
    return parse_document(text);
  } catch (const ParseError& e) {
    throw InputError{path + ":" + e.what()};
  }
}

std::vector<Pair> read_sequence(const std::string& path) {
  std::string text = read_file(path);
  try {
    return parse_sequence_text(text);
  } catch (const ParseError& e) {
    throw InputError{path + ":" + e.what()};
  }
}

Instance make_instance(const std::string& path) {
  auto doc = read_networks(path);
  if (doc.networks.empty()) throw InputError{path + ": no networks"};
  try {
    return Instance(std::move(doc.networks));
  } catch (const std::invalid_argument& e) {
    throw InputError{path + ": " + e.what()};
  }
}

std::string describe(const IncompatibilityWitness& w) {
  const Pair& p = w.pair;
  return "incompatible: network " + std::to_string(w.network_a + 1) + " has reticulated cherry (" + p.first +
         "," + p.second + ") and network " + std::to_string(w.network_b + 1) + " has reticulated cherry (" +
         p.second + "," + p.first + ")";
}

const char* yes_no(bool b) { return b ? "yes" : "no"; }

int cmd_solve(const std::string& file, std::optional<int> max_k, bool prune, bool show_stats,
              std::optional<std::uint64_t> seed, unsigned threads, std::ostream& out, std::ostream& err) {
  Instance inst = make_instance(file);
  SolverOptions options;
  options.prune = prune;
  options.threads = std::max(1u, threads);
  options.shuffle_seed = seed;
  SolveOutcome outcome = solve(inst, max_k, options);
  switch (outcome.status) {
    case SolveOutcome::Status::Solved: {
      const SolveResult& r = *outcome.result;
      out << "# weight=" << r.weight << '\n';
      out << format_sequence(r.sequence.pairs());
      out << write_enewick(r.network) << '\n';
      if (show_stats) {
        err << "budget: " << r.budget << '\n'
            << "nodes expanded: " << r.stats.nodes_expanded << '\n'
            << "nodes expanded (all budgets): " << r.total_nodes_expanded << '\n'
            << "trivial reductions: " << r.stats.trivial_reductions << '\n'
            << "max branch width: " << r.stats.max_branch_width << '\n';
        for (const auto& [reason, count] : r.stats.failures_by_reason)
          err << "failures (" << reason << "): " << count << '\n';
      }
      return kExitSuccess;
    }
    case SolveOutcome::Status::Incompatible:
      out << describe(*outcome.witness) << '\n';
      return kExitNoSolution;
    case SolveOutcome::Status::NoSolution:
      err << "no tree-child network displays the input networks\n";
      return kExitNoSolution;
    case SolveOutcome::Status::BudgetExhausted:
      err << "no solution with weight <= " << outcome.last_budget << '\n';
      return kExitNoSolution;
  }
  return kExitNoSolution;
}

int cmd_reduce(const std::string& file, const std::string& seq_file, std::ostream& out) {
  auto doc = read_networks(file);
  auto pairs = read_sequence(seq_file);
  for (const Network& n : doc.networks) out << write_enewick(reduce_by_sequence(n, pairs)) << '\n';
  return kExitSuccess;
}

int cmd_construct(const std::string& seq_file, std::ostream& out) {
  auto pairs = read_sequence(seq_file);
  if (pairs.empty()) throw InputError{seq_file + ": empty sequence"};
  if (!is_tcs(pairs)) throw InputError{seq_file + ": not a tree-child sequence"};
  out << write_enewick(construct_network(TCSequence(pairs))) << '\n';
  return kExitSuccess;
}

int cmd_check(const std::string& file, std::ostream& out) {
  auto doc = read_networks(file);
  bool all_tree_child = true;
  for (std::size_t i = 0; i < doc.networks.size(); ++i) {
    const Network& n = doc.networks[i];
    bool tc = is_tree_child(n);
    all_tree_child = all_tree_child && tc;
    out << "network " << i + 1 << " (line " << doc.lines[i] << "): leaves=" << n.leaf_count()
        << " reticulation-number=" << reticulation_number(n) << " binary=" << yes_no(is_binary(n))
        << " stack-free=" << yes_no(is_stack_free(n)) << " tree-child=" << yes_no(tc) << '\n';
  }
  if (all_tree_child) {
    if (auto w = quick_incompatibility(doc.networks)) {
      out << describe(*w) << '\n';
      return kExitNoSolution;
    }
  }
  return kExitSuccess;
}

int cmd_generate(const GeneratorConfig& cfg, std::ostream& out, std::ostream& err) {
  try {
    check_config(cfg);
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }
  auto gen = generate_instance(cfg);
  out << "# taxa=" << cfg.taxa_count << " weight=" << cfg.target_weight << " seed=" << cfg.seed
      << " count=" << cfg.subnetwork_count << '\n';
  for (const Network& n : gen.instance.networks()) out << write_enewick(n) << '\n';
  return kExitSuccess;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Tree-child network hybridization solver"};
  app.require_subcommand(1);

  std::string file, seq_file;
  std::optional<int> max_k;
  std::optional<std::uint64_t> seed;
  bool prune = false, show_stats = false;
  unsigned threads = 1;

  auto* solve_cmd = app.add_subcommand("solve", "find a minimum tree-child network displaying the input");
  solve_cmd->add_option("file", file, "instance file (one eNewick network per line)")->required();
  solve_cmd->add_option("--max-k", max_k, "largest reticulation number to try")->check(CLI::NonNegativeNumber);
  solve_cmd->add_flag("--prune", prune, "tighten the budget to the best solution found while branching");
  solve_cmd->add_flag("--stats", show_stats, "print search statistics to stderr");
  solve_cmd->add_option("--seed", seed, "shuffle the branch order with this seed");
  solve_cmd->add_option("--threads", threads, "threads for the first branching level")->check(CLI::PositiveNumber);

  auto* reduce_cmd = app.add_subcommand("reduce", "reduce every network by a sequence");
  reduce_cmd->add_option("file", file, "network file")->required();
  reduce_cmd->add_option("--seq", seq_file, "sequence file (first,second per line)")->required();

  auto* construct_cmd = app.add_subcommand("construct", "build the network of a tree-child sequence");
  construct_cmd->add_option("--seq", seq_file, "sequence file (first,second per line)")->required();

  auto* check_cmd = app.add_subcommand("check", "validate networks and look for conflicting reticulated cherries");
  check_cmd->add_option("file", file, "network file")->required();

  GeneratorConfig cfg;
  auto* generate_cmd = app.add_subcommand("generate", "emit a random tree-child compatible instance");
  generate_cmd->add_option("--taxa", cfg.taxa_count, "number of taxa")->required();
  generate_cmd->add_option("--weight", cfg.target_weight, "reticulation number of the hidden network")->required();
  generate_cmd->add_option("--count", cfg.subnetwork_count, "networks in the instance")->required();
  generate_cmd->add_option("--seed", cfg.seed, "random seed")->required();

  std::vector<std::string> rest(args.size() > 1 ? args.begin() + 1 : args.end(), args.end());
  std::reverse(rest.begin(), rest.end());
  try {
    app.parse(rest);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, out, err);
    return code == 0 ? kExitSuccess : kExitUsage;
  }

  try {
    if (*solve_cmd) return cmd_solve(file, max_k, prune, show_stats, seed, threads, out, err);
    if (*reduce_cmd) return cmd_reduce(file, seq_file, out);
    if (*construct_cmd) return cmd_construct(seq_file, out);
    if (*check_cmd) return cmd_check(file, out);
    if (*generate_cmd) return cmd_generate(cfg, out, err);
  } catch (const InputError& e) {
    err << "error: " << e.message << '\n';
    return kExitInputError;
  }
  return kExitUsage;
}

}  // namespace tcnet
