#include "tcnet/sequence.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

#include "tcnet/enewick.hpp"

namespace tcnet {

bool satisfies_condition2(std::span<const Pair> pairs) {
  std::set<Taxon> firsts;
  for (const Pair& p : pairs) {
    if (p.first == p.second || p.first.empty() || p.second.empty()) return false;
    if (firsts.contains(p.second)) return false;
    firsts.insert(p.first);
  }
  return true;
}

bool is_tcs(std::span<const Pair> pairs) {
  if (!satisfies_condition2(pairs)) return false;
  if (pairs.empty()) return true;
  const Taxon& last_second = pairs.back().second;
  // walk backwards collecting first coordinates of the remainder
  std::set<Taxon> later_firsts;
  for (std::size_t i = pairs.size(); i-- > 0;) {
    const Pair& p = pairs[i];
    if (i + 1 < pairs.size() && p.second != last_second && !later_firsts.contains(p.second))
      return false;
    later_firsts.insert(p.first);
  }
  return true;
}

bool is_tcs(std::span<const Pair> pairs, const std::set<Taxon>& taxa) {
  for (const Pair& p : pairs)
    if (!taxa.contains(p.first) || !taxa.contains(p.second)) return false;
  return is_tcs(pairs);
}

std::set<Taxon> involved_taxa(std::span<const Pair> pairs) {
  std::set<Taxon> out;
  for (const Pair& p : pairs) {
    out.insert(p.first);
    out.insert(p.second);
  }
  return out;
}

TCSequence::TCSequence(std::vector<Pair> pairs, std::set<Taxon> taxa)
    : pairs_(std::move(pairs)), taxa_(std::move(taxa)) {
  if (!is_tcs(pairs_, taxa_)) throw std::invalid_argument("not a tree-child sequence");
}

TCSequence::TCSequence(std::vector<Pair> pairs)
    : TCSequence(pairs, involved_taxa(pairs)) {}

int weight(std::span<const Pair> pairs) {
  if (pairs.empty()) return 0;
  return static_cast<int>(pairs.size()) - static_cast<int>(involved_taxa(pairs).size()) + 1;
}

PartialTCS::PartialTCS(std::vector<Pair> pairs) : pairs_(std::move(pairs)) {
  if (!satisfies_condition2(pairs_))
    throw std::invalid_argument("prefix uses a forbidden leaf as a second coordinate");
}

std::set<Taxon> forbidden(std::span<const Pair> prefix) {
  std::set<Taxon> out;
  for (const Pair& p : prefix) out.insert(p.first);
  return out;
}

bool is_extendable(std::span<const Pair> prefix, const std::set<Taxon>& taxa) {
  if (!satisfies_condition2(prefix)) return false;
  for (const Pair& p : prefix)
    if (!taxa.contains(p.first) || !taxa.contains(p.second)) return false;
  auto gone = forbidden(prefix);
  return std::any_of(taxa.begin(), taxa.end(), [&](const Taxon& t) { return !gone.contains(t); });
}

std::vector<Pair> complete(std::span<const Pair> prefix, const std::set<Taxon>& taxa) {
  if (!is_extendable(prefix, taxa)) throw std::invalid_argument("prefix is not extendable");
  auto gone = forbidden(prefix);
  auto z = std::find_if(taxa.begin(), taxa.end(), [&](const Taxon& t) { return !gone.contains(t); });
  std::vector<Pair> out(prefix.begin(), prefix.end());
  // A second coordinate that is never a first coordinate is not forbidden
  // (condition 2), so pairing it with z satisfies condition 1 without
  // breaking condition 2.
  std::set<Taxon> pending;
  for (const Pair& p : prefix)
    if (!gone.contains(p.second) && p.second != *z) pending.insert(p.second);
  for (const Taxon& t : pending) out.push_back({t, *z});
  return out;
}

Network reduce_by_sequence(const Network& n, std::span<const Pair> pairs) {
  Network out = n;
  for (const Pair& p : pairs) out.reduce(p);
  return out;
}

bool reduces_set(std::span<const Network> networks, std::span<const Pair> pairs) {
  std::optional<Taxon> last;
  for (const Network& n : networks) {
    Network r = reduce_by_sequence(n, pairs);
    if (!is_single_leaf(r)) return false;
    Taxon leaf = r.taxa().front();
    if (last && *last != leaf) return false;
    last = leaf;
  }
  return true;
}

Network construct_network(const TCSequence& s) {
  if (s.empty()) {
    if (s.taxa().size() != 1)
      throw std::invalid_argument("an empty sequence only describes a single-leaf network");
    return Network::single_leaf(*s.taxa().begin());
  }
  Network n = Network::single_leaf(s.pairs().back().second);
  for (std::size_t i = s.size(); i-- > 0;) n.add(s[i]);
  return n;
}

namespace {

std::string_view trim(std::string_view s) {
  auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

}  // namespace

std::vector<Pair> parse_sequence_text(std::string_view text) {
  std::vector<Pair> out;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    auto nl = text.find('\n', pos);
    std::string_view raw = text.substr(pos, nl == std::string_view::npos ? text.size() - pos : nl - pos);
    pos = nl == std::string_view::npos ? text.size() + 1 : nl + 1;
    ++line_no;
    auto line = trim(raw);
    if (line.empty() || line.front() == '#') continue;
    std::size_t column = static_cast<std::size_t>(line.data() - raw.data()) + 1;
    auto comma = line.find(',');
    if (comma == std::string_view::npos)
      throw ParseError(line_no, column + line.size(), "pair needs two comma-separated leaves", "','");
    auto first = trim(line.substr(0, comma));
    auto second = trim(line.substr(comma + 1));
    if (first.empty()) throw ParseError(line_no, column, "empty first coordinate", "leaf label");
    if (second.empty())
      throw ParseError(line_no, column + comma + 1, "empty second coordinate", "leaf label");
    if (second.find(',') != std::string_view::npos)
      throw ParseError(line_no, column + comma + 1 + second.find(','), "too many coordinates",
                       "end of line");
    if (first == second)
      throw ParseError(line_no, column, "pair coordinates must differ", "two distinct leaves");
    out.push_back({Taxon(first), Taxon(second)});
  }
  return out;
}

std::string format_sequence(std::span<const Pair> pairs) {
  std::string out;
  for (const Pair& p : pairs) {
    out += p.first;
    out += ',';
    out += p.second;
    out += '\n';
  }
  return out;
}

}  // namespace tcnet
