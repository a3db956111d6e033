#pragma once

#include <set>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "tcnet/network.hpp"
#include "tcnet/types.hpp"

namespace tcnet {

// Both tree-child sequence conditions, with coordinates drawn from `taxa`:
//  1. every second coordinate recurs later as a first coordinate, or is the
//     second coordinate of the last pair;
//  2. no first coordinate is used as a second coordinate later on.
bool is_tcs(std::span<const Pair> pairs, const std::set<Taxon>& taxa);
bool is_tcs(std::span<const Pair> pairs);

// leaves appearing in any pair
std::set<Taxon> involved_taxa(std::span<const Pair> pairs);

/// A validated tree-child sequence over a taxon universe.
class TCSequence {
 public:
  TCSequence() = default;
  // throws std::invalid_argument unless is_tcs(pairs, taxa)
  TCSequence(std::vector<Pair> pairs, std::set<Taxon> taxa);
  // universe = the involved leaves
  explicit TCSequence(std::vector<Pair> pairs);

  const std::vector<Pair>& pairs() const { return pairs_; }
  const std::set<Taxon>& taxa() const { return taxa_; }
  std::size_t size() const { return pairs_.size(); }
  bool empty() const { return pairs_.empty(); }
  const Pair& operator[](std::size_t i) const { return pairs_[i]; }

  // S[:i] and S[i:] as views
  std::span<const Pair> prefix(std::size_t i) const { return std::span(pairs_).first(i); }
  std::span<const Pair> suffix(std::size_t i) const { return std::span(pairs_).subspan(i); }

  friend bool operator==(const TCSequence&, const TCSequence&) = default;

 private:
  std::vector<Pair> pairs_;
  std::set<Taxon> taxa_;
};

// |S| - |leaves of S| + 1; an empty sequence has weight 0
int weight(std::span<const Pair> pairs);
inline int weight(const TCSequence& s) { return weight(std::span<const Pair>(s.pairs())); }

/// Prefix of a tree-child sequence: condition 2 holds within the list.
class PartialTCS {
 public:
  PartialTCS() = default;
  // throws std::invalid_argument if condition 2 (or first != second) fails
  explicit PartialTCS(std::vector<Pair> pairs);

  const std::vector<Pair>& pairs() const { return pairs_; }
  std::size_t size() const { return pairs_.size(); }

 private:
  std::vector<Pair> pairs_;
};

// first coordinates of the prefix
std::set<Taxon> forbidden(std::span<const Pair> prefix);

bool satisfies_condition2(std::span<const Pair> pairs);

// Condition 2 holds and some taxon of `taxa` is not forbidden; this is exactly
// the set of prefixes that complete() can turn into a full TCS.
bool is_extendable(std::span<const Pair> prefix, const std::set<Taxon>& taxa);
// Appends (t, z) for every pending second coordinate t, where z is the least
// non-forbidden taxon. Throws std::invalid_argument when not extendable.
std::vector<Pair> complete(std::span<const Pair> prefix, const std::set<Taxon>& taxa);

// left fold of Network::reduce; non-reducible pairs are no-ops
Network reduce_by_sequence(const Network& n, std::span<const Pair> pairs);
bool reduces_set(std::span<const Network> networks, std::span<const Pair> pairs);

// Builds the network of a TCS by adding its pairs from last to first, starting
// from the single-leaf tree on the last second coordinate. An empty sequence
// over a one-taxon universe yields that single leaf.
Network construct_network(const TCSequence& s);

// "first,second" per line; blank lines and '#' comments are skipped.
// Throws ParseError (see enewick.hpp) on malformed lines.
std::vector<Pair> parse_sequence_text(std::string_view text);
std::string format_sequence(std::span<const Pair> pairs);

}  // namespace tcnet
