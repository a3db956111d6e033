#pragma once

#include <compare>
#include <ostream>
#include <string>

namespace tcnet {

// leaf label; non-empty, unique within a network
using Taxon = std::string;

// ordered leaf pair (first, second); used both for reductions and for sequence elements
struct Pair {
  Taxon first;
  Taxon second;

  friend auto operator<=>(const Pair&, const Pair&) = default;
  friend bool operator==(const Pair&, const Pair&) = default;
};

enum class PairKind { Cherry, ReticulatedCherry };

struct ReduciblePair {
  Pair pair;
  PairKind kind;

  friend auto operator<=>(const ReduciblePair&, const ReduciblePair&) = default;
  friend bool operator==(const ReduciblePair&, const ReduciblePair&) = default;
};

inline std::ostream& operator<<(std::ostream& os, const Pair& p) {
  return os << '(' << p.first << ',' << p.second << ')';
}

}  // namespace tcnet
