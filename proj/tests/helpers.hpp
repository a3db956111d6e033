#pragma once

#include <set>
#include <string>
#include <vector>

#include "tcnet/enewick.hpp"
#include "tcnet/generator.hpp"
#include "tcnet/network.hpp"
#include "tcnet/sequence.hpp"

namespace tcnet::test {

inline Network net(const std::string& text) { return parse_enewick(text); }

inline std::set<Taxon> taxa_of(std::initializer_list<const char*> labels) {
  std::set<Taxon> out;
  for (const char* l : labels) out.insert(l);
  return out;
}

inline std::vector<Pair> seq(std::initializer_list<std::pair<const char*, const char*>> pairs) {
  std::vector<Pair> out;
  for (auto [a, b] : pairs) out.push_back({a, b});
  return out;
}

// tree-child network from a seeded random sequence
inline Network random_network(int taxa, int weight, std::uint64_t seed) {
  return construct_network(random_tcs({taxa, weight, seed, 1}));
}

inline std::vector<Pair> pair_list(const std::vector<ReduciblePair>& rps) {
  std::vector<Pair> out;
  for (const auto& rp : rps) out.push_back(rp.pair);
  return out;
}

}  // namespace tcnet::test
