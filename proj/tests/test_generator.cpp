#include <doctest.h>

#include "helpers.hpp"
#include "tcnet/generator.hpp"
#include "tcnet/oracle.hpp"
#include "tcnet/solver.hpp"

using namespace tcnet;
using namespace tcnet::test;

TEST_CASE("config checks") {
  CHECK_THROWS_AS(random_tcs({0, 0, 1, 1}), std::invalid_argument);
  CHECK_THROWS_AS(random_tcs({kMaxGeneratorTaxa + 1, 0, 1, 1}), std::invalid_argument);
  CHECK_THROWS_AS(random_tcs({4, kMaxGeneratorWeight + 1, 1, 1}), std::invalid_argument);
  CHECK_THROWS_AS(random_tcs({4, -1, 1, 1}), std::invalid_argument);
  CHECK_THROWS_AS(random_tcs({1, 1, 1, 1}), std::invalid_argument);
  CHECK_THROWS_AS(generate_instance({4, 1, 1, 0}), std::invalid_argument);
}

TEST_CASE("small sequences") {
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    TCSequence s = random_tcs({2, 0, seed, 1});
    REQUIRE(s.size() == 1);
    CHECK(s.taxa() == taxa_of({"1", "2"}));

    TCSequence r = random_tcs({2, 1, seed, 1});
    REQUIRE(r.size() == 2);
    CHECK(r[0] == r[1]);
  }
  CHECK(random_tcs({1, 0, 5, 1}).empty());
}

TEST_CASE("same seed, same sequence") {
  GeneratorConfig cfg{7, 3, 42, 2};
  CHECK(random_tcs(cfg) == random_tcs(cfg));
  auto a = generate_instance(cfg), b = generate_instance(cfg);
  REQUIRE(a.instance.networks().size() == b.instance.networks().size());
  for (std::size_t i = 0; i < a.instance.networks().size(); ++i)
    CHECK(write_enewick(a.instance.networks()[i]) == write_enewick(b.instance.networks()[i]));
  CHECK_FALSE(random_tcs(cfg) == random_tcs({7, 3, 43, 2}));
}

TEST_CASE("exact weights over the whole range") {
  for (int taxa = 2; taxa <= kMaxGeneratorTaxa; ++taxa)
    for (int w = 0; w <= kMaxGeneratorWeight; ++w)
      for (std::uint64_t seed = 1; seed <= 5; ++seed) {
        TCSequence s = random_tcs({taxa, w, seed, 1});
        CHECK(weight(s) == w);
        CHECK(s.taxa().size() == static_cast<std::size_t>(taxa));
        CHECK(involved_taxa(s.pairs()).size() == static_cast<std::size_t>(taxa));
      }
}

TEST_CASE("weight 0 instances repeat the tree") {
  auto gen = generate_instance({6, 0, 9, 3});
  for (const Network& n : gen.instance.networks()) CHECK(isomorphic(n, gen.host));
}

TEST_CASE("generated instances are tree-child, displayed and solvable") {
  for (std::uint64_t seed = 1; seed <= 25; ++seed) {
    GeneratorConfig cfg{3 + static_cast<int>(seed % 3), 1 + static_cast<int>(seed % 3), seed, 2};
    auto gen = generate_instance(cfg);
    CHECK(reticulation_number(gen.host) == cfg.target_weight);
    for (const Network& n : gen.instance.networks()) {
      CHECK(is_tree_child(n));
      CHECK(n.taxa() == gen.host.taxa());
      CHECK(reticulation_number(n) < reticulation_number(gen.host));
      CHECK(displays_bruteforce(gen.host, n));
    }
    auto out = solve(gen.instance);
    REQUIRE(out.status == SolveOutcome::Status::Solved);
    CHECK(out.result->weight <= cfg.target_weight);
  }
}
