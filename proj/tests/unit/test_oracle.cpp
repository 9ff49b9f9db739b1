#include <gtest/gtest.h>

#include "helpers.hpp"

namespace smr {
namespace {

// Edge-deletion recurrence: m(G) = m(G - e) + m(G - u - v).
std::size_t recount(std::vector<Edge> edges) {
  if (edges.empty()) return 1;
  Edge e = edges.back();
  edges.pop_back();
  std::vector<Edge> rest;
  for (const Edge& f : edges) {
    if (!f.shares_endpoint(e)) rest.push_back(f);
  }
  return recount(edges) + recount(rest);
}

TEST(EnumMatchings, SmallCounts) {
  auto single = parse_instance("sm 1 1\nu1: w1\nw1: u1\n").instance;
  EXPECT_EQ(count_matchings(single), 2u);
  auto path = parse_instance("sr 4\na1: a2\na2: a1 a3\na3: a2 a4\na4: a3\n").instance;
  EXPECT_EQ(count_matchings(path), 5u);
  auto [fig, r] = testing::fig1();
  EXPECT_EQ(count_matchings(fig), recount(fig.edges()));
}

TEST(EnumMatchings, RandomCountsMatchRecurrence) {
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    auto inst = testing::random_sr(9, seed, 0.5).instance;
    EXPECT_EQ(count_matchings(inst), recount(inst.edges()));
  }
}

TEST(EnumMatchings, GuardFailsLoudly) {
  auto inst = testing::random_sr(20, 1, 0.3).instance;
  try {
    count_matchings(inst);
    FAIL();
  } catch (const SizeGuardExceeded& e) {
    EXPECT_GT(e.estimate(), 1.0);
  }
  OracleGuard g;
  g.override_guard = true;
  auto small = testing::random_sr(18, 2, 0.1).instance;
  EXPECT_EQ(count_matchings(small, g), recount(small.edges()));
}

TEST(OracleMinBp, Fig1) {
  auto [inst, r] = testing::fig1();
  auto res = oracle_min_bp(inst, r);
  EXPECT_EQ(res.value, 1u);
  // Lexicographically smallest of the two almost stable matchings.
  EXPECT_EQ(res.witness, testing::matching(inst, {{"u1", "w1"}, {"u2", "w4"}, {"u4", "w3"}}));
  EXPECT_EQ(oracle_min_bp(inst, {}).value, 0u);
}

TEST(OracleMinViolations, Fig1) {
  auto [inst, r] = testing::fig1();
  EXPECT_EQ(oracle_min_violations(inst, r)->value, 2u);
  EXPECT_EQ(oracle_min_violations(inst, {})->value, 0u);
}

TEST(OracleMaxForced, Basics) {
  auto [inst, r] = testing::fig1();
  EXPECT_EQ(oracle_max_forced(inst, {})->value, 0u);
  Reduction red = reduce_indset_maxforced(Graph::complete(3));
  OracleGuard g{16, false};
  EXPECT_EQ(oracle_max_forced(red.instance, red.restrictions.forced(), g)->value, 1u);
}

TEST(OracleMaxForced, ComplementsMinMissingWhenUnique) {
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    auto [inst, r] = testing::with_restrictions(testing::random_sr(8, seed, 0.5), 0, 3, seed);
    if (oracle_stable_matchings(inst).size() != 1) continue;
    auto max = oracle_max_forced(inst, r.forced());
    auto min = oracle_min_violations(inst, r);
    EXPECT_EQ(max->value + min->value, r.forced().size());
  }
}

TEST(OracleSource, VertexCover) {
  EXPECT_EQ(oracle_vertex_cover(Graph::complete(4)), 3);
  EXPECT_EQ(oracle_vertex_cover(Graph::complete(3)), 2);
  EXPECT_EQ(oracle_vertex_cover(Graph::complete_bipartite(3, 3)), 3);
  EXPECT_EQ(oracle_vertex_cover(Graph(4, {})), 0);
  EXPECT_EQ(oracle_max_independent_set(Graph::cycle(5)), 2);
  EXPECT_EQ(oracle_vertex_cover_witness(Graph::cycle(4)), (std::vector<int>{0, 2}));
}

TEST(OracleSource, ExactMaximalMatching) {
  Graph c6 = Graph::cycle(6);
  EXPECT_TRUE(oracle_exact_maximal_matching(c6, 2));
  EXPECT_TRUE(oracle_exact_maximal_matching(c6, 3));
  EXPECT_FALSE(oracle_exact_maximal_matching(c6, 1));
  EXPECT_FALSE(oracle_exact_maximal_matching(c6, 4));
}

TEST(OracleSource, Satisfiability) {
  // Every assignment falsifies one of the eight sign patterns.
  CnfFormula all{3, {}};
  for (int mask = 0; mask < 8; ++mask) {
    all.clauses.push_back({mask & 1 ? -1 : 1, mask & 2 ? -2 : 2, mask & 4 ? -3 : 3});
  }
  EXPECT_FALSE(oracle_satisfying_assignment(all));
  CnfFormula w{2, {{1, 2}}};
  EXPECT_EQ(oracle_min_true_assignment(w), 1);
  EXPECT_EQ(oracle_min_true_assignment(CnfFormula{3, {}}), 0);
}

TEST(OracleSource, GuardOnLargeSources) {
  EXPECT_THROW(oracle_vertex_cover(Graph::cycle(30)), SizeGuardExceeded);
}

TEST(Oracle, DeterministicWitnesses) {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    auto [inst, r] = testing::with_restrictions(testing::random_sm(5, seed), 2, 0, seed);
    EXPECT_EQ(oracle_min_bp(inst, r).witness, oracle_min_bp(inst, r).witness);
  }
}

}  // namespace
}  // namespace smr
