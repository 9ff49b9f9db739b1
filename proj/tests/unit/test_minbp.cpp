#include <gtest/gtest.h>

#include "helpers.hpp"

namespace smr {
namespace {

using testing::fig1;
using testing::matching;

bool is_fig1_almost_stable(const Instance& inst, const Matching& m) {
  return m == matching(inst, {{"u1", "w1"}, {"u2", "w4"}, {"u4", "w3"}}) ||
         m == matching(inst, {{"u1", "w3"}, {"u2", "w1"}, {"u4", "w4"}});
}

TEST(MinBpExact, Fig1) {
  auto [inst, r] = fig1();
  auto res = minbp_exact(inst, r);
  ASSERT_TRUE(res);
  EXPECT_EQ(res->bp.count(), 1u);
  EXPECT_TRUE(is_fig1_almost_stable(inst, res->matching));
  EXPECT_TRUE(res->optimal);
}

TEST(MinBpExact, UnrestrictedMarriageIsZero) {
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    auto inst = testing::random_sm(6, seed).instance;
    EXPECT_EQ(minbp_exact(inst, {})->bp.count(), 0u);
  }
}

TEST(MinBpExact, CutoffSemantics) {
  auto [inst, r] = fig1();
  EXPECT_FALSE(minbp_exact(inst, r, 0));
  auto res = minbp_exact(inst, r, 1);
  ASSERT_TRUE(res);
  EXPECT_EQ(res->bp.count(), 1u);
}

TEST(MinBpExact, ForcedSharingEndpointIsStructural) {
  auto parsed = parse_instance("sm 1 2\nu1: w1 w2\nw1: u1\nw2: u1\nforce u1 w1\nforce u1 w2\n");
  EXPECT_THROW(minbp_exact(parsed.instance, parsed.restrictions), StructuralInfeasibility);
}

TEST(MinBpExact, EqualsEnumerationOracle) {
  for (std::uint64_t seed = 0; seed < 300; ++seed) {
    bool sm = seed % 2 == 0;
    auto base = sm ? testing::random_sm(2 + seed % 3, seed, 0.7) : testing::random_sr(4 + seed % 5, seed, 0.5);
    auto [inst, r] = testing::with_restrictions(base, seed % 4, (seed / 4) % 3, seed);
    auto res = minbp_exact(inst, r);
    auto oracle = oracle_min_bp(inst, r);
    ASSERT_TRUE(res);
    EXPECT_EQ(res->bp.count(), oracle.value) << "seed " << seed;
    EXPECT_TRUE(satisfies(res->matching, r));
    EXPECT_EQ(res->bp.blocking, blocking_pairs(inst, res->matching).blocking);
  }
}

TEST(BoundedForbidden, Fig1) {
  auto [inst, r] = fig1();
  auto m = minbp_bounded_forbidden(inst, r, 1);
  ASSERT_TRUE(m);
  EXPECT_TRUE(is_fig1_almost_stable(inst, *m));
  EXPECT_FALSE(minbp_bounded_forbidden(inst, r, 0));
}

TEST(BoundedForbidden, LargeBudgetDeletesP) {
  auto [inst, r] = fig1();
  auto m = minbp_bounded_forbidden(inst, r, 2);
  ASSERT_TRUE(m);
  EXPECT_TRUE(satisfies(*m, r));
  EXPECT_LE(blocking_pairs(inst, *m).count(), 2u);
}

TEST(BoundedForbidden, RejectsRoommatesAndForced) {
  auto [inst, r] = fig1();
  EXPECT_THROW(minbp_bounded_forbidden(inst.as_roommates(), r, 1), InvalidArgument);
  RestrictionSet forced({}, {inst.edges().front()});
  EXPECT_THROW(minbp_bounded_forbidden(inst, forced, 1), InvalidArgument);
}

TEST(BoundedForbidden, VerdictMatchesOracleAndIsMonotone) {
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    auto [inst, r] = testing::with_restrictions(testing::random_sm(2 + seed % 6, seed + 100, 0.7), 1 + seed % 2, 0,
                                                seed);
    const std::size_t opt = oracle_min_bp(inst, r).value;
    bool previous = false;
    for (int k = 0; k <= 2; ++k) {
      auto m = minbp_bounded_forbidden(inst, r, k);
      EXPECT_EQ(m.has_value(), opt <= static_cast<std::size_t>(k)) << "seed " << seed << " K " << k;
      if (previous) EXPECT_TRUE(m);
      previous = m.has_value();
      if (m) {
        EXPECT_TRUE(satisfies(*m, r));
        EXPECT_LE(blocking_pairs(inst, *m).count(), static_cast<std::size_t>(k));
      }
    }
  }
}

TEST(BoundedBlocking, Fig1) {
  auto [inst, r] = fig1();
  auto m = minbp_bounded_blocking(inst, r, 1);
  ASSERT_TRUE(m);
  EXPECT_TRUE(is_fig1_almost_stable(inst, *m));
  EXPECT_FALSE(minbp_bounded_blocking(inst, r, 0));
}

TEST(BoundedBlocking, ZeroEqualsFeasibility) {
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    auto [inst, r] = testing::with_restrictions(testing::random_sm(5, seed + 200, 0.7), 1, 1, seed);
    EXPECT_EQ(minbp_bounded_blocking(inst, r, 0).has_value(), sm_restricted_feasible(inst, r).feasible());
  }
}

TEST(BoundedBlocking, MinimalLEqualsOracle) {
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    bool sm = seed % 3 != 0;
    auto base = sm ? testing::random_sm(2 + seed % 6, seed + 300, 0.7) : testing::random_sr(4 + seed % 5, seed, 0.5);
    auto [inst, r] = testing::with_restrictions(base, seed % 3, (seed / 3) % 2, seed);
    const std::size_t opt = oracle_min_bp(inst, r).value;
    int found = -1;
    for (int l = 0; l <= 2 && found < 0; ++l) {
      if (auto m = minbp_bounded_blocking(inst, r, l)) {
        found = l;
        EXPECT_TRUE(satisfies(*m, r));
        EXPECT_LE(blocking_pairs(inst, *m).count(), static_cast<std::size_t>(l));
      }
    }
    if (opt <= 2) {
      EXPECT_EQ(found, static_cast<int>(opt)) << "seed " << seed;
    } else {
      EXPECT_EQ(found, -1);
    }
  }
}

ParsedInstance random_degree2(int n, std::uint64_t seed, int p, int q) {
  GenSpec spec;
  spec.kind = seed % 4 == 0 ? InstanceKind::marriage : InstanceKind::roommates;
  spec.n = spec.kind == InstanceKind::marriage ? n / 2 : n;
  spec.density = 0.5;
  spec.seed = seed;
  spec.degree_cap = 2;
  return testing::with_restrictions(gen_random(spec), p, q, seed);
}

TEST(Degree2, UnrestrictedPath) {
  auto parsed = parse_instance("sr 4\na1: a2\na2: a1 a3\na3: a2 a4\na4: a3\n");
  EXPECT_EQ(minbp_degree2(parsed.instance, parsed.restrictions).bp.count(), 0u);
}

TEST(Degree2, TwoSegmentsJoinedByForbiddenEdge) {
  // a1-a2-a3 and a4-a5-a6 joined by forbidden a3-a4. Each segment's stable
  // matching takes its first edge, leaving a3 and a4 free.
  auto parsed = parse_instance(
      "sr 6\na1: a2\na2: a1 a3\na3: a4 a2\na4: a3 a5\na5: a6 a4\na6: a5\nforbid a3 a4\n");
  auto res = minbp_degree2(parsed.instance, parsed.restrictions);
  EXPECT_EQ(res.bp.count(), oracle_min_bp(parsed.instance, parsed.restrictions).value);
  EXPECT_EQ(res.bp.count(), 1u);
}

TEST(Degree2, RejectsLongLists) {
  auto [inst, r] = fig1();
  EXPECT_THROW(minbp_degree2(inst, r), InvalidArgument);
}

TEST(Degree2, EqualsExactOnRandomInstances) {
  int nonzero = 0;
  for (std::uint64_t seed = 0; seed < 400; ++seed) {
    int n = 4 + static_cast<int>(seed % 11);
    auto [inst, r] = random_degree2(n, seed, static_cast<int>(seed % 5), static_cast<int>((seed / 5) % 3));
    auto res = minbp_degree2(inst, r);
    auto exact = minbp_exact(inst, r);
    ASSERT_TRUE(exact);
    EXPECT_TRUE(satisfies(res.matching, r)) << "seed " << seed;
    EXPECT_EQ(res.bp.blocking, blocking_pairs(inst, res.matching).blocking);
    EXPECT_EQ(res.bp.count(), exact->bp.count()) << "seed " << seed << "\n"
                                                 << serialize_instance(inst, r);
    nonzero += exact->bp.count() > 0;
  }
  EXPECT_GT(nonzero, 40);
}

TEST(Degree2, DenseCyclesAndPaths) {
  // Long cycles and paths built directly, with many forbidden edges.
  for (std::uint64_t seed = 0; seed < 300; ++seed) {
    const int n = 5 + static_cast<int>(seed % 10);
    const bool cycle = seed % 2 == 0;
    std::vector<std::vector<Agent>> prefs(n);
    std::uint64_t state = seed + 1;
    auto flip = [&] {
      state = state * 6364136223846793005ULL + 1442695040888963407ULL;
      return (state >> 40) & 1;
    };
    const int edges = cycle ? n : n - 1;
    for (int i = 0; i < edges; ++i) {
      int a = i, b = (i + 1) % n;
      prefs[a].push_back(b);
      prefs[b].push_back(a);
    }
    for (auto& list : prefs) {
      if (list.size() == 2 && flip()) std::swap(list[0], list[1]);
    }
    Instance inst = Instance::roommates(n, prefs);
    std::vector<Edge> p;
    for (const Edge& e : inst.edges()) {
      if (flip() && flip()) p.push_back(e);
    }
    RestrictionSet r(p, {});
    auto res = minbp_degree2(inst, r);
    EXPECT_EQ(res.bp.count(), minbp_exact(inst, r)->bp.count()) << "seed " << seed << "\n"
                                                                 << serialize_instance(inst, r);
  }
}

}  // namespace
}  // namespace smr
