#include <gtest/gtest.h>

#include "helpers.hpp"

namespace smr {
namespace {

TEST(Parse, Fig1) {
  auto [inst, r] = testing::fig1();
  EXPECT_TRUE(inst.is_marriage());
  EXPECT_EQ(inst.size(), 8);
  EXPECT_EQ(inst.edge_count(), 8u);
  EXPECT_EQ(r.forbidden().size(), 2u);
  EXPECT_TRUE(r.forced().empty());
}

TEST(Parse, MinimalInstance) {
  auto parsed = parse_instance("sm 1 1\nu1: w1\nw1: u1\n");
  EXPECT_EQ(parsed.instance.edge_count(), 1u);
  EXPECT_TRUE(parsed.restrictions.empty());
}

TEST(Parse, RoommatesAndComments) {
  auto parsed = parse_instance("# comment\nsr 3\na1: a2 a3  # trailing\na2: a1\na3: a1\n");
  EXPECT_FALSE(parsed.instance.is_marriage());
  EXPECT_EQ(parsed.instance.edge_count(), 2u);
}

TEST(Parse, EmptyListsAllowed) {
  auto parsed = parse_instance("sm 2 1\nu1: w1\nu2:\nw1: u1\n");
  EXPECT_EQ(parsed.instance.degree(1), 0);
}

void expect_parse_error_at(const std::string& text, int line) {
  try {
    parse_instance(text);
    ADD_FAILURE() << "no error for:\n" << text;
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), line) << e.what();
  }
}

TEST(Parse, PositionedErrors) {
  expect_parse_error_at("", 1);
  expect_parse_error_at("sm x 1\n", 1);
  expect_parse_error_at("sm 1 1\nu1: w2\nw1: u1\n", 2);
  expect_parse_error_at("sm 1 1\nu1: w1 w1\nw1: u1\n", 2);
  expect_parse_error_at("sm 1 1\nu1: w1\nw1:\n", 2);
  expect_parse_error_at("sm 1 1\nu1: w1\nw1: u1\nforbid u1 w2\n", 4);
  expect_parse_error_at("sm 1 1\nu1: w1\nw1: u1\nforbid u1 w1\nforce u1 w1\n", 5);
  expect_parse_error_at("sm 1 1\nu1: w1\nforbid u1 w1\nw1: u1\n", 4);
  expect_parse_error_at("sr 2\na1: a2\na1: a2\n", 3);
  expect_parse_error_at("sr 2\na1: a1\na2:\n", 2);
  expect_parse_error_at("sm 1 1\nu1 w1\nw1: u1\n", 2);
}

TEST(Parse, ForcedEdgesSharingEndpointAreAccepted) {
  auto parsed = parse_instance("sm 1 2\nu1: w1 w2\nw1: u1\nw2: u1\nforce u1 w1\nforce u1 w2\n");
  EXPECT_FALSE(parsed.restrictions.forced_is_matching());
}

TEST(Serialize, RoundTripRandomInstances) {
  for (std::uint64_t i = 0; i < 100; ++i) {
    GenSpec spec;
    spec.kind = i % 2 ? InstanceKind::roommates : InstanceKind::marriage;
    spec.n = 3 + static_cast<int>(i % 5);
    spec.density = 0.7;
    spec.seed = 7 + i;
    auto first = gen_random(spec);
    auto r = testing::with_restrictions(first, 2, 1, i).restrictions;
    std::string text = serialize_instance(first.instance, r);
    auto back = parse_instance(text);
    EXPECT_EQ(back.instance, first.instance);
    EXPECT_EQ(back.restrictions, r);
    EXPECT_EQ(serialize_instance(back.instance, back.restrictions), text);
  }
}

TEST(Serialize, HashIsStableAndSensitive) {
  auto [inst, r] = testing::fig1();
  EXPECT_EQ(instance_hash(inst, r), instance_hash(inst, r));
  EXPECT_EQ(instance_hash(inst, r).size(), 16u);
  EXPECT_NE(instance_hash(inst, r), instance_hash(inst, RestrictionSet{}));
}

TEST(Weights, ParseFile) {
  auto [inst, r] = testing::fig1();
  WeightAssignment w = parse_weights(inst, "u1 w1 -3/2\n# skip\nu4 w4 2\n");
  EXPECT_EQ(w.get(testing::edge(inst, "u1", "w1")), Rational(-3, 2));
  EXPECT_EQ(w.get(testing::edge(inst, "u2", "w2")), Rational(0));
  EXPECT_THROW(parse_weights(inst, "u3 w4 1\n"), ParseError);
  EXPECT_THROW(parse_weights(inst, "u1 w1 x\n"), ParseError);
}

TEST(Rationals, ParseAndPrint) {
  EXPECT_EQ(parse_rational("-7/4"), Rational(-7, 4));
  EXPECT_EQ(to_string(parse_rational("6/4")), "3/2");
  EXPECT_THROW(parse_rational(""), InvalidArgument);
  EXPECT_THROW(parse_rational("1/0"), InvalidArgument);
  EXPECT_THROW(parse_rational("1.5"), InvalidArgument);
}

}  // namespace
}  // namespace smr
