#include <gtest/gtest.h>

#include "oracles.hpp"
#include "support.hpp"

using testkit::Tuple;

TEST(Oracles, EdgeSequenceExamples) {
  const auto one = testkit::oracle_edge_sequence({2});
  ASSERT_EQ(one.size(), 1u);
  EXPECT_EQ(one[0], (testkit::Pair{{1}, {2}}));

  const auto sq = testkit::oracle_edge_sequence({2, 2});
  ASSERT_EQ(sq.size(), 6u);
  EXPECT_EQ(sq.front(), (testkit::Pair{{1, 1}, {1, 2}}));
  EXPECT_EQ(sq.back(), (testkit::Pair{{2, 1}, {2, 2}}));

  EXPECT_EQ(testkit::oracle_edge_sequence({3}),
            (std::vector<testkit::Pair>{{{1}, {2}}, {{1}, {3}}, {{2}, {3}}}));
  EXPECT_THROW(testkit::oracle_edge_sequence({15, 15}), testkit::LimitExceeded);
}

TEST(Oracles, FamilySequenceExamples) {
  EXPECT_EQ(testkit::oracle_family_sequence(1, 2, 4),
            (std::vector<testkit::Pair>{{{1}, {2}}, {{1}, {3}}, {{2}, {3}}, {{1}, {4}}, {{2}, {4}}, {{3}, {4}}}));
  EXPECT_EQ(testkit::oracle_family_sequence(1, 2, 2).size(), 1u);
  EXPECT_EQ(testkit::oracle_family_sequence(2, 1, 2), testkit::oracle_edge_sequence({2, 2}));
  EXPECT_THROW(testkit::oracle_family_sequence(2, 1, 15), testkit::LimitExceeded);
}

TEST(Oracles, AutomorphismExamples) {
  using Adj = std::vector<std::vector<bool>>;
  EXPECT_EQ(testkit::oracle_automorphisms(Adj(3, std::vector<bool>(3, false))).size(), 6u);
  const Adj p3{{false, true, false}, {true, false, true}, {false, true, false}};
  EXPECT_EQ(testkit::oracle_automorphisms(p3).size(), 2u);
  const Adj k3{{false, true, true}, {true, false, true}, {true, true, false}};
  EXPECT_EQ(testkit::oracle_automorphisms(k3).size(), 6u);
  EXPECT_THROW(testkit::oracle_automorphisms(Adj(8, std::vector<bool>(8, false))), testkit::LimitExceeded);
  EXPECT_EQ(testkit::oracle_automorphisms(testkit::oracle_adjacency(support::cycle_mag(4))).size(), 8u);
}
