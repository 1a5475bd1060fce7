#include <gtest/gtest.h>

#include <set>

#include "magc/family.hpp"
#include "oracles.hpp"

using namespace magc;

TEST(FamilyIndex, Examples) {
  const FamilySpec line(1, 2);
  EXPECT_EQ(family_edge_index(CompositeVertex{1}, CompositeVertex{2}, line), 1);
  EXPECT_EQ(family_edge_index(CompositeVertex{2}, CompositeVertex{4}, line), 5);
  EXPECT_EQ(family_edge_index(CompositeVertex{1, 1}, CompositeVertex{1, 2}, FamilySpec(2, 1)), 1);
  EXPECT_EQ(family_index_edge(0, line), std::nullopt);
  EXPECT_EQ(family_index_edge(3, line), (CompositeEdge{{2}, {3}}));
  EXPECT_EQ(family_index_edge(6, line), (CompositeEdge{{3}, {4}}));
}

TEST(FamilyIndex, Errors) {
  const FamilySpec spec(2, 1);
  auto code = [](auto&& fn) {
    try {
      fn();
    } catch (const Error& e) {
      return e.code();
    }
    return Errc::Parse;
  };
  EXPECT_EQ(code([&] { family_edge_index(CompositeVertex{1, 2}, CompositeVertex{1, 2}, spec); }), Errc::SelfLoop);
  EXPECT_EQ(code([&] { family_edge_index(CompositeVertex{1, 2}, CompositeVertex{1}, spec); }), Errc::ArityMismatch);
  EXPECT_EQ(code([&] { family_edge_index(CompositeVertex{0, 2}, CompositeVertex{1, 1}, spec); }),
            Errc::NonPositiveCoord);
  EXPECT_EQ(code([] { FamilySpec(0, 1); }), Errc::InvalidTuple);
  EXPECT_EQ(code([] { FamilySpec(1, 0); }), Errc::InvalidTuple);
}

TEST(FirstAppearanceSize, Examples) {
  EXPECT_EQ(first_appearance_size(CompositeEdge{{2}, {4}}, FamilySpec(1, 2)), 4u);
  EXPECT_EQ(first_appearance_size(CompositeEdge{{1}, {2}}, FamilySpec(1, 2)), 2u);
  EXPECT_EQ(first_appearance_size(CompositeEdge{{1, 3}, {2, 1}}, FamilySpec(2, 1)), 3u);
}

TEST(FamilyIndex, AgreesWithBlockAppendedSequence) {
  for (std::size_t p : {1, 2}) {
    for (Coord n0 : {1, 2}) {
      const Coord s_max = p == 1 ? 5 : 5;
      const FamilySpec spec(p, n0);
      const auto seq = testkit::oracle_family_sequence(p, n0, s_max);
      for (std::size_t i = 0; i < seq.size(); ++i) {
        const auto e = testkit::to_edge(seq[i]);
        ASSERT_EQ(family_edge_index(e, spec), Natural(i + 1)) << "p=" << p << " n0=" << n0 << " " << e.str();
        ASSERT_EQ(family_index_edge(i + 1, spec), e);
      }
    }
  }
}

TEST(FamilyIndex, OracleExamples) {
  const auto seq = testkit::oracle_family_sequence(1, 2, 4);
  ASSERT_EQ(seq.size(), 6u);
  const std::vector<std::pair<Coord, Coord>> expected{{1, 2}, {1, 3}, {2, 3}, {1, 4}, {2, 4}, {3, 4}};
  for (std::size_t i = 0; i < 6; ++i) {
    EXPECT_EQ(seq[i].first, testkit::Tuple{expected[i].first});
    EXPECT_EQ(seq[i].second, testkit::Tuple{expected[i].second});
  }
  EXPECT_EQ(testkit::oracle_family_sequence(1, 2, 2).size(), 1u);
  EXPECT_EQ(testkit::oracle_family_sequence(2, 1, 2), testkit::oracle_edge_sequence({2, 2}));
}

TEST(FamilyIndex, PrefixProperty) {
  for (const FamilySpec spec : {FamilySpec(1, 2), FamilySpec(2, 1), FamilySpec(3, 1), FamilySpec(2, 3)}) {
    for (Coord s = spec.n0;; ++s) {
      const CompanionTuple tau = spec.tuple(s);
      if (tau.num_vertices() > 100) break;
      std::set<Natural> got;
      for (EdgeCursor c(tau); !c.done(); c.next()) got.insert(family_edge_index(c.lo(), c.hi(), spec));
      const Natural m = tau.num_possible_edges();
      ASSERT_EQ(Natural(got.size()), m);
      if (!got.empty()) {
        EXPECT_EQ(*got.begin(), 1);
        EXPECT_EQ(*got.rbegin(), m);
      }
    }
  }
}

TEST(FamilyIndex, ConsistentWithPerMagIndexAtInitialSize) {
  const FamilySpec spec(2, 3);
  const CompanionTuple tau = spec.tuple(3);
  for (EdgeCursor c(tau); !c.done(); c.next()) {
    EXPECT_EQ(family_edge_index(c.lo(), c.hi(), spec), *edge_index(c.lo(), c.hi(), tau));
  }
}

TEST(FamilyIndex, BijectionForSmallCoordinates) {
  for (std::size_t p = 1; p <= 3; ++p) {
    for (Coord n0 : {1, 2, 4}) {
      const FamilySpec spec(p, n0);
      const Coord top = p == 3 ? 4 : 6;
      const CompanionTuple tau = CompanionTuple::uniform(p, top);
      for (EdgeCursor c(tau); !c.done(); c.next()) {
        const Natural j = family_edge_index(c.lo(), c.hi(), spec);
        ASSERT_GE(j, 1);
        ASSERT_EQ(family_index_edge(j, spec), (CompositeEdge{c.lo(), c.hi()}));
      }
    }
  }
}

TEST(FamilyIndex, LargeIndices) {
  const FamilySpec spec(3, 2);
  const CompositeEdge e{{1, 1, 1}, {1000000, 3, 999999}};
  const Natural j = family_edge_index(e, spec);
  EXPECT_GT(j, spec.cumulative(999999));
  EXPECT_LE(j, spec.cumulative(1000000));
  EXPECT_EQ(family_index_edge(j, spec), e);
  EXPECT_EQ(family_index_edge(spec.cumulative(1000000), spec), (CompositeEdge{{1000000, 1000000, 999999}, {1000000, 1000000, 1000000}}));
}
