#include <gtest/gtest.h>

#include "magc/analysis.hpp"
#include "magc/iso.hpp"
#include "oracles.hpp"
#include "support.hpp"

using namespace magc;

TEST(Degree, Examples) {
  const Mag k = complete_mag(CompanionTuple{2, 3});
  for (const auto& v : all_vertices(k.tau())) EXPECT_EQ(degree(k, v), 5u);
  EXPECT_EQ(degree(Mag(CompanionTuple{3}), CompositeVertex{2}), 0u);
  EXPECT_EQ(degree(support::path_mag(3), CompositeVertex{2}), 2u);
  try {
    degree(support::path_mag(3), CompositeVertex{4});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::CoordOutOfRange);
  }
}

TEST(Degree, DeviationReport) {
  EXPECT_DOUBLE_EQ(degree_deviation_report(complete_mag(CompanionTuple{4})).max_deviation, 1.5);
  EXPECT_DOUBLE_EQ(degree_deviation_report(Mag(CompanionTuple{2, 2})).max_deviation, 1.5);
  const DegreeDeviation d = degree_deviation_report(Mag(CompanionTuple{256}), 2.0, 0.0);
  EXPECT_NEAR(d.bound, 2 * std::sqrt(256.0 * 8), 1e-9);
  EXPECT_FALSE(d.within_bound);
  const DegreeDeviation r = degree_deviation_report(random_mag(CompanionTuple{16, 16}, 1, 0.5));
  EXPECT_LE(r.max_deviation, 90.5);
  EXPECT_TRUE(r.within_bound);
}

TEST(Degree, Handshake) {
  const Mag g = random_mag(CompanionTuple{5, 6}, 3, 0.4);
  std::size_t sum = 0;
  for (const auto& v : all_vertices(g.tau())) sum += degree(g, v);
  EXPECT_EQ(sum, 2 * g.edge_count());
}

TEST(TwoPaths, Examples) {
  const Mag c4 = support::cycle_mag(4);
  EXPECT_EQ(two_path_count(c4, CompositeVertex{1}, CompositeVertex{3}), 2u);
  EXPECT_EQ(two_path_count(Mag(CompanionTuple{4}), CompositeVertex{1}, CompositeVertex{3}), 0u);
  const Mag k5 = complete_mag(CompanionTuple{5});
  EXPECT_EQ(two_path_count(k5, CompositeVertex{2}, CompositeVertex{5}), 3u);
  try {
    two_path_count(k5, CompositeVertex{2}, CompositeVertex{2});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::SelfPair);
  }
  const Adjacency adj(random_mag(CompanionTuple{3, 4}, 11, 0.5));
  for (std::size_t u = 0; u < adj.size(); ++u) {
    for (std::size_t v = u + 1; v < adj.size(); ++v) {
      std::size_t brute = 0;
      for (std::size_t i = 0; i < adj.size(); ++i) brute += (adj.adjacent(u, i) && adj.adjacent(i, v)) ? 1 : 0;
      EXPECT_EQ(two_path_count(adj, u, v), brute);
      EXPECT_EQ(two_path_count(adj, v, u), brute);
    }
  }
}

TEST(Diameter, Examples) {
  EXPECT_EQ(composite_diameter(complete_mag(CompanionTuple{2, 3})), 1u);
  EXPECT_EQ(composite_diameter(support::path_mag(3)), 2u);
  EXPECT_EQ(composite_diameter(support::mag_of(CompanionTuple{3}, {{{1}, {2}}})), std::nullopt);
  EXPECT_EQ(composite_diameter(Mag(CompanionTuple{1})), 0u);
  EXPECT_EQ(composite_diameter(support::path_mag(70)), 69u);
}

TEST(Diameter, MatchesFloydWarshallOnClassicalGraph) {
  CounterRng rng(90);
  for (int t = 0; t < 40; ++t) {
    const CompanionTuple tau = support::random_tau(rng, 30);
    const Mag g = random_mag(tau, rng.next(), 0.1 + 0.3 * rng.uniform());
    const ClassicalGraph G = mag_to_graph(g);
    const std::size_t n = G.n;
    const std::size_t inf = 1u << 20;
    std::vector<std::vector<std::size_t>> d(n, std::vector<std::size_t>(n, inf));
    for (std::size_t i = 0; i < n; ++i) d[i][i] = 0;
    for (const auto& [u, v] : G.edges) d[u - 1][v - 1] = d[v - 1][u - 1] = 1;
    for (std::size_t k = 0; k < n; ++k) {
      for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) d[i][j] = std::min(d[i][j], d[i][k] + d[k][j]);
      }
    }
    std::size_t diam = 0;
    for (const auto& row : d) {
      for (auto x : row) diam = std::max(diam, x);
    }
    EXPECT_EQ(composite_diameter(g), diam >= inf ? std::nullopt : std::optional<std::size_t>(diam));
  }
}

TEST(LeastNeighbors, Examples) {
  EXPECT_EQ(least_neighbors(complete_mag(CompanionTuple{4}), CompositeVertex{3}, 2),
            (std::vector<CompositeVertex>{{1}, {2}}));
  EXPECT_TRUE(least_neighbors(Mag(CompanionTuple{4}), CompositeVertex{3}, 2).empty());
  EXPECT_EQ(least_neighbors(support::path_mag(3), CompositeVertex{2}, 5), (std::vector<CompositeVertex>{{1}, {3}}));
  EXPECT_TRUE(least_neighbors(complete_mag(CompanionTuple{4}), CompositeVertex{3}, 0).empty());
}

TEST(StarProperty, Examples) {
  EXPECT_TRUE(star_property_check(Adjacency(complete_mag(CompanionTuple{5})), 1).holds);
  const Mag two = support::mag_of(CompanionTuple{4}, {{{1}, {2}}, {{3}, {4}}});
  const StarCheck s = star_property_check(Adjacency(two), 4);
  EXPECT_FALSE(s.holds);
  ASSERT_TRUE(s.counterexample.has_value());
  EXPECT_EQ(*s.counterexample, std::make_pair(std::size_t{0}, std::size_t{2}));
  EXPECT_EQ(default_star_k(256), 64u);
  const Mag g = random_mag(CompanionTuple{16, 16}, 1, 0.5);
  EXPECT_TRUE(star_property_check(Adjacency(g), 64).holds);
}

TEST(Automorphism, Examples) {
  const auto c4 = find_nontrivial_automorphism(support::cycle_mag(4));
  ASSERT_TRUE(c4.has_value());
  EXPECT_FALSE(c4->is_identity());
  EXPECT_TRUE(is_automorphism(Adjacency(support::cycle_mag(4)), *c4));
  EXPECT_TRUE(find_nontrivial_automorphism(Mag(CompanionTuple{3})).has_value());
  EXPECT_FALSE(find_nontrivial_automorphism(random_mag(CompanionTuple{8, 8}, 1, 0.5)).has_value());
  EXPECT_FALSE(find_nontrivial_automorphism(Mag(CompanionTuple{1})).has_value());
  try {
    find_nontrivial_automorphism(Mag(CompanionTuple{2048}));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::SearchLimitExceeded);
  }
  EXPECT_TRUE(find_nontrivial_automorphism(Mag(CompanionTuple{2048}), 4096).has_value());
}

TEST(Automorphism, AgreesWithExhaustiveSearch) {
  CounterRng rng(2718);
  for (int t = 0; t < 200; ++t) {
    const CompanionTuple tau = support::random_tau(rng, 7);
    const Mag g = random_mag(tau, rng.next(), rng.uniform());
    const auto all = testkit::oracle_automorphisms(testkit::oracle_adjacency(g));
    const auto found = find_nontrivial_automorphism(g);
    ASSERT_EQ(found.has_value(), all.size() > 1) << tau.str() << " " << g.edge_count();
    if (found) {
      EXPECT_TRUE(is_automorphism(Adjacency(g), *found));
    }
  }
}

TEST(Automorphism, FindsSymmetryInStructuredLargeGraphs) {
  // Two disjoint copies of a random rigid graph are swappable.
  const Mag base = random_mag(CompanionTuple{6, 6}, 5, 0.5);
  std::vector<RawEdge> raw;
  for (const auto& e : base.edges()) {
    raw.emplace_back(CompositeVertex{1, e.lo.coords[0], e.lo.coords[1]}, CompositeVertex{1, e.hi.coords[0], e.hi.coords[1]});
    raw.emplace_back(CompositeVertex{2, e.lo.coords[0], e.lo.coords[1]}, CompositeVertex{2, e.hi.coords[0], e.hi.coords[1]});
  }
  const Mag doubled = support::mag_of(CompanionTuple{2, 6, 6}, raw);
  const auto pi = find_nontrivial_automorphism(doubled);
  ASSERT_TRUE(pi.has_value());
  EXPECT_TRUE(is_automorphism(Adjacency(doubled), *pi));
}

TEST(RandomMag, Examples) {
  const CompanionTuple tau{4, 5};
  EXPECT_EQ(random_mag(tau, 9, 0.0).edge_count(), 0u);
  EXPECT_EQ(random_mag(tau, 9, 1.0), complete_mag(tau));
  const std::size_t count = random_mag(CompanionTuple{16, 16}, 1, 0.5).edge_count();
  EXPECT_NEAR(static_cast<double>(count), 16320.0, 400.0);
  EXPECT_EQ(random_mag(tau, 9, 0.5), random_mag(tau, 9, 0.5));
  EXPECT_NE(random_mag(tau, 9, 0.5), random_mag(tau, 10, 0.5));
}

TEST(TopologyReport, RefusesHugeAndSkipsAutomorphismsAboveLimit) {
  try {
    Adjacency(Mag(CompanionTuple{300, 300}));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::TooLarge);
  }
  TopologyParams params;
  params.automorphism_limit = 4;
  const TopologyReport r = topology_report(support::path_mag(6), params);
  EXPECT_FALSE(r.rigid.has_value());
  EXPECT_EQ(r.diameter, 5u);
  EXPECT_EQ(r.edge_count, 5u);
  EXPECT_EQ(r.two_paths.min, 0u);
  EXPECT_EQ(r.two_paths.max, 1u);
}
