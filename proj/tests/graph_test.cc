#include <gtest/gtest.h>

#include <set>

#include "oracles.h"
#include "qcm/graph.h"
#include "qcm/graph_enumeration.h"
#include "qcm/rng.h"

using namespace qcm;

namespace {

void ExpectValidDesignatedMatching(const Graph& g) {
  ASSERT_TRUE(g.perfect_matching().has_value());
  std::vector<int> covered(g.vertex_count(), 0);
  for (const auto& [a, b] : *g.perfect_matching()) {
    EXPECT_TRUE(g.HasEdge(a, b));
    ++covered[a];
    ++covered[b];
  }
  for (int c : covered) EXPECT_EQ(c, 1);
}

Graph RandomGraph(int n, double p, Rng& rng) {
  std::vector<Edge> edges;
  for (int a = 0; a < n; ++a) {
    for (int b = a + 1; b < n; ++b) {
      if (rng.Bernoulli(p)) edges.emplace_back(a, b);
    }
  }
  return Graph(n, edges);
}

}  // namespace

TEST(Graph, RejectsSelfLoopsAndDuplicates) {
  EXPECT_THROW(Graph(3, {{1, 1}}), GraphError);
  EXPECT_THROW(Graph(3, {{0, 1}, {1, 0}}), GraphError);
  EXPECT_THROW(Graph(2, {{0, 2}}), GraphError);
}

TEST(Graph, RejectsBadDesignatedMatching) {
  EXPECT_THROW(Graph(4, {{0, 1}, {2, 3}}, std::vector<Edge>{{0, 1}}), GraphError);
  EXPECT_THROW(Graph(4, {{0, 1}, {2, 3}}, std::vector<Edge>{{0, 2}, {1, 3}}), GraphError);
  EXPECT_THROW(Graph(3, {{0, 1}, {1, 2}}, std::vector<Edge>{{0, 1}, {1, 2}}), GraphError);
}

TEST(GeneratePerfectMatchingGraph, SinglePair) {
  Graph g = GeneratePerfectMatchingGraph(1, 0.0, 99);
  EXPECT_EQ(g.vertex_count(), 2);
  EXPECT_EQ(g.edges(), (std::vector<Edge>{{0, 1}}));
  EXPECT_EQ(*g.perfect_matching(), (std::vector<Edge>{{0, 1}}));
}

TEST(GeneratePerfectMatchingGraph, ProbabilityOneGivesK4) {
  Graph g = GeneratePerfectMatchingGraph(2, 1.0, 5);
  EXPECT_EQ(g, CompleteGraph(4).WithPerfectMatching({{0, 1}, {2, 3}}));
}

TEST(GeneratePerfectMatchingGraph, ContainsMatchingPairsAndIsDeterministic) {
  Graph g = GeneratePerfectMatchingGraph(3, 0.5, 42);
  EXPECT_EQ(g.vertex_count(), 6);
  for (int i = 0; i < 3; ++i) EXPECT_TRUE(g.HasEdge(2 * i, 2 * i + 1));
  EXPECT_EQ(g, GeneratePerfectMatchingGraph(3, 0.5, 42));
  for (uint64_t seed = 0; seed < 200; ++seed) {
    ExpectValidDesignatedMatching(GeneratePerfectMatchingGraph(1 + seed % 6, 0.4, seed));
  }
}

TEST(GeneratePerfectMatchingGraph, RejectsBadArguments) {
  EXPECT_THROW(GeneratePerfectMatchingGraph(0, 0.5, 1), GraphError);
  EXPECT_THROW(GeneratePerfectMatchingGraph(2, 1.5, 1), GraphError);
}

TEST(OddGirth, SmallCases) {
  EXPECT_EQ(OddGirth(CompleteGraph(3)), 3);
  EXPECT_EQ(OddGirth(CycleGraph(5)), 5);
  EXPECT_EQ(OddGirth(CycleGraph(6)), kInfiniteGirth);
  EXPECT_EQ(OddGirth(PetersenGraph()), 5);
  EXPECT_EQ(OddGirth(PathGraph(4)), kInfiniteGirth);
}

TEST(OddGirth, BipartiteGraphsHaveNone) {
  Rng rng(11);
  for (int t = 0; t < 200; ++t) {
    const int left = 1 + static_cast<int>(rng.Below(5));
    const int right = 1 + static_cast<int>(rng.Below(5));
    std::vector<Edge> edges;
    for (int a = 0; a < left; ++a) {
      for (int b = 0; b < right; ++b) {
        if (rng.Bernoulli(0.5)) edges.emplace_back(a, left + b);
      }
    }
    EXPECT_EQ(OddGirth(Graph(left + right, edges)), kInfiniteGirth);
  }
}

TEST(OddGirth, MatchesAdjacencyPowerOracle) {
  Rng rng(12);
  for (int t = 0; t < 300; ++t) {
    Graph g = RandomGraph(2 + static_cast<int>(rng.Below(9)), 0.1 + 0.4 * rng.Uniform(), rng);
    const int expected = oracle::OddGirthByPowers(g);
    const int got = OddGirth(g);
    if (expected < 0) {
      EXPECT_EQ(got, kInfiniteGirth);
    } else {
      EXPECT_EQ(got, expected);
      EXPECT_EQ(got % 2, 1);
    }
  }
}

TEST(GenerateOddGirthGraph, RespectsBound) {
  for (uint64_t seed = 0; seed < 40; ++seed) {
    Graph g6 = GenerateOddGirthGraph(3, 5, 100, seed);
    EXPECT_EQ(g6.vertex_count(), 6);
    EXPECT_GE(OddGirth(g6), 5);
    ExpectValidDesignatedMatching(g6);
    Graph g4 = GenerateOddGirthGraph(2, 5, 100, seed);
    EXPECT_EQ(g4.vertex_count(), 4);
    EXPECT_GE(OddGirth(g4), 5);
    Graph g2 = GenerateOddGirthGraph(1, 5, 100, seed);
    EXPECT_EQ(g2.edges(), (std::vector<Edge>{{0, 1}}));
    Graph g10 = GenerateOddGirthGraph(5, 7, 1000, seed);
    EXPECT_GE(OddGirth(g10), 7);
    ExpectValidDesignatedMatching(g10);
  }
}

TEST(GenerateOddGirthGraph, RejectsBadGirth) {
  EXPECT_THROW(GenerateOddGirthGraph(3, 3, 10, 1), GraphError);
  EXPECT_THROW(GenerateOddGirthGraph(3, 6, 10, 1), GraphError);
}

TEST(MaximumMatching, SmallCases) {
  EXPECT_EQ(MaximumMatchingSize(CompleteGraph(3)), 1);
  EXPECT_EQ(MaximumMatchingSize(PathGraph(4)), 2);
  EXPECT_EQ(MaximumMatchingSize(PetersenGraph()), 5);
  EXPECT_EQ(MaximumMatchingSize(Graph(5, {})), 0);
}

TEST(MaximumMatching, MatchesSubsetOracle) {
  Rng rng(13);
  for (int t = 0; t < 300; ++t) {
    Graph g = RandomGraph(1 + static_cast<int>(rng.Below(9)), rng.Uniform(), rng);
    const auto m = MaximumMatching(g);
    EXPECT_TRUE(IsMatching(g, m));
    EXPECT_EQ(static_cast<int>(m.size()), oracle::MaximumMatchingBySubsets(g));
  }
}

TEST(MaximumMatching, RejectsAboveOracleScale) {
  EXPECT_THROW(MaximumMatchingSize(PathGraph(kMaxOracleVertices + 1)), OracleScaleError);
}

TEST(PruneToPerfectMatching, Examples) {
  Graph p3 = PruneToPerfectMatching(PathGraph(3));
  EXPECT_EQ(p3.vertex_count(), 2);
  EXPECT_EQ(p3.edge_count(), 1);
  Graph pm = GeneratePerfectMatchingGraph(3, 0.5, 7);
  EXPECT_EQ(PruneToPerfectMatching(pm), pm);
  Graph star = PruneToPerfectMatching(StarGraph(3));
  EXPECT_EQ(star.vertex_count(), 2);
  EXPECT_EQ(star.edge_count(), 1);
}

TEST(PruneToPerfectMatching, KeepsTwiceTheMatchingSize) {
  Rng rng(14);
  for (int t = 0; t < 200; ++t) {
    Graph g = RandomGraph(1 + static_cast<int>(rng.Below(10)), rng.Uniform(), rng);
    Graph pruned = PruneToPerfectMatching(g);
    EXPECT_EQ(pruned.vertex_count(), 2 * MaximumMatchingSize(g));
    if (pruned.vertex_count() > 0) ExpectValidDesignatedMatching(pruned);
  }
}

TEST(GraphText, RoundTrip) {
  for (uint64_t seed = 0; seed < 50; ++seed) {
    Graph g = GeneratePerfectMatchingGraph(1 + seed % 5, 0.5, seed);
    EXPECT_EQ(ParseGraphText(WriteGraphText(g)), g);
  }
  EXPECT_EQ(WriteGraphText(PathGraph(3)), "p 3 2\ne 0 1\ne 1 2\n");
}

TEST(GraphText, RejectsMalformedInput) {
  EXPECT_THROW(ParseGraphText("e 0 1\n"), GraphError);
  EXPECT_THROW(ParseGraphText("p 2 2\ne 0 1\n"), GraphError);
  EXPECT_THROW(ParseGraphText("p 2 1\ne 0 5\n"), GraphError);
}

TEST(GraphEnumeration, CountsClassesOnFewVertices) {
  // Graphs up to isomorphism on 1..5 vertices: 1, 2, 4, 11, 34.
  const size_t expected[] = {1, 2, 4, 11, 34};
  for (int n = 1; n <= 5; ++n) EXPECT_EQ(NonIsomorphicGraphs(n).size(), expected[n - 1]);
}

TEST(GraphEnumeration, PerfectMatchingClassesAreDistinctAndValid) {
  const auto graphs = PerfectMatchingGraphsUpToIsomorphism(3);
  std::set<std::pair<int, uint64_t>> codes;
  for (const Graph& g : graphs) {
    ExpectValidDesignatedMatching(g);
    EXPECT_TRUE(codes.insert({g.vertex_count(), CanonicalCode(g)}).second);
  }
  // 1 on two vertices, 6 on four (graphs of order 4 with a perfect matching).
  int four = 0;
  for (const Graph& g : graphs) four += g.vertex_count() == 4;
  EXPECT_EQ(four, 6);
}

TEST(GraphEnumeration, CanonicalCodeIgnoresLabels) {
  Rng rng(15);
  for (int t = 0; t < 100; ++t) {
    Graph g = RandomGraph(6, 0.5, rng);
    std::vector<int> relabel = RandomPermutation(6, rng);
    std::vector<Edge> moved;
    for (const auto& [a, b] : g.edges()) moved.emplace_back(relabel[a], relabel[b]);
    EXPECT_EQ(CanonicalCode(g), CanonicalCode(Graph(6, moved)));
  }
}
