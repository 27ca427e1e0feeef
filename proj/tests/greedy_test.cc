#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <set>

#include "oracles.h"
#include "qcm/graph_enumeration.h"
#include "qcm/greedy.h"
#include "qcm/query_list.h"
#include "qcm/rng.h"

using namespace qcm;

namespace {

std::vector<std::pair<int, int>> AllOrderedPairs(int n) {
  std::vector<std::pair<int, int>> pairs;
  for (int a = 0; a < n; ++a) {
    for (int b = 0; b < n; ++b) {
      if (a != b) pairs.emplace_back(a, b);
    }
  }
  return pairs;
}

QueryList ListStartingWith(int n, std::pair<int, int> first) {
  auto pairs = AllOrderedPairs(n);
  std::stable_partition(pairs.begin(), pairs.end(), [&](auto p) { return p == first; });
  return QueryList::Explicit(n, pairs);
}

Graph RandomGraph(Rng& rng, int max_n = 10) {
  const int n = 1 + static_cast<int>(rng.Below(max_n));
  const double p = rng.Uniform();
  std::vector<Edge> edges;
  for (int a = 0; a < n; ++a) {
    for (int b = a + 1; b < n; ++b) {
      if (rng.Bernoulli(p)) edges.emplace_back(a, b);
    }
  }
  return Graph(n, edges);
}

QueryList RandomList(int n, Rng& rng) {
  switch (rng.Below(4)) {
    case 0: return RankingList(SampleRankVector(n, rng));
    case 1: return FRankingList(RandomPermutation(n, rng), SampleRankVector(n, rng));
    case 2: {
      std::vector<std::vector<int>> prefs;
      for (int v = 0; v < n; ++v) prefs.push_back(RandomPermutation(n, rng));
      return QueryList::PerVertexPreference(RandomPermutation(n, rng), prefs);
    }
    default: {
      auto pairs = AllOrderedPairs(n);
      Shuffle(pairs, rng);
      return QueryList::Explicit(n, pairs);
    }
  }
}

}  // namespace

TEST(GreedyMatch, TriangleTakesFirstPairOnly) {
  const Graph k3 = CompleteGraph(3);
  const MatchingTrace t = GreedyMatch(k3, ListStartingWith(3, {0, 1}));
  EXPECT_EQ(t.MatchedPairs(), (std::vector<Edge>{{0, 1}}));
  EXPECT_FALSE(t.IsMatched(2));
  EXPECT_TRUE(t.IsActive(0));
  EXPECT_TRUE(t.IsPassive(1));
  EXPECT_EQ(t.time[0], 0);
}

TEST(GreedyMatch, AllExcludedGivesEmptyMatching) {
  const Graph k4 = CompleteGraph(4);
  const MatchingTrace t = GreedyMatch(k4, RankingList(RanksFromOrder({0, 1, 2, 3})).Exclude({0, 1, 2, 3}));
  EXPECT_EQ(t.Size(), 0);
}

TEST(GreedyMatch, PathMiddleEdgeFirstIsMaximalNotMaximum) {
  const Graph p4 = PathGraph(4);
  const MatchingTrace t = GreedyMatch(p4, ListStartingWith(4, {1, 2}));
  EXPECT_EQ(t.MatchedPairs(), (std::vector<Edge>{{1, 2}}));
  EXPECT_EQ(MaximumMatchingSize(p4), 2);
}

TEST(Exclude, Semantics) {
  Rng rng(21);
  for (int t = 0; t < 200; ++t) {
    const Graph g = RandomGraph(rng);
    const int n = g.vertex_count();
    const QueryList list = RandomList(n, rng);
    EXPECT_EQ(GreedyMatch(g, list.Exclude({})), GreedyMatch(g, list));
    const int u = static_cast<int>(rng.Below(n)), v = static_cast<int>(rng.Below(n));
    EXPECT_FALSE(GreedyMatch(g, list.Exclude({v})).IsMatched(v));
    EXPECT_EQ(GreedyMatch(g, list.Exclude({u}).Exclude({v})), GreedyMatch(g, list.Exclude({u, v})));
    // Excluding never reorders the remaining pairs.
    const QueryList minus = list.Exclude({v});
    for (int a = 0; a < n; ++a) {
      for (int b = 0; b < n; ++b) {
        if (a != b) EXPECT_EQ(minus.Position(a, b), list.Position(a, b));
      }
    }
  }
}

TEST(RankingList, OrdersLexicographically) {
  const QueryList two = RankingList(RankVector({0.1, 0.2}));
  EXPECT_EQ(two.Materialize(), (std::vector<std::pair<int, int>>{{0, 1}, {1, 0}}));
  const QueryList three = RankingList(RankVector({0.3, 0.1, 0.2}));
  EXPECT_EQ(three.Materialize().front(), (std::pair<int, int>{1, 2}));
  EXPECT_EQ(three.PairTime(0, 1), three.Position(1, 0));
}

TEST(RankingList, EqualsLiteralRanking) {
  Rng rng(22);
  for (int t = 0; t < 500; ++t) {
    const Graph g = RandomGraph(rng);
    const RankVector x = SampleRankVector(g.vertex_count(), rng);
    const MatchingTrace trace = GreedyMatch(g, RankingList(x));
    EXPECT_EQ(trace.mate, oracle::RankingMates(g, x.values()));
    for (const auto& [a, b] : trace.MatchedPairs()) {
      // The earlier-ranked endpoint is the one that decided.
      EXPECT_EQ(trace.IsActive(a), x[a] < x[b]);
    }
  }
}

TEST(FRankingList, TwoVertexOrder) {
  const QueryList list = FRankingList({0, 1}, RankVector({0.9, 0.2}));
  EXPECT_EQ(list.Materialize(), (std::vector<std::pair<int, int>>{{0, 1}, {1, 0}}));
}

TEST(FRankingList, EqualsLiteralFRanking) {
  Rng rng(23);
  for (int t = 0; t < 500; ++t) {
    const Graph g = RandomGraph(rng);
    const int n = g.vertex_count();
    const RankVector x = SampleRankVector(n, rng);
    const std::vector<int> pi = RandomPermutation(n, rng);
    const QueryList list = FRankingList(pi, x);
    const MatchingTrace trace = GreedyMatch(g, list);
    EXPECT_EQ(trace.mate, oracle::FRankingMates(g, pi, x.values()));
    for (const auto& [a, b] : trace.MatchedPairs()) {
      EXPECT_EQ(trace.IsActive(a), list.DecisionPosition(a) < list.DecisionPosition(b));
    }
  }
}

TEST(FRankingList, RankOrderedDecisionsReduceToRanking) {
  Rng rng(24);
  for (int t = 0; t < 500; ++t) {
    const Graph g = RandomGraph(rng);
    const RankVector x = SampleRankVector(g.vertex_count(), rng);
    EXPECT_EQ(GreedyMatch(g, FRankingList(x.Order(), x)), GreedyMatch(g, RankingList(x)));
  }
}

TEST(GreedyMatch, EqualsLiteralScanOnEveryListForm) {
  Rng rng(25);
  for (int t = 0; t < 500; ++t) {
    const Graph g = RandomGraph(rng);
    const int n = g.vertex_count();
    QueryList list = RandomList(n, rng);
    if (n > 1 && rng.Below(3) == 0) list = list.Exclude({static_cast<int>(rng.Below(n))});
    const MatchingTrace trace = GreedyMatch(g, list);
    EXPECT_EQ(trace, GreedyMatchByScan(g, list));
    EXPECT_EQ(trace.mate, oracle::ScanMates(g, list.Materialize(), list.excluded()));
  }
}

TEST(GreedyMatch, PerVertexPreferencesEqualLiteralVertexIteration) {
  Rng rng(26);
  for (int t = 0; t < 300; ++t) {
    const Graph g = RandomGraph(rng);
    const int n = g.vertex_count();
    const std::vector<int> pi = RandomPermutation(n, rng);
    std::vector<std::vector<int>> prefs;
    for (int v = 0; v < n; ++v) prefs.push_back(RandomPermutation(n, rng));
    EXPECT_EQ(GreedyMatch(g, QueryList::PerVertexPreference(pi, prefs)).mate,
              oracle::VertexIterativeMates(g, pi, prefs));
  }
}

TEST(GreedyMatch, MaximalMonotoneAndHalfApproximate) {
  Rng rng(27);
  for (int t = 0; t < 1000; ++t) {
    const Graph g = RandomGraph(rng);
    const int n = g.vertex_count();
    const QueryList list = RandomList(n, rng);
    const MatchingTrace trace = GreedyMatch(g, list);
    EXPECT_TRUE(IsMaximalMatching(g, trace.MatchedPairs(), list.excluded()));
    EXPECT_GE(2 * trace.Size(), MaximumMatchingSize(g));
    EXPECT_EQ(trace, GreedyMatch(g, list));
    const int v = static_cast<int>(rng.Below(n));
    EXPECT_GE(trace.Size(), GreedyMatch(g, list.Exclude({v})).Size());
  }
}

TEST(MatchingTrace, BeforeAndAvailability) {
  const Graph p4 = PathGraph(4);
  const MatchingTrace t = GreedyMatch(p4, RankingList(RankVector({0.1, 0.2, 0.3, 0.4})));
  // Vertex 0 decides first and takes 1; then 2 takes 3.
  EXPECT_EQ(t.MatchedPairs(), (std::vector<Edge>{{0, 1}, {2, 3}}));
  const MatchingTrace early = t.Before(t.time[2]);
  EXPECT_EQ(early.MatchedPairs(), (std::vector<Edge>{{0, 1}}));
  EXPECT_EQ(t.AvailableAt(t.time[2], {false, false, true, false}),
            (std::vector<bool>{false, false, false, true}));
}

TEST(BuildAlgorithmList, Dispatch) {
  const Graph g = GeneratePerfectMatchingGraph(3, 0.5, 3);
  const std::vector<int> identity = {0, 1, 2, 3, 4, 5};
  EXPECT_EQ(BuildAlgorithmList(AlgorithmKind::kGreedy, g, identity, 1).Materialize(),
            BuildAlgorithmList(AlgorithmKind::kGreedy, g, identity, 2).Materialize());
  Rng rng(77);
  EXPECT_EQ(BuildAlgorithmList(AlgorithmKind::kRanking, g, std::nullopt, 77).Materialize(),
            RankingList(SampleRankVector(6, rng)).Materialize());
  EXPECT_THROW(BuildAlgorithmList(AlgorithmKind::kFRanking, g, std::nullopt, 1),
               std::invalid_argument);
  EXPECT_THROW(BuildAlgorithmList(AlgorithmKind::kIrp, g, std::vector<int>{0, 0, 1, 2, 3, 4}, 1),
               std::invalid_argument);
}

TEST(BuildAlgorithmList, MrgMatchesExactEnumeration) {
  // Exact expectation over every decision order and preference tuple.
  const Graph p4 = PathGraph(4);
  const auto perms = oracle::AllPermutations(4);
  double total = 0.0, count = 0.0;
  for (const auto& pi : perms) {
    for (const auto& a : perms) {
      for (const auto& b : perms) {
        for (const auto& c : perms) {
          for (const auto& d : perms) {
            const auto mate = oracle::VertexIterativeMates(p4, pi, {a, b, c, d});
            total += std::count_if(mate.begin(), mate.end(), [](int m) { return m >= 0; }) / 2;
            count += 1;
          }
        }
      }
    }
  }
  const double exact = total / count;
  const std::vector<std::pair<Graph, double>> cases = {{p4, exact}, {CompleteGraph(4), 2.0}};
  for (const auto& [g, target] : cases) {
    const int trials = 100000;
    double sum = 0.0, sum_sq = 0.0;
    for (int s = 0; s < trials; ++s) {
      const double size = GreedyMatch(g, BuildAlgorithmList(AlgorithmKind::kMrg, g, std::nullopt, s)).Size();
      sum += size;
      sum_sq += size * size;
    }
    const double mean = sum / trials;
    const double sd = std::sqrt(std::max(0.0, sum_sq / trials - mean * mean));
    EXPECT_LE(std::abs(mean - target), 3 * sd / std::sqrt(trials) + 1e-12) << "mean " << mean;
  }
}

TEST(QueryList, SpecTextRoundTrip) {
  Rng rng(28);
  for (int t = 0; t < 100; ++t) {
    const int n = 2 + static_cast<int>(rng.Below(6));
    QueryList list = RandomList(n, rng);
    if (rng.Below(2)) list = list.Exclude({0});
    const QueryList back = QueryList::FromSpecText(list.ToSpecText());
    EXPECT_EQ(back.Materialize(), list.Materialize());
    EXPECT_EQ(back.excluded(), list.excluded());
  }
}

TEST(RankVector, RejectsTiesAndOutOfRange) {
  EXPECT_THROW(RankVector({0.5, 0.5}), std::invalid_argument);
  EXPECT_THROW(RankVector({0.0, 0.5}), std::invalid_argument);
  EXPECT_THROW(RankVector({1.5}), std::invalid_argument);
  Rng rng(29);
  for (int t = 0; t < 100; ++t) {
    const RankVector x = SampleRankVector(10, rng);
    std::set<double> distinct(x.values().begin(), x.values().end());
    EXPECT_EQ(distinct.size(), 10u);
  }
}

TEST(TraceToJson, ListsPairs) {
  const std::string json = TraceToJson(GreedyMatch(PathGraph(2), RankingList(RankVector({0.1, 0.2}))));
  EXPECT_NE(json.find("\"vertex_count\""), std::string::npos);
  EXPECT_NE(json.find("\"matched\""), std::string::npos);
}
