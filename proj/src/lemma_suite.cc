#include "qcm/lemma_suite.h"

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <numeric>
#include <set>
#include <sstream>

#include "json.hpp"
#include "qcm/graph_enumeration.h"
#include "qcm/parallel.h"
#include "qcm/rng.h"
#include "qcm/structure.h"

namespace qcm {
namespace {

// Counts checks and throws on the first violated one.
class Checker {
 public:
  template <typename... Detail>
  void Require(bool ok, const char* what, Detail... detail) {
    ++checks_;
    if (ok) return;
    std::ostringstream msg;
    msg << what;
    ((msg << ' ' << detail), ...);
    throw LemmaFailure(msg.str());
  }
  int64_t checks() const { return checks_; }

 private:
  int64_t checks_ = 0;
};

using CheckFn = void (*)(const LemmaInstance&, const LemmaContext&, Checker&);

struct Registration {
  const char* name;
  std::vector<ListFamily> families;
  CheckFn check;
  bool schedule = false;    // instances carry a fully-online schedule
  bool odd_girth = false;   // random graphs avoid short odd cycles
};

std::vector<int> Identity(int n) {
  std::vector<int> v(n);
  std::iota(v.begin(), v.end(), 0);
  return v;
}

InsertionContext ContextOf(const LemmaInstance& in) {
  return in.family == ListFamily::kFRanking ? InsertionContext::FRanking(in.decision_order)
                                            : InsertionContext::Ranking();
}

bool DecidesBefore(const LemmaInstance& in, int a, int b) {
  return in.list.DecisionPosition(a) < in.list.DecisionPosition(b);
}

bool SameMatching(const MatchingTrace& a, const MatchingTrace& b) { return a.mate == b.mate; }

// Ordered adjacent pairs (u, u*).
std::vector<std::pair<int, int>> AdjacentPairs(const Graph& g) {
  std::vector<std::pair<int, int>> out;
  for (const auto& [a, b] : g.edges()) {
    out.emplace_back(a, b);
    out.emplace_back(b, a);
  }
  return out;
}

// ---------------------------------------------------------------- general lists

void CheckAlternatingPath(const LemmaInstance& in, const LemmaContext& ctx, Checker& c) {
  const Graph& g = in.graph;
  const QueryList& list = in.list;
  const MatchingTrace with = ctx.match(g, list);
  for (int v = 0; v < g.vertex_count(); ++v) {
    if (list.IsExcluded(v)) continue;
    const QueryList minus = list.Exclude({v});
    const MatchingTrace without = ctx.match(g, minus);
    AlternatingPath path;
    try {
      path = ExtractAlternatingPath(with, without, v);
    } catch (const StructuralViolation& e) {
      throw LemmaFailure(std::string("pivot ") + std::to_string(v) + ": " + e.what());
    }
    c.Require(true, "single path");
    for (int i = 0; i + 1 < path.length(); ++i) {
      c.Require(path.query_times[i] < path.query_times[i + 1],
                "query times do not increase along the path of", v, "at edge", i);
    }
    std::set<int64_t> events = {0};
    for (int u = 0; u < g.vertex_count(); ++u) {
      if (with.IsMatched(u)) events.insert(with.time[u] + 1);
      if (without.IsMatched(u)) events.insert(without.time[u] + 1);
    }
    for (int64_t t : events) {
      std::vector<bool> a = with.AvailableAt(t, list.excluded());
      std::vector<bool> b = without.AvailableAt(t, minus.excluded());
      int k = 0;
      while (k < path.length() && path.query_times[k] < t) ++k;
      const int uk = path.vertices[k];
      // Even k: the with-run holds exactly one extra vertex; odd k: the reverse.
      std::vector<bool>& more = (k % 2 == 0) ? a : b;
      const std::vector<bool>& fewer = (k % 2 == 0) ? b : a;
      c.Require(more[uk] && !fewer[uk], "path head availability at time", t, "pivot", v);
      more[uk] = false;
      c.Require(more == fewer, "availability sets differ beyond the path head at time", t,
                "pivot", v);
    }
    for (int u = 0; u < g.vertex_count(); ++u) {
      if (u == v || list.IsExcluded(u)) continue;
      const int idx = path.IndexOf(u);
      c.Require(WorseOff(without, with, u) == (idx > 0 && idx % 2 == 1),
                "worse off by removal disagrees with odd path index for", u, "pivot", v);
      c.Require(WorseOff(with, without, u) == (idx >= 2 && idx % 2 == 0),
                "worse off by insertion disagrees with even path index for", u, "pivot", v);
    }
  }
}

void CheckBackupWorseOff(const LemmaInstance& in, const LemmaContext&, Checker& c) {
  const Graph& g = in.graph;
  const MatchingTrace with = GreedyMatch(g, in.list);
  for (int v = 0; v < g.vertex_count(); ++v) {
    const QueryList minus = in.list.Exclude({v});
    const MatchingTrace without = GreedyMatch(g, minus);
    for (int u = 0; u < g.vertex_count(); ++u) {
      if (u == v) continue;
      if (WorseOff(without, with, u)) {
        std::optional<int> b = BackupOf(g, in.list, u);
        c.Require(without.mate[u] == b.value_or(-1), "removal of", v, "moves", u,
                  "away from its backup");
      }
      if (WorseOff(with, without, u)) {
        std::optional<int> b = BackupOf(g, minus, u);
        c.Require(with.mate[u] == b.value_or(-1), "insertion of", v, "moves", u,
                  "away from its backup");
      }
    }
  }
}

void CheckBackupPath(const LemmaInstance& in, const LemmaContext&, Checker& c) {
  const Graph& g = in.graph;
  for (int v = 0; v < g.vertex_count(); ++v) {
    const QueryList minus = in.list.Exclude({v});
    const AlternatingPath path = AlternatingPathOf(g, in.list, v);
    const int k = path.length();
    for (int i = 1; i < k; ++i) {
      const int u = path.vertices[i];
      std::optional<int> b = BackupOf(g, i % 2 == 1 ? in.list : minus, u);
      c.Require(b == path.vertices[i + 1], "backup of path vertex", i, "is not its successor",
                "pivot", v);
    }
    if (k >= 1) {
      const int last = path.vertices[k];
      c.Require(!BackupOf(g, k % 2 == 1 ? in.list : minus, last).has_value(),
                "last path vertex has a backup, pivot", v);
    }
  }
}

void CheckBlockersPathOne(const LemmaInstance& in, const LemmaContext&, Checker& c) {
  const Graph& g = in.graph;
  const MatchingTrace with = GreedyMatch(g, in.list);
  for (int v = 0; v < g.vertex_count(); ++v) {
    const AlternatingPath path = AlternatingPathOf(g, in.list, v);
    const int k = path.length();
    if (k < 2 || k % 2 != 0) continue;
    const int u = path.vertices[k];
    c.Require(!with.IsMatched(u), "even path end is matched, pivot", v);
    const std::vector<int> blockers = BlockersOf(g, in.list, u);
    for (int i = 0; i < k; i += 2) {
      c.Require(std::count(blockers.begin(), blockers.end(), path.vertices[i]) == 1,
                "even path vertex", i, "does not block the path end, pivot", v);
    }
  }
}

void CheckBlockersPathTwo(const LemmaInstance& in, const LemmaContext&, Checker& c) {
  const Graph& g = in.graph;
  const InsertionContext context = ContextOf(in);
  for (int v = 0; v < g.vertex_count(); ++v) {
    const QueryList minus = in.list.Exclude({v});
    const AlternatingPath path = AlternatingPathOf(g, in.list, v);
    if (path.length() < 2) continue;
    // Candidate L' lists: v moved to every rank interval.
    const auto relisted = InsertionOutcomes(g, in.ranks, v, context);
    for (int j = 2; j <= path.length(); j += 2) {
      const int u = path.vertices[j];
      if (!g.HasEdge(u, v)) continue;
      const std::optional<int> b = BackupOf(g, minus, u);
      for (const auto& iv : relisted) {
        if (iv.with.IsMatched(v)) continue;
        if (b && !(iv.list.PairTime(u, v) < iv.list.PairTime(u, *b))) continue;
        for (int i = 1; i < j; i += 2) {
          c.Require(GreedyMatch(g, iv.list.Exclude({path.vertices[i]})).IsMatched(v),
                    "pivot", v, "re-ranked to", iv.rank, "is not the victim of path vertex", i);
        }
      }
    }
  }
}

void CheckVictimOfMatch(const LemmaInstance& in, const LemmaContext&, Checker& c) {
  const Graph& g = in.graph;
  const MatchingTrace trace = GreedyMatch(g, in.list);
  for (int u = 0; u < g.vertex_count(); ++u) {
    for (int v : g.neighbors(u)) {
      if (trace.IsMatched(v)) continue;
      const QueryList minus = in.list.Exclude({v});
      const MatchingTrace without = GreedyMatch(g, minus);
      if (!without.IsMatched(u)) continue;
      const int w = without.mate[u];
      const std::optional<int> b = BackupOf(g, minus, u);
      if (b && !(in.list.PairTime(u, v) < in.list.PairTime(u, *b))) continue;
      c.Require(GreedyMatch(g, in.list.Exclude({w})).IsMatched(v), "unmatched", v,
                "is not the victim of", w, "matched to its neighbor", u);
    }
  }
}

void CheckOddGirthPathLength(const LemmaInstance& in, const LemmaContext&, Checker& c) {
  const Graph& g = in.graph;
  const int odd_girth = OddGirth(g);
  for (int v = 0; v < g.vertex_count(); ++v) {
    const AlternatingPath path = AlternatingPathOf(g, in.list, v);
    for (int j = 2; j <= path.length(); j += 2) {
      if (!g.HasEdge(v, path.vertices[j])) continue;
      // Path plus the closing edge is an odd cycle.
      c.Require(odd_girth != kInfiniteGirth && j + 1 >= odd_girth, "closing edge from pivot", v,
                "at even index", j, "beats odd girth", odd_girth);
    }
  }
}

void CheckGreedyMaximality(const LemmaInstance& in, const LemmaContext& ctx, Checker& c) {
  const Graph& g = in.graph;
  const MatchingTrace trace = ctx.match(g, in.list);
  const std::vector<Edge> pairs = trace.MatchedPairs();
  c.Require(IsMatching(g, pairs), "output is not a matching");
  c.Require(IsMaximalMatching(g, pairs, in.list.excluded()), "output is not maximal");
  c.Require(2 * trace.Size() >= MaximumMatchingSize(g), "output below half the maximum");
  c.Require(trace == GreedyMatchByScan(g, in.list), "engine disagrees with the literal scan");
  for (int v = 0; v < g.vertex_count(); ++v) {
    c.Require(trace.Size() >= ctx.match(g, in.list.Exclude({v})).Size(),
              "removing a vertex grew the matching:", v);
  }
}

void CheckFullyOnline(const LemmaInstance& in, const LemmaContext&, Checker& c) {
  if (!in.schedule) throw LemmaFailure("instance has no schedule");
  const FullyOnlineSchedule& s = *in.schedule;
  const FullyOnlineResult result = FullyOnlineMatch(in.graph, s, in.seed);
  const QueryList twin = FRankingList(s.DeadlineOrder(), result.ranks);
  c.Require(result.trace == GreedyMatch(result.effective_graph, twin),
            "fully-online run differs from its offline twin");
  for (int v = 0; v < in.graph.vertex_count(); ++v) {
    c.Require(result.ranks[v] == ArrivalRank(in.seed, v), "rank draw not shared for", v);
  }
  if (std::all_of(s.arrival_time.begin(), s.arrival_time.end(), [](int t) { return t == 0; })) {
    c.Require(result.dropped_edges.empty(), "edges dropped although everyone arrived first");
  }
}

// ---------------------------------------------------------------- rank insertion

void CheckPiecewiseConstant(const LemmaInstance& in, const LemmaContext&, Checker& c) {
  const Graph& g = in.graph;
  const InsertionContext context = ContextOf(in);
  Rng rng(in.seed ^ 0x5bd1e995u);
  for (int ustar = 0; ustar < g.vertex_count(); ++ustar) {
    for (const auto& iv : InsertionOutcomes(g, in.ranks, ustar, context)) {
      double y = iv.lo + (iv.hi - iv.lo) * (0.05 + 0.9 * rng.Uniform());
      if (!(y > iv.lo && y < iv.hi)) continue;
      if (iv.hi == 1.0 && rng.Below(4) == 0) y = 1.0;  // closed right end
      const QueryList list = context.ListFor(in.ranks.WithRank(ustar, y));
      c.Require(GreedyMatch(g, list) == iv.with, "outcome changes inside interval of", ustar,
                "at", y);
    }
  }
}

void CheckRankingPathMonotonicity(const LemmaInstance& in, const LemmaContext&, Checker& c) {
  const Graph& g = in.graph;
  const RankVector& x = in.ranks;
  const MatchingTrace with = GreedyMatch(g, in.list);
  auto rank_worse = [&](const MatchingTrace& after, const MatchingTrace& before, int u) {
    return before.IsMatched(u) && MatchRank(after, x, u) > MatchRank(before, x, u);
  };
  for (int v = 0; v < g.vertex_count(); ++v) {
    const MatchingTrace without = GreedyMatch(g, in.list.Exclude({v}));
    const AlternatingPath path = ExtractAlternatingPath(with, without, v);
    for (int i = 0; i + 2 <= path.length(); ++i) {
      c.Require(x[path.vertices[i]] < x[path.vertices[i + 2]], "ranks do not increase at step",
                i, "pivot", v);
    }
    for (int u = 0; u < g.vertex_count(); ++u) {
      if (u == v) continue;
      c.Require(WorseOff(without, with, u) == rank_worse(without, with, u),
                "time and rank notions of worse off differ for", u, "removing", v);
      c.Require(WorseOff(with, without, u) == rank_worse(with, without, u),
                "time and rank notions of worse off differ for", u, "inserting", v);
    }
  }
}

void CheckRankingMatchingGuarantees(const LemmaInstance& in, const LemmaContext&, Checker& c) {
  const Graph& g = in.graph;
  const RankVector& x = in.ranks;
  std::map<int, std::vector<InsertionInterval>> by_ustar;
  for (int ustar = 0; ustar < g.vertex_count(); ++ustar) {
    auto& ivs = by_ustar[ustar] = InsertionOutcomes(g, x, ustar, InsertionContext::Ranking());
    double prev = 0.0;
    for (const auto& iv : ivs) {
      const double r = MatchRank(iv.with, x, ustar);
      c.Require(r >= prev, "match rank of inserted", ustar, "drops when demoted to", iv.rank);
      prev = r;
    }
  }
  for (const auto& [u, ustar] : AdjacentPairs(g)) {
    const auto& ivs = by_ustar[ustar];
    const MatchingTrace& base = ivs.front().without;
    for (const auto& iv : ivs) {
      const RankVector xs = x.WithRank(ustar, iv.rank);
      const double ustar_match = MatchRank(iv.with, xs, ustar);
      if (!base.IsMatched(u)) {
        c.Require(ustar_match <= x[u], "inserted", ustar, "matched above unmatched neighbor", u);
        continue;
      }
      const int v = base.mate[u];
      if (iv.rank < x[v]) {
        c.Require(ustar_match <= x[u], "inserted", ustar, "below x_v matched above x_u of", u);
      }
      if (iv.rank > x[u]) {
        c.Require(MatchRank(iv.with, xs, u) <= x[v], "inserting", ustar, "above x_u hurt", u);
      }
      if (WorseOff(iv.with, base, u)) {
        c.Require(ustar_match <= x[v], "worse-off", u, "but inserted", ustar,
                  "matched above x_v");
      }
    }
  }
}

void CheckRankingBackupRank(const LemmaInstance& in, const LemmaContext&, Checker& c) {
  const Graph& g = in.graph;
  const RankVector& x = in.ranks;
  const MatchingTrace trace = GreedyMatch(g, in.list);
  for (int u = 0; u < g.vertex_count(); ++u) {
    if (!trace.IsMatched(u)) continue;
    if (auto b = BackupOf(g, in.list, u)) {
      c.Require(x[trace.mate[u]] < x[*b], "backup of", u, "ranks before its match");
    }
    for (int ustar = 0; ustar < g.vertex_count(); ++ustar) {
      if (ustar == u) continue;
      const Profile p = RankingProfile(g, x, u, ustar);
      c.Require(!p.x_b || (p.x_v && *p.x_v < *p.x_b), "profile backup rank order for", u);
    }
  }
}

void CheckProfileMonotonicity(const LemmaInstance& in, Checker& c, bool franking) {
  const Graph& g = in.graph;
  const RankVector& x = in.ranks;
  const InsertionContext context = ContextOf(in);
  for (const auto& [u, ustar] : AdjacentPairs(g)) {
    if (franking && !DecidesBefore(in, u, ustar)) continue;
    const Profile p = franking ? FRankingProfile(g, in.decision_order, x, u, ustar)
                               : RankingProfile(g, x, u, ustar);
    if (p.v < 0) continue;
    if (franking && p.v_role != MatchRole::kActive) continue;
    const MatchingTrace base = GreedyMatch(g, in.list.Exclude({ustar}));
    const double upper = p.x_b.value_or(1.0);
    for (const auto& iv : InsertionOutcomes(g, x, p.v, context, {ustar})) {
      if (iv.hi <= *p.x_v || iv.lo >= upper) continue;
      c.Require(SameMatching(iv.with, base), "demoting", p.v, "to", iv.rank,
                "changes the matching; profile of", u, "without", ustar);
    }
  }
}

void CheckRankingProfileMonotonicity(const LemmaInstance& in, const LemmaContext&, Checker& c) {
  CheckProfileMonotonicity(in, c, false);
}

void CheckFRankingProfileMonotonicity(const LemmaInstance& in, const LemmaContext&, Checker& c) {
  CheckProfileMonotonicity(in, c, true);
}

void CheckFRankingMatchingGuarantees(const LemmaInstance& in, const LemmaContext&, Checker& c) {
  const Graph& g = in.graph;
  const RankVector& x = in.ranks;
  const InsertionContext context = ContextOf(in);
  for (const auto& [u, ustar] : AdjacentPairs(g)) {
    if (!DecidesBefore(in, u, ustar)) continue;
    const auto ivs = InsertionOutcomes(g, x, ustar, context);
    const MatchingTrace& base = ivs.front().without;
    bool left_passive = false;
    for (const auto& iv : ivs) {
      const bool passive = iv.with.IsPassive(ustar);
      c.Require(!(passive && left_passive), "inserted", ustar, "passive again at", iv.rank);
      if (!passive) left_passive = true;
      if (!base.IsMatched(u)) continue;
      const int v = base.mate[u];
      if (iv.rank < x[v] && base.IsActive(u)) {
        c.Require(passive, "inserted", ustar, "below x_v is not passive; u =", u);
      }
      if (!passive) {
        c.Require(iv.with.mate[u] == v, "inserted", ustar, "unmatched or active but", u,
                  "lost its match");
      }
    }
  }
}

void CheckSixProfiles(const LemmaInstance& in, const LemmaContext&, Checker& c) {
  static const std::set<std::string> kAllowed = {
      "(x_u,bot,bot)",     "(x_u,x_v^P,bot)",   "(x_u,x_v^P,x_b^P)",
      "(x_u,x_v^P,x_b^A)", "(x_u,x_v^A,bot)",   "(x_u,x_v^A,x_b^A)"};
  const Graph& g = in.graph;
  for (int u = 0; u < g.vertex_count(); ++u) {
    for (int ustar = 0; ustar < g.vertex_count(); ++ustar) {
      if (ustar == u || !DecidesBefore(in, u, ustar)) continue;
      Profile p;
      try {
        p = FRankingProfile(g, in.decision_order, in.ranks, u, ustar);
      } catch (const StructuralViolation& e) {
        throw LemmaFailure(std::string(e.what()) + " for " + std::to_string(u));
      }
      c.Require(kAllowed.count(p.TypeName()) == 1, "profile", p.TypeName(), "of", u,
                "is not one of the six");
    }
  }
}

int WitnessInterval(const std::vector<InsertionInterval>& ivs, double threshold) {
  for (size_t i = 0; i < ivs.size(); ++i) {
    if (ivs[i].hi == threshold) return static_cast<int>(i);
  }
  return -1;
}

void CheckThetaRanking(const LemmaInstance& in, const LemmaContext&, Checker& c) {
  const Graph& g = in.graph;
  const RankVector& x = in.ranks;
  const InsertionContext context = InsertionContext::Ranking();
  for (const auto& [u, ustar] : AdjacentPairs(g)) {
    const ThresholdReport r = Thresholds(g, x, u, ustar, context);
    const auto ivs = InsertionOutcomes(g, x, ustar, context);
    const MatchingTrace& base = ivs.front().without;
    if (!r.u_matched) {
      c.Require(r.theta0 == 0.0, "theta0 positive for unmatched", u);
      continue;
    }
    const int v = base.mate[u];
    const double t0 = r.theta0, t3 = r.theta3;
    c.Require(t0 <= x[u], "theta0 above x_u for", u, "inserting", ustar);
    c.Require(t3 <= t0, "theta3 above theta0 for", u, "inserting", ustar);
    auto u2_rank = [&](size_t i) { return x[r.witnesses[i].path.at(2)]; };
    for (size_t i = 0; i < ivs.size(); ++i) {
      if (!r.witnesses[i].u_worse_off) continue;
      if (t0 > 0 && t0 < x[u]) {
        c.Require(ivs[i].with.IsMatched(ustar) && ivs[i].with.mate[ustar] != v, "inserted",
                  ustar, "at", ivs[i].rank, "is unmatched or takes v of", u);
      }
      c.Require(u2_rank(i) <= t0, "third path vertex ranks above theta0 for", u);
      const auto& path = r.witnesses[i].path;
      const int j = static_cast<int>(std::find(path.begin(), path.end(), u) - path.begin());
      const int back = path[j - 2];
      const double back_rank = back == ustar ? ivs[i].rank : x[back];
      if (back_rank > t0) {
        c.Require(u2_rank(i) <= t3, "third path vertex ranks above theta3 for", u);
        c.Require(j >= 6, "long-path witness of length", j, "for", u);
      }
    }
    if (t0 > 0) {
      const int w = WitnessInterval(ivs, t0);
      c.Require(w >= 0 && r.witnesses[w].u_worse_off, "theta0 witness interval missing for", u);
      c.Require(u2_rank(w) == t0, "third path vertex rank differs from theta0 for", u);
    }
    if (t3 > 0) {
      const int w = WitnessInterval(ivs, t3);
      c.Require(w >= 0 && r.witnesses[w].u_worse_off, "theta3 witness interval missing for", u);
      c.Require(u2_rank(w) == t3, "third path vertex rank differs from theta3 for", u);
    }
  }
}

void CheckThetaFRanking(const LemmaInstance& in, const LemmaContext&, Checker& c) {
  const Graph& g = in.graph;
  const RankVector& x = in.ranks;
  const InsertionContext context = ContextOf(in);
  for (const auto& [u, ustar] : AdjacentPairs(g)) {
    if (!DecidesBefore(in, u, ustar)) continue;
    const ThresholdReport r = Thresholds(g, x, u, ustar, context);
    if (!r.u_matched) continue;
    const auto ivs = InsertionOutcomes(g, x, ustar, context);
    const MatchingTrace& base = ivs.front().without;
    const int v = base.mate[u];
    c.Require(r.theta0 <= r.theta1, "theta0 above theta1 for", u, "inserting", ustar);
    c.Require(r.theta3 <= r.theta0, "theta3 above theta0 for", u, "inserting", ustar);
    if (base.IsActive(u)) c.Require(r.theta1 >= x[v], "theta1 below x_v for active", u);
    if (r.theta0 > 0) {
      const int w = WitnessInterval(ivs, r.theta0);
      c.Require(w >= 0 && r.witnesses[w].u_worse_off, "theta0 witness interval missing for", u);
      const auto& path = r.witnesses[w].path;
      const int u1 = path.at(1), u2 = path.at(2);
      c.Require(x[u2] == r.theta0, "third path vertex rank differs from theta0 for", u);
      c.Require(base.mate[u1] == u2 && base.IsActive(u1),
                "first path vertex does not actively take the third, u =", u);
      for (const auto& iv : ivs) {
        if (iv.hi > r.theta0) break;
        c.Require(iv.with.IsPassive(ustar), "inserted", ustar, "not passive below theta0 at",
                  iv.rank);
      }
    }
  }
}

void CheckMarginalRankU(const LemmaInstance& in, const LemmaContext&, Checker& c) {
  const Graph& g = in.graph;
  const InsertionContext context = ContextOf(in);
  for (const auto& [u, ustar] : AdjacentPairs(g)) {
    if (!DecidesBefore(in, u, ustar)) continue;
    bool seen_active = false;
    for (const auto& iv : InsertionOutcomes(g, in.ranks, u, context, {ustar})) {
      const bool passive = iv.with.IsPassive(u);
      c.Require(!(passive && seen_active), "passive profile of", u, "after an active one at",
                iv.rank);
      if (!passive) seen_active = true;
    }
  }
}

const std::vector<Registration>& Registry() {
  using F = ListFamily;
  const std::vector<F> any = {F::kRanking, F::kFRanking, F::kArbitrary};
  const std::vector<F> ranked = {F::kRanking, F::kFRanking};
  static const std::vector<Registration> registry = {
      {"alternating-path", any, CheckAlternatingPath},
      {"backup-worse-off", any, CheckBackupWorseOff},
      {"backup-path", any, CheckBackupPath},
      {"blockers-path-1", any, CheckBlockersPathOne},
      {"blockers-path-2", ranked, CheckBlockersPathTwo},
      {"victim-of-match", any, CheckVictimOfMatch},
      {"insertion-piecewise-constant", ranked, CheckPiecewiseConstant},
      {"ranking-path-monotonicity", {F::kRanking}, CheckRankingPathMonotonicity},
      {"ranking-matching-guarantees", {F::kRanking}, CheckRankingMatchingGuarantees},
      {"ranking-backup-rank", {F::kRanking}, CheckRankingBackupRank},
      {"ranking-profile-monotonicity", {F::kRanking}, CheckRankingProfileMonotonicity},
      {"franking-profile-monotonicity", {F::kFRanking}, CheckFRankingProfileMonotonicity},
      {"franking-matching-guarantees", {F::kFRanking}, CheckFRankingMatchingGuarantees},
      {"franking-six-profiles", {F::kFRanking}, CheckSixProfiles},
      {"theta-ranking", {F::kRanking}, CheckThetaRanking},
      {"theta-franking", {F::kFRanking}, CheckThetaFRanking},
      {"marginal-rank-u", {F::kFRanking}, CheckMarginalRankU},
      {"odd-girth-path-length", any, CheckOddGirthPathLength, false, true},
      {"greedy-maximality", any, CheckGreedyMaximality},
      {"fully-online-equivalence", {F::kFRanking}, CheckFullyOnline, true},
  };
  return registry;
}

const Registration& Find(const std::string& name) {
  for (const auto& r : Registry()) {
    if (name == r.name) return r;
  }
  std::string known;
  for (const auto& r : Registry()) known += std::string(known.empty() ? "" : ", ") + r.name;
  throw std::invalid_argument("unknown lemma '" + name + "'; registered: " + known);
}

// ---------------------------------------------------------------- instances

QueryList ListFor(ListFamily family, const RankVector& x, const std::vector<int>& pi) {
  return family == ListFamily::kFRanking ? FRankingList(pi, x) : RankingList(x);
}

Graph RandomSmallGraph(Rng& rng, bool odd_girth) {
  if (odd_girth) {
    const int pairs = 2 + static_cast<int>(rng.Below(4));
    const int girth = rng.Below(2) == 0 ? 5 : 7;
    try {
      return GenerateOddGirthGraph(pairs, girth, 500, rng.Next());
    } catch (const GenerationExhausted&) {
      return CycleGraph(2 * pairs);
    }
  }
  if (rng.Below(4) != 0) {
    const int pairs = 1 + static_cast<int>(rng.Below(5));
    return GeneratePerfectMatchingGraph(pairs, 0.15 + 0.7 * rng.Uniform(), rng.Next());
  }
  const int n = 2 + static_cast<int>(rng.Below(9));
  const double p = 0.2 + 0.6 * rng.Uniform();
  std::vector<Edge> edges;
  for (int a = 0; a < n; ++a) {
    for (int b = a + 1; b < n; ++b) {
      if (rng.Bernoulli(p)) edges.emplace_back(a, b);
    }
  }
  return Graph(n, edges);
}

LemmaInstance RandomInstance(const Registration& reg, uint64_t seed, int64_t index) {
  const uint64_t stream = Rng::StreamSeed(seed, std::hash<std::string>{}(reg.name));
  Rng rng = Rng::ForStream(stream, index);
  LemmaInstance in;
  in.seed = Rng::StreamSeed(stream, index);
  in.origin = "random " + std::to_string(index);
  in.family = reg.families[index % reg.families.size()];
  in.graph = RandomSmallGraph(rng, reg.odd_girth);
  const int n = in.graph.vertex_count();
  in.ranks = SampleRankVector(n, rng);
  in.decision_order = RandomPermutation(n, rng);
  if (in.family == ListFamily::kArbitrary) {
    if (rng.Below(2) == 0) {
      std::vector<std::pair<int, int>> pairs;
      for (int a = 0; a < n; ++a) {
        for (int b = 0; b < n; ++b) {
          if (a != b) pairs.emplace_back(a, b);
        }
      }
      Shuffle(pairs, rng);
      in.list = QueryList::Explicit(n, pairs);
    } else {
      std::vector<std::vector<int>> prefs;
      for (int v = 0; v < n; ++v) prefs.push_back(RandomPermutation(n, rng));
      in.list = QueryList::PerVertexPreference(in.decision_order, prefs);
    }
  } else {
    in.list = ListFor(in.family, in.ranks, in.decision_order);
  }
  if (reg.schedule) in.schedule = RandomSchedule(n, rng);
  return in;
}

std::vector<int> NthPermutation(int n, int64_t index) {
  std::vector<int> pool = Identity(n), out;
  std::vector<int64_t> fact(n + 1, 1);
  for (int i = 1; i <= n; ++i) fact[i] = fact[i - 1] * i;
  for (int i = n; i >= 1; --i) {
    const int64_t pick = index / fact[i - 1];
    index %= fact[i - 1];
    out.push_back(pool[pick]);
    pool.erase(pool.begin() + pick);
  }
  return out;
}

int64_t Factorial(int n) {
  int64_t f = 1;
  for (int i = 2; i <= n; ++i) f *= i;
  return f;
}

// A run of exhaustive instances sharing a graph and decision order.
struct Block {
  int graph;
  ListFamily family;
  std::vector<int> decision_order;
  int64_t count;
};

std::vector<Block> ExhaustiveBlocks(const Registration& reg, const std::vector<Graph>& graphs,
                                    uint64_t seed) {
  std::vector<Block> blocks;
  for (size_t gi = 0; gi < graphs.size(); ++gi) {
    const int n = graphs[gi].vertex_count();
    for (ListFamily family : reg.families) {
      if (family == ListFamily::kArbitrary) continue;
      if (reg.schedule) {
        // Two schedules per deadline order: everyone first, and lazy arrivals.
        blocks.push_back({static_cast<int>(gi), family, {}, 2 * Factorial(n)});
        continue;
      }
      if (family == ListFamily::kRanking) {
        blocks.push_back({static_cast<int>(gi), family, {}, Factorial(n)});
        continue;
      }
      std::vector<std::vector<int>> orders;
      if (n <= 4) {
        for (int64_t i = 0; i < Factorial(n); ++i) orders.push_back(NthPermutation(n, i));
      } else {
        orders.push_back(Identity(n));
        orders.push_back(Identity(n));
        std::reverse(orders.back().begin(), orders.back().end());
        Rng rng = Rng::ForStream(seed, gi);
        for (int i = 0; i < 4; ++i) orders.push_back(RandomPermutation(n, rng));
      }
      for (auto& pi : orders) blocks.push_back({static_cast<int>(gi), family, pi, Factorial(n)});
    }
  }
  return blocks;
}

LemmaInstance ExhaustiveInstance(const Registration& reg, const Graph& g, const Block& block,
                                 int64_t offset, uint64_t seed) {
  const int n = g.vertex_count();
  LemmaInstance in;
  in.graph = g;
  in.family = block.family;
  in.seed = Rng::StreamSeed(seed, static_cast<uint64_t>(offset) * 131 + block.graph);
  in.origin = "exhaustive graph " + std::to_string(block.graph) + " order " +
              std::to_string(offset);
  if (reg.schedule) {
    const std::vector<int> deadlines = NthPermutation(n, offset / 2);
    std::vector<int> arrivals = deadlines;
    std::reverse(arrivals.begin(), arrivals.end());
    in.schedule = offset % 2 == 0 ? AllArriveFirst(deadlines)
                                  : ScheduleFromOrders(arrivals, deadlines);
    in.decision_order = deadlines;
    in.ranks = RanksFromOrder(Identity(n));
    in.list = FRankingList(deadlines, in.ranks);
    return in;
  }
  in.ranks = RanksFromOrder(NthPermutation(n, offset));
  in.decision_order = block.decision_order.empty() ? in.ranks.Order() : block.decision_order;
  in.list = ListFor(block.family, in.ranks, in.decision_order);
  return in;
}

std::optional<std::string> RunCheck(const Registration& reg, const LemmaInstance& in,
                                    const LemmaContext& ctx, int64_t* checks) {
  Checker c;
  std::optional<std::string> failure;
  try {
    reg.check(in, ctx, c);
  } catch (const LemmaFailure& e) {
    failure = e.what();
  } catch (const StructuralViolation& e) {
    failure = std::string("structural violation: ") + e.what();
  } catch (const std::exception& e) {
    failure = std::string("exception: ") + e.what();
  }
  if (checks) *checks = c.checks();
  return failure;
}

// Drops edges one at a time while the failure persists.
LemmaInstance Shrink(const Registration& reg, LemmaInstance in, const LemmaContext& ctx,
                     std::string& message) {
  for (bool changed = true; changed;) {
    changed = false;
    for (const Edge& e : in.graph.edges()) {
      LemmaInstance candidate = in;
      std::vector<Edge> keep;
      for (const Edge& f : in.graph.edges()) {
        if (f != e) keep.push_back(f);
      }
      candidate.graph = Graph(in.graph.vertex_count(), keep);
      if (auto failure = RunCheck(reg, candidate, ctx, nullptr)) {
        in = std::move(candidate);
        message = *failure;
        changed = true;
        break;
      }
    }
  }
  return in;
}

std::string FormatDouble(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::vector<int> ReadInts(std::istringstream& fields) {
  std::vector<int> out;
  for (int v; fields >> v;) out.push_back(v);
  return out;
}

}  // namespace

const char* ListFamilyName(ListFamily family) {
  switch (family) {
    case ListFamily::kRanking: return "ranking";
    case ListFamily::kFRanking: return "franking";
    case ListFamily::kArbitrary: return "arbitrary";
  }
  return "?";
}

const std::vector<std::string>& RegisteredLemmas() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> out;
    for (const auto& r : Registry()) out.push_back(r.name);
    return out;
  }();
  return names;
}

bool IsRegisteredLemma(const std::string& name) {
  const auto& names = RegisteredLemmas();
  return std::find(names.begin(), names.end(), name) != names.end();
}

bool LemmaReport::passed() const {
  return std::all_of(results.begin(), results.end(),
                     [](const LemmaResult& r) { return r.passed(); });
}

std::string LemmaReport::ToJson() const {
  nlohmann::json lemmas = nlohmann::json::array();
  for (const auto& r : results) {
    nlohmann::json item = {{"name", r.name},         {"passed", r.passed()},
                           {"instances", r.instances}, {"checks", r.checks},
                           {"failures", r.failures},   {"seconds", r.seconds}};
    if (!r.passed()) {
      item["first_failure"] = r.first_failure;
      item["witness"] = r.witness;
      if (!r.witness_path.empty()) item["witness_path"] = r.witness_path;
    }
    lemmas.push_back(item);
  }
  nlohmann::json out = {{"passed", passed()},
                        {"seed", seed},
                        {"budget", budget},
                        {"exhaustive_pairs", exhaustive_pairs},
                        {"lemmas", lemmas}};
  return out.dump(2);
}

std::optional<std::string> CheckLemma(const std::string& name, const LemmaInstance& instance,
                                      const LemmaContext& context) {
  return RunCheck(Find(name), instance, context, nullptr);
}

LemmaReport RunLemmaSuite(const std::vector<std::string>& names, const SuiteOptions& options) {
  for (const auto& name : names) Find(name);
  LemmaReport report;
  report.seed = options.seed;
  report.budget = options.budget;
  report.exhaustive_pairs = options.exhaustive_pairs;
  std::vector<Graph> graphs;
  if (options.exhaustive_pairs > 0 && !names.empty()) {
    graphs = PerfectMatchingGraphsUpToIsomorphism(options.exhaustive_pairs);
  }
  for (const auto& name : names) {
    const Registration& reg = Find(name);
    const auto start = std::chrono::steady_clock::now();
    const std::vector<Block> blocks = ExhaustiveBlocks(reg, graphs, options.seed);
    std::vector<int64_t> block_start = {0};
    for (const auto& b : blocks) block_start.push_back(block_start.back() + b.count);
    const int64_t total = options.budget + block_start.back();

    auto instance_at = [&](int64_t i) {
      if (i < options.budget) return RandomInstance(reg, options.seed, i);
      const int64_t e = i - options.budget;
      const size_t bi =
          std::upper_bound(block_start.begin(), block_start.end(), e) - block_start.begin() - 1;
      return ExhaustiveInstance(reg, graphs[blocks[bi].graph], blocks[bi], e - block_start[bi],
                                options.seed);
    };

    std::vector<int64_t> checks(total, 0);
    std::vector<char> failed(total, 0);
    ParallelFor(total, options.jobs, [&](int64_t i) {
      failed[i] = RunCheck(reg, instance_at(i), options.context, &checks[i]).has_value();
    });

    LemmaResult result;
    result.name = name;
    result.instances = total;
    result.checks = std::accumulate(checks.begin(), checks.end(), int64_t{0});
    result.failures = std::count(failed.begin(), failed.end(), 1);
    auto first = std::find(failed.begin(), failed.end(), 1);
    if (first != failed.end()) {
      LemmaInstance in = instance_at(first - failed.begin());
      std::string message = *RunCheck(reg, in, options.context, nullptr);
      if (options.shrink) in = Shrink(reg, std::move(in), options.context, message);
      result.first_failure = message;
      result.witness = WitnessText(name, in, message);
      if (!options.witness_dir.empty()) {
        std::filesystem::create_directories(options.witness_dir);
        const auto path = std::filesystem::path(options.witness_dir) /
                          ("witness-" + name + ".txt");
        std::ofstream(path) << result.witness;
        result.witness_path = path.string();
      }
    }
    result.seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    report.results.push_back(std::move(result));
  }
  return report;
}

std::string WitnessText(const std::string& lemma, const LemmaInstance& in,
                        const std::string& message) {
  std::ostringstream out;
  out << "# replay with: qcm verify --replay <this file>\n";
  out << "lemma " << lemma << '\n';
  out << "message " << message << '\n';
  out << "origin " << in.origin << '\n';
  out << "seed " << in.seed << '\n';
  out << "family " << ListFamilyName(in.family) << '\n';
  out << "ranks";
  for (double r : in.ranks.values()) out << ' ' << FormatDouble(r);
  out << "\norder";
  for (int v : in.decision_order) out << ' ' << v;
  out << '\n';
  if (in.schedule) {
    out << "arrive";
    for (int t : in.schedule->arrival_time) out << ' ' << t;
    out << "\ndeadline";
    for (int t : in.schedule->deadline_time) out << ' ' << t;
    out << '\n';
  }
  out << WriteGraphText(in.graph);
  out << in.list.ToSpecText();
  return out.str();
}

ParsedWitness ParseWitness(const std::string& text) {
  static const std::set<std::string> kGraphTags = {"p", "e", "m"};
  static const std::set<std::string> kListTags = {"list", "decision", "pref", "pairs",
                                                  "exclude"};
  ParsedWitness w;
  std::string graph_text, list_text;
  std::vector<int> arrive, deadline;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    std::istringstream fields(line);
    std::string tag;
    if (!(fields >> tag) || tag[0] == '#') continue;
    if (kGraphTags.count(tag)) {
      graph_text += line + '\n';
    } else if (kListTags.count(tag)) {
      list_text += line + '\n';
    } else if (tag == "lemma") {
      fields >> w.lemma;
    } else if (tag == "message" || tag == "origin") {
      std::string rest;
      std::getline(fields, rest);
      if (!rest.empty() && rest[0] == ' ') rest.erase(0, 1);
      (tag == "message" ? w.message : w.instance.origin) = rest;
    } else if (tag == "seed") {
      fields >> w.instance.seed;
    } else if (tag == "family") {
      std::string name;
      fields >> name;
      if (name == "ranking") {
        w.instance.family = ListFamily::kRanking;
      } else if (name == "franking") {
        w.instance.family = ListFamily::kFRanking;
      } else if (name == "arbitrary") {
        w.instance.family = ListFamily::kArbitrary;
      } else {
        throw std::invalid_argument("unknown list family '" + name + "'");
      }
    } else if (tag == "ranks") {
      std::vector<double> ranks;
      for (double r; fields >> r;) ranks.push_back(r);
      w.instance.ranks = RankVector(ranks);
    } else if (tag == "order") {
      w.instance.decision_order = ReadInts(fields);
    } else if (tag == "arrive") {
      arrive = ReadInts(fields);
    } else if (tag == "deadline") {
      deadline = ReadInts(fields);
    } else {
      throw std::invalid_argument("unknown witness record '" + tag + "'");
    }
  }
  if (w.lemma.empty()) throw std::invalid_argument("witness names no lemma");
  w.instance.graph = ParseGraphText(graph_text);
  w.instance.list = QueryList::FromSpecText(list_text);
  if (!arrive.empty() || !deadline.empty()) {
    w.instance.schedule = FullyOnlineSchedule{arrive, deadline};
  }
  return w;
}

}  // namespace qcm
