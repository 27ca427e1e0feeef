#include "qcm/structure.h"

#include <algorithm>
#include <limits>
#include <set>

#include "json.hpp"

namespace qcm {
namespace {

const char* RoleTag(MatchRole role) {
  switch (role) {
    case MatchRole::kActive: return "A";
    case MatchRole::kPassive: return "P";
    case MatchRole::kNone: break;
  }
  return "";
}

MatchRole RoleIn(const MatchingTrace& trace, int u) {
  if (!trace.IsMatched(u)) return MatchRole::kNone;
  return trace.IsActive(u) ? MatchRole::kActive : MatchRole::kPassive;
}

std::set<Edge> PairSet(const MatchingTrace& trace) {
  auto pairs = trace.MatchedPairs();
  return {pairs.begin(), pairs.end()};
}

Profile ProfileFromList(const Graph& g, const QueryList& list, const RankVector& x, int u) {
  Profile p;
  p.u = u;
  p.x_u = x[u];
  MatchingTrace trace = GreedyMatch(g, list);
  if (!trace.IsMatched(u)) return p;
  p.v = trace.mate[u];
  p.x_v = x[p.v];
  p.v_role = RoleIn(trace, u);
  MatchingTrace backup = GreedyMatch(g, list.Exclude({p.v}));
  if (backup.IsMatched(u)) {
    p.b = backup.mate[u];
    p.x_b = x[p.b];
    p.b_role = RoleIn(backup, u);
  }
  return p;
}

}  // namespace

int AlternatingPath::IndexOf(int w) const {
  auto it = std::find(vertices.begin(), vertices.end(), w);
  return it == vertices.end() ? -1 : static_cast<int>(it - vertices.begin());
}

AlternatingPath ExtractAlternatingPath(const MatchingTrace& with, const MatchingTrace& without,
                                       int pivot) {
  if (without.IsMatched(pivot)) {
    throw StructuralViolation("pivot is matched in the run that excludes it");
  }
  AlternatingPath path;
  path.vertices.push_back(pivot);
  std::vector<bool> seen(with.vertex_count(), false);
  seen[pivot] = true;
  int cur = pivot;
  for (int i = 0;; ++i) {
    const MatchingTrace& side = (i % 2 == 0) ? with : without;
    int next = side.mate[cur];
    if (next < 0) break;
    if (seen[next]) throw StructuralViolation("symmetric difference contains a cycle");
    seen[next] = true;
    path.vertices.push_back(next);
    path.query_times.push_back(side.time[cur]);
    cur = next;
  }

  // Every other differing pair must lie on the path.
  std::set<Edge> a = PairSet(with), b = PairSet(without);
  std::vector<Edge> diff;
  std::set_symmetric_difference(a.begin(), a.end(), b.begin(), b.end(),
                                std::back_inserter(diff));
  if (static_cast<int>(diff.size()) != path.length()) {
    throw StructuralViolation("symmetric difference is not a single path from the pivot");
  }
  for (int i = 0; i < path.length(); ++i) {
    Edge e = MakeEdge(path.vertices[i], path.vertices[i + 1]);
    if (!std::binary_search(diff.begin(), diff.end(), e)) {
      throw StructuralViolation("path edge lies in both matchings");
    }
  }
  return path;
}

AlternatingPath AlternatingPathOf(const Graph& g, const QueryList& list, int v) {
  return ExtractAlternatingPath(GreedyMatch(g, list), GreedyMatch(g, list.Exclude({v})), v);
}

std::optional<int> BackupOf(const Graph& g, const QueryList& list, int u) {
  MatchingTrace trace = GreedyMatch(g, list);
  if (!trace.IsMatched(u)) return std::nullopt;
  MatchingTrace rerun = GreedyMatch(g, list.Exclude({trace.mate[u]}));
  if (!rerun.IsMatched(u)) return std::nullopt;
  return rerun.mate[u];
}

std::vector<int> BlockersOf(const Graph& g, const QueryList& list, int u) {
  std::vector<int> out;
  MatchingTrace trace = GreedyMatch(g, list);
  if (trace.IsMatched(u) || list.IsExcluded(u)) return out;
  for (int w = 0; w < g.vertex_count(); ++w) {
    if (w == u || list.IsExcluded(w)) continue;
    if (GreedyMatch(g, list.Exclude({w})).IsMatched(u)) out.push_back(w);
  }
  return out;
}

std::string Profile::TypeName() const {
  std::string out = "(x_u,";
  out += x_v ? std::string("x_v^") + RoleTag(v_role) : "bot";
  out += ",";
  out += x_b ? std::string("x_b^") + RoleTag(b_role) : "bot";
  return out + ")";
}

Profile RankingProfile(const Graph& g, const RankVector& x, int u, int ustar) {
  return ProfileFromList(g, RankingList(x).Exclude({ustar}), x, u);
}

Profile FRankingProfile(const Graph& g, const std::vector<int>& pi, const RankVector& x, int u,
                        int ustar) {
  QueryList list = FRankingList(pi, x);
  if (list.DecisionPosition(u) >= list.DecisionPosition(ustar)) {
    throw std::invalid_argument("profile needs u to decide before u*");
  }
  Profile p = ProfileFromList(g, list.Exclude({ustar}), x, u);
  if (p.v_role == MatchRole::kActive && p.x_b) {
    if (p.b_role != MatchRole::kActive || !(*p.x_v < *p.x_b)) {
      throw StructuralViolation("active match has a backup that is passive or ranked earlier");
    }
  }
  return p;
}

QueryList InsertionContext::ListFor(const RankVector& x) const {
  return franking ? FRankingList(decision_order, x) : RankingList(x);
}

std::vector<InsertionInterval> InsertionOutcomes(const Graph& g, const RankVector& base_x,
                                                 int inserted, const InsertionContext& context,
                                                 const std::vector<int>& also_excluded) {
  std::vector<double> cuts = {0.0};
  for (int w = 0; w < base_x.size(); ++w) {
    if (w != inserted) cuts.push_back(base_x[w]);
  }
  std::sort(cuts.begin(), cuts.end());
  cuts.push_back(1.0);

  std::vector<InsertionInterval> out;
  for (size_t i = 0; i + 1 < cuts.size(); ++i) {
    if (!(cuts[i] < cuts[i + 1])) continue;
    InsertionInterval iv;
    iv.lo = cuts[i];
    iv.hi = cuts[i + 1];
    iv.rank = iv.lo + (iv.hi - iv.lo) / 2;
    iv.list = context.ListFor(base_x.WithRank(inserted, iv.rank)).Exclude(also_excluded);
    iv.with = GreedyMatch(g, iv.list);
    iv.without = GreedyMatch(g, iv.list.Exclude({inserted}));
    out.push_back(std::move(iv));
  }
  return out;
}

double MatchRank(const MatchingTrace& trace, const RankVector& x, int v) {
  if (!trace.IsMatched(v)) return std::numeric_limits<double>::infinity();
  return x[trace.mate[v]];
}

ThresholdReport Thresholds(const Graph& g, const RankVector& base_x, int u, int ustar,
                           const InsertionContext& context) {
  ThresholdReport report;
  auto intervals = InsertionOutcomes(g, base_x, ustar, context);
  std::vector<AlternatingPath> paths;
  for (const auto& iv : intervals) {
    report.u_matched = iv.without.IsMatched(u);
    ThresholdWitness w;
    w.rank = iv.rank;
    w.u_worse_off = WorseOff(iv.with, iv.without, u);
    w.ustar_passive = iv.with.IsPassive(ustar);
    w.ustar_mate = iv.with.mate[ustar];
    paths.push_back(ExtractAlternatingPath(iv.with, iv.without, ustar));
    w.path_length = paths.back().length();
    w.path = paths.back().vertices;
    if (w.u_worse_off) report.theta0 = std::max(report.theta0, iv.hi);
    if (w.ustar_passive) report.theta1 = std::max(report.theta1, iv.hi);
    report.witnesses.push_back(w);
  }
  for (size_t i = 0; i < intervals.size(); ++i) {
    if (!report.witnesses[i].u_worse_off) continue;
    int j = paths[i].IndexOf(u);
    if (j < 2) continue;
    int w = paths[i].vertices[j - 2];
    double rank = (w == ustar) ? intervals[i].rank : base_x[w];
    if (rank > report.theta0) report.theta3 = std::max(report.theta3, intervals[i].hi);
  }
  return report;
}

std::string PathToJson(const AlternatingPath& path) {
  nlohmann::json out = {{"vertices", path.vertices}, {"query_times", path.query_times}};
  return out.dump();
}

std::string ProfileToJson(const Profile& p) {
  nlohmann::json out = {{"u", p.u}, {"x_u", p.x_u}, {"type", p.TypeName()}};
  out["v"] = p.v;
  out["x_v"] = p.x_v ? nlohmann::json(*p.x_v) : nlohmann::json(nullptr);
  out["b"] = p.b;
  out["x_b"] = p.x_b ? nlohmann::json(*p.x_b) : nlohmann::json(nullptr);
  return out.dump();
}

std::string ThresholdsToJson(const ThresholdReport& r) {
  nlohmann::json ws = nlohmann::json::array();
  for (const auto& w : r.witnesses) {
    ws.push_back({{"rank", w.rank}, {"u_worse_off", w.u_worse_off},
                  {"ustar_passive", w.ustar_passive}, {"ustar_mate", w.ustar_mate},
                  {"path_length", w.path_length}, {"path", w.path}});
  }
  nlohmann::json out = {{"u_matched", r.u_matched}, {"theta0", r.theta0},
                        {"theta1", r.theta1},       {"theta3", r.theta3},
                        {"intervals", ws}};
  return out.dump();
}

}  // namespace qcm
