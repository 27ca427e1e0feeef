#include "qcm/greedy.h"

#include <algorithm>

#include "json.hpp"

namespace qcm {
namespace {

MatchingTrace EmptyTrace(int n) {
  MatchingTrace trace;
  trace.mate.assign(n, -1);
  trace.time.assign(n, kNeverMatched);
  trace.active.assign(n, false);
  return trace;
}

void Commit(MatchingTrace& trace, int u, int v, int64_t t) {
  trace.mate[u] = v;
  trace.mate[v] = u;
  trace.time[u] = trace.time[v] = t;
  trace.active[u] = true;
  trace.active[v] = false;
}

}  // namespace

int MatchingTrace::Size() const {
  return static_cast<int>(std::count_if(mate.begin(), mate.end(),
                                        [](int m) { return m >= 0; })) / 2;
}

std::vector<Edge> MatchingTrace::MatchedPairs() const {
  std::vector<Edge> pairs;
  for (int v = 0; v < vertex_count(); ++v) {
    if (mate[v] > v) pairs.emplace_back(v, mate[v]);
  }
  return pairs;
}

MatchingTrace MatchingTrace::Before(int64_t t) const {
  MatchingTrace partial = *this;
  for (int v = 0; v < vertex_count(); ++v) {
    if (time[v] >= t) {
      partial.mate[v] = -1;
      partial.time[v] = kNeverMatched;
      partial.active[v] = false;
    }
  }
  return partial;
}

std::vector<bool> MatchingTrace::AvailableAt(int64_t t,
                                             const std::vector<bool>& excluded) const {
  std::vector<bool> available(vertex_count());
  for (int v = 0; v < vertex_count(); ++v) available[v] = !excluded[v] && time[v] >= t;
  return available;
}

MatchingTrace GreedyMatch(const Graph& g, const QueryList& list) {
  if (list.form() == QueryList::Form::kExplicit) return GreedyMatchByScan(g, list);
  const int n = g.vertex_count();
  MatchingTrace trace = EmptyTrace(n);
  // The pairs (u, .) form one contiguous block per u in decision order, so
  // the first available neighbor in u's preference realizes the block.
  std::vector<int> candidates;
  for (int u : list.decision_order()) {
    if (list.IsExcluded(u) || trace.IsMatched(u)) continue;
    int best = -1;
    int best_pos = 0;
    for (int v : g.neighbors(u)) {
      if (list.IsExcluded(v) || trace.IsMatched(v)) continue;
      const int pos = list.PreferencePosition(u, v);
      if (best < 0 || pos < best_pos) {
        best = v;
        best_pos = pos;
      }
    }
    if (best >= 0) Commit(trace, u, best, list.Position(u, best));
  }
  return trace;
}

MatchingTrace GreedyMatchByScan(const Graph& g, const QueryList& list) {
  MatchingTrace trace = EmptyTrace(g.vertex_count());
  const auto pairs = list.Materialize();
  for (size_t t = 0; t < pairs.size(); ++t) {
    const auto [u, v] = pairs[t];
    if (!g.HasEdge(u, v) || list.IsExcluded(u) || list.IsExcluded(v)) continue;
    if (trace.IsMatched(u) || trace.IsMatched(v)) continue;
    Commit(trace, u, v, static_cast<int64_t>(t));
  }
  return trace;
}

std::string TraceToJson(const MatchingTrace& trace) {
  nlohmann::json pairs = nlohmann::json::array();
  for (const auto& [a, b] : trace.MatchedPairs()) {
    const int active = trace.active[a] ? a : b;
    pairs.push_back({{"pair", {a, b}}, {"time", trace.time[a]}, {"active", active}});
  }
  nlohmann::json out = {{"vertex_count", trace.vertex_count()},
                        {"size", trace.Size()},
                        {"matched", pairs}};
  return out.dump();
}

}  // namespace qcm
