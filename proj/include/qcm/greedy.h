#ifndef QCM_GREEDY_H_
#define QCM_GREEDY_H_

#include <cstdint>
#include <limits>
#include <string>
#include <vector>

#include "qcm/graph.h"
#include "qcm/query_list.h"

namespace qcm {

inline constexpr int64_t kNeverMatched = std::numeric_limits<int64_t>::max();

// Result of one query-commit run: the matching plus, per matched vertex, the
// query time of its pair and whether it was the active endpoint.
struct MatchingTrace {
  std::vector<int> mate;          // -1 when unmatched
  std::vector<int64_t> time;      // kNeverMatched when unmatched
  std::vector<bool> active;       // meaningful for matched vertices only

  int vertex_count() const { return static_cast<int>(mate.size()); }
  bool IsMatched(int v) const { return mate[v] >= 0; }
  bool IsActive(int v) const { return mate[v] >= 0 && active[v]; }
  bool IsPassive(int v) const { return mate[v] >= 0 && !active[v]; }
  int Size() const;
  std::vector<Edge> MatchedPairs() const;
  // Partial matching formed strictly before time t.
  MatchingTrace Before(int64_t t) const;
  // Vertices not excluded and not matched strictly before time t.
  std::vector<bool> AvailableAt(int64_t t, const std::vector<bool>& excluded) const;

  bool operator==(const MatchingTrace& other) const = default;
};

// Alg. 1 on the list: walk pairs in order, commit every edge whose endpoints
// are both available and not excluded.
MatchingTrace GreedyMatch(const Graph& g, const QueryList& list);

// Same semantics, literally walking the materialized list. Test oracle.
MatchingTrace GreedyMatchByScan(const Graph& g, const QueryList& list);

std::string TraceToJson(const MatchingTrace& trace);

}  // namespace qcm

#endif  // QCM_GREEDY_H_
