#ifndef QCM_FULLY_ONLINE_H_
#define QCM_FULLY_ONLINE_H_

#include <cstdint>
#include <vector>

#include "qcm/graph.h"
#include "qcm/greedy.h"
#include "qcm/query_list.h"

namespace qcm {

// Arrival and deadline times per vertex. Deadlines are pairwise distinct and
// no vertex's deadline precedes its arrival; at equal times arrivals happen
// first.
struct FullyOnlineSchedule {
  std::vector<int> arrival_time;
  std::vector<int> deadline_time;

  // Vertices sorted by deadline: the decision order of the offline twin.
  std::vector<int> DeadlineOrder() const;
};

// Schedule from an arrival order and a deadline order in which every
// arrival happens as late as possible: just before the first deadline that
// needs it.
FullyOnlineSchedule ScheduleFromOrders(const std::vector<int>& arrivals,
                                       const std::vector<int>& deadlines);

// Everyone arrives at time 0; deadlines follow the given order.
FullyOnlineSchedule AllArriveFirst(const std::vector<int>& deadlines);

// Random arrival order, deadline order, and interleaving for n vertices.
FullyOnlineSchedule RandomSchedule(int n, Rng& rng);

struct FullyOnlineResult {
  MatchingTrace trace;
  RankVector ranks;
  // Edges whose endpoints cannot both be present at either deadline.
  std::vector<Edge> dropped_edges;
  // g without the dropped edges.
  Graph effective_graph;
};

// Rank of vertex v as drawn at its arrival; depends only on (seed, v), so
// runs with different schedules share rank draws.
double ArrivalRank(uint64_t seed, int v);

// Fully-Ranking: each vertex draws its rank on arrival; at its deadline an
// available vertex matches its smallest-ranked available arrived neighbor.
// Trace times use the positions of the deadline-ordered FRanking list.
FullyOnlineResult FullyOnlineMatch(const Graph& g, const FullyOnlineSchedule& schedule,
                                   uint64_t seed);

}  // namespace qcm

#endif  // QCM_FULLY_ONLINE_H_
