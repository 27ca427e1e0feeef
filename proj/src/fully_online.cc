#include "qcm/fully_online.h"

#include <algorithm>
#include <cmath>
#include <tuple>
#include <numeric>
#include <stdexcept>

namespace qcm {
namespace {

void Validate(const FullyOnlineSchedule& schedule, int n) {
  if (static_cast<int>(schedule.arrival_time.size()) != n ||
      static_cast<int>(schedule.deadline_time.size()) != n) {
    throw std::invalid_argument("schedule size does not match the graph");
  }
  std::vector<int> deadlines = schedule.deadline_time;
  std::sort(deadlines.begin(), deadlines.end());
  if (std::adjacent_find(deadlines.begin(), deadlines.end()) != deadlines.end()) {
    throw std::invalid_argument("deadlines must be distinct");
  }
  for (int v = 0; v < n; ++v) {
    if (schedule.deadline_time[v] < schedule.arrival_time[v]) {
      throw std::invalid_argument("deadline before arrival");
    }
  }
}

// Events in time order; -1-v encodes the arrival of v, v its deadline.
FullyOnlineSchedule FromEvents(int n, const std::vector<int>& events) {
  FullyOnlineSchedule schedule;
  schedule.arrival_time.assign(n, 0);
  schedule.deadline_time.assign(n, 0);
  for (size_t t = 0; t < events.size(); ++t) {
    if (events[t] < 0) {
      schedule.arrival_time[-1 - events[t]] = static_cast<int>(t);
    } else {
      schedule.deadline_time[events[t]] = static_cast<int>(t);
    }
  }
  return schedule;
}

}  // namespace

std::vector<int> FullyOnlineSchedule::DeadlineOrder() const {
  std::vector<int> order(deadline_time.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(),
            [this](int a, int b) { return deadline_time[a] < deadline_time[b]; });
  return order;
}

FullyOnlineSchedule ScheduleFromOrders(const std::vector<int>& arrivals,
                                       const std::vector<int>& deadlines) {
  const int n = static_cast<int>(arrivals.size());
  if (!IsPermutation(arrivals, n) || !IsPermutation(deadlines, n)) {
    throw std::invalid_argument("arrival and deadline orders must be permutations");
  }
  std::vector<char> arrived(n, 0);
  std::vector<int> events;
  size_t next = 0;
  for (int v : deadlines) {
    while (!arrived[v]) {
      arrived[arrivals[next]] = 1;
      events.push_back(-1 - arrivals[next]);
      ++next;
    }
    events.push_back(v);
  }
  return FromEvents(n, events);
}

FullyOnlineSchedule AllArriveFirst(const std::vector<int>& deadlines) {
  const int n = static_cast<int>(deadlines.size());
  std::vector<int> arrivals(n);
  std::iota(arrivals.begin(), arrivals.end(), 0);
  if (!IsPermutation(deadlines, n)) {
    throw std::invalid_argument("deadline order must be a permutation");
  }
  FullyOnlineSchedule schedule;
  schedule.arrival_time.assign(n, 0);
  schedule.deadline_time.assign(n, 0);
  for (int i = 0; i < n; ++i) schedule.deadline_time[deadlines[i]] = i + 1;
  return schedule;
}

FullyOnlineSchedule RandomSchedule(int n, Rng& rng) {
  const std::vector<int> arrivals = RandomPermutation(n, rng);
  const std::vector<int> deadlines = RandomPermutation(n, rng);
  std::vector<char> arrived(n, 0);
  std::vector<int> events;
  size_t next = 0;
  for (int v : deadlines) {
    // Arrive whoever is required, then a random number of extra vertices.
    while (!arrived[v] || (next < arrivals.size() && rng.Bernoulli(0.4))) {
      arrived[arrivals[next]] = 1;
      events.push_back(-1 - arrivals[next]);
      ++next;
    }
    events.push_back(v);
  }
  return FromEvents(n, events);
}

double ArrivalRank(uint64_t seed, int v) {
  Rng rng = Rng::ForStream(seed, static_cast<uint64_t>(v));
  return rng.UniformOpenClosed();
}

FullyOnlineResult FullyOnlineMatch(const Graph& g, const FullyOnlineSchedule& schedule,
                                   uint64_t seed) {
  const int n = g.vertex_count();
  Validate(schedule, n);
  FullyOnlineResult result;

  std::vector<double> ranks(n);
  for (int v = 0; v < n; ++v) ranks[v] = ArrivalRank(seed, v);
  // Ties have probability ~2^-53; break them deterministically by vertex.
  for (int v = 0; v < n; ++v) {
    for (int w = 0; w < v; ++w) {
      while (ranks[w] == ranks[v]) ranks[v] = std::nextafter(ranks[v], 0.0);
    }
  }
  result.ranks = RankVector(ranks);

  std::vector<Edge> kept;
  for (const auto& [a, b] : g.edges()) {
    const bool unusable = schedule.arrival_time[a] > schedule.deadline_time[b] ||
                          schedule.arrival_time[b] > schedule.deadline_time[a];
    (unusable ? result.dropped_edges : kept).push_back(Edge(a, b));
  }
  result.effective_graph = Graph(n, kept);

  // Event loop: arrivals (and their rank draws) precede deadlines at equal
  // times. A vertex is available once arrived, while unmatched, until its
  // deadline passes.
  const std::vector<int> deadline_order = schedule.DeadlineOrder();
  const QueryList timing = FRankingList(deadline_order, result.ranks);
  struct Event {
    int time;
    int kind;  // 0 arrival, 1 deadline
    int vertex;
  };
  std::vector<Event> events;
  for (int v = 0; v < n; ++v) {
    events.push_back({schedule.arrival_time[v], 0, v});
    events.push_back({schedule.deadline_time[v], 1, v});
  }
  std::sort(events.begin(), events.end(), [](const Event& a, const Event& b) {
    return std::tie(a.time, a.kind, a.vertex) < std::tie(b.time, b.kind, b.vertex);
  });

  MatchingTrace& trace = result.trace;
  trace.mate.assign(n, -1);
  trace.time.assign(n, kNeverMatched);
  trace.active.assign(n, false);
  std::vector<char> arrived(n, 0);
  std::vector<char> expired(n, 0);
  for (const Event& e : events) {
    const int v = e.vertex;
    if (e.kind == 0) {
      arrived[v] = 1;
      continue;
    }
    if (!trace.IsMatched(v)) {
      int best = -1;
      for (int w : g.neighbors(v)) {
        if (!arrived[w] || expired[w] || trace.IsMatched(w)) continue;
        if (best < 0 || ranks[w] < ranks[best]) best = w;
      }
      if (best >= 0) {
        const int64_t t = timing.Position(v, best);
        trace.mate[v] = best;
        trace.mate[best] = v;
        trace.time[v] = trace.time[best] = t;
        trace.active[v] = true;
      }
    }
    expired[v] = 1;
  }
  return result;
}

}  // namespace qcm
