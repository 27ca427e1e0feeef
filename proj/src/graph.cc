#include "qcm/graph.h"

#include <algorithm>
#include <deque>
#include <numeric>
#include <sstream>

#include "qcm/rng.h"

namespace qcm {

Graph::Graph(int vertex_count, const std::vector<Edge>& edges,
             std::optional<std::vector<Edge>> perfect_matching)
    : n_(vertex_count) {
  if (n_ < 0) throw GraphError("negative vertex count");
  adjacency_.assign(n_, {});
  member_.assign(static_cast<size_t>(n_) * n_, 0);
  for (const auto& [a, b] : edges) {
    if (a < 0 || b < 0 || a >= n_ || b >= n_) {
      throw GraphError("edge endpoint out of range");
    }
    if (a == b) throw GraphError("self-loop at vertex " + std::to_string(a));
    if (member_[a * n_ + b]) {
      throw GraphError("duplicate edge {" + std::to_string(a) + "," +
                       std::to_string(b) + "}");
    }
    member_[a * n_ + b] = member_[b * n_ + a] = 1;
    edges_.push_back(MakeEdge(a, b));
    adjacency_[a].push_back(b);
    adjacency_[b].push_back(a);
  }
  std::sort(edges_.begin(), edges_.end());
  for (auto& list : adjacency_) std::sort(list.begin(), list.end());

  partner_.assign(n_, -1);
  if (perfect_matching.has_value()) {
    std::vector<Edge> normalized;
    for (const auto& [a, b] : *perfect_matching) {
      if (a < 0 || b < 0 || a >= n_ || b >= n_ || !HasEdge(a, b)) {
        throw GraphError("designated matching pair is not an edge");
      }
      if (partner_[a] != -1 || partner_[b] != -1) {
        throw GraphError("designated matching pairs overlap");
      }
      partner_[a] = b;
      partner_[b] = a;
      normalized.push_back(MakeEdge(a, b));
    }
    if (std::count(partner_.begin(), partner_.end(), -1) != 0) {
      throw GraphError("designated matching does not cover all vertices");
    }
    std::sort(normalized.begin(), normalized.end());
    perfect_matching_ = std::move(normalized);
  }
}

bool Graph::HasEdge(int u, int v) const {
  if (u < 0 || v < 0 || u >= n_ || v >= n_) return false;
  return member_[u * n_ + v] != 0;
}

int Graph::Partner(int v) const { return partner_[v]; }

uint64_t Graph::NeighborMask(int v) const {
  if (n_ > 64) throw OracleScaleError("bitmask views need <= 64 vertices");
  uint64_t mask = 0;
  for (int w : adjacency_[v]) mask |= uint64_t{1} << w;
  return mask;
}

Graph Graph::WithPerfectMatching(std::vector<Edge> matching) const {
  return Graph(n_, edges_, std::move(matching));
}

Graph Graph::WithoutEdges(const std::vector<Edge>& removed) const {
  std::vector<Edge> kept;
  for (const Edge& e : edges_) {
    bool drop = false;
    for (const Edge& r : removed) drop = drop || MakeEdge(r.first, r.second) == e;
    if (!drop) kept.push_back(e);
  }
  return Graph(n_, kept);
}

bool Graph::operator==(const Graph& other) const {
  return n_ == other.n_ && edges_ == other.edges_ &&
         perfect_matching_ == other.perfect_matching_;
}

Graph CompleteGraph(int n) {
  std::vector<Edge> edges;
  for (int u = 0; u < n; ++u)
    for (int v = u + 1; v < n; ++v) edges.emplace_back(u, v);
  return Graph(n, edges);
}

Graph CycleGraph(int n) {
  std::vector<Edge> edges;
  for (int i = 0; i < n; ++i) edges.push_back(MakeEdge(i, (i + 1) % n));
  return Graph(n, edges);
}

Graph PathGraph(int n) {
  std::vector<Edge> edges;
  for (int i = 0; i + 1 < n; ++i) edges.emplace_back(i, i + 1);
  return Graph(n, edges);
}

Graph StarGraph(int leaves) {
  std::vector<Edge> edges;
  for (int i = 1; i <= leaves; ++i) edges.emplace_back(0, i);
  return Graph(leaves + 1, edges);
}

Graph PetersenGraph() {
  std::vector<Edge> edges;
  for (int i = 0; i < 5; ++i) {
    edges.push_back(MakeEdge(i, (i + 1) % 5));
    edges.push_back(MakeEdge(i, i + 5));
    edges.push_back(MakeEdge(5 + i, 5 + (i + 2) % 5));
  }
  return Graph(10, edges);
}

namespace {

std::vector<Edge> StandardMatching(int num_pairs) {
  std::vector<Edge> matching;
  for (int i = 0; i < num_pairs; ++i) matching.emplace_back(2 * i, 2 * i + 1);
  return matching;
}

Graph SamplePerfectMatchingGraph(int num_pairs, double p, Rng& rng) {
  const int n = 2 * num_pairs;
  std::vector<Edge> edges;
  for (int u = 0; u < n; ++u) {
    for (int v = u + 1; v < n; ++v) {
      const bool matched = (u % 2 == 0 && v == u + 1);
      if (matched || rng.Bernoulli(p)) edges.emplace_back(u, v);
    }
  }
  return Graph(n, edges, StandardMatching(num_pairs));
}

}  // namespace

Graph GeneratePerfectMatchingGraph(int num_pairs, double extra_edge_probability,
                                   uint64_t seed) {
  if (num_pairs < 1) throw GraphError("num_pairs must be positive");
  if (extra_edge_probability < 0.0 || extra_edge_probability > 1.0) {
    throw GraphError("extra_edge_probability outside [0,1]");
  }
  Rng rng(seed);
  return SamplePerfectMatchingGraph(num_pairs, extra_edge_probability, rng);
}

Graph GenerateOddGirthGraph(int num_pairs, int min_odd_girth, int max_attempts,
                            uint64_t seed) {
  if (num_pairs < 1) throw GraphError("num_pairs must be positive");
  if (min_odd_girth < 5 || min_odd_girth % 2 == 0) {
    throw GraphError("min_odd_girth must be odd and >= 5");
  }
  if (max_attempts < 1) throw GraphError("max_attempts must be positive");
  Rng rng(seed);
  const int n = 2 * num_pairs;
  const double start_density = 0.5;
  for (int attempt = 0; attempt < max_attempts; ++attempt) {
    const double p = start_density * (max_attempts - attempt - 1) / max_attempts;
    Graph g = SamplePerfectMatchingGraph(num_pairs, p, rng);
    if (OddGirth(g) < min_odd_girth) continue;
    if (n < min_odd_girth) return g;

    // Splice a cycle 0-1-...-(L-1)-0; matched pairs (2i,2i+1) inside it are
    // cycle edges, so dropping chords keeps the designated matching.
    const int length = min_odd_girth;
    std::vector<Edge> edges;
    for (const Edge& e : g.edges()) {
      const bool chord = e.first < length && e.second < length &&
                         !(e.second == e.first + 1) &&
                         !(e.first == 0 && e.second == length - 1);
      if (!chord) edges.push_back(e);
    }
    for (int i = 0; i < length; ++i) {
      Edge e = MakeEdge(i, (i + 1) % length);
      if (std::find(edges.begin(), edges.end(), e) == edges.end()) {
        edges.push_back(e);
      }
    }
    Graph spliced(n, edges, StandardMatching(num_pairs));
    if (OddGirth(spliced) >= min_odd_girth) return spliced;
    return g;
  }
  throw GenerationExhausted("no graph with odd girth >= " +
                            std::to_string(min_odd_girth) + " after " +
                            std::to_string(max_attempts) + " attempts");
}

int OddGirth(const Graph& g) {
  const int n = g.vertex_count();
  int best = kInfiniteGirth;
  std::vector<int> dist(2 * n);
  std::deque<int> queue;
  for (int s = 0; s < n; ++s) {
    // States are (vertex, parity of walk length) in the bipartite double
    // cover; the shortest odd closed walk through s bounds an odd cycle.
    std::fill(dist.begin(), dist.end(), -1);
    dist[2 * s] = 0;
    queue.assign(1, 2 * s);
    while (!queue.empty()) {
      const int state = queue.front();
      queue.pop_front();
      const int v = state / 2;
      const int parity = state % 2;
      if (dist[state] + 1 >= best) break;
      for (int w : g.neighbors(v)) {
        const int next = 2 * w + (1 - parity);
        if (dist[next] == -1) {
          dist[next] = dist[state] + 1;
          queue.push_back(next);
        }
      }
    }
    if (dist[2 * s + 1] != -1) best = std::min(best, dist[2 * s + 1]);
  }
  return best;
}

namespace {

class MatchingOracle {
 public:
  explicit MatchingOracle(const Graph& g) : g_(g) {
    const int n = g.vertex_count();
    if (n > kMaxOracleVertices) {
      throw OracleScaleError("maximum matching oracle limited to " +
                             std::to_string(kMaxOracleVertices) + " vertices");
    }
    masks_.resize(n);
    for (int v = 0; v < n; ++v) masks_[v] = static_cast<uint32_t>(g.NeighborMask(v));
    memo_.assign(size_t{1} << n, -1);
  }

  int Best(uint32_t set) {
    if (set == 0) return 0;
    int8_t& slot = memo_[set];
    if (slot >= 0) return slot;
    const int v = __builtin_ctz(set);
    const uint32_t rest = set & (set - 1);
    int best = Best(rest);
    for (uint32_t cand = masks_[v] & rest; cand != 0; cand &= cand - 1) {
      const int w = __builtin_ctz(cand);
      best = std::max(best, 1 + Best(rest & ~(uint32_t{1} << w)));
    }
    slot = static_cast<int8_t>(best);
    return best;
  }

  std::vector<Edge> Reconstruct(uint32_t set) {
    std::vector<Edge> matching;
    while (set != 0) {
      const int v = __builtin_ctz(set);
      const uint32_t rest = set & (set - 1);
      const int target = Best(set);
      if (Best(rest) == target) {
        set = rest;
        continue;
      }
      for (uint32_t cand = masks_[v] & rest; cand != 0; cand &= cand - 1) {
        const int w = __builtin_ctz(cand);
        const uint32_t next = rest & ~(uint32_t{1} << w);
        if (1 + Best(next) == target) {
          matching.push_back(MakeEdge(v, w));
          set = next;
          break;
        }
      }
    }
    return matching;
  }

 private:
  const Graph& g_;
  std::vector<uint32_t> masks_;
  std::vector<int8_t> memo_;
};

}  // namespace

std::vector<Edge> MaximumMatching(const Graph& g) {
  MatchingOracle oracle(g);
  const uint32_t all = g.vertex_count() == 32
                           ? ~uint32_t{0}
                           : (uint32_t{1} << g.vertex_count()) - 1;
  std::vector<Edge> matching = oracle.Reconstruct(all);
  std::sort(matching.begin(), matching.end());
  return matching;
}

int MaximumMatchingSize(const Graph& g) {
  if (g.perfect_matching().has_value()) {
    return static_cast<int>(g.perfect_matching()->size());
  }
  return static_cast<int>(MaximumMatching(g).size());
}

Graph PruneToPerfectMatching(const Graph& g) {
  if (g.perfect_matching().has_value()) return g;
  const std::vector<Edge> matching = MaximumMatching(g);
  std::vector<int> kept;
  for (const auto& [a, b] : matching) {
    kept.push_back(a);
    kept.push_back(b);
  }
  std::sort(kept.begin(), kept.end());
  std::vector<int> index(g.vertex_count(), -1);
  for (size_t i = 0; i < kept.size(); ++i) index[kept[i]] = static_cast<int>(i);
  std::vector<Edge> edges;
  for (const auto& [a, b] : g.edges()) {
    if (index[a] >= 0 && index[b] >= 0) edges.push_back(MakeEdge(index[a], index[b]));
  }
  std::vector<Edge> relabeled;
  for (const auto& [a, b] : matching) relabeled.push_back(MakeEdge(index[a], index[b]));
  return Graph(static_cast<int>(kept.size()), edges, relabeled);
}

std::string WriteGraphText(const Graph& g) {
  std::ostringstream out;
  out << "p " << g.vertex_count() << ' ' << g.edge_count() << '\n';
  for (const auto& [a, b] : g.edges()) out << "e " << a << ' ' << b << '\n';
  if (g.perfect_matching().has_value()) {
    for (const auto& [a, b] : *g.perfect_matching()) {
      out << "m " << a << ' ' << b << '\n';
    }
  }
  return out.str();
}

Graph ParseGraphText(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  int n = -1;
  long declared_edges = -1;
  std::vector<Edge> edges;
  std::vector<Edge> matching;
  int line_number = 0;
  while (std::getline(in, line)) {
    ++line_number;
    std::istringstream fields(line);
    std::string tag;
    if (!(fields >> tag) || tag[0] == '#' || tag == "c") continue;
    auto fail = [&](const std::string& what) {
      throw GraphError("graph text line " + std::to_string(line_number) + ": " + what);
    };
    if (tag == "p") {
      if (n >= 0) fail("repeated header");
      if (!(fields >> n >> declared_edges) || n < 0 || declared_edges < 0) {
        fail("bad header");
      }
    } else if (tag == "e" || tag == "m") {
      if (n < 0) fail("record before header");
      int a, b;
      if (!(fields >> a >> b)) fail("bad pair");
      (tag == "e" ? edges : matching).emplace_back(a, b);
    } else {
      fail("unknown record '" + tag + "'");
    }
    std::string extra;
    if (fields >> extra && extra[0] != '#') fail("trailing fields");
  }
  if (n < 0) throw GraphError("graph text has no header");
  if (static_cast<long>(edges.size()) != declared_edges) {
    throw GraphError("edge count does not match header");
  }
  if (matching.empty()) return Graph(n, edges);
  return Graph(n, edges, matching);
}

bool IsMatching(const Graph& g, const std::vector<Edge>& pairs) {
  std::vector<char> used(g.vertex_count(), 0);
  for (const auto& [a, b] : pairs) {
    if (!g.HasEdge(a, b) || used[a] || used[b]) return false;
    used[a] = used[b] = 1;
  }
  return true;
}

bool IsMaximalMatching(const Graph& g, const std::vector<Edge>& pairs,
                       const std::vector<bool>& excluded) {
  if (!IsMatching(g, pairs)) return false;
  std::vector<char> used(g.vertex_count(), 0);
  for (const auto& [a, b] : pairs) {
    if (excluded[a] || excluded[b]) return false;
    used[a] = used[b] = 1;
  }
  for (const auto& [a, b] : g.edges()) {
    if (!used[a] && !used[b] && !excluded[a] && !excluded[b]) return false;
  }
  return true;
}

}  // namespace qcm
