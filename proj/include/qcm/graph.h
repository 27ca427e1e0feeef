#ifndef QCM_GRAPH_H_
#define QCM_GRAPH_H_

#include <cstdint>
#include <limits>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace qcm {

// Unordered pair stored with first < second.
using Edge = std::pair<int, int>;

inline Edge MakeEdge(int u, int v) { return u < v ? Edge(u, v) : Edge(v, u); }

class GraphError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Raised by exact oracles asked to work beyond their enumeration limits.
class OracleScaleError : public std::length_error {
 public:
  using std::length_error::length_error;
};

class GenerationExhausted : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Undirected simple graph on vertices 0..n-1 with an optional designated
// perfect matching. Immutable after construction.
class Graph {
 public:
  Graph() = default;
  Graph(int vertex_count, const std::vector<Edge>& edges,
        std::optional<std::vector<Edge>> perfect_matching = std::nullopt);

  int vertex_count() const { return n_; }
  int edge_count() const { return static_cast<int>(edges_.size()); }
  // Sorted, normalized edge list.
  const std::vector<Edge>& edges() const { return edges_; }
  // Sorted neighbor list.
  const std::vector<int>& neighbors(int v) const { return adjacency_[v]; }
  int degree(int v) const { return static_cast<int>(adjacency_[v].size()); }
  bool HasEdge(int u, int v) const;

  const std::optional<std::vector<Edge>>& perfect_matching() const {
    return perfect_matching_;
  }
  // Partner of v in the designated matching, or -1.
  int Partner(int v) const;

  // Neighborhood bitmask; requires vertex_count() <= 64.
  uint64_t NeighborMask(int v) const;

  Graph WithPerfectMatching(std::vector<Edge> matching) const;
  Graph WithoutEdges(const std::vector<Edge>& removed) const;

  bool operator==(const Graph& other) const;

 private:
  int n_ = 0;
  std::vector<Edge> edges_;
  std::vector<std::vector<int>> adjacency_;
  std::vector<char> member_;  // n*n membership table
  std::optional<std::vector<Edge>> perfect_matching_;
  std::vector<int> partner_;
};

Graph CompleteGraph(int n);
Graph CycleGraph(int n);
Graph PathGraph(int n);
Graph StarGraph(int leaves);
Graph PetersenGraph();

Graph GeneratePerfectMatchingGraph(int num_pairs, double extra_edge_probability,
                                   uint64_t seed);

// Perfect-matching graph whose odd girth is at least min_odd_girth. Throws
// GenerationExhausted after max_attempts rejected samples.
Graph GenerateOddGirthGraph(int num_pairs, int min_odd_girth, int max_attempts,
                            uint64_t seed);

inline constexpr int kInfiniteGirth = std::numeric_limits<int>::max();

// Shortest odd cycle length, or kInfiniteGirth for bipartite graphs.
int OddGirth(const Graph& g);

inline constexpr int kMaxOracleVertices = 24;

// Exact maximum matching by memoized search over vertex subsets.
std::vector<Edge> MaximumMatching(const Graph& g);
int MaximumMatchingSize(const Graph& g);

// Induced subgraph on the vertices of one maximum matching, relabeled
// densely in increasing order, with that matching designated.
Graph PruneToPerfectMatching(const Graph& g);

std::string WriteGraphText(const Graph& g);
Graph ParseGraphText(const std::string& text);

bool IsMatching(const Graph& g, const std::vector<Edge>& pairs);
bool IsMaximalMatching(const Graph& g, const std::vector<Edge>& pairs,
                       const std::vector<bool>& excluded);

}  // namespace qcm

#endif  // QCM_GRAPH_H_
