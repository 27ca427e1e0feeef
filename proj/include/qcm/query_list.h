#ifndef QCM_QUERY_LIST_H_
#define QCM_QUERY_LIST_H_

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "qcm/graph.h"
#include "qcm/rng.h"

namespace qcm {

// Distinct ranks in (0, 1], one per vertex.
class RankVector {
 public:
  RankVector() = default;
  explicit RankVector(std::vector<double> ranks);

  int size() const { return static_cast<int>(ranks_.size()); }
  double operator[](int v) const { return ranks_[v]; }
  const std::vector<double>& values() const { return ranks_; }
  // Vertices in increasing rank order.
  std::vector<int> Order() const;
  // Copy with vertex v moved to rank x (x must not collide).
  RankVector WithRank(int v, double x) const;

 private:
  std::vector<double> ranks_;
};

// Draws i.i.d. uniform ranks; colliding entries are re-drawn.
RankVector SampleRankVector(int n, Rng& rng);

// Ranks (i+1)/(n+1) assigned along the given vertex order.
RankVector RanksFromOrder(const std::vector<int>& order);

// A strict total order over the ordered pairs (u, v), u != v, of n vertices,
// plus a set of vertices marked unavailable from the start. Vertex-iterative
// lists are kept as their generating permutations and compared on demand.
class QueryList {
 public:
  enum class Form { kVertexIterative, kExplicit };

  QueryList() = default;

  // decision_order lists vertices in decision order; preference lists all
  // vertices in the common preference order.
  static QueryList CommonPreference(std::vector<int> decision_order,
                                    std::vector<int> preference);
  // preferences[u] lists all vertices in u's preference order.
  static QueryList PerVertexPreference(std::vector<int> decision_order,
                                       std::vector<std::vector<int>> preferences);
  // ordered_pairs must list every ordered pair of distinct vertices once.
  static QueryList Explicit(int n, const std::vector<std::pair<int, int>>& ordered_pairs);

  int vertex_count() const { return n_; }
  Form form() const { return form_; }
  int64_t size() const { return static_cast<int64_t>(n_) * (n_ - 1); }

  // Position of the ordered pair (u, v) in the list.
  int64_t Position(int u, int v) const;
  // Query time of the unordered pair: its first ordered occurrence.
  int64_t PairTime(int u, int v) const;
  // Decision position of u (vertex-iterative lists only).
  int DecisionPosition(int u) const { return decision_pos_[u]; }
  const std::vector<int>& decision_order() const { return decision_order_; }
  // Position of v in u's preference order.
  int PreferencePosition(int u, int v) const;

  bool IsExcluded(int v) const { return excluded_[v]; }
  const std::vector<bool>& excluded() const { return excluded_; }
  // Same order, union of exclusion sets.
  QueryList Exclude(const std::vector<int>& vertices) const;

  std::vector<std::pair<int, int>> Materialize() const;

  // Replayable text form.
  std::string ToSpecText() const;
  static QueryList FromSpecText(const std::string& text);

 private:
  Form form_ = Form::kExplicit;
  int n_ = 0;
  std::vector<int> decision_order_;
  std::vector<int> decision_pos_;
  bool common_ = true;
  std::vector<int> common_pref_pos_;
  std::vector<std::vector<int>> pref_pos_;
  std::vector<int64_t> explicit_pos_;  // n*n
  std::vector<bool> excluded_;
};

// Pairs sorted lexicographically by (x_u, x_v).
QueryList RankingList(const RankVector& x);
// Pairs sorted lexicographically by (decision position of u, x_v).
QueryList FRankingList(const std::vector<int>& decision_order, const RankVector& x);

enum class AlgorithmKind { kGreedy, kIrp, kRdo, kMrg, kUur, kRanking, kFRanking };

const char* AlgorithmKindName(AlgorithmKind kind);
std::optional<AlgorithmKind> ParseAlgorithmKind(const std::string& name);
bool NeedsAdversarialOrder(AlgorithmKind kind);

// One draw of the list distribution of the given algorithm.
QueryList BuildAlgorithmList(AlgorithmKind kind, const Graph& g,
                             const std::optional<std::vector<int>>& adversarial_order,
                             uint64_t seed);

bool IsPermutation(const std::vector<int>& order, int n);

}  // namespace qcm

#endif  // QCM_QUERY_LIST_H_
