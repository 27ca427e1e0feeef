#ifndef QCM_RATIO_H_
#define QCM_RATIO_H_

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "qcm/graph.h"
#include "qcm/query_list.h"

namespace qcm {

struct RatioEstimate {
  double mean = 0.0;
  int64_t trials = 0;  // enumerated outcomes in exact mode
  double std_error = 0.0;
  bool exact = false;
};

inline constexpr int kMaxSinglePermutationVertices = 8;
inline constexpr int kMaxDoublePermutationVertices = 6;

// Largest graph the exact oracle accepts for `kind`, either for one run or
// for the search over decision orders.
int ExactVertexLimit(AlgorithmKind kind, bool worst_order = false);

// E|R| / |M*| over the full randomness of `kind`. Rank vectors enter only
// through their order, so one permutation per draw suffices. Per-vertex
// uniform preferences are integrated by branching uniformly over the
// available neighbors at each decision. Throws OracleScaleError past the
// size caps above.
RatioEstimate ExactExpectedRatio(const Graph& g, AlgorithmKind kind,
                                 const std::optional<std::vector<int>>& adversarial_order);

// Matching size of the vertex-iterative run: vertices decide in `decision`
// order, each picking its available neighbor earliest in `preference`.
int VertexIterativeSize(const Graph& g, const std::vector<int>& decision,
                        const std::vector<int>& preference, uint64_t excluded_mask = 0);

// Trials use seeds derived from (seed, trial index); the result does not
// depend on `jobs`.
RatioEstimate MonteCarloRatio(const Graph& g, AlgorithmKind kind,
                              const std::optional<std::vector<int>>& adversarial_order,
                              int64_t trials, uint64_t seed, int jobs = 1);

struct AdversarialResult {
  std::vector<int> order;
  RatioEstimate estimate;
};

// Minimum of the exact ratio over every decision order.
AdversarialResult AdversarialOrderSearch(const Graph& g, AlgorithmKind kind);

struct DominanceRow {
  std::string instance_id;
  std::string algorithm;
  double ratio = 0.0;
  double std_error = 0.0;
  double bound = 0.0;
  double margin = 0.0;  // ratio - 4 std errors - bound
};

struct DominanceReport {
  std::vector<DominanceRow> rows;
  double min_margin = 0.0;
  bool ok() const { return min_margin >= 0.0; }
};

struct DominanceOptions {
  bool exact = true;
  int64_t trials = 10000;  // sampled mode only
  bool worst_order = false;  // minimize over decision orders
  uint64_t seed = 1;
  int jobs = 1;
};

struct NamedGraph {
  std::string id;
  Graph graph;
};

// Exact mode needs ratio >= bound; sampled mode allows 4 standard errors.
DominanceReport CheckBoundDominance(const std::vector<NamedGraph>& instances, AlgorithmKind kind,
                                    double lp_bound, const DominanceOptions& options);

std::string DominanceCsv(const DominanceReport& report);

}  // namespace qcm

#endif  // QCM_RATIO_H_
