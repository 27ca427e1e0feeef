#include "qcm/ratio.h"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>

#include "qcm/greedy.h"
#include "qcm/parallel.h"
#include "qcm/rng.h"

namespace qcm {
namespace {

std::vector<int> Identity(int n) {
  std::vector<int> v(n);
  std::iota(v.begin(), v.end(), 0);
  return v;
}

void RequireScale(const Graph& g, int cap, AlgorithmKind kind) {
  if (g.vertex_count() > cap) {
    throw OracleScaleError(std::string("exact ") + AlgorithmKindName(kind) + " limited to " +
                           std::to_string(cap) + " vertices");
  }
}

// Sum of matching sizes over every preference permutation for one decision order.
int64_t SumOverPreferences(const Graph& g, const std::vector<int>& decision) {
  std::vector<int> pref = Identity(g.vertex_count());
  int64_t total = 0;
  do {
    total += VertexIterativeSize(g, decision, pref);
  } while (std::next_permutation(pref.begin(), pref.end()));
  return total;
}

// Expected size when each vertex, at its turn, picks a uniform available neighbor.
double UniformChoiceExpectation(const Graph& g, const std::vector<int>& decision, size_t step,
                                uint64_t taken) {
  for (; step < decision.size(); ++step) {
    int v = decision[step];
    if (taken >> v & 1) continue;
    uint64_t open = g.NeighborMask(v) & ~taken;
    if (open == 0) continue;
    double sum = 0.0;
    int choices = 0;
    for (uint64_t rest = open; rest; rest &= rest - 1) {
      int w = std::countr_zero(rest);
      sum += 1.0 + UniformChoiceExpectation(g, decision, step + 1,
                                            taken | (uint64_t{1} << v) | (uint64_t{1} << w));
      ++choices;
    }
    return sum / choices;
  }
  return 0.0;
}

double Factorial(int n) {
  double f = 1;
  for (int i = 2; i <= n; ++i) f *= i;
  return f;
}

const std::vector<int>& RequireOrder(const std::optional<std::vector<int>>& order,
                                     AlgorithmKind kind, int n) {
  if (!order) {
    throw std::invalid_argument(std::string(AlgorithmKindName(kind)) +
                                " needs an adversarial decision order");
  }
  if (!IsPermutation(*order, n)) throw std::invalid_argument("adversarial order is not a permutation");
  return *order;
}

}  // namespace

int VertexIterativeSize(const Graph& g, const std::vector<int>& decision,
                        const std::vector<int>& preference, uint64_t excluded_mask) {
  const int n = g.vertex_count();
  int pos[64];
  for (int i = 0; i < n; ++i) pos[preference[i]] = i;
  uint64_t taken = excluded_mask;
  int size = 0;
  for (int v : decision) {
    if (taken >> v & 1) continue;
    int best = -1;
    for (int w : g.neighbors(v)) {
      if (!(taken >> w & 1) && (best < 0 || pos[w] < pos[best])) best = w;
    }
    if (best >= 0) {
      taken |= (uint64_t{1} << v) | (uint64_t{1} << best);
      ++size;
    }
  }
  return size;
}

RatioEstimate ExactExpectedRatio(const Graph& g, AlgorithmKind kind,
                                 const std::optional<std::vector<int>>& adversarial_order) {
  const int n = g.vertex_count();
  RatioEstimate est;
  est.exact = true;
  const int best = MaximumMatchingSize(g);
  if (best == 0) {
    est.mean = 1.0;
    est.trials = 1;
    return est;
  }
  double expected = 0.0;
  switch (kind) {
    case AlgorithmKind::kRanking: {
      RequireScale(g, kMaxSinglePermutationVertices, kind);
      std::vector<int> order = Identity(n);
      int64_t total = 0;
      do {
        total += VertexIterativeSize(g, order, order);
      } while (std::next_permutation(order.begin(), order.end()));
      est.trials = static_cast<int64_t>(Factorial(n));
      expected = static_cast<double>(total) / est.trials;
      break;
    }
    case AlgorithmKind::kRdo: {
      RequireScale(g, kMaxSinglePermutationVertices, kind);
      std::vector<int> order = Identity(n);
      const std::vector<int> fixed = Identity(n);
      int64_t total = 0;
      do {
        total += VertexIterativeSize(g, order, fixed);
      } while (std::next_permutation(order.begin(), order.end()));
      est.trials = static_cast<int64_t>(Factorial(n));
      expected = static_cast<double>(total) / est.trials;
      break;
    }
    case AlgorithmKind::kFRanking: {
      RequireScale(g, kMaxSinglePermutationVertices, kind);
      const auto& pi = RequireOrder(adversarial_order, kind, n);
      est.trials = static_cast<int64_t>(Factorial(n));
      expected = static_cast<double>(SumOverPreferences(g, pi)) / est.trials;
      break;
    }
    case AlgorithmKind::kUur: {
      RequireScale(g, kMaxDoublePermutationVertices, kind);
      std::vector<int> pi = Identity(n);
      int64_t total = 0;
      do {
        total += SumOverPreferences(g, pi);
      } while (std::next_permutation(pi.begin(), pi.end()));
      est.trials = static_cast<int64_t>(Factorial(n) * Factorial(n));
      expected = static_cast<double>(total) / est.trials;
      break;
    }
    case AlgorithmKind::kGreedy: {
      RequireScale(g, kMaxDoublePermutationVertices, kind);
      const auto& order = RequireOrder(adversarial_order, kind, n);
      est.trials = 1;
      expected = VertexIterativeSize(g, order, order);
      break;
    }
    case AlgorithmKind::kIrp: {
      RequireScale(g, kMaxDoublePermutationVertices, kind);
      const auto& pi = RequireOrder(adversarial_order, kind, n);
      est.trials = 1;
      expected = UniformChoiceExpectation(g, pi, 0, 0);
      break;
    }
    case AlgorithmKind::kMrg: {
      RequireScale(g, kMaxDoublePermutationVertices, kind);
      std::vector<int> pi = Identity(n);
      double total = 0.0;
      do {
        total += UniformChoiceExpectation(g, pi, 0, 0);
      } while (std::next_permutation(pi.begin(), pi.end()));
      est.trials = static_cast<int64_t>(Factorial(n));
      expected = total / est.trials;
      break;
    }
  }
  est.mean = expected / best;
  return est;
}

RatioEstimate MonteCarloRatio(const Graph& g, AlgorithmKind kind,
                              const std::optional<std::vector<int>>& adversarial_order,
                              int64_t trials, uint64_t seed, int jobs) {
  if (trials < 1) throw std::invalid_argument("trials must be at least 1");
  const int best = MaximumMatchingSize(g);
  std::vector<int> sizes(trials);
  ParallelFor(trials, jobs, [&](int64_t t) {
    QueryList list = BuildAlgorithmList(kind, g, adversarial_order, Rng::StreamSeed(seed, t));
    sizes[t] = GreedyMatch(g, list).Size();
  });
  RatioEstimate est;
  est.trials = trials;
  if (best == 0) {
    est.mean = 1.0;
    return est;
  }
  double sum = 0.0, sum_sq = 0.0;
  for (int s : sizes) {
    double r = static_cast<double>(s) / best;
    sum += r;
    sum_sq += r * r;
  }
  est.mean = sum / trials;
  if (trials > 1) {
    double var = std::max(0.0, (sum_sq - sum * est.mean) / (trials - 1));
    est.std_error = std::sqrt(var / trials);
  }
  return est;
}

int ExactVertexLimit(AlgorithmKind kind, bool worst_order) {
  switch (kind) {
    case AlgorithmKind::kRanking:
    case AlgorithmKind::kRdo:
    case AlgorithmKind::kFRanking:
      return kMaxSinglePermutationVertices;
    case AlgorithmKind::kGreedy:
      return worst_order ? kMaxSinglePermutationVertices : kMaxDoublePermutationVertices;
    default:
      return kMaxDoublePermutationVertices;
  }
}

AdversarialResult AdversarialOrderSearch(const Graph& g, AlgorithmKind kind) {
  if (!NeedsAdversarialOrder(kind)) {
    throw std::invalid_argument(std::string(AlgorithmKindName(kind)) +
                                " has no adversarial order");
  }
  RequireScale(g, ExactVertexLimit(kind, true), kind);
  std::vector<int> pi = Identity(g.vertex_count());
  AdversarialResult result;
  result.estimate.mean = std::numeric_limits<double>::infinity();
  do {
    RatioEstimate est =
        kind == AlgorithmKind::kGreedy
            ? RatioEstimate{static_cast<double>(VertexIterativeSize(g, pi, pi)) /
                                std::max(1, MaximumMatchingSize(g)),
                            1, 0.0, true}
            : ExactExpectedRatio(g, kind, pi);
    if (g.edge_count() == 0) est.mean = 1.0;
    if (est.mean < result.estimate.mean) {
      result.estimate = est;
      result.order = pi;
    }
  } while (std::next_permutation(pi.begin(), pi.end()));
  return result;
}

DominanceReport CheckBoundDominance(const std::vector<NamedGraph>& instances, AlgorithmKind kind,
                                    double lp_bound, const DominanceOptions& options) {
  DominanceReport report;
  report.rows.resize(instances.size());
  ParallelFor(static_cast<int64_t>(instances.size()), options.jobs, [&](int64_t i) {
    const Graph& g = instances[i].graph;
    std::optional<std::vector<int>> order;
    if (NeedsAdversarialOrder(kind)) {
      if (options.worst_order) {
        order = AdversarialOrderSearch(g, kind).order;
      } else {
        order = Identity(g.vertex_count());
      }
    }
    RatioEstimate est = options.exact
                            ? ExactExpectedRatio(g, kind, order)
                            : MonteCarloRatio(g, kind, order, options.trials,
                                              Rng::StreamSeed(options.seed, i), 1);
    DominanceRow& row = report.rows[i];
    row.instance_id = instances[i].id;
    row.algorithm = AlgorithmKindName(kind);
    row.ratio = est.mean;
    row.std_error = est.std_error;
    row.bound = lp_bound;
    row.margin = est.mean - 4 * est.std_error - lp_bound;
  });
  report.min_margin = std::numeric_limits<double>::infinity();
  for (const auto& row : report.rows) report.min_margin = std::min(report.min_margin, row.margin);
  if (report.rows.empty()) report.min_margin = 0.0;
  return report;
}

std::string DominanceCsv(const DominanceReport& report) {
  std::ostringstream out;
  out.precision(10);
  out << "instance_id,algorithm,ratio,std_error,bound,margin\n";
  for (const auto& r : report.rows) {
    out << r.instance_id << ',' << r.algorithm << ',' << r.ratio << ',' << r.std_error << ','
        << r.bound << ',' << r.margin << '\n';
  }
  return out.str();
}

}  // namespace qcm
