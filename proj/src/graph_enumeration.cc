#include "qcm/graph_enumeration.h"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>
#include <string>

namespace qcm {
namespace {

using Masks = std::vector<uint32_t>;

Masks MasksOf(const Graph& g) {
  Masks masks(g.vertex_count());
  for (int v = 0; v < g.vertex_count(); ++v) {
    masks[v] = static_cast<uint32_t>(g.NeighborMask(v));
  }
  return masks;
}

// Ordered equitable partition: cells of vertices listed in an order that only
// depends on isomorphism-invariant signatures.
std::vector<std::vector<int>> EquitablePartition(const Masks& adj) {
  const int n = static_cast<int>(adj.size());
  std::vector<int> cell(n, 0);
  int cell_count = 1;
  while (true) {
    std::vector<std::pair<std::vector<int>, int>> keyed;
    for (int v = 0; v < n; ++v) {
      std::vector<int> key(cell_count + 1, 0);
      key[0] = cell[v];
      for (int w = 0; w < n; ++w) {
        if (adj[v] >> w & 1) ++key[1 + cell[w]];
      }
      keyed.emplace_back(std::move(key), v);
    }
    std::sort(keyed.begin(), keyed.end());
    std::vector<int> next(n);
    int next_count = 0;
    for (int i = 0; i < n; ++i) {
      if (i > 0 && keyed[i].first != keyed[i - 1].first) ++next_count;
      next[keyed[i].second] = next_count;
    }
    ++next_count;
    cell = next;
    if (next_count == cell_count) break;
    cell_count = next_count;
  }
  std::vector<std::vector<int>> cells(cell_count);
  for (int v = 0; v < n; ++v) cells[cell[v]].push_back(v);
  return cells;
}

uint64_t CodeUnder(const Masks& adj, const std::vector<int>& order) {
  // order[i] = original vertex placed at position i.
  const int n = static_cast<int>(order.size());
  uint64_t code = 0;
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      code = (code << 1) | ((adj[order[i]] >> order[j]) & 1);
    }
  }
  return code;
}

void SearchCells(const Masks& adj, std::vector<std::vector<int>>& cells,
                 size_t index, std::vector<int>& order, uint64_t& best) {
  if (index == cells.size()) {
    best = std::max(best, CodeUnder(adj, order));
    return;
  }
  std::vector<int>& cell = cells[index];
  std::sort(cell.begin(), cell.end());
  do {
    const size_t mark = order.size();
    order.insert(order.end(), cell.begin(), cell.end());
    SearchCells(adj, cells, index + 1, order, best);
    order.resize(mark);
  } while (std::next_permutation(cell.begin(), cell.end()));
}

uint64_t CanonicalCodeOfMasks(const Masks& adj) {
  std::vector<std::vector<int>> cells = EquitablePartition(adj);
  std::vector<int> order;
  uint64_t best = 0;
  SearchCells(adj, cells, 0, order, best);
  return best;
}

}  // namespace

uint64_t CanonicalCode(const Graph& g) {
  if (g.vertex_count() > kMaxEnumerationVertices) {
    throw OracleScaleError("canonical codes limited to " +
                           std::to_string(kMaxEnumerationVertices) + " vertices");
  }
  return CanonicalCodeOfMasks(MasksOf(g));
}

Graph GraphFromCode(int n, uint64_t code) {
  std::vector<Edge> edges;
  int bit = n * (n - 1) / 2 - 1;
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j, --bit) {
      if (code >> bit & 1) edges.emplace_back(i, j);
    }
  }
  return Graph(n, edges);
}

std::vector<Graph> NonIsomorphicGraphs(int n) {
  if (n < 0 || n > kMaxEnumerationVertices) {
    throw OracleScaleError("graph enumeration limited to " +
                           std::to_string(kMaxEnumerationVertices) + " vertices");
  }
  if (n == 0) return {Graph(0, {})};
  // Every graph on k+1 vertices is some graph on k vertices plus one vertex.
  std::vector<Masks> level = {Masks{0}};
  for (int k = 1; k < n; ++k) {
    std::set<uint64_t> codes;
    std::vector<Masks> next;
    for (const Masks& base : level) {
      for (uint32_t subset = 0; subset < (uint32_t{1} << k); ++subset) {
        Masks adj = base;
        adj.push_back(subset);
        for (int v = 0; v < k; ++v) {
          if (subset >> v & 1) adj[v] |= uint32_t{1} << k;
        }
        if (codes.insert(CanonicalCodeOfMasks(adj)).second) next.push_back(adj);
      }
    }
    level = std::move(next);
  }
  std::vector<Graph> graphs;
  for (const Masks& adj : level) {
    graphs.push_back(GraphFromCode(n, CanonicalCodeOfMasks(adj)));
  }
  std::sort(graphs.begin(), graphs.end(), [](const Graph& a, const Graph& b) {
    return a.edges() < b.edges();
  });
  return graphs;
}

std::vector<Graph> PerfectMatchingGraphsUpToIsomorphism(int max_pairs) {
  std::vector<Graph> result;
  for (int pairs = 1; pairs <= max_pairs; ++pairs) {
    for (const Graph& g : NonIsomorphicGraphs(2 * pairs)) {
      std::vector<Edge> matching = MaximumMatching(g);
      if (static_cast<int>(matching.size()) == pairs) {
        result.push_back(g.WithPerfectMatching(std::move(matching)));
      }
    }
  }
  return result;
}

}  // namespace qcm
