#ifndef QCM_GRAPH_ENUMERATION_H_
#define QCM_GRAPH_ENUMERATION_H_

#include <cstdint>
#include <vector>

#include "qcm/graph.h"

namespace qcm {

inline constexpr int kMaxEnumerationVertices = 10;

// Isomorphism-invariant code of g: the largest upper-triangle adjacency
// string over all relabelings consistent with an equitable partition.
uint64_t CanonicalCode(const Graph& g);

// The graph encoded by a canonical code on n vertices.
Graph GraphFromCode(int n, uint64_t code);

// One representative per isomorphism class of graphs on n vertices.
std::vector<Graph> NonIsomorphicGraphs(int n);

// One representative per isomorphism class of graphs on 2p vertices, for
// p = 1..max_pairs, that have a perfect matching; each carries a designated
// perfect matching.
std::vector<Graph> PerfectMatchingGraphsUpToIsomorphism(int max_pairs);

}  // namespace qcm

#endif  // QCM_GRAPH_ENUMERATION_H_
