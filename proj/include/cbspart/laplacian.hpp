#pragma once

#include <vector>

#include "cbspart/graph.hpp"
#include "cbspart/sparse_matrix.hpp"
#include "cbspart/vertex_set.hpp"

namespace cbspart {

/// Weighted and standard graph Laplacians of one graph, with their degree
/// diagonals. Row sums of both Laplacians are zero; the all-ones vector
/// spans (part of) each nullspace.
struct GraphLaplacians {
    SparseSymMatrix weighted;      // L_w = D_w - W
    SparseSymMatrix standard;      // L = D - Q
    std::vector<double> wdegree;   // d_w(i)
    std::vector<double> degree;    // deg(i)
};

/// Assigns CBS edge weights w_ij = |a_ij| / sqrt(a_ii a_jj) on the adjacency
/// graph of A. For a diagonally scaled matrix the weights equal |a_ij|.
Graph cbs_weights(const SparseSymMatrix& a);

/// Builds L_w and L from an undirected weighted graph; weights must be
/// nonnegative.
GraphLaplacians build_laplacians(const Graph& g);

struct CutValues {
    std::int64_t cut = 0;   // number of crossing edges
    double w_cut = 0.0;     // sum of crossing edge weights
    double w_in_i = 0.0;    // within-I absolute sum, diagonal included
    double w_in_j = 0.0;    // within-J absolute sum, diagonal included
};

/// Cut statistics for a bipartition {I, J} of the graph's vertices. The
/// within-set sums use edge weights plus the per-vertex diagonal magnitudes
/// carried by the graph (literal Eq.-style double sums for unit-diagonal
/// sources).
CutValues cut_values(const Graph& g, const VertexSet& i_set, const VertexSet& j_set);

/// True when all edge weights coincide up to relative spread 1e-8
/// (max w - min w <= 1e-8 * max w). Edgeless graphs count as uniform.
bool uniform_weights(const Graph& g);

}  // namespace cbspart
