#pragma once

#include <span>
#include <vector>

#include "cbspart/sparse_matrix.hpp"
#include "cbspart/vertex_set.hpp"

namespace cbspart {

/// Undirected adjacency graph, optionally edge-weighted. Edges are the
/// off-diagonal nonzero pattern of the source matrix; no self loops.
/// `diag_abs` carries |a_ii| per vertex for the within-set sums of the
/// Mcut objective (all ones for unit-diagonal matrices).
class Graph {
public:
    Graph() = default;
    Graph(int n, std::vector<int> adj_ptr, std::vector<int> adj, std::vector<double> weights,
          std::vector<double> diag_abs, bool weighted);

    /// Adjacency structure of A with unit edge weights.
    static Graph from_matrix_pattern(const SparseSymMatrix& a);

    int n() const { return n_; }
    bool weighted() const { return weighted_; }
    std::int64_t edge_count() const { return static_cast<std::int64_t>(adj_.size()) / 2; }

    std::span<const int> neighbors(int i) const {
        return {adj_.data() + adj_ptr_[i], adj_.data() + adj_ptr_[i + 1]};
    }
    std::span<const double> neighbor_weights(int i) const {
        return {weights_.data() + adj_ptr_[i], weights_.data() + adj_ptr_[i + 1]};
    }
    double diag_abs(int i) const { return diag_abs_[i]; }
    const std::vector<double>& diag_abs() const { return diag_abs_; }

    /// Calls f(i, j, w) once per undirected edge, with i < j, in row order.
    template <typename F>
    void for_each_edge(F&& f) const {
        for (int i = 0; i < n_; ++i)
            for (int p = adj_ptr_[i]; p < adj_ptr_[i + 1]; ++p)
                if (adj_[p] > i) f(i, adj_[p], weights_[p]);
    }

    /// Subgraph induced by `subset`, relabeled to local indices 0..|subset|-1
    /// (the sorted subset itself is the local-to-global map).
    Graph induced(const VertexSet& subset) const;

private:
    int n_ = 0;
    std::vector<int> adj_ptr_{0};
    std::vector<int> adj_;
    std::vector<double> weights_;
    std::vector<double> diag_abs_;
    bool weighted_ = false;
};

/// Maximal connected components of the subgraph induced by `subset` (BFS),
/// each sorted ascending, ordered by smallest contained vertex.
std::vector<VertexSet> connected_components(const Graph& g, const VertexSet& subset);

}  // namespace cbspart
