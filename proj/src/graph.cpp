#include "cbspart/graph.hpp"

#include <queue>
#include <stdexcept>

namespace cbspart {

Graph::Graph(int n, std::vector<int> adj_ptr, std::vector<int> adj, std::vector<double> weights,
             std::vector<double> diag_abs, bool weighted)
    : n_(n),
      adj_ptr_(std::move(adj_ptr)),
      adj_(std::move(adj)),
      weights_(std::move(weights)),
      diag_abs_(std::move(diag_abs)),
      weighted_(weighted) {
    if (diag_abs_.empty()) diag_abs_.assign(n_, 1.0);
}

Graph Graph::from_matrix_pattern(const SparseSymMatrix& a) {
    int n = a.n();
    std::vector<int> ptr(static_cast<std::size_t>(n) + 1, 0);
    std::vector<int> adj;
    std::vector<double> w;
    std::vector<double> dabs(n, 1.0);
    for (int i = 0; i < n; ++i) {
        auto cols = a.row_cols(i);
        for (int j : cols)
            if (j != i) {
                adj.push_back(j);
                w.push_back(1.0);
            }
        ptr[static_cast<std::size_t>(i) + 1] = static_cast<int>(adj.size());
    }
    return Graph(n, std::move(ptr), std::move(adj), std::move(w), std::move(dabs), false);
}

Graph Graph::induced(const VertexSet& subset) const {
    check_vertex_set(subset, n_, "induced");
    int m = static_cast<int>(subset.size());
    std::vector<int> local(n_, -1);
    for (int k = 0; k < m; ++k) local[subset[k]] = k;
    std::vector<int> ptr(static_cast<std::size_t>(m) + 1, 0);
    std::vector<int> adj;
    std::vector<double> w;
    std::vector<double> dabs(m);
    for (int k = 0; k < m; ++k) {
        int i = subset[k];
        dabs[k] = diag_abs_[i];
        auto nbr = neighbors(i);
        auto nw = neighbor_weights(i);
        for (std::size_t p = 0; p < nbr.size(); ++p) {
            int lj = local[nbr[p]];
            if (lj >= 0) {
                adj.push_back(lj);
                w.push_back(nw[p]);
            }
        }
        ptr[static_cast<std::size_t>(k) + 1] = static_cast<int>(adj.size());
    }
    return Graph(m, std::move(ptr), std::move(adj), std::move(w), std::move(dabs), weighted_);
}

std::vector<VertexSet> connected_components(const Graph& g, const VertexSet& subset) {
    check_vertex_set(subset, g.n(), "connected_components");
    std::vector<char> in_subset(g.n(), 0), visited(g.n(), 0);
    for (int v : subset) in_subset[v] = 1;

    std::vector<VertexSet> components;
    for (int start : subset) {
        if (visited[start]) continue;
        VertexSet comp;
        std::queue<int> q;
        q.push(start);
        visited[start] = 1;
        while (!q.empty()) {
            int u = q.front();
            q.pop();
            comp.push_back(u);
            for (int v : g.neighbors(u))
                if (in_subset[v] && !visited[v]) {
                    visited[v] = 1;
                    q.push(v);
                }
        }
        std::sort(comp.begin(), comp.end());
        components.push_back(std::move(comp));
    }
    // `subset` is sorted, so components already appear by smallest vertex.
    return components;
}

}  // namespace cbspart
