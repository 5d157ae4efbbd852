#include "cbspart/laplacian.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace cbspart {

Graph cbs_weights(const SparseSymMatrix& a) {
    int n = a.n();
    std::vector<double> dia(n);
    for (int i = 0; i < n; ++i) {
        dia[i] = a.diag(i);
        if (dia[i] <= 0.0)
            throw NotSpdError("cbs_weights: nonpositive diagonal at index " +
                                        std::to_string(i));
    }
    std::vector<int> ptr(static_cast<std::size_t>(n) + 1, 0);
    std::vector<int> adj;
    std::vector<double> w;
    std::vector<double> dabs(n);
    for (int i = 0; i < n; ++i) {
        dabs[i] = std::abs(dia[i]);
        auto cols = a.row_cols(i);
        auto vals = a.row_values(i);
        for (std::size_t p = 0; p < cols.size(); ++p) {
            int j = cols[p];
            if (j == i) continue;
            adj.push_back(j);
            w.push_back(std::abs(vals[p]) / std::sqrt(dia[i] * dia[j]));
        }
        ptr[static_cast<std::size_t>(i) + 1] = static_cast<int>(adj.size());
    }
    return Graph(n, std::move(ptr), std::move(adj), std::move(w), std::move(dabs), true);
}

GraphLaplacians build_laplacians(const Graph& g) {
    int n = g.n();
    GraphLaplacians lap;
    lap.wdegree.assign(n, 0.0);
    lap.degree.assign(n, 0.0);
    std::vector<Triplet> tw, ts;
    for (int i = 0; i < n; ++i) {
        auto nbr = g.neighbors(i);
        auto nw = g.neighbor_weights(i);
        for (std::size_t p = 0; p < nbr.size(); ++p) {
            if (nw[p] < 0.0)
                throw std::invalid_argument("build_laplacians: negative edge weight");
            lap.wdegree[i] += nw[p];
            lap.degree[i] += 1.0;
            tw.push_back({i, nbr[p], -nw[p]});
            ts.push_back({i, nbr[p], -1.0});
        }
        tw.push_back({i, i, 0.0});  // placeholder, set below
        ts.push_back({i, i, 0.0});
    }
    for (auto& t : tw)
        if (t.row == t.col) t.value = lap.wdegree[t.row];
    for (auto& t : ts)
        if (t.row == t.col) t.value = lap.degree[t.row];
    lap.weighted = SparseSymMatrix::from_triplets(n, tw);
    lap.standard = SparseSymMatrix::from_triplets(n, ts);
    return lap;
}

CutValues cut_values(const Graph& g, const VertexSet& i_set, const VertexSet& j_set) {
    check_bipartition(i_set, j_set, g.n(), "cut_values");
    std::vector<char> side(g.n(), 0);  // 0 = I, 1 = J
    for (int v : j_set) side[v] = 1;

    CutValues cv;
    for (int v : i_set) cv.w_in_i += g.diag_abs(v);
    for (int v : j_set) cv.w_in_j += g.diag_abs(v);
    g.for_each_edge([&](int u, int v, double w) {
        if (side[u] != side[v]) {
            ++cv.cut;
            cv.w_cut += w;
        } else if (side[u] == 0) {
            cv.w_in_i += 2.0 * w;
        } else {
            cv.w_in_j += 2.0 * w;
        }
    });
    return cv;
}

bool uniform_weights(const Graph& g) {
    double wmin = 0.0, wmax = 0.0;
    bool first = true;
    g.for_each_edge([&](int, int, double w) {
        if (first) {
            wmin = wmax = w;
            first = false;
        } else {
            wmin = std::min(wmin, w);
            wmax = std::max(wmax, w);
        }
    });
    if (first) return true;
    return (wmax - wmin) <= 1e-8 * wmax;
}

}  // namespace cbspart
