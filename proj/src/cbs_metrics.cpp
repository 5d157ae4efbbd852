#include "cbspart/cbs_metrics.hpp"

#include <Eigen/Cholesky>
#include <Eigen/SVD>
#include <cmath>
#include <stdexcept>
#include <string>

namespace cbspart {

double cbs_exact(const SparseSymMatrix& a, const VertexSet& i_set, const VertexSet& j_set,
                 int dense_limit) {
    check_bipartition(i_set, j_set, a.n(), "cbs_exact");
    if (a.n() > dense_limit)
        throw std::invalid_argument("cbs_exact: n exceeds dense-oracle limit " +
                                    std::to_string(dense_limit));

    const Eigen::MatrixXd ai = submatrix(a, i_set).to_dense();
    const Eigen::MatrixXd aj = submatrix(a, j_set).to_dense();
    Eigen::MatrixXd aij(i_set.size(), j_set.size());
    for (std::size_t r = 0; r < i_set.size(); ++r)
        for (std::size_t c = 0; c < j_set.size(); ++c)
            aij(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) =
                a.coeff(i_set[r], j_set[c]);

    Eigen::LLT<Eigen::MatrixXd> llt_i(ai), llt_j(aj);
    if (llt_i.info() != Eigen::Success || llt_j.info() != Eigen::Success)
        throw NotSpdError("cbs_exact: diagonal block not SPD (Cholesky failed)");

    // Whiten: R = L_I^{-1} A_IJ L_J^{-T}
    Eigen::MatrixXd r = llt_i.matrixL().solve(aij);
    r = llt_j.matrixL().solve(r.transpose()).transpose();
    if (r.size() == 0) return 0.0;
    Eigen::BDCSVD<Eigen::MatrixXd> svd(r);
    return svd.singularValues()(0);
}

double gamma_tilde(const Graph& g, const VertexSet& i_set, const VertexSet& j_set,
                   bool* disconnected) {
    CutValues cv = cut_values(g, i_set, j_set);
    if (disconnected) *disconnected = (cv.cut == 0);
    if (cv.cut == 0) return 0.0;
    return cv.w_cut / static_cast<double>(cv.cut);
}

double gamma_bar(const Graph& g, const VertexSet& i_set, const VertexSet& j_set) {
    CutValues cv = cut_values(g, i_set, j_set);
    return cv.w_cut / (static_cast<double>(i_set.size()) * static_cast<double>(j_set.size()));
}

double gamma_hat(const SparseSymMatrix& a, const VertexSet& i_set, const VertexSet& j_set,
                 bool include_diagonal) {
    check_bipartition(i_set, j_set, a.n(), "gamma_hat");
    std::vector<char> side(a.n(), 0);
    for (int v : j_set) side[v] = 1;

    double w_cut = 0.0, w_i = 0.0, w_j = 0.0;
    for (int i = 0; i < a.n(); ++i) {
        auto cols = a.row_cols(i);
        auto vals = a.row_values(i);
        for (std::size_t p = 0; p < cols.size(); ++p) {
            int j = cols[p];
            double v = std::abs(vals[p]);
            if (i == j && !include_diagonal) continue;
            if (side[i] != side[j]) {
                if (side[i] == 0) w_cut += v;  // ordered (i in I, j in J) pairs once
            } else if (side[i] == 0) {
                w_i += v;
            } else {
                w_j += v;
            }
        }
    }
    if (w_cut == 0.0) return 0.0;
    if (w_i <= 0.0 || w_j <= 0.0)
        throw std::invalid_argument("gamma_hat: zero within-set sum with nonzero cut");
    return (w_cut / w_j + w_cut / w_i) / static_cast<double>(a.n());
}

double cond_bound(double gamma) {
    if (gamma < 0.0 || gamma >= 1.0)
        throw std::invalid_argument("cond_bound: gamma must lie in [0, 1)");
    return (1.0 + gamma) / (1.0 - gamma);
}

}  // namespace cbspart
