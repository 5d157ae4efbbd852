// Shared test utilities: random SPD/graph generators and dense spectral
// oracles, kept independent of the production solver paths.
#pragma once

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>
#include <algorithm>
#include <numeric>
#include <random>
#include <vector>

#include "cbspart/graph.hpp"
#include "cbspart/laplacian.hpp"
#include "cbspart/sparse_matrix.hpp"
#include "cbspart/vertex_set.hpp"

namespace cbspart::testing {

using Rng = std::mt19937_64;

inline SparseSymMatrix from_dense(const Eigen::MatrixXd& d, double drop = 0.0) {
    std::vector<Triplet> t;
    for (int i = 0; i < d.rows(); ++i)
        for (int j = 0; j < d.cols(); ++j)
            if (i == j || std::abs(d(i, j)) > drop) t.push_back({i, j, d(i, j)});
    return SparseSymMatrix::from_triplets(static_cast<int>(d.rows()), t);
}

/// Dense random SPD matrix, moderately conditioned.
inline SparseSymMatrix random_spd_dense(int n, Rng& rng) {
    std::uniform_real_distribution<double> unif(-1.0, 1.0);
    Eigen::MatrixXd r(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) r(i, j) = unif(rng);
    Eigen::MatrixXd a = r * r.transpose() + n * Eigen::MatrixXd::Identity(n, n);
    return from_dense(0.5 * (a + a.transpose()));
}

/// Sparse diagonally dominant SPD matrix on a random connected pattern.
inline SparseSymMatrix random_sparse_spd(int n, double extra_edge_prob, Rng& rng) {
    std::uniform_real_distribution<double> unif(-1.0, 1.0);
    std::uniform_real_distribution<double> pos(0.5, 1.5);
    std::uniform_real_distribution<double> prob(0.0, 1.0);
    std::vector<Triplet> t;
    std::vector<double> offsum(n, 0.0);
    auto add_edge = [&](int i, int j) {
        double v = unif(rng);
        if (v == 0.0) v = 0.5;
        t.push_back({i, j, v});
        t.push_back({j, i, v});
        offsum[i] += std::abs(v);
        offsum[j] += std::abs(v);
    };
    // spanning tree keeps the graph connected
    for (int v = 1; v < n; ++v)
        add_edge(static_cast<int>(rng() % static_cast<std::uint64_t>(v)), v);
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            if (prob(rng) < extra_edge_prob) add_edge(i, j);
    // note: duplicate edges possible; from_triplets sums them, so recompute
    // dominance from the coalesced matrix instead of offsum when strictness
    // matters. Using offsum with a margin is sufficient here because
    // duplicates also add their magnitude to offsum.
    for (int i = 0; i < n; ++i) t.push_back({i, i, offsum[i] + pos(rng)});
    return SparseSymMatrix::from_triplets(n, t);
}

/// Random connected weighted graph (positive weights).
inline Graph random_connected_graph(int n, double extra_edge_prob, Rng& rng) {
    SparseSymMatrix a = random_sparse_spd(n, extra_edge_prob, rng);
    return cbs_weights(a);
}

/// Random bipartition with both sides nonempty.
inline std::pair<VertexSet, VertexSet> random_bipartition(int n, Rng& rng) {
    std::vector<int> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    std::shuffle(perm.begin(), perm.end(), rng);
    int m = 1 + static_cast<int>(rng() % static_cast<std::uint64_t>(n - 1));
    VertexSet i_set(perm.begin(), perm.begin() + m);
    VertexSet j_set(perm.begin() + m, perm.end());
    std::sort(i_set.begin(), i_set.end());
    std::sort(j_set.begin(), j_set.end());
    return {i_set, j_set};
}

/// Dense eigenvalues of the pencil (A, B), B SPD.
inline Eigen::VectorXd dense_generalized_eigs(const Eigen::MatrixXd& a,
                                              const Eigen::MatrixXd& b) {
    Eigen::GeneralizedSelfAdjointEigenSolver<Eigen::MatrixXd> es(a, b);
    return es.eigenvalues();
}

/// Orthonormal basis of the complement of the all-ones vector.
inline Eigen::MatrixXd ones_complement_basis(int n) {
    Eigen::MatrixXd q = Eigen::MatrixXd::Identity(n, n);
    Eigen::VectorXd ones = Eigen::VectorXd::Ones(n) / std::sqrt(static_cast<double>(n));
    Eigen::MatrixXd full(n, n);
    full.col(0) = ones;
    full.rightCols(n - 1) = q.rightCols(n - 1);
    Eigen::HouseholderQR<Eigen::MatrixXd> qr(full);
    Eigen::MatrixXd orth = qr.householderQ();
    return orth.rightCols(n - 1);  // orthogonal to col 0 = ones direction
}

/// Smallest eigenvalue of the pencil (L_w, L) restricted to the complement
/// of ones (the standard-Laplacian pencil is singular on the full space).
inline double dense_smallest_on_ones_complement(const Eigen::MatrixXd& lw,
                                                const Eigen::MatrixXd& l) {
    Eigen::MatrixXd z = ones_complement_basis(static_cast<int>(lw.rows()));
    return dense_generalized_eigs(z.transpose() * lw * z, z.transpose() * l * z)(0);
}

}  // namespace cbspart::testing
