#pragma once

#include "cbspart/graph.hpp"
#include "cbspart/laplacian.hpp"
#include "cbspart/sparse_matrix.hpp"
#include "cbspart/vertex_set.hpp"

namespace cbspart {

/// Exact CBS constant of the bipartition {I, J}: the largest singular value
/// of L_I^{-1} A_IJ L_J^{-T} with A_I = L_I L_I^T, A_J = L_J L_J^T the
/// Cholesky factors of the diagonal blocks. Dense computation, intended as a
/// test oracle; rejects n beyond `dense_limit`. Cholesky failure of a block
/// signals that the input is not SPD.
double cbs_exact(const SparseSymMatrix& a, const VertexSet& i_set, const VertexSet& j_set,
                 int dense_limit = 2000);

/// Sampled CBS surrogate: weighted cut over edge-count cut (mean weight of
/// crossing edges). A zero cut (disconnected split) yields 0; `disconnected`
/// reports that case when non-null.
double gamma_tilde(const Graph& g, const VertexSet& i_set, const VertexSet& j_set,
                   bool* disconnected = nullptr);

/// All-pairs sampled surrogate: w(I,J) / (|I| |J|), which is (4/n^2) w(I,J)
/// for fully balanced splits.
double gamma_bar(const Graph& g, const VertexSet& i_set, const VertexSet& j_set);

/// Min-max-cut surrogate (1/n)(w(I,J)/w(J) + w(I,J)/w(I)) with within-set
/// absolute entry sums taken literally from A; expects a diagonally scaled
/// (unit-diagonal) matrix. `include_diagonal` toggles the k=l terms of the
/// within-set sums.
double gamma_hat(const SparseSymMatrix& a, const VertexSet& i_set, const VertexSet& j_set,
                 bool include_diagonal = true);

/// Condition-number bound (1 + gamma) / (1 - gamma); requires 0 <= gamma < 1.
double cond_bound(double gamma);

}  // namespace cbspart
