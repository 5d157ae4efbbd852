#pragma once

#include <Eigen/Dense>
#include <Eigen/Sparse>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <vector>

#include "cbspart/vertex_set.hpp"

namespace cbspart {

/// Input violates an SPD prerequisite (nonpositive diagonal, asymmetry, or a
/// failed Cholesky factorization).
struct NotSpdError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct Triplet {
    int row;
    int col;
    double value;
};

/// Symmetric sparse matrix in compressed-row form with both triangles stored
/// explicitly. Column indices are strictly increasing within each row.
/// Immutable after construction.
class SparseSymMatrix {
public:
    SparseSymMatrix() = default;

    /// Builds from a full list of entries (duplicates are summed). The input
    /// must describe a symmetric matrix: if the pairwise asymmetry exceeds
    /// 1e-12 relative to the largest entry magnitude the input is rejected,
    /// otherwise entries are averaged with their transposes.
    static SparseSymMatrix from_triplets(int n, const std::vector<Triplet>& entries);

    int n() const { return n_; }
    std::int64_t nnz() const { return static_cast<std::int64_t>(values_.size()); }

    std::span<const int> row_cols(int i) const {
        return {col_idx_.data() + row_ptr_[i], col_idx_.data() + row_ptr_[i + 1]};
    }
    std::span<const double> row_values(int i) const {
        return {values_.data() + row_ptr_[i], values_.data() + row_ptr_[i + 1]};
    }

    /// Value at (i, j); 0 when the entry is not stored.
    double coeff(int i, int j) const;
    /// Diagonal entry a_ii (0 when absent).
    double diag(int i) const { return coeff(i, i); }
    bool has_entry(int i, int j) const;
    bool has_diag_entry(int i) const { return has_entry(i, i); }

    /// y = A x
    void matvec(std::span<const double> x, std::span<double> y) const;
    Eigen::VectorXd matvec(const Eigen::VectorXd& x) const;

    double frobenius_norm() const;

    Eigen::MatrixXd to_dense() const;
    Eigen::SparseMatrix<double> to_eigen() const;

    const std::vector<int>& row_ptr() const { return row_ptr_; }
    const std::vector<int>& col_idx() const { return col_idx_; }
    const std::vector<double>& values() const { return values_; }

private:
    int n_ = 0;
    std::vector<int> row_ptr_{0};
    std::vector<int> col_idx_;
    std::vector<double> values_;
};

/// Symmetric diagonal scaling F A F with F = diag(1/sqrt(a_ii)). Returns the
/// scaled matrix (unit diagonal) and the diagonal of F for back-transforming
/// solutions. Rejects nonpositive diagonal entries.
std::pair<SparseSymMatrix, std::vector<double>> diag_scale(const SparseSymMatrix& a);

/// Principal submatrix A(V_k, V_k) in the local index order of `subset`.
SparseSymMatrix submatrix(const SparseSymMatrix& a, const VertexSet& subset);

/// C with c_{perm(i), perm(j)} = a_{ij}; `perm` must be a bijection on [0, n).
SparseSymMatrix symmetric_permute(const SparseSymMatrix& a, const std::vector<int>& perm);

}  // namespace cbspart
