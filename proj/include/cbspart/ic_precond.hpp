#pragma once

#include <Eigen/Dense>
#include <span>
#include <vector>

#include "cbspart/sparse_matrix.hpp"

namespace cbspart {

/// Incomplete Cholesky preconditioner of M + sigma*I with threshold dropping:
/// a computed entry l_ij is dropped when |l_ij| < droptol * ||column j of
/// M + sigma*I||_2. droptol = 0 gives the exact (full fill) factorization.
/// On breakdown (nonpositive pivot) the shift is increased tenfold and the
/// factorization retried, up to 3 times.
class IncompleteCholesky {
public:
    IncompleteCholesky(const SparseSymMatrix& m, double droptol, double sigma);

    /// out = (L L^T)^{-1} r
    void apply(std::span<const double> r, std::span<double> out) const;
    Eigen::VectorXd apply(const Eigen::VectorXd& r) const;

    double shift_used() const { return shift_used_; }
    std::int64_t factor_nnz() const { return static_cast<std::int64_t>(val_.size()); }

private:
    bool try_factor(const SparseSymMatrix& m, double droptol, double sigma);

    int n_ = 0;
    double shift_used_ = 0.0;
    // CSC storage of the lower-triangular factor; rows ascending per column,
    // diagonal entry first.
    std::vector<int> col_ptr_;
    std::vector<int> row_idx_;
    std::vector<double> val_;
};

}  // namespace cbspart
