#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <vector>

#include "cbspart/laplacian.hpp"
#include "cbspart/sparse_matrix.hpp"

namespace cbspart {

/// The four spectral partitioning problems.
///   CbsRatio: L_w v = lambda L v    on 1-perp       (single vector)
///   Fiedler:  L   v = lambda v      second smallest (block of 2)
///   MinCut:   L_w v = lambda v      second smallest (block of 2)
///   MCut:     L_w v = lambda D_w v  on 1-perp in the D_w inner product
enum class EigProblemKind { CbsRatio, Fiedler, MinCut, MCut };

const char* to_string(EigProblemKind kind);

struct EigOptions {
    double tol = 1e-4;        // residual-norm tolerance
    int max_iter = 500;
    int block_size = 0;       // 0 = per-kind default (1 constrained, 2 unconstrained)
    double sigma = 0.1;       // shift for the IC preconditioner
    double ic_droptol = 1e-3;
    std::uint64_t seed = 42;
};

struct EigResult {
    double value = 0.0;
    Eigen::VectorXd vector;
    double residual_norm = 0.0;   // ||A v - lambda B v|| / ||v||
    int iterations = 0;
    bool converged = false;
    std::vector<double> ritz_history;        // target Ritz value per iteration
    double max_constraint_violation = 0.0;   // over all iterates, scaled by ||v||
};

/// Smallest eigenpair of the selected problem via LOBPCG with IC
/// preconditioning. Constrained kinds iterate inside their constraint
/// subspace, with residuals projected back after preconditioning;
/// unconstrained kinds run a block of 2 and return the pair of the second
/// smallest Ritz value. Non-convergence returns the best iterate with
/// converged = false.
EigResult lobpcg_smallest(EigProblemKind kind, const GraphLaplacians& lap,
                          const EigOptions& opt);

/// v^T L_w v / v^T L v; the denominator must be positive.
double rayleigh_quotient(const Eigen::VectorXd& v, const SparseSymMatrix& lw,
                         const SparseSymMatrix& l);

}  // namespace cbspart
