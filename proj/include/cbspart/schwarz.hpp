#pragma once

#include <Eigen/Dense>
#include <Eigen/Sparse>
#include <cstdint>
#include <functional>
#include <memory>
#include <vector>

#include "cbspart/graph.hpp"
#include "cbspart/sparse_matrix.hpp"
#include "cbspart/vertex_set.hpp"

namespace cbspart {

/// Grows each subdomain by `layers` rounds of adding all graph neighbors of
/// its current members. layers = 0 returns the input unchanged.
std::vector<VertexSet> expand_overlap(const std::vector<VertexSet>& subdomains, const Graph& g,
                                      int layers);

/// Additive Schwarz preconditioner: w = sum_k E_k A_k^{-1} E_k^T r with
/// A_k = A(V_k, V_k). Subdomains may overlap; corrections are simply summed.
/// Nonoverlapping covers coincide with block Jacobi of the permuted matrix.
/// Subdomains above 64 vertices factor with sparse Cholesky (fill-reducing
/// AMD ordering), smaller ones densely.
class AdditiveSchwarz {
public:
    AdditiveSchwarz(const SparseSymMatrix& a, std::vector<VertexSet> subdomains);

    void apply(const Eigen::VectorXd& r, Eigen::VectorXd& out) const;
    Eigen::VectorXd apply(const Eigen::VectorXd& r) const;

    int subdomain_count() const { return static_cast<int>(subdomains_.size()); }
    const std::vector<VertexSet>& subdomains() const { return subdomains_; }

private:
    struct Block;
    int n_ = 0;
    std::vector<VertexSet> subdomains_;
    std::vector<std::unique_ptr<Block>> blocks_;
};

using PrecondFn = std::function<void(const Eigen::VectorXd&, Eigen::VectorXd&)>;

PrecondFn identity_preconditioner();
PrecondFn as_preconditioner(std::shared_ptr<const AdditiveSchwarz> as);

struct SolveReport {
    int iterations = 0;
    bool converged = false;
    std::vector<double> rel_residuals;  // ||b - A x_k|| / ||b||, k = 0..iterations
    double final_residual = 0.0;        // recomputed from the returned iterate
    Eigen::VectorXd solution;
};

struct PcgOptions {
    double tol = 1e-8;
    int max_iter = 5000;
    std::uint64_t seed = 42;               // for the random initial guess
    const Eigen::VectorXd* x0 = nullptr;   // explicit initial guess overrides the seed
};

/// Preconditioned conjugate gradients on an SPD system, stopping at
/// ||r_k|| / ||b|| <= tol. Detecting p^T A p <= 0 aborts with a diagnostic.
SolveReport pcg(const SparseSymMatrix& a, const Eigen::VectorXd& b, const PrecondFn& prec,
                const PcgOptions& opt);

}  // namespace cbspart
