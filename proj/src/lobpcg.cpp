#include "cbspart/lobpcg.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>
#include <random>
#include <stdexcept>

#include "cbspart/ic_precond.hpp"

namespace cbspart {

namespace {

using Eigen::MatrixXd;
using Eigen::VectorXd;

struct ProblemOps {
    const SparseSymMatrix* a_mat = nullptr;   // L_w or L
    const SparseSymMatrix* b_mat = nullptr;   // L for CbsRatio, null for identity
    const std::vector<double>* b_diag = nullptr;  // D_w for MCut
    const std::vector<double>* constraint_weight = nullptr;  // D_w diag, null = ones
    bool constrained = false;

    VectorXd apply_a(const VectorXd& x) const { return a_mat->matvec(x); }
    VectorXd apply_b(const VectorXd& x) const {
        if (b_mat) return b_mat->matvec(x);
        if (b_diag) {
            VectorXd y(x.size());
            for (Eigen::Index i = 0; i < x.size(); ++i) y(i) = (*b_diag)[i] * x(i);
            return y;
        }
        return x;
    }
    MatrixXd apply_a(const MatrixXd& x) const {
        MatrixXd y(x.rows(), x.cols());
        for (Eigen::Index c = 0; c < x.cols(); ++c) y.col(c) = apply_a(VectorXd(x.col(c)));
        return y;
    }
    MatrixXd apply_b(const MatrixXd& x) const {
        if (!b_mat && !b_diag) return x;
        MatrixXd y(x.rows(), x.cols());
        for (Eigen::Index c = 0; c < x.cols(); ++c) y.col(c) = apply_b(VectorXd(x.col(c)));
        return y;
    }

    // Projects onto the complement of 1 in the constraint inner product.
    void project(VectorXd& v) const {
        if (!constrained) return;
        if (constraint_weight) {
            double num = 0.0, den = 0.0;
            for (Eigen::Index i = 0; i < v.size(); ++i) {
                num += (*constraint_weight)[i] * v(i);
                den += (*constraint_weight)[i];
            }
            v.array() -= num / den;
        } else {
            v.array() -= v.mean();
        }
    }
    void project(MatrixXd& m) const {
        if (!constrained) return;
        for (Eigen::Index c = 0; c < m.cols(); ++c) {
            VectorXd v = m.col(c);
            project(v);
            m.col(c) = v;
        }
    }

    double constraint_violation(const VectorXd& v) const {
        if (!constrained) return 0.0;
        double num = 0.0;
        if (constraint_weight) {
            double wnorm = 0.0;
            for (Eigen::Index i = 0; i < v.size(); ++i) {
                num += (*constraint_weight)[i] * v(i);
                wnorm += (*constraint_weight)[i] * (*constraint_weight)[i];
            }
            // scale comparable to |<v,1>| in the plain case
            num /= std::sqrt(wnorm / v.size());
        } else {
            num = v.sum();
        }
        return std::abs(num) / v.norm();
    }
};

// B-orthonormalizes the columns of v (Gram eigendecomposition), dropping
// near-dependent directions. Returns the possibly narrower panel.
MatrixXd ortho_b(const ProblemOps& ops, const MatrixXd& v, double rel_cut = 1e-12) {
    if (v.cols() == 0) return v;
    MatrixXd bv = ops.apply_b(v);
    MatrixXd gram = v.transpose() * bv;
    gram = 0.5 * (gram + gram.transpose()).eval();
    Eigen::SelfAdjointEigenSolver<MatrixXd> es(gram);
    double lmax = es.eigenvalues().cwiseAbs().maxCoeff();
    if (!(lmax > 0.0)) return MatrixXd(v.rows(), 0);
    std::vector<Eigen::Index> keep;
    for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i)
        if (es.eigenvalues()(i) > rel_cut * lmax) keep.push_back(i);
    MatrixXd out(v.rows(), static_cast<Eigen::Index>(keep.size()));
    for (std::size_t k = 0; k < keep.size(); ++k)
        out.col(static_cast<Eigen::Index>(k)) =
            v * es.eigenvectors().col(keep[k]) / std::sqrt(es.eigenvalues()(keep[k]));
    return out;
}

// One block Gram-Schmidt pass of v against the B-orthonormal panel q.
void ortho_against(const ProblemOps& ops, const MatrixXd& q, MatrixXd& v) {
    if (q.cols() == 0 || v.cols() == 0) return;
    MatrixXd bq = ops.apply_b(q);
    v -= q * (bq.transpose() * v).eval();
}

}  // namespace

const char* to_string(EigProblemKind kind) {
    switch (kind) {
        case EigProblemKind::CbsRatio: return "cbs_ratio";
        case EigProblemKind::Fiedler: return "fiedler";
        case EigProblemKind::MinCut: return "mincut";
        case EigProblemKind::MCut: return "mcut";
    }
    return "?";
}

EigResult lobpcg_smallest(EigProblemKind kind, const GraphLaplacians& lap,
                          const EigOptions& opt) {
    if (opt.tol <= 0.0) throw std::invalid_argument("lobpcg: tolerance must be positive");
    if (opt.block_size != 0 && opt.block_size != 1 && opt.block_size != 2)
        throw std::invalid_argument("lobpcg: block size must be 1 or 2");
    const int n = lap.weighted.n();
    if (n < 2) throw std::invalid_argument("lobpcg: need at least 2 vertices");

    ProblemOps ops;
    switch (kind) {
        case EigProblemKind::CbsRatio:
            ops.a_mat = &lap.weighted;
            ops.b_mat = &lap.standard;
            ops.constrained = true;
            break;
        case EigProblemKind::Fiedler:
            ops.a_mat = &lap.standard;
            break;
        case EigProblemKind::MinCut:
            ops.a_mat = &lap.weighted;
            break;
        case EigProblemKind::MCut:
            ops.a_mat = &lap.weighted;
            ops.b_diag = &lap.wdegree;
            ops.constraint_weight = &lap.wdegree;
            ops.constrained = true;
            break;
    }

    int bs = opt.block_size != 0 ? opt.block_size : (ops.constrained ? 1 : 2);
    bs = std::min(bs, ops.constrained ? n - 1 : n);
    const int target = ops.constrained ? 0 : bs - 1;

    // Shifted IC preconditioner of the operator matrix (L_w + sigma I, or
    // L + sigma I for the Fiedler problem).
    IncompleteCholesky prec(*ops.a_mat, opt.ic_droptol, opt.sigma);

    std::mt19937_64 rng(opt.seed);
    std::uniform_real_distribution<double> unif(-1.0, 1.0);
    MatrixXd x(n, bs);
    for (Eigen::Index c = 0; c < x.cols(); ++c)
        for (int i = 0; i < n; ++i) x(i, c) = unif(rng);
    ops.project(x);
    x = ortho_b(ops, x);
    if (x.cols() < bs)
        throw std::runtime_error("lobpcg: could not build an initial basis");

    EigResult res;
    auto rayleigh_ritz = [&](const MatrixXd& s, VectorXd& theta, MatrixXd& coeff) {
        MatrixXd ag = s.transpose() * ops.apply_a(s);
        ag = 0.5 * (ag + ag.transpose()).eval();
        Eigen::SelfAdjointEigenSolver<MatrixXd> es(ag);
        theta = es.eigenvalues();
        coeff = es.eigenvectors();
    };

    {
        VectorXd theta;
        MatrixXd coeff;
        rayleigh_ritz(x, theta, coeff);
        x = (x * coeff.leftCols(bs)).eval();
        ops.project(x);
        res.ritz_history.push_back(theta(target));
    }

    MatrixXd p(n, 0);
    VectorXd theta = VectorXd::Zero(bs);
    {
        // Ritz values of the initial block.
        for (int c = 0; c < bs; ++c) {
            VectorXd xc = x.col(c);
            theta(c) = xc.dot(ops.apply_a(xc)) / xc.dot(ops.apply_b(xc));
        }
    }

    int it = 0;
    for (; it < opt.max_iter; ++it) {
        MatrixXd ax = ops.apply_a(x), bx = ops.apply_b(x);
        MatrixXd r = ax - bx * theta.asDiagonal();

        for (int c = 0; c < bs; ++c)
            res.max_constraint_violation =
                std::max(res.max_constraint_violation, ops.constraint_violation(x.col(c)));

        double resnorm = r.col(target).norm() / x.col(target).norm();
        res.residual_norm = resnorm;
        if (resnorm <= opt.tol) {
            res.converged = true;
            break;
        }

        MatrixXd w(n, bs);
        for (int c = 0; c < bs; ++c) w.col(c) = prec.apply(VectorXd(r.col(c)));
        ops.project(w);  // residuals projected back after preconditioning
        ortho_against(ops, x, w);
        w = ortho_b(ops, w);
        ortho_against(ops, x, w);  // second pass for roundoff

        MatrixXd pw = p;
        ortho_against(ops, x, pw);
        ortho_against(ops, w, pw);
        pw = ortho_b(ops, pw);

        MatrixXd s(n, x.cols() + w.cols() + pw.cols());
        s << x, w, pw;

        VectorXd all_theta;
        MatrixXd coeff;
        rayleigh_ritz(s, all_theta, coeff);
        int nev = std::min<int>(bs, static_cast<int>(all_theta.size()));
        MatrixXd cx = coeff.leftCols(nev);

        MatrixXd x_new = s * cx;
        MatrixXd c_wp = cx;
        c_wp.topRows(bs).setZero();
        MatrixXd p_new = s * c_wp;

        x = x_new;
        ops.project(x);
        theta = all_theta.head(nev);
        p = ortho_b(ops, p_new);
        if (p.cols() > bs) p = p.leftCols(bs).eval();
        res.ritz_history.push_back(theta(target));

        if (!x.allFinite()) throw std::runtime_error("lobpcg: iteration diverged");
    }

    res.iterations = it;
    VectorXd v = x.col(target);
    ops.project(v);
    v /= v.norm();
    res.vector = v;
    res.value = theta(target);
    VectorXd resid = ops.apply_a(v) - res.value * ops.apply_b(v);
    res.residual_norm = resid.norm();  // ||v|| = 1
    res.converged = res.residual_norm <= opt.tol;
    return res;
}

double rayleigh_quotient(const Eigen::VectorXd& v, const SparseSymMatrix& lw,
                         const SparseSymMatrix& l) {
    double den = v.dot(l.matvec(v));
    if (!(den > 0.0))
        throw std::invalid_argument("rayleigh_quotient: v^T L v must be positive");
    return v.dot(lw.matvec(v)) / den;
}

}  // namespace cbspart
