#include "cbspart/schwarz.hpp"

#include <Eigen/Cholesky>
#include <Eigen/SparseCholesky>
#include <cmath>
#include <random>
#include <stdexcept>

namespace cbspart {

std::vector<VertexSet> expand_overlap(const std::vector<VertexSet>& subdomains, const Graph& g,
                                      int layers) {
    if (layers < 0) throw std::invalid_argument("expand_overlap: negative layer count");
    if (layers == 0) return subdomains;
    std::vector<VertexSet> out;
    out.reserve(subdomains.size());
    std::vector<char> member(g.n(), 0);
    for (const auto& sub : subdomains) {
        check_vertex_set(sub, g.n(), "expand_overlap");
        VertexSet cur = sub;
        for (int v : cur) member[v] = 1;
        VertexSet frontier = cur;
        for (int layer = 0; layer < layers; ++layer) {
            VertexSet next;
            for (int v : frontier)
                for (int u : g.neighbors(v))
                    if (!member[u]) {
                        member[u] = 1;
                        next.push_back(u);
                    }
            cur.insert(cur.end(), next.begin(), next.end());
            frontier = std::move(next);
            if (frontier.empty()) break;
        }
        for (int v : cur) member[v] = 0;
        std::sort(cur.begin(), cur.end());
        out.push_back(std::move(cur));
    }
    return out;
}

struct AdditiveSchwarz::Block {
    Eigen::LLT<Eigen::MatrixXd> dense;
    Eigen::SimplicialLLT<Eigen::SparseMatrix<double>> sparse;
    bool is_dense = false;
};

namespace {
constexpr int kDenseBlockLimit = 64;
}

AdditiveSchwarz::AdditiveSchwarz(const SparseSymMatrix& a, std::vector<VertexSet> subdomains)
    : n_(a.n()), subdomains_(std::move(subdomains)) {
    if (subdomains_.empty())
        throw std::invalid_argument("AdditiveSchwarz: no subdomains");
    std::vector<char> covered(n_, 0);
    for (const auto& sub : subdomains_) {
        check_vertex_set(sub, n_, "AdditiveSchwarz");
        for (int v : sub) covered[v] = 1;
    }
    for (int v = 0; v < n_; ++v)
        if (!covered[v])
            throw std::invalid_argument("AdditiveSchwarz: subdomains do not cover all vertices");

    blocks_.reserve(subdomains_.size());
    for (const auto& sub : subdomains_) {
        SparseSymMatrix ak = submatrix(a, sub);
        auto block = std::make_unique<Block>();
        if (ak.n() <= kDenseBlockLimit) {
            block->is_dense = true;
            block->dense.compute(ak.to_dense());
            if (block->dense.info() != Eigen::Success)
                throw NotSpdError("AdditiveSchwarz: subdomain block not SPD");
        } else {
            block->sparse.compute(ak.to_eigen());
            if (block->sparse.info() != Eigen::Success)
                throw NotSpdError("AdditiveSchwarz: subdomain block not SPD");
        }
        blocks_.push_back(std::move(block));
    }
}

void AdditiveSchwarz::apply(const Eigen::VectorXd& r, Eigen::VectorXd& out) const {
    out.setZero(n_);
    for (std::size_t k = 0; k < subdomains_.size(); ++k) {
        const VertexSet& sub = subdomains_[k];
        Eigen::VectorXd rk(sub.size());
        for (std::size_t p = 0; p < sub.size(); ++p) rk(static_cast<Eigen::Index>(p)) = r(sub[p]);
        Eigen::VectorXd delta = blocks_[k]->is_dense ? blocks_[k]->dense.solve(rk)
                                                     : blocks_[k]->sparse.solve(rk);
        for (std::size_t p = 0; p < sub.size(); ++p)
            out(sub[p]) += delta(static_cast<Eigen::Index>(p));
    }
}

Eigen::VectorXd AdditiveSchwarz::apply(const Eigen::VectorXd& r) const {
    Eigen::VectorXd out;
    apply(r, out);
    return out;
}

PrecondFn identity_preconditioner() {
    return [](const Eigen::VectorXd& r, Eigen::VectorXd& out) { out = r; };
}

PrecondFn as_preconditioner(std::shared_ptr<const AdditiveSchwarz> as) {
    return [as = std::move(as)](const Eigen::VectorXd& r, Eigen::VectorXd& out) {
        as->apply(r, out);
    };
}

SolveReport pcg(const SparseSymMatrix& a, const Eigen::VectorXd& b, const PrecondFn& prec,
                const PcgOptions& opt) {
    const int n = a.n();
    if (b.size() != n) throw std::invalid_argument("pcg: right-hand side size mismatch");
    if (!(opt.tol > 0.0)) throw std::invalid_argument("pcg: tolerance must be positive");

    SolveReport report;
    Eigen::VectorXd x(n);
    if (opt.x0) {
        if (opt.x0->size() != n) throw std::invalid_argument("pcg: initial guess size mismatch");
        x = *opt.x0;
    } else {
        std::mt19937_64 rng(opt.seed);
        std::uniform_real_distribution<double> unif(-1.0, 1.0);
        for (int i = 0; i < n; ++i) x(i) = unif(rng);
    }

    const double bnorm = b.norm();
    if (bnorm == 0.0) {
        report.solution = Eigen::VectorXd::Zero(n);
        report.converged = true;
        report.rel_residuals.push_back(0.0);
        return report;
    }

    Eigen::VectorXd r = b - a.matvec(x);
    Eigen::VectorXd z(n);
    prec(r, z);
    Eigen::VectorXd p = z;
    double rz = r.dot(z);
    report.rel_residuals.push_back(r.norm() / bnorm);

    int k = 0;
    while (report.rel_residuals.back() > opt.tol && k < opt.max_iter) {
        Eigen::VectorXd ap = a.matvec(p);
        double pap = p.dot(ap);
        if (!(pap > 0.0))
            throw std::runtime_error("pcg: p^T A p <= 0, operator not positive definite");
        double alpha = rz / pap;
        x += alpha * p;
        r -= alpha * ap;
        ++k;
        report.rel_residuals.push_back(r.norm() / bnorm);
        if (report.rel_residuals.back() <= opt.tol) break;
        prec(r, z);
        double rz_new = r.dot(z);
        p = z + (rz_new / rz) * p;
        rz = rz_new;
    }

    report.iterations = k;
    report.converged = report.rel_residuals.back() <= opt.tol;
    report.solution = x;
    report.final_residual = (b - a.matvec(x)).norm() / bnorm;
    return report;
}

}  // namespace cbspart
