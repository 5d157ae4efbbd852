#include "cbspart/sparse_matrix.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace cbspart {

namespace {

constexpr double kSymTol = 1e-12;

}  // namespace

SparseSymMatrix SparseSymMatrix::from_triplets(int n, const std::vector<Triplet>& entries) {
    if (n < 0) throw std::invalid_argument("from_triplets: negative dimension");
    std::vector<Triplet> t = entries;
    for (const auto& e : t)
        if (e.row < 0 || e.row >= n || e.col < 0 || e.col >= n)
            throw std::invalid_argument("from_triplets: index out of range");

    std::sort(t.begin(), t.end(), [](const Triplet& a, const Triplet& b) {
        return a.row != b.row ? a.row < b.row : a.col < b.col;
    });

    SparseSymMatrix m;
    m.n_ = n;
    m.row_ptr_.assign(static_cast<std::size_t>(n) + 1, 0);
    m.col_idx_.reserve(t.size());
    m.values_.reserve(t.size());

    // Coalesce duplicates.
    std::size_t k = 0;
    while (k < t.size()) {
        double sum = t[k].value;
        std::size_t j = k + 1;
        while (j < t.size() && t[j].row == t[k].row && t[j].col == t[k].col) {
            sum += t[j].value;
            ++j;
        }
        m.col_idx_.push_back(t[k].col);
        m.values_.push_back(sum);
        m.row_ptr_[static_cast<std::size_t>(t[k].row) + 1] =
            static_cast<int>(m.col_idx_.size());
        k = j;
    }
    for (std::size_t i = 1; i < m.row_ptr_.size(); ++i)
        m.row_ptr_[i] = std::max(m.row_ptr_[i], m.row_ptr_[i - 1]);

    // Symmetry: every (i,j) needs a matching (j,i) of equal value.
    double max_abs = 0.0;
    for (double v : m.values_) max_abs = std::max(max_abs, std::abs(v));
    double max_asym = 0.0;
    for (int i = 0; i < n; ++i) {
        auto cols = m.row_cols(i);
        auto vals = m.row_values(i);
        for (std::size_t p = 0; p < cols.size(); ++p) {
            int j = cols[p];
            if (j < i) continue;
            double vji = m.coeff(j, i);
            if (j != i && !m.has_entry(j, i))
                throw std::invalid_argument("from_triplets: pattern not symmetric at (" +
                                            std::to_string(i) + "," + std::to_string(j) + ")");
            max_asym = std::max(max_asym, std::abs(vals[p] - vji));
        }
    }
    if (max_asym > kSymTol * std::max(max_abs, 1e-300))
        throw NotSpdError("from_triplets: input asymmetric beyond 1e-12 relative");

    // Average the two triangles so stored values match exactly.
    if (max_asym > 0.0) {
        for (int i = 0; i < n; ++i) {
            auto cols = m.row_cols(i);
            int base = m.row_ptr_[i];
            for (std::size_t p = 0; p < cols.size(); ++p) {
                int j = cols[p];
                if (j <= i) continue;
                double avg = 0.5 * (m.values_[base + p] + m.coeff(j, i));
                m.values_[base + p] = avg;
                // locate (j,i)
                auto jc = m.row_cols(j);
                auto it = std::lower_bound(jc.begin(), jc.end(), i);
                m.values_[m.row_ptr_[j] + (it - jc.begin())] = avg;
            }
        }
    }
    return m;
}

double SparseSymMatrix::coeff(int i, int j) const {
    auto cols = row_cols(i);
    auto it = std::lower_bound(cols.begin(), cols.end(), j);
    if (it == cols.end() || *it != j) return 0.0;
    return values_[row_ptr_[i] + (it - cols.begin())];
}

bool SparseSymMatrix::has_entry(int i, int j) const {
    auto cols = row_cols(i);
    return std::binary_search(cols.begin(), cols.end(), j);
}

void SparseSymMatrix::matvec(std::span<const double> x, std::span<double> y) const {
    for (int i = 0; i < n_; ++i) {
        double s = 0.0;
        for (int p = row_ptr_[i]; p < row_ptr_[i + 1]; ++p) s += values_[p] * x[col_idx_[p]];
        y[i] = s;
    }
}

Eigen::VectorXd SparseSymMatrix::matvec(const Eigen::VectorXd& x) const {
    Eigen::VectorXd y(n_);
    matvec(std::span<const double>(x.data(), x.size()), std::span<double>(y.data(), y.size()));
    return y;
}

double SparseSymMatrix::frobenius_norm() const {
    double s = 0.0;
    for (double v : values_) s += v * v;
    return std::sqrt(s);
}

Eigen::MatrixXd SparseSymMatrix::to_dense() const {
    Eigen::MatrixXd d = Eigen::MatrixXd::Zero(n_, n_);
    for (int i = 0; i < n_; ++i)
        for (int p = row_ptr_[i]; p < row_ptr_[i + 1]; ++p) d(i, col_idx_[p]) = values_[p];
    return d;
}

Eigen::SparseMatrix<double> SparseSymMatrix::to_eigen() const {
    std::vector<Eigen::Triplet<double>> t;
    t.reserve(values_.size());
    for (int i = 0; i < n_; ++i)
        for (int p = row_ptr_[i]; p < row_ptr_[i + 1]; ++p)
            t.emplace_back(i, col_idx_[p], values_[p]);
    Eigen::SparseMatrix<double> s(n_, n_);
    s.setFromTriplets(t.begin(), t.end());
    return s;
}

std::pair<SparseSymMatrix, std::vector<double>> diag_scale(const SparseSymMatrix& a) {
    int n = a.n();
    std::vector<double> f(n);
    for (int i = 0; i < n; ++i) {
        double d = a.diag(i);
        if (d <= 0.0)
            throw NotSpdError("diag_scale: nonpositive diagonal at index " +
                                        std::to_string(i));
        f[i] = 1.0 / std::sqrt(d);
    }
    std::vector<Triplet> t;
    t.reserve(static_cast<std::size_t>(a.nnz()));
    for (int i = 0; i < n; ++i) {
        auto cols = a.row_cols(i);
        auto vals = a.row_values(i);
        for (std::size_t p = 0; p < cols.size(); ++p)
            t.push_back({i, cols[p], f[i] * vals[p] * f[cols[p]]});
    }
    return {SparseSymMatrix::from_triplets(n, t), std::move(f)};
}

SparseSymMatrix submatrix(const SparseSymMatrix& a, const VertexSet& subset) {
    check_vertex_set(subset, a.n(), "submatrix");
    std::vector<int> local(a.n(), -1);
    for (std::size_t k = 0; k < subset.size(); ++k) local[subset[k]] = static_cast<int>(k);
    std::vector<Triplet> t;
    for (std::size_t k = 0; k < subset.size(); ++k) {
        int i = subset[k];
        auto cols = a.row_cols(i);
        auto vals = a.row_values(i);
        for (std::size_t p = 0; p < cols.size(); ++p) {
            int lj = local[cols[p]];
            if (lj >= 0) t.push_back({static_cast<int>(k), lj, vals[p]});
        }
    }
    return SparseSymMatrix::from_triplets(static_cast<int>(subset.size()), t);
}

SparseSymMatrix symmetric_permute(const SparseSymMatrix& a, const std::vector<int>& perm) {
    int n = a.n();
    if (static_cast<int>(perm.size()) != n)
        throw std::invalid_argument("symmetric_permute: permutation size mismatch");
    std::vector<char> seen(n, 0);
    for (int p : perm) {
        if (p < 0 || p >= n || seen[p])
            throw std::invalid_argument("symmetric_permute: not a bijection on [0,n)");
        seen[p] = 1;
    }
    std::vector<Triplet> t;
    t.reserve(static_cast<std::size_t>(a.nnz()));
    for (int i = 0; i < n; ++i) {
        auto cols = a.row_cols(i);
        auto vals = a.row_values(i);
        for (std::size_t p = 0; p < cols.size(); ++p)
            t.push_back({perm[i], perm[cols[p]], vals[p]});
    }
    return SparseSymMatrix::from_triplets(n, t);
}

}  // namespace cbspart
