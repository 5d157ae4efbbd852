#include "cbspart/ic_precond.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace cbspart {

IncompleteCholesky::IncompleteCholesky(const SparseSymMatrix& m, double droptol, double sigma) {
    if (sigma <= 0.0) throw std::invalid_argument("ic_precond: sigma must be positive");
    if (droptol < 0.0) throw std::invalid_argument("ic_precond: negative drop tolerance");
    n_ = m.n();
    double s = sigma;
    for (int attempt = 0; attempt <= 3; ++attempt, s *= 10.0) {
        if (try_factor(m, droptol, s)) {
            shift_used_ = s;
            return;
        }
    }
    throw std::runtime_error("ic_precond: breakdown persists after 3 shift increases");
}

bool IncompleteCholesky::try_factor(const SparseSymMatrix& m, double droptol, double sigma) {
    col_ptr_.assign(1, 0);
    row_idx_.clear();
    val_.clear();

    std::vector<double> work(n_, 0.0);
    std::vector<char> touched(n_, 0);
    std::vector<int> pattern;
    // Linked lists: list_head[j] = first column whose next unconsumed row is j.
    std::vector<int> list_head(n_, -1), list_next(n_, -1), next_entry(n_, 0);

    for (int j = 0; j < n_; ++j) {
        pattern.clear();
        auto cols = m.row_cols(j);
        auto vals = m.row_values(j);

        double colnorm = sigma * sigma + 2.0 * sigma * m.diag(j);
        for (std::size_t p = 0; p < cols.size(); ++p) {
            colnorm += vals[p] * vals[p];
            if (cols[p] >= j) {
                work[cols[p]] += vals[p];
                if (!touched[cols[p]]) {
                    touched[cols[p]] = 1;
                    pattern.push_back(cols[p]);
                }
            }
        }
        work[j] += sigma;
        if (!touched[j]) {
            touched[j] = 1;
            pattern.push_back(j);
        }
        colnorm = std::sqrt(colnorm);

        // Apply pending updates from earlier columns reaching row j.
        int k = list_head[j];
        list_head[j] = -1;
        while (k != -1) {
            int save_next = list_next[k];
            int q0 = next_entry[k];
            double ljk = val_[q0];
            for (int q = q0; q < col_ptr_[k + 1]; ++q) {
                int i = row_idx_[q];
                work[i] -= ljk * val_[q];
                if (!touched[i]) {
                    touched[i] = 1;
                    pattern.push_back(i);
                }
            }
            if (q0 + 1 < col_ptr_[k + 1]) {
                next_entry[k] = q0 + 1;
                int r = row_idx_[q0 + 1];
                list_next[k] = list_head[r];
                list_head[r] = k;
            }
            k = save_next;
        }

        double pivot = work[j];
        if (!(pivot > 0.0)) {
            for (int i : pattern) {
                work[i] = 0.0;
                touched[i] = 0;
            }
            return false;
        }
        double dj = std::sqrt(pivot);

        std::sort(pattern.begin(), pattern.end());
        row_idx_.push_back(j);
        val_.push_back(dj);
        for (int i : pattern) {
            if (i > j) {
                double lij = work[i] / dj;
                if (std::abs(lij) >= droptol * colnorm) {
                    row_idx_.push_back(i);
                    val_.push_back(lij);
                }
            }
            work[i] = 0.0;
            touched[i] = 0;
        }
        col_ptr_.push_back(static_cast<int>(row_idx_.size()));

        if (col_ptr_[j + 1] - col_ptr_[j] > 1) {
            next_entry[j] = col_ptr_[j] + 1;
            int r = row_idx_[next_entry[j]];
            list_next[j] = list_head[r];
            list_head[r] = j;
        }
    }
    return true;
}

void IncompleteCholesky::apply(std::span<const double> r, std::span<double> out) const {
    std::copy(r.begin(), r.end(), out.begin());
    // L y = r
    for (int j = 0; j < n_; ++j) {
        out[j] /= val_[col_ptr_[j]];
        double yj = out[j];
        for (int q = col_ptr_[j] + 1; q < col_ptr_[j + 1]; ++q) out[row_idx_[q]] -= val_[q] * yj;
    }
    // L^T x = y
    for (int j = n_ - 1; j >= 0; --j) {
        double s = out[j];
        for (int q = col_ptr_[j] + 1; q < col_ptr_[j + 1]; ++q) s -= val_[q] * out[row_idx_[q]];
        out[j] = s / val_[col_ptr_[j]];
    }
}

Eigen::VectorXd IncompleteCholesky::apply(const Eigen::VectorXd& r) const {
    Eigen::VectorXd out(n_);
    apply(std::span<const double>(r.data(), r.size()), std::span<double>(out.data(), out.size()));
    return out;
}

}  // namespace cbspart
