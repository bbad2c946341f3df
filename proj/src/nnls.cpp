#include "gpoly/nnls.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "gpoly/errors.hpp"

namespace gpoly::mc {

namespace {

// Solve (A_P^T A_P) z = A_P^T b for the passive columns by Cholesky.
std::vector<double> passive_ls(const Matrix& a, std::span<const double> b,
                               const std::vector<int>& passive) {
    const int p = static_cast<int>(passive.size());
    const int m = a.rows;
    std::vector<double> gram(static_cast<size_t>(p) * p, 0.0), rhs(p, 0.0);
    for (int i = 0; i < p; ++i) {
        for (int j = i; j < p; ++j) {
            double s = 0.0;
            for (int r = 0; r < m; ++r) s += a(r, passive[i]) * a(r, passive[j]);
            gram[i * p + j] = gram[j * p + i] = s;
        }
        double s = 0.0;
        for (int r = 0; r < m; ++r) s += a(r, passive[i]) * b[r];
        rhs[i] = s;
    }
    // in-place Cholesky
    for (int i = 0; i < p; ++i) {
        for (int j = 0; j <= i; ++j) {
            double s = gram[i * p + j];
            for (int k = 0; k < j; ++k) s -= gram[i * p + k] * gram[j * p + k];
            if (i == j) {
                if (s <= 0.0) throw NumericalDegeneracy("nnls: singular passive Gram matrix");
                gram[i * p + i] = std::sqrt(s);
            } else {
                gram[i * p + j] = s / gram[j * p + j];
            }
        }
    }
    for (int i = 0; i < p; ++i) {
        double s = rhs[i];
        for (int k = 0; k < i; ++k) s -= gram[i * p + k] * rhs[k];
        rhs[i] = s / gram[i * p + i];
    }
    for (int i = p - 1; i >= 0; --i) {
        double s = rhs[i];
        for (int k = i + 1; k < p; ++k) s -= gram[k * p + i] * rhs[k];
        rhs[i] = s / gram[i * p + i];
    }
    return rhs;
}

} // namespace

NnlsResult nnls(const Matrix& a, std::span<const double> b, double tol) {
    const int m = a.rows, n = a.cols;
    if (static_cast<int>(b.size()) != m) throw DimensionMismatch("nnls: b size mismatch");

    std::vector<double> x(n, 0.0), w(n, 0.0), resid(b.begin(), b.end());
    std::vector<bool> in_passive(n, false);
    std::vector<int> passive;

    const double scale = std::max(norm2(b), 1.0);
    const int max_outer = 3 * n + 10;
    int outer = 0;

    while (true) {
        if (++outer > max_outer) throw NumericalDegeneracy("nnls: active-set loop stalled");
        // dual w = A^T resid on the active set
        int best = -1;
        double best_w = tol * scale;
        for (int j = 0; j < n; ++j) {
            if (in_passive[j]) continue;
            double s = 0.0;
            for (int r = 0; r < m; ++r) s += a(r, j) * resid[r];
            w[j] = s;
            if (s > best_w || (s == best_w && best >= 0 && j < best)) {
                best = j;
                best_w = s;
            }
        }
        if (best < 0 || static_cast<int>(passive.size()) == std::min(m, n)) break;

        in_passive[best] = true;
        passive.push_back(best);

        for (int inner = 0;; ++inner) {
            if (inner > 2 * n + 10) throw NumericalDegeneracy("nnls: inner loop stalled");
            std::vector<double> z = passive_ls(a, b, passive);
            double alpha = 1.0;
            int drop = -1;
            for (size_t i = 0; i < passive.size(); ++i) {
                if (z[i] <= 0.0) {
                    const double xi = x[passive[i]];
                    const double step = xi / (xi - z[i]);
                    if (step < alpha) {
                        alpha = step;
                        drop = static_cast<int>(i);
                    }
                }
            }
            if (drop < 0) {
                for (size_t i = 0; i < passive.size(); ++i) x[passive[i]] = z[i];
                break;
            }
            for (size_t i = 0; i < passive.size(); ++i)
                x[passive[i]] += alpha * (z[i] - x[passive[i]]);
            // remove every passive index pinned at (or below) zero
            std::vector<int> keep;
            for (int j : passive) {
                if (x[j] > 0.0 && std::abs(x[j]) > 1e-14 * scale) {
                    keep.push_back(j);
                } else {
                    x[j] = 0.0;
                    in_passive[j] = false;
                }
            }
            passive = std::move(keep);
            if (passive.empty()) break;
        }

        // refresh residual
        resid.assign(b.begin(), b.end());
        for (int j : passive)
            for (int r = 0; r < m; ++r) resid[r] -= a(r, j) * x[j];
    }

    NnlsResult out;
    out.x = std::move(x);
    out.support = static_cast<int>(passive.size());
    return out;
}

} // namespace gpoly::mc
