#include "gpoly/lp.hpp"

#include <cmath>
#include <vector>

#include "gpoly/errors.hpp"

namespace gpoly::mc {

bool hull_contains(std::span<const double> x, const std::vector<std::vector<double>>& points,
                   double tol) {
    const int n = static_cast<int>(points.size());
    if (n == 0) return false;
    const int d = static_cast<int>(x.size());
    for (const auto& p : points)
        if (static_cast<int>(p.size()) != d)
            throw DimensionMismatch("hull_contains: inconsistent point dimensions");

    const int m = d + 1;     // equality rows: d coordinates plus sum(lambda) = 1
    const int total = n + m; // structural columns plus artificials
    const int rhs = total;

    // rows 0..m-1: [A | I | b]; row m: phase-1 reduced costs with value -sum(b)
    std::vector<std::vector<double>> t(m + 1, std::vector<double>(total + 1, 0.0));
    for (int i = 0; i < d; ++i) {
        for (int j = 0; j < n; ++j) t[i][j] = points[j][i];
        t[i][rhs] = x[i];
    }
    for (int j = 0; j < n; ++j) t[d][j] = 1.0;
    t[d][rhs] = 1.0;

    for (int i = 0; i < m; ++i) {
        if (t[i][rhs] < 0.0)
            for (int j = 0; j <= total; ++j) t[i][j] = -t[i][j];
        t[i][n + i] = 1.0;
    }
    // minimizing sum of artificials from the all-artificial basis: the reduced
    // cost of column j is -sum_i a_ij, zero on the artificials themselves
    for (int j = 0; j <= total; ++j) {
        double s = 0.0;
        for (int i = 0; i < m; ++i) s += t[i][j];
        t[m][j] = -s;
    }
    for (int i = 0; i < m; ++i) t[m][n + i] = 0.0;

    std::vector<int> basis(m);
    for (int i = 0; i < m; ++i) basis[i] = n + i;

    const double pivot_floor = 1e-12;
    const int max_iter = 50 * (total + m) + 200;
    int iter = 0;
    for (;; ++iter) {
        if (iter >= max_iter) throw NumericalDegeneracy("hull_contains: iteration cap reached");

        // Bland's rule: entering = lowest index with negative reduced cost
        int enter = -1;
        for (int j = 0; j < total; ++j) {
            if (t[m][j] < -1e-11) {
                enter = j;
                break;
            }
        }
        if (enter < 0) break;

        // leaving: min ratio, ties by lowest basis index
        int leave = -1;
        double best = 0.0;
        for (int i = 0; i < m; ++i) {
            if (t[i][enter] > pivot_floor) {
                const double ratio = t[i][rhs] / t[i][enter];
                if (leave < 0 || ratio < best - 1e-15 ||
                    (std::abs(ratio - best) <= 1e-15 && basis[i] < basis[leave])) {
                    leave = i;
                    best = ratio;
                }
            }
        }
        if (leave < 0) throw NumericalDegeneracy("hull_contains: no admissible pivot row");

        const double piv = t[leave][enter];
        for (int j = 0; j <= total; ++j) t[leave][j] /= piv;
        for (int i = 0; i <= m; ++i) {
            if (i == leave) continue;
            const double f = t[i][enter];
            if (f == 0.0) continue;
            for (int j = 0; j <= total; ++j) t[i][j] -= f * t[leave][j];
        }
        basis[leave] = enter;
    }

    const double objective = -t[m][rhs]; // residual infeasibility
    return objective <= tol;
}

} // namespace gpoly::mc
