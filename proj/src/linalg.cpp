#include "gpoly/linalg.hpp"

#include <cmath>

#include "gpoly/errors.hpp"

namespace gpoly::mc {

Matrix matmul(const Matrix& x, const Matrix& y) {
    if (x.cols != y.rows) throw DimensionMismatch("matmul: inner dimensions differ");
    Matrix out(x.rows, y.cols);
    for (int i = 0; i < x.rows; ++i)
        for (int k = 0; k < x.cols; ++k) {
            const double v = x(i, k);
            if (v == 0.0) continue;
            for (int j = 0; j < y.cols; ++j) out(i, j) += v * y(k, j);
        }
    return out;
}

double dot(std::span<const double> x, std::span<const double> y) {
    double s = 0.0;
    for (size_t i = 0; i < x.size(); ++i) s += x[i] * y[i];
    return s;
}

double norm2(std::span<const double> x) { return std::sqrt(dot(x, x)); }

Matrix qr_orthogonal_factor(const Matrix& g) {
    if (g.rows != g.cols) throw DimensionMismatch("qr_orthogonal_factor: matrix must be square");
    const int n = g.rows;
    Matrix r = g;
    Matrix q(n, n);
    for (int i = 0; i < n; ++i) q(i, i) = 1.0;

    std::vector<double> v(n);
    for (int k = 0; k < n - 1; ++k) {
        double alpha = 0.0;
        for (int i = k; i < n; ++i) alpha += r(i, k) * r(i, k);
        alpha = std::sqrt(alpha);
        if (alpha == 0.0) continue;
        if (r(k, k) > 0.0) alpha = -alpha;
        double vnorm2 = 0.0;
        for (int i = k; i < n; ++i) {
            v[i] = r(i, k) - (i == k ? alpha : 0.0);
            vnorm2 += v[i] * v[i];
        }
        if (vnorm2 == 0.0) continue;
        // apply I - 2 v v^T / |v|^2 to R (left) and to Q (right, accumulating Q = H1 H2 ...)
        for (int j = k; j < n; ++j) {
            double s = 0.0;
            for (int i = k; i < n; ++i) s += v[i] * r(i, j);
            s *= 2.0 / vnorm2;
            for (int i = k; i < n; ++i) r(i, j) -= s * v[i];
        }
        for (int i = 0; i < n; ++i) {
            double s = 0.0;
            for (int j = k; j < n; ++j) s += q(i, j) * v[j];
            s *= 2.0 / vnorm2;
            for (int j = k; j < n; ++j) q(i, j) -= s * v[j];
        }
    }
    // fold diag-sign of R into Q so that diag(R) > 0
    for (int j = 0; j < n; ++j)
        if (r(j, j) < 0.0)
            for (int i = 0; i < n; ++i) q(i, j) = -q(i, j);
    return q;
}

double abs_determinant(Matrix m) {
    if (m.rows != m.cols) throw DimensionMismatch("abs_determinant: matrix must be square");
    const int n = m.rows;
    double det = 1.0;
    for (int k = 0; k < n; ++k) {
        int piv = k;
        for (int i = k + 1; i < n; ++i)
            if (std::abs(m(i, k)) > std::abs(m(piv, k))) piv = i;
        if (m(piv, k) == 0.0) return 0.0;
        if (piv != k)
            for (int j = 0; j < n; ++j) std::swap(m(piv, j), m(k, j));
        det *= m(k, k);
        for (int i = k + 1; i < n; ++i) {
            const double f = m(i, k) / m(k, k);
            for (int j = k; j < n; ++j) m(i, j) -= f * m(k, j);
        }
    }
    return std::abs(det);
}

Matrix regular_simplex_vertices(int n) {
    if (n < 2) throw DimensionMismatch("regular_simplex_vertices: n must be >= 2");
    // centered basis columns c_j = (e_j - 1/n) / sqrt(1 - 1/n), expressed in the
    // Helmert orthonormal basis of the sum-zero hyperplane
    Matrix h(n - 1, n);
    for (int k = 1; k <= n - 1; ++k) {
        const double denom = 1.0 / std::sqrt(k * (k + 1.0));
        for (int j = 0; j < k; ++j) h(k - 1, j) = denom;
        h(k - 1, k) = -k * denom;
    }
    const double scale = 1.0 / std::sqrt(1.0 - 1.0 / n);
    Matrix v(n - 1, n);
    for (int k = 0; k < n - 1; ++k)
        for (int j = 0; j < n; ++j) {
            // (H (e_j - 1/n))_k = H_kj since Helmert rows are sum-zero
            v(k, j) = h(k, j) * scale;
        }
    return v;
}

} // namespace gpoly::mc
