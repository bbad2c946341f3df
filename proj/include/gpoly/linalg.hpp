#pragma once

#include <span>
#include <vector>

namespace gpoly::mc {

/// Dense row-major matrix; everything here is small (dimensions <= a few dozen).
struct Matrix {
    int rows = 0;
    int cols = 0;
    std::vector<double> a;

    Matrix() = default;
    Matrix(int r, int c) : rows(r), cols(c), a(static_cast<size_t>(r) * c, 0.0) {}
    double& operator()(int i, int j) { return a[static_cast<size_t>(i) * cols + j]; }
    double operator()(int i, int j) const { return a[static_cast<size_t>(i) * cols + j]; }
};

Matrix matmul(const Matrix& x, const Matrix& y);

double dot(std::span<const double> x, std::span<const double> y);
double norm2(std::span<const double> x);

/// Householder QR of a square matrix; returns Q with the signs of R's diagonal
/// folded in (diag R > 0), which makes Q Haar-distributed when the input is
/// Gaussian.
Matrix qr_orthogonal_factor(const Matrix& g);

/// |det| by LU with partial pivoting (test support for orthogonality checks).
double abs_determinant(Matrix m);

/// Vertices of the regular simplex with n unit vertices and pairwise inner
/// product -1/(n-1), as columns of an (n-1) x n matrix (Helmert coordinates
/// of the centered standard basis).
Matrix regular_simplex_vertices(int n);

} // namespace gpoly::mc
