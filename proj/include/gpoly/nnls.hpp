#pragma once

#include <span>
#include <vector>

#include "gpoly/linalg.hpp"

namespace gpoly::mc {

struct NnlsResult {
    std::vector<double> x; // coefficients, >= 0, structural zeros outside the support
    int support = 0;       // number of strictly positive coefficients
};

/// min ||A x - b||_2 subject to x >= 0 by the Lawson-Hanson active-set method.
/// The passive-set least squares solves go through normal equations with
/// Cholesky; fine at these sizes. Throws NumericalDegeneracy on a stalled
/// active-set loop.
NnlsResult nnls(const Matrix& a, std::span<const double> b, double tol = 1e-10);

} // namespace gpoly::mc
