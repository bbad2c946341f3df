#pragma once

#include "gpoly/quadrature.hpp"

namespace gpoly::orthant {

using num::QuadratureConfig;
using num::QuadResult;

/// Query for the equicorrelated orthant probability g_n(r):
/// the probability that an n-dimensional zero-mean Gaussian vector with
/// Var = 1+r and pairwise Cov = r is coordinatewise negative. Defined for
/// r >= -1/n (n >= 1); g_0 = 1 by convention.
struct GnQuery {
    int n = 0;
    double r = 0.0;
    void validate() const;
};

/// g_n(r) by quadrature:
///   r >= 0:  (1/sqrt(2 pi)) int_0^inf (Phi^n(sqrt(r) x) + Phi^n(-sqrt(r) x)) e^(-x^2/2) dx,
///            the Phi^n factors evaluated in log domain;
///   r <  0:  (2/sqrt(2 pi)) int_0^inf Re[h^n(sqrt(-r) x)] e^((n(-r)-1) x^2/2) dx with
///            h = phi_imag_scaled, so no factor overflows. At r = -1/n the residual
///            exponent vanishes and the integrand decays only like x^(-n); the tail
///            is then truncated from the polynomial bound.
/// Hard-coded: g_0 = 1, g_1 = 1/2.
///
/// Classical Schlaefli-function tables use the angle parametrisation
/// f^(n)(alpha) = (2^n / n!) g_n(-cos(2 alpha) / (1 + cos(2 alpha))); that
/// conversion is documented here for reference, not exposed as a code path.
QuadResult g(const GnQuery& q, const QuadratureConfig& cfg = {});
inline QuadResult g(int n, double r, const QuadratureConfig& cfg = {}) {
    return g(GnQuery{n, r}, cfg);
}

/// g_n'(r) = n(n-1) / (4 pi (r+1) sqrt(2r+1)) * g_{n-2}(r/(2r+1)),
/// the Schlaefli differential relation. Requires n >= 2, r > -1/n.
double g_prime(int n, double r, const QuadratureConfig& cfg = {});

/// Fixed-r large-n asymptotic: Gamma(1/r) r^(-1/2) n^(-1/r) (4 pi log n)^(1/(2r)-1/2).
double g_asymptotic_fixed_r(int n, double r);

/// Leading order of g_n(-1/n + eps) as eps -> 0:
/// n^n Gamma(n/2) / (2 pi^(n/2) Gamma(n) sqrt(n)) * eps^((n-1)/2).
double g_edge_asymptotic(int n, double eps);

/// Moment integrals of h(y) = Phi(iy) e^(-y^2/2).
/// For n >= m+2 returns |int_R y^m h^n(y) dy| (zero in exact arithmetic).
/// For n == m+1 the integral is a principal value; returns the magnitude of
/// (folded integral - sqrt(pi/2) (i/sqrt(2 pi))^m). Throws DomainError for
/// n <= m where the integral diverges.
double phi_moment_residual(int m, int n, const QuadratureConfig& cfg = {});

} // namespace gpoly::orthant
