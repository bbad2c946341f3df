#pragma once

#include "gpoly/quadrature.hpp"

namespace gpoly::spherical {

using num::QuadratureConfig;
using num::QuadResult;

/// Regular spherical simplex with n vertices on the unit sphere S^(n-1) and
/// geodesic side length ell in (0, arccos(-1/(n-1))).
struct SphericalSimplexQuery {
    int n = 2;
    double ell = 0.0;
    void validate() const;
};

/// Fraction of the sphere covered: g_n(-cos(ell) / (1 + (n-1) cos(ell))).
/// Tends to 0 as ell -> 0 and to 1/2 at the degenerate upper endpoint.
QuadResult volume_fraction(const SphericalSimplexQuery& q, const QuadratureConfig& cfg = {});

/// Fraction times Vol(S^(n-1)) = 2 pi^(n/2) / Gamma(n/2).
double absolute_volume(const SphericalSimplexQuery& q, const QuadratureConfig& cfg = {});

/// Correlation parameter of the cone over the simplex: r = cos(ell)/(1 - cos(ell)).
double side_length_to_r(double ell);

/// Inverse conversion, ell = arccos(r/(1+r)).
double r_to_side_length(double r);

} // namespace gpoly::spherical
