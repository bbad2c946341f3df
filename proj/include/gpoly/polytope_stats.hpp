#pragma once

#include "gpoly/quadrature.hpp"

namespace gpoly::stats {

using num::QuadratureConfig;
using num::QuadResult;

/// Addresses E f_k of the Gaussian polytope (k-faces of the hull of n standard
/// normal points in R^d), optionally weighted by Vol^b of each face.
struct FaceQuery {
    int n = 0;
    int d = 0;
    int k = 0;
    double b = 0.0;
    void validate() const;
};

/// A quantity evaluated along two independent routes.
struct PairResult {
    double value = 0.0; // primary route
    double alt = 0.0;   // cross-check route
    double rel_diff = 0.0;
};

/// Expected number of k-faces. Primary route is the double-factorial sum
///   (2 n!/(k+1)!) sum_{j = d-2i > k} g_{j-1-k}(-1/j) g_{n-j}(1/j) / ((j-1-k)!(n-j)!),
/// cross-checked against C(n,k+1) p_{n-k-1,d-k}(1/(k+1)).
PairResult expected_faces(const FaceQuery& q, const QuadratureConfig& cfg = {});

/// E sum_{k-faces} Vol_k(F)^b. Reduces to expected_faces at b = 0; the volume
/// moment factor is the Gaussian-simplex moment ratio
///   (sqrt(k+1) 2^(k/2) / k!)^b prod_{j=1..k} Gamma((d+b+1-j)/2)/Gamma((d+1-j)/2).
double expected_face_functional(const FaceQuery& q, const QuadratureConfig& cfg = {});

/// Expected volume. Primary route C(n,d+1) sqrt(d+1) 2^(-d/2) / Gamma(d/2+1)
/// * g_{n-d-1}(1/(d+1)); cross-checked against the moment integral
/// pi^(d/2)/Gamma(d/2+1) * n!/(d!(n-d-1)!) int Phi^(n-d-1)(t) phi^(d+1)(t) dt.
PairResult expected_volume(int n, int d, const QuadratureConfig& cfg = {});

/// Large-n asymptotic (2/sqrt(d)) C(d,k+1) g_{d-1-k}(-1/d) (4 pi log n)^((d-1)/2).
double expected_faces_asymptotic(int n, int d, int k, const QuadratureConfig& cfg = {});

/// Large-n asymptotic pi^(d/2)/Gamma(d/2+1) * (2 log n)^(d/2).
double expected_volume_asymptotic(int n, int d);

/// Large-n asymptotic of p_{n,d}(sigma^2), sigma^2 > 0 fixed:
///   2 n^(-1/sigma^2)/(d-1)! g_{d-1}(-r) Gamma(1/r) r^(-1/2) (4 pi log n)^(1/(2r)-1/2),
/// r = sigma^2/(1+(d-1)sigma^2). The leading factor 2 carries over from
/// p ~ 2 b_{n,d-1}.
double p_asymptotic(int n, int d, double sigma2, const QuadratureConfig& cfg = {});

} // namespace gpoly::stats
