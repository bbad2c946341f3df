#pragma once

#include <optional>

#include "gpoly/quadrature.hpp"

namespace gpoly::absorption {

using num::QuadratureConfig;
using num::QuadResult;

/// Addresses P[sigma X not in conv(X_1..X_n)] (sigma2 set) or the
/// non-absorption probability of a fixed point at radius sqrt(2u) (u set).
struct AbsorptionQuery {
    int n = 0;
    int d = 0;
    std::optional<double> sigma2;
    std::optional<double> u;
    void validate() const;
};

/// Wendel's formula: P[0 not in hull] = 2^(1-n) sum_{j<=d-1} C(n-1,j).
/// Equals 1 for n <= d.
double wendel(int n, int d);

/// p_{n,d}(sigma^2) = 2 (b_{n,d-1} + b_{n,d-3} + ...) with
/// b_{n,k}(s) = C(n,k) g_k(-s/(1+ks)) g_{n-k}(s/(1+ks)).
QuadResult p(const AbsorptionQuery& q, const QuadratureConfig& cfg = {});
inline QuadResult p(int n, int d, double sigma2, const QuadratureConfig& cfg = {}) {
    return p(AbsorptionQuery{n, d, sigma2, std::nullopt}, cfg);
}

/// Convolution kernel pair of the explicit Laplace inversion: the smooth
/// even factors Phi^m(t)+Phi^m(-t) (real axis) and 2 Re Phi^k(it)
/// (imaginary axis), with m = n - k.
struct ConvolutionKernelPair {
    int k = 0;
    int m = 0;
};

/// F_{k,m}(v) = int_0^v h1(w) h2(v-w) dw rewritten with w = v sin^2(theta), which
/// removes both square-root endpoint singularities:
///   (1/(2 pi)) int_0^(pi/2) G1(sqrt(2v) sin) G2(sqrt(2v) cos) dtheta.
/// F(0+) = 2^(-n).
QuadResult F_conv(const ConvolutionKernelPair& kern, double v, const QuadratureConfig& cfg = {});

/// dF/dv by differentiating under the integral; the 1/sqrt(2v) chain factor is
/// absorbed into the even ratios G'(t)/t, so the result stays bounded as v -> 0.
QuadResult F_conv_prime(const ConvolutionKernelPair& kern, double v,
                        const QuadratureConfig& cfg = {});

/// a_{n,k}(u) = C(n,k) int_0^u e^(-vk) F'_{k,n-k}(v) (u-v)^(d/2-1) dv, evaluated
/// after u - v = u q^2 which turns the weight into the smooth 2 u^(d/2) q^(d-1).
double a_term(int n, int k, int d, double u, const QuadratureConfig& cfg = {});

/// Non-absorption probability of a fixed point at radius sqrt(2u):
/// f_{n,d}(sqrt(2u)) = wendel(n,d) + 2 u^(1-d/2) (a_{n,d-1} + a_{n,d-3} + ...).
QuadResult f(const AbsorptionQuery& q, const QuadratureConfig& cfg = {});
inline QuadResult f(int n, int d, double u, const QuadratureConfig& cfg = {}) {
    return f(AbsorptionQuery{n, d, std::nullopt, u}, cfg);
}

/// Closed d=2 form: f_{n,2}(sqrt(2u)) = P[M_n^2 + xi^2 <= 2u]
///                                      + n e^(-u) P[M_{n-1} <= sqrt(2u) W],
/// M_k the max of k standard normals, W arcsine-distributed on [-1,1].
QuadResult f_d2_closed(int n, double u, const QuadratureConfig& cfg = {});

/// Probability content C_{n,d} = P[X in conv(X_1..X_n)] for d in {2,3,4}.
double probability_content(int n, int d, const QuadratureConfig& cfg = {});

namespace detail {
/// The series 2 sum_i b_{n,d-1-2i}(sigma2) without the n >= d+1 gate
/// (the degenerate simplex case n = d is needed by expected-face formulas).
QuadResult p_sum(int n, int d, double sigma2, const QuadratureConfig& cfg);
/// One intrinsic-volume term b_{n,k}(r) with internally tightened tolerances.
QuadResult b_term(int n, int k, double r, const QuadratureConfig& cfg);
} // namespace detail

} // namespace gpoly::absorption
