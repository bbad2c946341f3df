#pragma once

#include <complex>

namespace gpoly::num {

inline constexpr double kSqrt2Pi = 2.5066282746310005;
inline constexpr double kInvSqrt2Pi = 0.3989422804014327;
inline constexpr double kSqrtPi = 1.7724538509055160;
inline constexpr double kInvSqrtPi = 0.5641895835477563;
inline constexpr double kLogSqrt2Pi = 0.9189385332046727;
inline constexpr double kPi = 3.141592653589793;

/// Standard normal distribution function Phi(x).
double std_normal_cdf(double x);

/// Standard normal density.
double std_normal_pdf(double x);

/// ln Phi(x), stable far into the left tail (asymptotic expansion for x < -12).
double log_std_normal_cdf(double x);

/// Dawson's integral F(x) = exp(-x^2) * int_0^x exp(t^2) dt.
double dawson(double x);

/// F(x)/x, finite and smooth through x = 0.
double dawson_over_x(double x);

/// h(y) = Phi(iy) * exp(-y^2/2), the bounded combination of the analytic
/// continuation of Phi along the imaginary axis:
///   Re h = exp(-y^2/2)/2,   Im h = F(y/sqrt(2)) / sqrt(pi).
/// |h| <= 0.5857 everywhere and |h(y)| ~ 1/(sqrt(2*pi)*|y|) for large |y|.
std::complex<double> phi_imag_scaled(double y);

/// Phi(iy) itself = 1/2 + i * exp(y^2/2) * F(y/sqrt(2)) / sqrt(pi).
/// Overflows for |y| beyond ~38; callers on the imaginary axis should prefer
/// phi_imag_scaled.
std::complex<double> phi_imag(double y);

/// (Phi(t) - Phi(-t)) / t = erf(t/sqrt(2))/t, stable through t = 0.
double central_phi_diff_over_t(double t);

/// Inverse of std_normal_cdf (Acklam's rational approximation plus one
/// Halley refinement; ~1e-15 accurate on (0,1)).
double normal_quantile(double p);

/// z^n for integer n >= 0 by repeated squaring in Cartesian form.
std::complex<double> pow_int(std::complex<double> z, int n);

double log_factorial(int n);
double log_binomial(int n, int k);
double binomial(int n, int k);

} // namespace gpoly::num
