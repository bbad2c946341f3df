#include "gpoly/orthant.hpp"

#include <cmath>
#include <complex>
#include <vector>

#include "gpoly/special_functions.hpp"

namespace gpoly::orthant {

using namespace gpoly::num;

namespace {

// |h(y)| <= kHBound/y for y >= kHBoundFrom, |h| <= kHSup everywhere.
constexpr double kHBound = 1.3 * kInvSqrt2Pi;
constexpr double kHBoundFrom = 3.0;
constexpr double kHSup = 0.59;

QuadResult g_nonneg(int n, double r, const QuadratureConfig& cfg) {
    const double s = std::sqrt(r);
    auto f = [n, s](double x) {
        const double up = std::exp(n * log_std_normal_cdf(s * x));
        const double dn = std::exp(n * log_std_normal_cdf(-s * x));
        return kInvSqrt2Pi * (up + dn) * std::exp(-0.5 * x * x);
    };
    return integrate_halfline(f, HalfLineDecay::gaussian(2.0 * kInvSqrt2Pi, 1.0), cfg);
}

QuadResult g_negative(int n, double r, const QuadratureConfig& cfg) {
    const double s = std::sqrt(-r);
    // residual exponent n*(-r) - 1 <= 0; clamp the one-ulp positive case at r = -1/n
    const double c = std::min(-static_cast<double>(n) * r - 1.0, 0.0);

    auto f = [n, s, c](double x) {
        const std::complex<double> hn = pow_int(phi_imag_scaled(s * x), n);
        return 2.0 * kInvSqrt2Pi * hn.real() * std::exp(0.5 * c * x * x);
    };

    const auto poly = HalfLineDecay::polynomial(
        static_cast<double>(n), 2.0 * kInvSqrt2Pi * std::pow(kHBound / s, n), kHBoundFrom / s);
    if (c < -1e-13) {
        const auto gauss =
            HalfLineDecay::gaussian(2.0 * kInvSqrt2Pi * std::pow(kHSup, n), 1.0 / std::sqrt(-c));
        if (halfline_truncation(gauss, cfg) < halfline_truncation(poly, cfg))
            return integrate_halfline(f, gauss, cfg);
    }
    return integrate_halfline(f, poly, cfg);
}

} // namespace

void GnQuery::validate() const {
    if (n < 0) throw DomainError("g: n must be >= 0");
    if (!std::isfinite(r)) throw DomainError("g: r must be finite");
    if (n >= 1 && r < -1.0 / n) throw DomainError("g: r below -1/n");
}

QuadResult g(const GnQuery& q, const QuadratureConfig& cfg) {
    q.validate();
    if (q.n == 0) return {1.0, 0.0, 0};
    if (q.n == 1) return {0.5, 0.0, 0};
    return q.r >= 0.0 ? g_nonneg(q.n, q.r, cfg) : g_negative(q.n, q.r, cfg);
}

double g_prime(int n, double r, const QuadratureConfig& cfg) {
    if (n < 2) throw DomainError("g_prime: n must be >= 2");
    if (!(r > -1.0 / n)) throw DomainError("g_prime: r must be > -1/n");
    const double root = std::sqrt(2.0 * r + 1.0);
    const double factor = n * (n - 1.0) / (4.0 * kPi * (r + 1.0) * root);
    return factor * g(n - 2, r / (2.0 * r + 1.0), cfg).value;
}

double g_asymptotic_fixed_r(int n, double r) {
    if (!(r > 0.0)) throw DomainError("g_asymptotic_fixed_r: r must be positive");
    if (n < 2) throw DomainError("g_asymptotic_fixed_r: n must be >= 2");
    const double ln_n = std::log(static_cast<double>(n));
    const double log_val = std::lgamma(1.0 / r) - 0.5 * std::log(r) - ln_n / r +
                           (0.5 / r - 0.5) * std::log(4.0 * kPi * ln_n);
    return std::exp(log_val);
}

double g_edge_asymptotic(int n, double eps) {
    if (n < 1) throw DomainError("g_edge_asymptotic: n must be >= 1");
    if (!(eps > 0.0)) throw DomainError("g_edge_asymptotic: eps must be positive");
    const double log_val = n * std::log(static_cast<double>(n)) + std::lgamma(0.5 * n) -
                           std::log(2.0) - 0.5 * n * std::log(kPi) - std::lgamma(n) -
                           0.5 * std::log(static_cast<double>(n)) + 0.5 * (n - 1.0) * std::log(eps);
    return std::exp(log_val);
}

double phi_moment_residual(int m, int n, const QuadratureConfig& cfg) {
    if (m < 0) throw DomainError("phi_moment_residual: m must be >= 0");
    if (n <= m) throw DomainError("phi_moment_residual: integral diverges for n <= m");

    if (n >= m + 2) {
        // int_R y^m h^n dy folded onto [0,inf): only one component survives parity.
        const bool even = (m % 2 == 0);
        auto f = [m, n, even](double y) {
            const std::complex<double> hn = pow_int(phi_imag_scaled(y), n);
            const double part = even ? hn.real() : hn.imag();
            return 2.0 * std::pow(y, m) * part;
        };
        const auto decay = HalfLineDecay::polynomial(static_cast<double>(n - m),
                                                     2.0 * std::pow(kHBound, n), kHBoundFrom);
        return std::abs(integrate_halfline(f, decay, cfg).value);
    }

    // n == m+1: principal value. Fold and factor out h + conj(h) = e^(-y^2/2):
    //   y^m (h^(m+1) + (-1)^m conj(h)^(m+1)) = y^m e^(-y^2/2) sum_j h^j (-conj h)^(m-j),
    // which removes both the slow tail and the cancellation.
    auto summed = [m](double y) -> std::complex<double> {
        const std::complex<double> a = phi_imag_scaled(y);
        const std::complex<double> b = -std::conj(a);
        std::complex<double> apow{1.0, 0.0};
        std::vector<std::complex<double>> bpow(m + 1);
        bpow[0] = {1.0, 0.0};
        for (int j = 1; j <= m; ++j) bpow[j] = bpow[j - 1] * b;
        std::complex<double> sum{0.0, 0.0};
        for (int j = 0; j <= m; ++j) {
            sum += apow * bpow[m - j];
            apow *= a;
        }
        return std::pow(y, m) * std::exp(-0.5 * y * y) * sum;
    };
    const auto decay = HalfLineDecay::gaussian((m + 1.0) * std::pow(2.0, m), 1.0);
    const double re = integrate_halfline([&](double y) { return summed(y).real(); }, decay, cfg).value;
    const double im = integrate_halfline([&](double y) { return summed(y).imag(); }, decay, cfg).value;
    const std::complex<double> expected =
        std::sqrt(kPi / 2.0) * pow_int(std::complex<double>(0.0, kInvSqrt2Pi), m);
    return std::abs(std::complex<double>(re, im) - expected);
}

} // namespace gpoly::orthant
