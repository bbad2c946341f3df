#include "gpoly/absorption.hpp"

#include <cmath>
#include <complex>
#include <vector>

#include "gpoly/orthant.hpp"
#include "gpoly/special_functions.hpp"

namespace gpoly::absorption {

using namespace gpoly::num;

void AbsorptionQuery::validate() const {
    if (d < 1) throw DomainError("absorption: d must be >= 1");
    if (n < d + 1) throw DomainError("absorption: n must be >= d+1");
    if (sigma2.has_value() == u.has_value())
        throw DomainError("absorption: exactly one of sigma2, u must be set");
    if (sigma2 && !(*sigma2 >= 0.0)) throw DomainError("absorption: sigma2 must be >= 0");
    if (u && !(*u >= 0.0)) throw DomainError("absorption: u must be >= 0");
}

double wendel(int n, int d) {
    if (n < 1 || d < 1) throw DomainError("wendel: n, d must be >= 1");
    if (n <= d) return 1.0;
    double sum = 0.0;
    for (int j = 0; j <= d - 1; ++j) sum += binomial(n - 1, j);
    return std::ldexp(sum, 1 - n);
}

namespace detail {

QuadResult b_term(int n, int k, double r, const QuadratureConfig& cfg) {
    const QuadratureConfig sub = cfg.tightened(8.0 * std::max(1.0, binomial(n, k)));
    const double lobe = r / (1.0 + k * r);
    const QuadResult g1 = orthant::g(k, -lobe, sub);
    const QuadResult g2 = orthant::g(n - k, lobe, sub);
    const double c = binomial(n, k);
    return {c * g1.value * g2.value,
            c * (g1.error * std::abs(g2.value) + std::abs(g1.value) * g2.error + g1.error * g2.error),
            g1.panels + g2.panels};
}

QuadResult p_sum(int n, int d, double sigma2, const QuadratureConfig& cfg) {
    QuadResult out;
    for (int k = d - 1; k >= 0; k -= 2) {
        const QuadResult b = b_term(n, k, sigma2, cfg);
        out.value += 2.0 * b.value;
        out.error += 2.0 * b.error;
        out.panels += b.panels;
    }
    return out;
}

} // namespace detail

QuadResult p(const AbsorptionQuery& q, const QuadratureConfig& cfg) {
    q.validate();
    if (!q.sigma2) throw DomainError("p: query must carry sigma2");
    return detail::p_sum(q.n, q.d, *q.sigma2, cfg);
}

namespace {

// G1(t) = Phi^m(t) + Phi^m(-t); even, smooth, G1(0) = 2^(1-m).
double G1(int m, double t) {
    if (m == 0) return 2.0;
    return std::exp(m * log_std_normal_cdf(t)) + std::exp(m * log_std_normal_cdf(-t));
}

// beta(t) = Im Phi(it) = e^(t^2/2) F(t/sqrt 2) / sqrt(pi)
double phi_imag_part(double t) {
    return std::exp(0.5 * t * t) * dawson(t * 0.7071067811865476) * kInvSqrtPi;
}

// G2(t) = 2 Re Phi^k(it); even, smooth, G2(0) = 2^(1-k).
double G2(int k, double t) {
    if (k == 0) return 2.0;
    return 2.0 * pow_int({0.5, phi_imag_part(t)}, k).real();
}

// Q1(t) = G1'(t)/t, even and finite at 0. Written through
// (Phi(t)-Phi(-t))/t and sum_i Phi^i(t) Phi^(m-2-i)(-t) to avoid cancellation.
double Q1(int m, double t) {
    if (m <= 1) return 0.0;
    const double P = std_normal_cdf(t);
    const double Q = 1.0 - P;
    double sum;
    if (std::abs(t) > 0.1) {
        sum = (std::pow(P, m - 1) - std::pow(Q, m - 1)) / (P - Q);
    } else {
        std::vector<double> pp(m - 1), qq(m - 1);
        pp[0] = qq[0] = 1.0;
        for (int i = 1; i <= m - 2; ++i) {
            pp[i] = pp[i - 1] * P;
            qq[i] = qq[i - 1] * Q;
        }
        sum = 0.0;
        for (int i = 0; i <= m - 2; ++i) sum += pp[i] * qq[m - 2 - i];
    }
    return m * std_normal_pdf(t) * central_phi_diff_over_t(t) * sum;
}

// S_j(beta) = Im[(1/2 + i beta)^j] / beta as an explicit odd-binomial sum.
double im_pow_over_beta(int j, double beta) {
    double sum = 0.0;
    const double b2 = beta * beta;
    double bpow = 1.0; // beta^(i-1) for odd i
    int sign = 1;
    for (int i = 1; i <= j; i += 2) {
        sum += sign * binomial(j, i) * std::ldexp(bpow, i - j);
        bpow *= b2;
        sign = -sign;
    }
    return sum;
}

// Q2(t) = G2'(t)/t = -(2k/sqrt(2 pi)) e^(t^2/2) * (beta/t) * S_{k-1}(beta).
double Q2(int k, double t) {
    if (k <= 1) return 0.0;
    const double beta_over_t =
        std::exp(0.5 * t * t) * dawson_over_x(t * 0.7071067811865476) * kInvSqrt2Pi;
    return -2.0 * k * kInvSqrt2Pi * std::exp(0.5 * t * t) * beta_over_t *
           im_pow_over_beta(k - 1, phi_imag_part(t));
}

constexpr double kHalfPi = 1.5707963267948966;

} // namespace

QuadResult F_conv(const ConvolutionKernelPair& kern, double v, const QuadratureConfig& cfg) {
    if (kern.k < 0 || kern.m < 0) throw DomainError("F_conv: kernel exponents must be >= 0");
    if (!(v > 0.0)) throw DomainError("F_conv: v must be positive");
    const double t0 = std::sqrt(2.0 * v);
    auto integrand = [&](double theta) {
        return G1(kern.m, t0 * std::sin(theta)) * G2(kern.k, t0 * std::cos(theta));
    };
    QuadResult r = integrate_adaptive(integrand, 0.0, kHalfPi, cfg);
    r.value /= 2.0 * kPi;
    r.error /= 2.0 * kPi;
    return r;
}

QuadResult F_conv_prime(const ConvolutionKernelPair& kern, double v, const QuadratureConfig& cfg) {
    if (kern.k < 0 || kern.m < 0) throw DomainError("F_conv_prime: kernel exponents must be >= 0");
    if (!(v > 0.0)) throw DomainError("F_conv_prime: v must be positive");
    const double t0 = std::sqrt(2.0 * v);
    auto integrand = [&](double theta) {
        const double s = std::sin(theta), c = std::cos(theta);
        const double t1 = t0 * s, t2 = t0 * c;
        return s * s * Q1(kern.m, t1) * G2(kern.k, t2) +
               c * c * G1(kern.m, t1) * Q2(kern.k, t2);
    };
    QuadResult r = integrate_adaptive(integrand, 0.0, kHalfPi, cfg);
    r.value /= 2.0 * kPi;
    r.error /= 2.0 * kPi;
    return r;
}

namespace {

QuadResult a_term_impl(int n, int k, int d, double u, const QuadratureConfig& cfg) {
    const ConvolutionKernelPair kern{k, n - k};
    const QuadratureConfig inner = cfg.tightened(16.0);
    auto integrand = [&](double q) {
        const double vv = u * (1.0 - q * q);
        const double fp = (vv > 0.0) ? F_conv_prime(kern, vv, inner).value
                                     : F_conv_prime(kern, u * 1e-14, inner).value;
        return std::exp(-vv * k) * fp * std::pow(q, d - 1);
    };
    QuadResult r = integrate_adaptive(integrand, 0.0, 1.0, cfg);
    const double scale = binomial(n, k) * 2.0 * std::pow(u, 0.5 * d);
    r.value *= scale;
    r.error *= scale;
    return r;
}

} // namespace

double a_term(int n, int k, int d, double u, const QuadratureConfig& cfg) {
    if (k < 0 || k > n) throw DomainError("a_term: k must be in [0,n]");
    if (d < 1) throw DomainError("a_term: d must be >= 1");
    if (!(u > 0.0)) throw DomainError("a_term: u must be positive");
    return a_term_impl(n, k, d, u, cfg).value;
}

QuadResult f(const AbsorptionQuery& q, const QuadratureConfig& cfg) {
    q.validate();
    if (!q.u) throw DomainError("f: query must carry u");
    const double u = *q.u;
    const double base = wendel(q.n, q.d);
    if (u == 0.0) return {base, 0.0, 0};
    QuadResult sum;
    for (int k = q.d - 1; k >= 0; k -= 2) {
        const QuadResult a = a_term_impl(q.n, k, q.d, u, cfg);
        sum.value += a.value;
        sum.error += a.error;
        sum.panels += a.panels;
    }
    const double front = 2.0 * std::pow(u, 1.0 - 0.5 * q.d);
    // the inner F' quadratures run 16x tighter; fold their budget in once
    return {base + front * sum.value,
            front * sum.error + std::max(cfg.abs_tol, cfg.rel_tol) * 0.5, sum.panels};
}

QuadResult f_d2_closed(int n, double u, const QuadratureConfig& cfg) {
    if (n < 3) throw DomainError("f_d2_closed: n must be >= 3");
    if (!(u >= 0.0)) throw DomainError("f_d2_closed: u must be >= 0");
    const double s = std::sqrt(2.0 * u);
    // P[M_n^2 + xi^2 <= 2u] with t = s sin(alpha)
    auto body = [&](double alpha) {
        const double c = std::cos(alpha);
        const double inner = std::exp(n * log_std_normal_cdf(s * c)) -
                             std::exp(n * log_std_normal_cdf(-s * c));
        return std_normal_pdf(s * std::sin(alpha)) * inner * s * c;
    };
    const QuadResult t1 = integrate_adaptive(body, -kHalfPi, kHalfPi, cfg);
    // n e^(-u) P[M_{n-1} <= s W], arcsine density with y = sin(alpha)
    auto arcs = [&](double alpha) {
        return std::exp((n - 1) * log_std_normal_cdf(s * std::sin(alpha)));
    };
    const QuadResult t2 = integrate_adaptive(arcs, -kHalfPi, kHalfPi, cfg);
    const double scale = n * std::exp(-u) / kPi;
    return {t1.value + scale * t2.value, t1.error + scale * t2.error, t1.panels + t2.panels};
}

double probability_content(int n, int d, const QuadratureConfig& cfg) {
    if (d < 2 || d > 4) throw DomainError("probability_content: d must be in {2,3,4}");
    if (n < d + 1) throw DomainError("probability_content: n must be >= d+1");
    const QuadratureConfig sub = cfg.tightened(8.0 * n * n * n);
    const double c2 = 1.0 - n * orthant::g(n - 1, 0.5, sub).value;
    if (d == 2) return c2;
    if (d == 3)
        return 1.0 - n * (n - 1.0) / 6.0 * orthant::g(n - 2, 1.0 / 3.0, sub).value -
               2.0 / (n + 1.0);
    const double wedge = 0.125 - 3.0 / (4.0 * kPi) * std::asin(1.0 / 3.0);
    return c2 - n * (n - 1.0) * (n - 2.0) / 3.0 * wedge * orthant::g(n - 3, 0.25, sub).value;
}

} // namespace gpoly::absorption
