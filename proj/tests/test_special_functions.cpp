#include <doctest.h>

#include <cmath>
#include <complex>

#include "gpoly/quadrature.hpp"
#include "gpoly/special_functions.hpp"

using namespace gpoly::num;

namespace {

// Oracle: Dawson's integral as the exact finite integral
// F(x) = int_0^x exp(-s(2x-s)) ds, evaluated by adaptive quadrature.
double dawson_oracle(double x) {
    QuadratureConfig cfg;
    cfg.abs_tol = 1e-14;
    cfg.rel_tol = 1e-14;
    cfg.max_subdivisions = 4000;
    if (x == 0.0) return 0.0;
    return integrate_adaptive([x](double s) { return std::exp(-s * (2.0 * x - s)); }, 0.0, x, cfg)
        .value;
}

// Oracle: left normal tail by quadrature,
// ln Phi(-t) = -t^2/2 - ln sqrt(2 pi) + ln int_0^inf exp(-t s - s^2/2) ds.
double log_cdf_oracle(double t) {
    QuadratureConfig cfg;
    cfg.abs_tol = 1e-16;
    cfg.rel_tol = 1e-14;
    const double integral =
        integrate_adaptive([t](double s) { return std::exp(-t * s - 0.5 * s * s); }, 0.0,
                           std::max(2.0, 80.0 / t), cfg)
            .value;
    return -0.5 * t * t - kLogSqrt2Pi + std::log(integral);
}

} // namespace

TEST_CASE("std_normal_cdf basics") {
    CHECK(std_normal_cdf(0.0) == 0.5);
    // frozen from the erf Taylor oracle: Phi(1) = 1/2 + 1/2 erf(1/sqrt 2)
    CHECK(std_normal_cdf(1.0) == doctest::Approx(0.8413447460685429).epsilon(1e-15));
    CHECK(std_normal_cdf(-1.0) == doctest::Approx(0.15865525393145705).epsilon(1e-15));

    // no premature underflow deep in the left tail
    CHECK(std_normal_cdf(-38.0) > 0.0);
    CHECK(std_normal_cdf(-38.0) < 1e-300);
    CHECK(std_normal_cdf(-37.0) > 0.0);

    double prev = -1.0;
    for (double x = -12.0; x <= 12.0; x += 0.25) {
        const double v = std_normal_cdf(x);
        CHECK(v >= prev);
        CHECK(v >= 0.0);
        CHECK(v <= 1.0);
        CHECK(std::abs(std_normal_cdf(x) + std_normal_cdf(-x) - 1.0) < 1e-15);
        prev = v;
    }
}

TEST_CASE("log_std_normal_cdf matches tail oracle and cdf") {
    CHECK(log_std_normal_cdf(0.0) == doctest::Approx(-std::log(2.0)).epsilon(1e-15));

    for (double t : {15.0, 20.0, 30.0, 50.0, 100.0})
        CHECK(log_std_normal_cdf(-t) == doctest::Approx(log_cdf_oracle(t)).epsilon(1e-12));

    for (double x = -30.0; x <= 8.0; x += 0.5) {
        const double lhs = std::exp(log_std_normal_cdf(x));
        const double rhs = std_normal_cdf(x);
        CHECK(lhs == doctest::Approx(rhs).epsilon(1e-13));
    }

    // Phi(50) -> 1 from below
    CHECK(log_std_normal_cdf(50.0) <= 0.0);
    CHECK(log_std_normal_cdf(50.0) > -1e-100);

    // the asymptotic branch agrees with a direct erfc evaluation just past the seam
    CHECK(log_std_normal_cdf(-12.5) ==
          doctest::Approx(std::log(0.5 * std::erfc(12.5 * 0.7071067811865476))).epsilon(1e-13));
}

TEST_CASE("dawson against Taylor and exact-integral oracles") {
    CHECK(dawson(0.0) == 0.0);
    CHECK(dawson(1.0) == doctest::Approx(0.5380795069127684).epsilon(1e-13));
    CHECK(dawson(10.0) == doctest::Approx(dawson_oracle(10.0)).epsilon(1e-12));
    CHECK(dawson(10.0) == doctest::Approx(0.05025384718759853).epsilon(1e-10));

    for (double x = 0.1; x <= 12.0; x += 0.1)
        CHECK(dawson(x) == doctest::Approx(dawson_oracle(x)).epsilon(5e-13));

    for (double x : {0.3, 1.7, 4.2, 9.0, 40.0}) CHECK(dawson(x) + dawson(-x) == 0.0);

    // maximum near x = 0.9241
    CHECK(dawson(0.9241) > dawson(0.85));
    CHECK(dawson(0.9241) > dawson(1.0));
}

TEST_CASE("dawson_over_x smooth through zero") {
    CHECK(dawson_over_x(0.0) == 1.0);
    CHECK(dawson_over_x(1e-9) == doctest::Approx(1.0).epsilon(1e-12));
    for (double x : {0.1, 0.249, 0.251, 0.5, 2.0})
        CHECK(dawson_over_x(x) == doctest::Approx(dawson(x) / x).epsilon(1e-13));
}

TEST_CASE("phi_imag_scaled values and identities") {
    const auto h0 = phi_imag_scaled(0.0);
    CHECK(h0.real() == 0.5);
    CHECK(h0.imag() == 0.0);

    const auto h2 = phi_imag_scaled(2.0);
    CHECK(h2.real() == doctest::Approx(0.5 * std::exp(-2.0)).epsilon(1e-15));
    CHECK(h2.imag() == doctest::Approx(dawson(std::sqrt(2.0)) / kSqrtPi).epsilon(1e-13));

    // h(y) + conj(h(y)) = e^{-y^2/2}, exactly by construction
    for (double y : {0.5, 1.0, 3.0, 7.5}) {
        const auto h = phi_imag_scaled(y);
        CHECK(2.0 * h.real() == std::exp(-0.5 * y * y));
        CHECK(std::abs(h) < 0.59);
    }

    // |h(y)| y -> 1/sqrt(2 pi), and the 1.3/sqrt(2 pi)/y bound used for
    // half-line truncation holds from y = 3 on
    for (double y : {1e3, 1e4, 1e6})
        CHECK(std::abs(phi_imag_scaled(y)) * y == doctest::Approx(kInvSqrt2Pi).epsilon(1e-5));
    for (double y = 3.0; y < 1e6; y *= 1.7)
        CHECK(std::abs(phi_imag_scaled(y)) * y <= 1.3 * kInvSqrt2Pi);
}

TEST_CASE("phi_imag matches direct quadrature of the defining integral") {
    QuadratureConfig cfg;
    cfg.abs_tol = 1e-13;
    cfg.rel_tol = 1e-13;
    for (double y : {0.5, 1.5, 3.0}) {
        const double tail =
            integrate_adaptive([](double t) { return std::exp(0.5 * t * t); }, 0.0, y, cfg).value;
        const std::complex<double> want{0.5, kInvSqrt2Pi * tail};
        const auto got = phi_imag(y);
        CHECK(got.real() == 0.5);
        CHECK(got.imag() == doctest::Approx(want.imag()).epsilon(1e-12));
        // same oracle for the damped combination
        const auto h = phi_imag_scaled(y);
        const double damp = std::exp(-0.5 * y * y);
        CHECK(h.real() == doctest::Approx(0.5 * damp).epsilon(1e-14));
        CHECK(h.imag() == doctest::Approx(kInvSqrt2Pi * tail * damp).epsilon(1e-12));
    }
}

TEST_CASE("normal_quantile inverts the cdf") {
    CHECK(normal_quantile(0.5) == doctest::Approx(0.0).epsilon(1e-15));
    CHECK(normal_quantile(0.995) == doctest::Approx(2.5758293035489004).epsilon(1e-13));
    for (double p = 0.001; p < 0.9995; p += 0.0173)
        CHECK(std_normal_cdf(normal_quantile(p)) == doctest::Approx(p).epsilon(1e-13));
    CHECK_THROWS_AS(normal_quantile(0.0), gpoly::DomainError);
    CHECK_THROWS_AS(normal_quantile(1.0), gpoly::DomainError);
}

TEST_CASE("binomials and pow_int") {
    CHECK(binomial(10, 5) == 252.0);
    CHECK(binomial(0, 0) == 1.0);
    CHECK(binomial(5, -1) == 0.0);
    CHECK(binomial(49, 24) == doctest::Approx(std::exp(log_binomial(49, 24))).epsilon(1e-12));

    const std::complex<double> z{0.3, -0.7};
    std::complex<double> direct{1.0, 0.0};
    for (int i = 0; i < 9; ++i) direct *= z;
    CHECK(std::abs(pow_int(z, 9) - direct) < 1e-15);
    CHECK(pow_int(z, 0) == std::complex<double>{1.0, 0.0});
}
