#include <doctest.h>

#include <cmath>

#include "gpoly/cones.hpp"
#include "gpoly/nnls.hpp"
#include "gpoly/orthant.hpp"
#include "gpoly/rng.hpp"
#include "gpoly/special_functions.hpp"

using namespace gpoly::cones;
using gpoly::num::QuadratureConfig;

TEST_CASE("polar parameter is an involution") {
    CHECK(polar_parameter(5, 0.0) == 0.0);
    CHECK(polar_parameter(2, 1.0) == doctest::Approx(-1.0 / 3.0).epsilon(1e-15));
    CHECK(polar_parameter(3, -0.25) == doctest::Approx(1.0).epsilon(1e-13));
    CHECK(polar_parameter(3, polar_parameter(3, -0.25)) == doctest::Approx(-0.25).epsilon(1e-13));
    for (int n : {2, 5, 9}) {
        for (double r : {-1.0 / (n + 1.0), -0.05, 0.3, 2.0, 40.0}) {
            CHECK(polar_parameter(n, polar_parameter(n, r)) == doctest::Approx(r).epsilon(1e-12));
            CHECK(polar_parameter(n, r) > -1.0 / n);
        }
    }
    CHECK_THROWS_AS(polar_parameter(4, -0.25), gpoly::DomainError);
}

TEST_CASE("solid angles") {
    for (int n = 1; n <= 6; ++n)
        CHECK(solid_angle({n, 0.0}).value == doctest::Approx(std::ldexp(1.0, -n)).epsilon(1e-8));
    CHECK(solid_angle({2, 1.0}).value == doctest::Approx(1.0 / 6.0).epsilon(1e-10));
    // toward the ray limit the angle collapses
    CHECK(solid_angle({3, 1e8}).value < 1e-3);
}

TEST_CASE("intrinsic volumes: binomial case, sums, endpoints") {
    const auto b20 = intrinsic_volumes({2, 0.0});
    REQUIRE(b20.size() == 3);
    CHECK(b20[0] == doctest::Approx(0.25).epsilon(1e-10));
    CHECK(b20[1] == doctest::Approx(0.5).epsilon(1e-10));
    CHECK(b20[2] == doctest::Approx(0.25).epsilon(1e-10));

    for (int n : {2, 5, 8}) {
        for (double r : {-1.0 / (n + 1.0), 0.0, 0.5, 1.0, 5.0}) {
            const auto b = intrinsic_volumes({n, r});
            double even = 0.0, odd = 0.0;
            for (int k = 0; k <= n; ++k) {
                CHECK(b[k] >= -1e-12);
                CHECK(b[k] <= 1.0 + 1e-12);
                (k % 2 == 0 ? even : odd) += b[k];
            }
            CHECK(even == doctest::Approx(0.5).epsilon(1e-9));
            CHECK(odd == doctest::Approx(0.5).epsilon(1e-9));
            CHECK(b[n] == doctest::Approx(solid_angle({n, r}).value).epsilon(1e-9));
            CHECK(b[0] == doctest::Approx(gpoly::orthant::g(n, r).value).epsilon(1e-9));
        }
    }
}

TEST_CASE("polar duality swaps the intrinsic-volume index") {
    const int n = 4;
    const double r = 0.7;
    const auto b = intrinsic_volumes({n, r});
    const auto bp = intrinsic_volumes({n, polar_parameter(n, r)});
    for (int k = 0; k <= n; ++k) CHECK(b[k] == doctest::Approx(bp[n - k]).epsilon(1e-9));
}

TEST_CASE("simplex angles") {
    CHECK(simplex_angle(3, 1, AngleKind::internal) == doctest::Approx(1.0 / 6.0).epsilon(1e-10));
    CHECK(simplex_angle(3, 1, AngleKind::external) == doctest::Approx(1.0 / 3.0).epsilon(1e-9));
    CHECK(simplex_angle(5, 5, AngleKind::internal) == 1.0);
    CHECK(simplex_angle(5, 5, AngleKind::external) == 1.0);
    CHECK_THROWS_AS(simplex_angle(3, 0, AngleKind::internal), gpoly::DomainError);
    CHECK_THROWS_AS(simplex_angle(3, 4, AngleKind::internal), gpoly::DomainError);
}

TEST_CASE("generator families have the stated Gram matrices") {
    for (double r : {0.0, 0.5, 2.0}) {
        const int n = 4;
        const auto gens = make_generators(n, r);
        const double s2 = r;
        for (int i = 0; i < n; ++i) {
            for (int j = 0; j < n; ++j) {
                const double gu = gpoly::mc::dot(gens.primal[i], gens.primal[j]);
                const double gv = gpoly::mc::dot(gens.polar[i], gens.polar[j]);
                const double wu = (i == j) ? 1.0 + r : r;
                const double wv = (i == j) ? 1.0 - s2 / (1.0 + n * s2) : -s2 / (1.0 + n * s2);
                CHECK(gu == doctest::Approx(wu).epsilon(1e-12));
                CHECK(gv == doctest::Approx(wv).epsilon(1e-12));
            }
        }
    }
    // contracted cone: primal Gram still (1+r, r)
    {
        const int n = 4;
        const double r = -0.2;
        const auto gens = make_generators(n, r);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) {
                const double gu = gpoly::mc::dot(gens.primal[i], gens.primal[j]);
                CHECK(gu == doctest::Approx(i == j ? 1.0 + r : r).epsilon(1e-12));
            }
    }
    // mutual polarity: every primal generator sits inside the polar's polar,
    // and the families are biorthogonal up to sign
    for (double r : {0.8, -0.15}) {
        const auto gens = make_generators(4, r);
        for (int i = 0; i < 4; ++i)
            for (int j = 0; j < 4; ++j) {
                const double ip = gpoly::mc::dot(gens.primal[i], gens.polar[j]);
                if (i != j)
                    CHECK(std::abs(ip) < 1e-12);
                else
                    CHECK(ip < 0.0);
            }
    }
}

TEST_CASE("cone membership basics") {
    const int n = 3;
    const auto gens = make_generators(n, 0.5);
    CHECK(cone_membership(gens.primal[0], gens));
    std::vector<double> sum(n + 1, 0.0), neg(n + 1, 0.0);
    for (const auto& u : gens.primal)
        for (int i = 0; i <= n; ++i) sum[i] += u[i];
    for (int i = 0; i <= n; ++i) neg[i] = -sum[i];
    CHECK(cone_membership(sum, gens));
    CHECK_FALSE(cone_membership(neg, gens));
    std::vector<double> combo(n + 1, 0.0);
    for (int i = 0; i <= n; ++i) combo[i] = gens.primal[0][i] + gens.primal[1][i];
    CHECK(cone_membership(combo, gens));

    std::vector<double> wrong(n, 1.0);
    CHECK_THROWS_AS(cone_membership(wrong, gens), gpoly::DimensionMismatch);
}

TEST_CASE("membership agrees with a nonnegative-combination feasibility solve") {
    using gpoly::mc::Matrix;
    for (double r : {0.5, 0.0, -0.15}) {
        const int n = 4;
        const auto gens = make_generators(n, r);
        Matrix a(n + 1, n);
        for (int j = 0; j < n; ++j)
            for (int i = 0; i <= n; ++i) a(i, j) = gens.primal[j][i];
        gpoly::mc::Rng rng = gpoly::mc::make_chunk_rng({123, 9}, 0);
        int checked = 0;
        for (int trial = 0; trial < 1000; ++trial) {
            std::vector<double> z(n + 1);
            for (double& c : z) c = rng.normal();
            // project into the hull so both sides see the same in-plane vector
            const double along = gpoly::mc::dot(z, gens.hull_normal);
            for (int i = 0; i <= n; ++i) z[i] -= along * gens.hull_normal[i];
            const auto res = gpoly::mc::nnls(a, z);
            double resid2 = 0.0;
            for (int i = 0; i <= n; ++i) {
                double fit = 0.0;
                for (int j = 0; j < n; ++j) fit += a(i, j) * res.x[j];
                resid2 += (fit - z[i]) * (fit - z[i]);
            }
            const double dist = std::sqrt(resid2);
            if (dist > 1e-7 || dist < 1e-12) { // skip the ambiguous boundary band
                CHECK(cone_membership(z, gens) == (dist < 1e-9));
                ++checked;
            }
        }
        CHECK(checked > 900);
    }
}
