#include <doctest.h>

#include <cmath>
#include <cstring>

#include "gpoly/absorption.hpp"
#include "gpoly/cones.hpp"
#include "gpoly/lp.hpp"
#include "gpoly/montecarlo.hpp"
#include "gpoly/nnls.hpp"
#include "gpoly/polytope_stats.hpp"
#include "gpoly/special_functions.hpp"
#include "gpoly/spherical.hpp"

using namespace gpoly::mc;
using gpoly::num::kPi;

namespace {

bool covers(const Estimate& e, double truth) { return e.ci_lo <= truth && truth <= e.ci_hi; }

bool same_bits(const Estimate& a, const Estimate& b) {
    return std::memcmp(&a.mean, &b.mean, sizeof(double)) == 0 &&
           std::memcmp(&a.std_error, &b.std_error, sizeof(double)) == 0 &&
           std::memcmp(&a.ci_lo, &b.ci_lo, sizeof(double)) == 0 &&
           std::memcmp(&a.ci_hi, &b.ci_hi, sizeof(double)) == 0 && a.n_samples == b.n_samples;
}

} // namespace

TEST_CASE("rng moments and reproducibility") {
    Rng rng = make_chunk_rng({42, 0}, 0);
    const int n = 1000000;
    double sum = 0.0, sum_sq = 0.0;
    for (int i = 0; i < n; ++i) {
        const double z = rng.normal();
        sum += z;
        sum_sq += z * z;
    }
    const double mean = sum / n;
    const double var = sum_sq / n - mean * mean;
    CHECK(std::abs(mean) < 4.0 / std::sqrt(static_cast<double>(n)));
    CHECK(std::abs(var - 1.0) < 0.01);

    Rng a = make_chunk_rng({7, 3}, 11);
    Rng b = make_chunk_rng({7, 3}, 11);
    for (int i = 0; i < 100; ++i) CHECK(a.next_u64() == b.next_u64());
    Rng c = make_chunk_rng({7, 3}, 12);
    CHECK(c.next_u64() != make_chunk_rng({7, 3}, 11).next_u64());
}

TEST_CASE("chi variates have the right mean") {
    Rng rng = make_chunk_rng({42, 1}, 0);
    const int n = 100000;
    double sum = 0.0;
    for (int i = 0; i < n; ++i) sum += rng.chi(3);
    const double want = std::sqrt(2.0) * std::tgamma(2.0) / std::tgamma(1.5);
    CHECK(sum / n == doctest::Approx(want).epsilon(0.01));
}

TEST_CASE("hull membership basics") {
    Rng rng = make_chunk_rng({5, 0}, 0);
    const auto pts = sample_gaussian_points(6, 3, rng);
    CHECK(hull_contains(pts[0], pts));
    std::vector<double> far(3, 0.0);
    double maxnorm = 0.0;
    for (const auto& p : pts) maxnorm = std::max(maxnorm, gpoly::mc::norm2(p));
    far[0] = 2.0 * maxnorm;
    CHECK_FALSE(hull_contains(far, pts));
    std::vector<double> centroid(3, 0.0);
    for (const auto& p : pts)
        for (int i = 0; i < 3; ++i) centroid[i] += p[i] / pts.size();
    CHECK(hull_contains(centroid, pts));
}

TEST_CASE("hull membership agrees with barycentric solve on random simplices") {
    Rng rng = make_chunk_rng({19, 0}, 0);
    const int d = 3;
    int checked = 0;
    for (int trial = 0; trial < 10000; ++trial) {
        const auto pts = sample_gaussian_points(d + 1, d, rng);
        std::vector<double> x(d);
        for (double& c : x) c = 0.8 * rng.normal();
        // barycentric coordinates from the affine system
        Matrix m(d + 1, d + 1);
        std::vector<double> rhs(d + 1);
        for (int j = 0; j <= d; ++j) {
            for (int i = 0; i < d; ++i) m(i, j) = pts[j][i];
            m(d, j) = 1.0;
        }
        for (int i = 0; i < d; ++i) rhs[i] = x[i];
        rhs[d] = 1.0;
        // gaussian elimination
        bool singular = false;
        for (int k = 0; k <= d && !singular; ++k) {
            int piv = k;
            for (int i = k + 1; i <= d; ++i)
                if (std::abs(m(i, k)) > std::abs(m(piv, k))) piv = i;
            if (std::abs(m(piv, k)) < 1e-12) {
                singular = true;
                break;
            }
            if (piv != k) {
                for (int j = 0; j <= d; ++j) std::swap(m(piv, j), m(k, j));
                std::swap(rhs[piv], rhs[k]);
            }
            for (int i = k + 1; i <= d; ++i) {
                const double f = m(i, k) / m(k, k);
                for (int j = k; j <= d; ++j) m(i, j) -= f * m(k, j);
                rhs[i] -= f * rhs[k];
            }
        }
        if (singular) continue;
        std::vector<double> lambda(d + 1);
        for (int i = d; i >= 0; --i) {
            double s = rhs[i];
            for (int j = i + 1; j <= d; ++j) s -= m(i, j) * lambda[j];
            lambda[i] = s / m(i, i);
        }
        double lmin = 1e300;
        for (double l : lambda) lmin = std::min(lmin, l);
        if (std::abs(lmin) < 1e-7) continue; // boundary band
        CHECK(hull_contains(x, pts) == (lmin > 0.0));
        ++checked;
    }
    CHECK(checked > 9000);
}

TEST_CASE("planar hull area") {
    std::vector<std::vector<double>> square{{0, 0}, {1, 0}, {1, 1}, {0, 1}, {0.5, 0.5}};
    CHECK(detail::hull_area_2d(square) == doctest::Approx(1.0).epsilon(1e-14));
    std::vector<std::vector<double>> tri{{0, 0}, {2, 0}, {0, 1}};
    CHECK(detail::hull_area_2d(tri) == doctest::Approx(1.0).epsilon(1e-14));
    std::vector<std::vector<double>> degenerate{{0, 0}, {1, 1}};
    CHECK(detail::hull_area_2d(degenerate) == 0.0);
}

TEST_CASE("nnls against support enumeration") {
    Rng rng = make_chunk_rng({77, 0}, 0);
    for (int trial = 0; trial < 200; ++trial) {
        const int m = 4, n = 3;
        Matrix a(m, n);
        for (int i = 0; i < m; ++i)
            for (int j = 0; j < n; ++j) a(i, j) = rng.normal();
        std::vector<double> b(m);
        for (double& v : b) v = rng.normal();

        const auto res = nnls(a, b);
        // brute force: best feasible least squares over all supports
        double best = 1e300;
        for (int mask = 0; mask < (1 << n); ++mask) {
            std::vector<int> sup;
            for (int j = 0; j < n; ++j)
                if (mask & (1 << j)) sup.push_back(j);
            std::vector<double> x(n, 0.0);
            if (!sup.empty()) {
                const int p = static_cast<int>(sup.size());
                Matrix gram(p, p);
                std::vector<double> rhs(p);
                for (int i = 0; i < p; ++i) {
                    for (int j = 0; j < p; ++j)
                        for (int r = 0; r < m; ++r) gram(i, j) += a(r, sup[i]) * a(r, sup[j]);
                    for (int r = 0; r < m; ++r) rhs[i] += a(r, sup[i]) * b[r];
                }
                // tiny gaussian elimination
                bool bad = false;
                for (int k = 0; k < p && !bad; ++k) {
                    int piv = k;
                    for (int i = k + 1; i < p; ++i)
                        if (std::abs(gram(i, k)) > std::abs(gram(piv, k))) piv = i;
                    if (std::abs(gram(piv, k)) < 1e-12) {
                        bad = true;
                        break;
                    }
                    if (piv != k) {
                        for (int j = 0; j < p; ++j) std::swap(gram(piv, j), gram(k, j));
                        std::swap(rhs[piv], rhs[k]);
                    }
                    for (int i = k + 1; i < p; ++i) {
                        const double f = gram(i, k) / gram(k, k);
                        for (int j = k; j < p; ++j) gram(i, j) -= f * gram(k, j);
                        rhs[i] -= f * rhs[k];
                    }
                }
                if (bad) continue;
                std::vector<double> z(p);
                bool feasible = true;
                for (int i = p - 1; i >= 0; --i) {
                    double s = rhs[i];
                    for (int j = i + 1; j < p; ++j) s -= gram(i, j) * z[j];
                    z[i] = s / gram(i, i);
                    if (z[i] < 0.0) feasible = false;
                }
                if (!feasible) continue;
                for (int i = 0; i < p; ++i) x[sup[i]] = z[i];
            }
            double r2 = 0.0;
            for (int r = 0; r < m; ++r) {
                double fit = 0.0;
                for (int j = 0; j < n; ++j) fit += a(r, j) * x[j];
                r2 += (fit - b[r]) * (fit - b[r]);
            }
            best = std::min(best, r2);
        }
        double got = 0.0;
        for (int r = 0; r < m; ++r) {
            double fit = 0.0;
            for (int j = 0; j < n; ++j) fit += a(r, j) * res.x[j];
            got += (fit - b[r]) * (fit - b[r]);
        }
        CHECK(got == doctest::Approx(best).epsilon(1e-8));
        for (double v : res.x) CHECK(v >= 0.0);
    }
}

TEST_CASE("absorption estimator is deterministic and thread-invariant") {
    const RngSpec spec{2024, 0};
    const auto a = estimate_absorption(5, 2, AbsorptionMode::scaled_gaussian, 0.0, 20000, spec);
    const auto b = estimate_absorption(5, 2, AbsorptionMode::scaled_gaussian, 0.0, 20000, spec);
    CHECK(same_bits(a, b));
    set_thread_count(1);
    const auto serial = estimate_absorption(5, 2, AbsorptionMode::scaled_gaussian, 0.0, 20000, spec);
    set_thread_count(4);
    const auto parallel =
        estimate_absorption(5, 2, AbsorptionMode::scaled_gaussian, 0.0, 20000, spec);
    set_thread_count(0);
    CHECK(same_bits(serial, parallel));
}

TEST_CASE("absorption estimator covers wendel at sigma = 0") {
    const auto e =
        estimate_absorption(5, 2, AbsorptionMode::scaled_gaussian, 0.0, 100000, {11, 0});
    CHECK(covers(e, gpoly::absorption::wendel(5, 2)));
    CHECK(e.std_error > 0.0);
    CHECK(e.std_error < 0.01);
}

TEST_CASE("fixed-point absorption estimator covers the closed d = 2 value") {
    const double truth = gpoly::absorption::f_d2_closed(6, 1.0).value;
    const auto e = estimate_absorption(6, 2, AbsorptionMode::fixed_point, std::sqrt(2.0),
                                       100000, {14, 0});
    CHECK(covers(e, truth));
}

TEST_CASE("face estimator: simplex exactness and analytic coverage") {
    for (int d : {2, 3}) {
        const auto est = estimate_faces(d + 1, d, 200, {3, 0});
        for (int k = 0; k < d; ++k) {
            CHECK(est[k].mean == doctest::Approx(gpoly::num::binomial(d + 1, k + 1)));
            CHECK(est[k].std_error == 0.0);
        }
    }
    const auto est = estimate_faces(6, 2, 20000, {5, 0});
    const double truth = gpoly::stats::expected_faces({6, 2, 0, 0.0}).value;
    CHECK(covers(est[0], truth));
    CHECK(covers(est[1], truth));
}

TEST_CASE("volume estimator: triangle value and degenerate case") {
    const auto tri = estimate_volume(3, 2, 200000, {8, 0});
    CHECK(covers(tri, std::sqrt(3.0) / 2.0));
    const auto degen = estimate_volume(2, 2, 500, {8, 1});
    CHECK(degen.mean == 0.0);
    // d = 3 hit-or-miss against the tetrahedron expectation
    const auto tet = estimate_volume(4, 3, 20000, {8, 2});
    CHECK(covers(tet, gpoly::stats::expected_volume(4, 3).value));
}

TEST_CASE("haar orthogonal matrices") {
    Rng rng = make_chunk_rng({31, 0}, 0);
    for (int n : {3, 6}) {
        const Matrix q = haar_orthogonal(n, rng);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) {
                double s = 0.0;
                for (int k = 0; k < n; ++k) s += q(k, i) * q(k, j);
                CHECK(std::abs(s - (i == j ? 1.0 : 0.0)) < 1e-12);
            }
        CHECK(abs_determinant(q) == doctest::Approx(1.0).epsilon(1e-10));
    }
    // first column behaves like a uniform direction: coordinate means ~ 0
    const int reps = 10000, n = 4;
    double mean0 = 0.0, mean_abs_first = 0.0, mean_abs_second = 0.0;
    for (int t = 0; t < reps; ++t) {
        const Matrix q = haar_orthogonal(n, rng);
        mean0 += q(0, 0);
        // row swap invariance statistic: |q_00| vs |q_10|
        mean_abs_first += std::abs(q(0, 0));
        mean_abs_second += std::abs(q(1, 0));
    }
    CHECK(std::abs(mean0 / reps) < 4.0 / std::sqrt(reps * 1.0 / n));
    // identical distribution under a fixed permutation: z-test on E|entry|
    const double diff = (mean_abs_first - mean_abs_second) / reps;
    CHECK(std::abs(diff) < 0.02);
}

TEST_CASE("goodman-pollack sample geometry") {
    const int n = 6;
    const Matrix v = regular_simplex_vertices(n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            double s = 0.0;
            for (int k = 0; k < n - 1; ++k) s += v(k, i) * v(k, j);
            CHECK(std::abs(s - (i == j ? 1.0 : -1.0 / (n - 1))) < 1e-10);
        }

    Rng rng = make_chunk_rng({12, 0}, 0);
    const auto sample = goodman_pollack_sample(n, 2, rng);
    REQUIRE(sample.projected_vertices.size() == n);
    std::vector<double> centroid(2, 0.0);
    for (const auto& p : sample.projected_vertices) {
        CHECK(gpoly::mc::norm2(p) <= 1.0 + 1e-12);
        for (int i = 0; i < 2; ++i) centroid[i] += p[i] / n;
    }
    CHECK(gpoly::mc::norm2(centroid) < 1e-12); // simplex centroid is the origin

    // d = n-1: every projected vertex is extreme, almost surely
    for (int t = 0; t < 50; ++t) {
        const auto s = goodman_pollack_sample(4, 3, rng);
        std::vector<std::vector<double>> others(3);
        for (int i = 0; i < 4; ++i) {
            for (int j = 0, w = 0; j < 4; ++j)
                if (j != i) others[w++] = s.projected_vertices[j];
            CHECK_FALSE(hull_contains(s.projected_vertices[i], others));
        }
    }
}

TEST_CASE("goodman-pollack transform estimator") {
    // d = 1 collapses to an exact coin flip: covers wendel(2,1)/2 = 1/4
    const auto tiny = estimate_gp_transform(2, 1, 0.0, 40000, {21, 0});
    CHECK(covers(tiny, 0.25));

    // sigma = 0 covers wendel(n,d)/2
    const auto e0 = estimate_gp_transform(5, 2, 0.0, 40000, {22, 0});
    CHECK(covers(e0, 0.5 * gpoly::absorption::wendel(5, 2)));

    // sigma = 1 covers the one-sided intrinsic-volume sum
    const double truth = 0.5 * gpoly::absorption::detail::p_sum(6, 2, 1.0, {}).value;
    const auto e1 = estimate_gp_transform(6, 2, 1.0, 60000, {23, 0});
    CHECK(covers(e1, truth));

    // the rotated unit-vector simplex variant targets the same sum
    const auto e2 = estimate_gp_transform(6, 2, 1.0, 60000, {24, 0}, GpVariant::unit_vectors);
    CHECK(covers(e2, truth));
}

TEST_CASE("solid angle estimator") {
    const auto orthant = estimate_solid_angle(3, 0.0, 100000, {31, 0});
    CHECK(covers(orthant, 0.125));
    const auto wedge = estimate_solid_angle(2, 1.0, 100000, {32, 0});
    CHECK(covers(wedge, 1.0 / 6.0));
    const auto generic = estimate_solid_angle(4, 0.5, 100000, {33, 0});
    CHECK(covers(generic, gpoly::cones::solid_angle({4, 0.5}).value));
}

TEST_CASE("intrinsic volume estimator") {
    const auto est = estimate_intrinsic_volumes(2, 0.0, 100000, {41, 0});
    REQUIRE(est.size() == 3);
    CHECK(covers(est[0], 0.25));
    CHECK(covers(est[1], 0.5));
    CHECK(covers(est[2], 0.25));

    const auto analytic = gpoly::cones::intrinsic_volumes({4, 1.0});
    const auto est4 = estimate_intrinsic_volumes(4, 1.0, 100000, {42, 0});
    double even = 0.0, odd = 0.0;
    for (int k = 0; k <= 4; ++k) {
        CHECK(covers(est4[k], analytic[k]));
        (k % 2 == 0 ? even : odd) += est4[k].mean;
    }
    CHECK(even == doctest::Approx(0.5).epsilon(0.02));
    CHECK(odd == doctest::Approx(0.5).epsilon(0.02));
}

TEST_CASE("sphere sampling fraction via the cone over the simplex") {
    const double ell = kPi / 3.0;
    const double truth = gpoly::spherical::volume_fraction({3, ell}).value;
    const auto est =
        estimate_solid_angle(3, gpoly::spherical::side_length_to_r(ell), 200000, {51, 0});
    CHECK(std::abs(est.mean - truth) <= 3.0 * est.std_error);
}

TEST_CASE("slow: wilson coverage meta-test") {
    // 100 independent seeds, 99% intervals: expect at least 95 to cover
    const double truth = gpoly::absorption::wendel(4, 2);
    int covered = 0;
    for (int rep = 0; rep < 100; ++rep) {
        const auto e = estimate_absorption(4, 2, AbsorptionMode::scaled_gaussian, 0.0, 10000,
                                           {static_cast<std::uint64_t>(rep), 77});
        if (covers(e, truth)) ++covered;
    }
    CHECK(covered >= 95);
}
