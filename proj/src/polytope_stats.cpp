#include "gpoly/polytope_stats.hpp"

#include <cmath>

#include "gpoly/absorption.hpp"
#include "gpoly/orthant.hpp"
#include "gpoly/special_functions.hpp"

namespace gpoly::stats {

using namespace gpoly::num;

void FaceQuery::validate() const {
    if (d < 1) throw DomainError("faces: d must be >= 1");
    if (n < d + 1) throw DomainError("faces: n must be >= d+1");
    if (k < 0 || k > d - 1) throw DomainError("faces: k must be in [0, d-1]");
    if (!(b >= 0.0)) throw DomainError("faces: b must be >= 0");
}

PairResult expected_faces(const FaceQuery& q, const QuadratureConfig& cfg) {
    q.validate();
    const QuadratureConfig sub = cfg.tightened(16.0);

    double primary = 0.0;
    for (int j = q.d; j > q.k; j -= 2) {
        const double log_coeff = std::log(2.0) + log_factorial(q.n) - log_factorial(q.k + 1) -
                                 log_factorial(j - 1 - q.k) - log_factorial(q.n - j);
        primary += std::exp(log_coeff) * orthant::g(j - 1 - q.k, -1.0 / j, sub).value *
                   orthant::g(q.n - j, 1.0 / j, sub).value;
    }

    const double alt = std::exp(log_binomial(q.n, q.k + 1)) *
                       absorption::detail::p_sum(q.n - q.k - 1, q.d - q.k,
                                                 1.0 / (q.k + 1.0), cfg).value;
    PairResult out{primary, alt, 0.0};
    out.rel_diff = std::abs(primary - alt) / std::max(std::abs(primary), 1e-300);
    return out;
}

double expected_face_functional(const FaceQuery& q, const QuadratureConfig& cfg) {
    q.validate();
    const double faces = expected_faces(q, cfg).value;
    if (q.b == 0.0 || q.k == 0) return faces; // unit prefactor, empty product
    double log_moment = q.b * (0.5 * std::log(q.k + 1.0) + 0.5 * q.k * std::log(2.0) -
                               log_factorial(q.k));
    for (int j = 1; j <= q.k; ++j)
        log_moment += std::lgamma(0.5 * (q.d + q.b + 1 - j)) - std::lgamma(0.5 * (q.d + 1 - j));
    return faces * std::exp(log_moment);
}

PairResult expected_volume(int n, int d, const QuadratureConfig& cfg) {
    if (d < 1) throw DomainError("expected_volume: d must be >= 1");
    if (n < d + 1) throw DomainError("expected_volume: n must be >= d+1");
    const QuadratureConfig sub = cfg.tightened(16.0);

    const double log_front = log_binomial(n, d + 1) + 0.5 * std::log(d + 1.0) -
                             0.5 * d * std::log(2.0) - std::lgamma(0.5 * d + 1.0);
    const double primary =
        std::exp(log_front) * orthant::g(n - d - 1, 1.0 / (d + 1.0), sub).value;

    // Moment-integral route, the Phi power in log domain and the phi^(d+1)
    // weight folded onto the half-line.
    const int m = n - d - 1;
    auto integrand = [m, d](double t) {
        const double up = (m == 0) ? 1.0 : std::exp(m * log_std_normal_cdf(t));
        const double dn = (m == 0) ? 1.0 : std::exp(m * log_std_normal_cdf(-t));
        return (up + dn) * std::exp(-0.5 * (d + 1.0) * t * t);
    };
    const double integral =
        integrate_halfline(integrand,
                           HalfLineDecay::gaussian(2.0, 1.0 / std::sqrt(d + 1.0)), sub).value *
        std::pow(2.0 * kPi, -0.5 * (d + 1.0));
    const double log_eff = 0.5 * d * std::log(kPi) - std::lgamma(0.5 * d + 1.0) +
                           log_factorial(n) - log_factorial(d) - log_factorial(n - d - 1);
    const double alt = std::exp(log_eff) * integral;

    PairResult out{primary, alt, 0.0};
    out.rel_diff = std::abs(primary - alt) / std::max(std::abs(primary), 1e-300);
    return out;
}

double expected_faces_asymptotic(int n, int d, int k, const QuadratureConfig& cfg) {
    if (n < 3) throw DomainError("expected_faces_asymptotic: n must be >= 3");
    if (d < 1 || k < 0 || k > d - 1)
        throw DomainError("expected_faces_asymptotic: need 0 <= k <= d-1");
    return 2.0 / std::sqrt(static_cast<double>(d)) * binomial(d, k + 1) *
           orthant::g(d - 1 - k, -1.0 / d, cfg).value *
           std::pow(4.0 * kPi * std::log(static_cast<double>(n)), 0.5 * (d - 1.0));
}

double expected_volume_asymptotic(int n, int d) {
    if (n < 3) throw DomainError("expected_volume_asymptotic: n must be >= 3");
    if (d < 1) throw DomainError("expected_volume_asymptotic: d must be >= 1");
    return std::exp(0.5 * d * std::log(kPi) - std::lgamma(0.5 * d + 1.0) +
                    0.5 * d * std::log(2.0 * std::log(static_cast<double>(n))));
}

double p_asymptotic(int n, int d, double sigma2, const QuadratureConfig& cfg) {
    if (!(sigma2 > 0.0)) throw DomainError("p_asymptotic: sigma2 must be positive");
    if (n < 3 || d < 1) throw DomainError("p_asymptotic: need n >= 3, d >= 1");
    const double r = sigma2 / (1.0 + (d - 1.0) * sigma2);
    const double ln_n = std::log(static_cast<double>(n));
    const double log_val = std::log(2.0) - ln_n / sigma2 - log_factorial(d - 1) +
                           std::lgamma(1.0 / r) - 0.5 * std::log(r) +
                           (0.5 / r - 0.5) * std::log(4.0 * kPi * ln_n);
    return std::exp(log_val) * orthant::g(d - 1, -r, cfg).value;
}

} // namespace gpoly::stats
