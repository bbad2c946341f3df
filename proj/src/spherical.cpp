#include "gpoly/spherical.hpp"

#include <cmath>

#include "gpoly/orthant.hpp"
#include "gpoly/special_functions.hpp"

namespace gpoly::spherical {

using namespace gpoly::num;

void SphericalSimplexQuery::validate() const {
    if (n < 2) throw DomainError("spherical simplex: n must be >= 2");
    if (!(ell > 0.0) || !(ell <= kPi))
        throw DomainError("spherical simplex: ell must be in (0, pi]");
    // upper endpoint check done on cosines; robust where acos would round
    if (!(std::cos(ell) > -1.0 / (n - 1)))
        throw DomainError("spherical simplex: ell must be below arccos(-1/(n-1))");
}

QuadResult volume_fraction(const SphericalSimplexQuery& q, const QuadratureConfig& cfg) {
    q.validate();
    const double c = std::cos(q.ell);
    return orthant::g(q.n, -c / (1.0 + (q.n - 1) * c), cfg);
}

double absolute_volume(const SphericalSimplexQuery& q, const QuadratureConfig& cfg) {
    const double log_sphere =
        std::log(2.0) + 0.5 * q.n * std::log(kPi) - std::lgamma(0.5 * q.n);
    return volume_fraction(q, cfg).value * std::exp(log_sphere);
}

double side_length_to_r(double ell) {
    if (!(ell > 0.0) || !(ell < kPi)) throw DomainError("side_length_to_r: ell must be in (0, pi)");
    const double c = std::cos(ell);
    return c / (1.0 - c);
}

double r_to_side_length(double r) {
    if (!(r > -0.5)) throw DomainError("r_to_side_length: r must be > -1/2");
    return std::acos(r / (1.0 + r));
}

} // namespace gpoly::spherical
