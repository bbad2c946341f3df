#include "gpoly/rng.hpp"

#include <cmath>

#include "gpoly/errors.hpp"

namespace gpoly::mc {

double Rng::normal() {
    if (have_cached_) {
        have_cached_ = false;
        return cached_;
    }
    const double u1 = uniform01();
    const double u2 = uniform01();
    const double radius = std::sqrt(-2.0 * std::log(u1));
    const double angle = 6.283185307179586 * u2;
    cached_ = radius * std::sin(angle);
    have_cached_ = true;
    return radius * std::cos(angle);
}

double Rng::chi(int df) {
    if (df < 1) throw DomainError("chi: degrees of freedom must be >= 1");
    double s = 0.0;
    for (int i = 0; i < df; ++i) {
        const double z = normal();
        s += z * z;
    }
    return std::sqrt(s);
}

} // namespace gpoly::mc
