#include "gpoly/cones.hpp"

#include <cmath>

#include "gpoly/orthant.hpp"
#include "gpoly/special_functions.hpp"

namespace gpoly::cones {

using namespace gpoly::num;

void EquicorrelatedCone::validate() const {
    if (n < 1) throw DomainError("cone: n must be >= 1");
    if (!std::isfinite(r) || !(r > -1.0 / n))
        throw DomainError("cone: r must be finite and > -1/n");
}

double polar_parameter(int n, double r) {
    if (n < 1) throw DomainError("polar_parameter: n must be >= 1");
    if (!(r > -1.0 / n)) throw DomainError("polar_parameter: r must be > -1/n");
    return -r / (1.0 + n * r);
}

QuadResult solid_angle(const EquicorrelatedCone& c, const QuadratureConfig& cfg) {
    c.validate();
    return orthant::g(c.n, polar_parameter(c.n, c.r), cfg);
}

std::vector<double> intrinsic_volumes(const EquicorrelatedCone& c, const QuadratureConfig& cfg) {
    c.validate();
    const int n = c.n;
    // product of two quadratures scaled by C(n,k): tighten so the b_k keep
    // roughly the caller's absolute accuracy
    double cmax = 1.0;
    for (int k = 0; k <= n; ++k) cmax = std::max(cmax, binomial(n, k));
    const QuadratureConfig sub = cfg.tightened(8.0 * cmax);

    std::vector<double> b(n + 1);
    for (int k = 0; k <= n; ++k) {
        const double lobe = c.r / (1.0 + k * c.r);
        b[k] = binomial(n, k) * orthant::g(k, -lobe, sub).value *
               orthant::g(n - k, lobe, sub).value;
    }
    return b;
}

double simplex_angle(int n, int k, AngleKind kind, const QuadratureConfig& cfg) {
    if (n < 2) throw DomainError("simplex_angle: n must be >= 2");
    if (k < 1 || k > n) throw DomainError("simplex_angle: k must be in [1,n]");
    const double arg = (kind == AngleKind::external) ? 1.0 / k : -1.0 / n;
    return orthant::g(n - k, arg, cfg).value;
}

namespace {

// u_i = e_i + sigma e_{n+1}
std::vector<std::vector<double>> primal_family(int n, double sigma) {
    std::vector<std::vector<double>> u(n, std::vector<double>(n + 1, 0.0));
    for (int i = 0; i < n; ++i) {
        u[i][i] = 1.0;
        u[i][n] = sigma;
    }
    return u;
}

// Generators of the polar cone C^o inside L(C). The biorthogonal family
// v_i = e_i - sigma^2/(1+n sigma^2) (e_1+..+e_n) + sigma/(1+n sigma^2) e_{n+1}
// satisfies <u_i, v_j> = delta_ij, so the polar cone is spanned by -v_i
// (same Gram matrix either way).
std::vector<std::vector<double>> polar_family(int n, double sigma) {
    const double denom = 1.0 + n * sigma * sigma;
    const double a = sigma * sigma / denom;
    std::vector<std::vector<double>> v(n, std::vector<double>(n + 1, a));
    for (int i = 0; i < n; ++i) {
        v[i][i] -= 1.0;
        v[i][n] = -sigma / denom;
    }
    return v;
}

} // namespace

ConeGenerators make_generators(int n, double r) {
    EquicorrelatedCone{n, r}.validate();
    ConeGenerators gens;
    gens.n = n;
    // the explicit coordinates assume sigma^2 >= 0; a contracted cone is the
    // polar family of its extended polar partner
    const double sigma = (r >= 0.0) ? std::sqrt(r) : std::sqrt(polar_parameter(n, r));
    if (r >= 0.0) {
        gens.primal = primal_family(n, sigma);
        gens.polar = polar_family(n, sigma);
    } else {
        gens.primal = polar_family(n, sigma);
        gens.polar = primal_family(n, sigma);
    }
    gens.hull_normal.assign(n + 1, 0.0);
    const double nrm = std::sqrt(1.0 + n * sigma * sigma);
    for (int i = 0; i < n; ++i) gens.hull_normal[i] = -sigma / nrm;
    gens.hull_normal[n] = 1.0 / nrm;
    return gens;
}

bool cone_membership(std::span<const double> x, const ConeGenerators& gens, double tol) {
    if (static_cast<int>(x.size()) != gens.n + 1)
        throw DimensionMismatch("cone_membership: x must have dimension n+1");
    double along = 0.0;
    for (size_t i = 0; i < x.size(); ++i) along += x[i] * gens.hull_normal[i];
    if (std::abs(along) > tol) return false;
    for (const auto& v : gens.polar) {
        double dot = 0.0;
        for (size_t i = 0; i < x.size(); ++i) dot += x[i] * v[i];
        if (dot > tol) return false;
    }
    return true;
}

} // namespace gpoly::cones
