#pragma once

#include <span>
#include <vector>

#include "gpoly/quadrature.hpp"

namespace gpoly::cones {

using num::QuadratureConfig;
using num::QuadResult;

/// The cone C_n(r) spanned by n vectors with <u_i,u_i> = 1+r, <u_i,u_j> = r.
/// r = 0 is the positive orthant; r -> inf a ray; r -> -1/n a half-space
/// (the limit itself is excluded).
struct EquicorrelatedCone {
    int n = 1;
    double r = 0.0;
    void validate() const;
};

/// The polar involution r -> -r/(1 + n r). Applying it twice returns r.
double polar_parameter(int n, double r);

/// Solid angle alpha(C_n(r)) = g_n(-r/(1+nr)), measured inside the linear hull.
QuadResult solid_angle(const EquicorrelatedCone& c, const QuadratureConfig& cfg = {});

/// Conic intrinsic volumes b_{n,k}(r) = C(n,k) g_k(-r/(1+kr)) g_{n-k}(r/(1+kr)),
/// k = 0..n. Entries sum to 1; even- and odd-index sums are each 1/2.
std::vector<double> intrinsic_volumes(const EquicorrelatedCone& c,
                                      const QuadratureConfig& cfg = {});

enum class AngleKind { internal, external };

/// Solid angles of the regular simplex Delta_n = conv(e_1..e_n) at a
/// (k-1)-dimensional face: external (normal cone) = g_{n-k}(1/k),
/// internal (tangent cone) = g_{n-k}(-1/n). k = n gives g_0 = 1.
double simplex_angle(int n, int k, AngleKind kind, const QuadratureConfig& cfg = {});

/// Explicit generators in R^(n+1). For r = sigma^2 >= 0 the primal family is
/// u_i = e_i + sigma e_{n+1} and the polar family is
/// v_i = e_i - sigma^2/(1+n sigma^2) (e_1+..+e_n) + sigma/(1+n sigma^2) e_{n+1}.
/// For r < 0 the roles are obtained through the polar involution. Both families
/// span the same hyperplane L(C); hull_normal is its unit normal.
struct ConeGenerators {
    int n = 0;
    std::vector<std::vector<double>> primal;
    std::vector<std::vector<double>> polar;
    std::vector<double> hull_normal;
};

ConeGenerators make_generators(int n, double r);

/// x in C iff x lies in L(C) and <x, v_i> <= tol for every polar generator.
bool cone_membership(std::span<const double> x, const ConeGenerators& gens, double tol = 1e-9);

} // namespace gpoly::cones
