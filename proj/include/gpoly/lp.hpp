#pragma once

#include <span>
#include <vector>

namespace gpoly::mc {

/// Is x a convex combination of the given points? Decided by a phase-1 simplex
/// on the standard-form feasibility system [points; 1] lambda = [x; 1],
/// lambda >= 0, with Bland's anti-cycling rule. Throws NumericalDegeneracy on
/// pivot breakdown or iteration-cap overrun.
bool hull_contains(std::span<const double> x, const std::vector<std::vector<double>>& points,
                   double tol = 1e-9);

} // namespace gpoly::mc
