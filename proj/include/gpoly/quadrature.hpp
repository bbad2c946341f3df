#pragma once

#include <functional>
#include <vector>

#include "gpoly/errors.hpp"

namespace gpoly::num {

struct QuadratureConfig {
    double abs_tol = 1e-10;
    double rel_tol = 1e-10;
    int max_subdivisions = 2000;
    double tail_cut = 1.0; // multiplies the computed half-line truncation point

    void validate() const;
    /// Same budget, tolerances divided by `factor` (floored at 5e-15 absolute).
    QuadratureConfig tightened(double factor) const;
};

struct QuadResult {
    double value = 0.0;
    double error = 0.0; // conservative estimate, >= |value - truth| in practice
    int panels = 0;

    operator double() const { return value; }
};

/// Adaptive Gauss-Kronrod (7,15) bisection on [a,b].
/// Panel error = |K15 - G7|; the worst panel is split until the summed
/// estimate meets max(abs_tol, rel_tol*|value|). Deterministic: final value
/// is a compensated sum over panels ordered by position.
QuadResult integrate_adaptive(const std::function<double(double)>& f, double a, double b,
                              const QuadratureConfig& cfg = {});

/// As above but seeded with caller-chosen breakpoints (all in [a,b]).
QuadResult integrate_adaptive(const std::function<double(double)>& f, double a, double b,
                              const QuadratureConfig& cfg, const std::vector<double>& breakpoints);

/// Tail-bound description for integrate_halfline.
/// gaussian:   |f(x)| <= constant * exp(-(x/scale)^2 / 2)
/// polynomial: |f(x)| <= constant * x^(-p) for x >= valid_from, p > 1
struct HalfLineDecay {
    enum class Kind { gaussian, polynomial };
    Kind kind = Kind::gaussian;
    double p = 0.0;
    double constant = 1.0;
    double scale = 1.0;
    double valid_from = 0.0;

    static HalfLineDecay gaussian(double constant = 1.0, double scale = 1.0) {
        return {Kind::gaussian, 0.0, constant, scale, 0.0};
    }
    static HalfLineDecay polynomial(double p, double constant = 1.0, double valid_from = 0.0) {
        return {Kind::polynomial, p, constant, 1.0, valid_from};
    }
};

/// Integral of f over (0, inf). The truncation point T is chosen so the
/// declared analytic tail bound is below abs_tol/2; [0,T] goes to
/// integrate_adaptive seeded with geometric breakpoints. Throws InvalidDecay
/// for polynomial order p <= 1.
QuadResult integrate_halfline(const std::function<double(double)>& f, const HalfLineDecay& decay,
                              const QuadratureConfig& cfg = {});

/// Truncation point used by integrate_halfline for the given decay and config.
double halfline_truncation(const HalfLineDecay& decay, const QuadratureConfig& cfg);

} // namespace gpoly::num
