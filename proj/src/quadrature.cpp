#include "gpoly/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <set>

namespace gpoly::num {

void QuadratureConfig::validate() const {
    if (!(abs_tol >= 0.0) || !(rel_tol >= 0.0))
        throw DomainError("quadrature tolerances must be nonnegative");
    if (abs_tol <= 0.0 && rel_tol <= 0.0)
        throw DomainError("at least one of abs_tol, rel_tol must be positive");
    if (max_subdivisions < 1)
        throw DomainError("max_subdivisions must be >= 1");
    if (!(tail_cut > 0.0))
        throw DomainError("tail_cut must be positive");
}

QuadratureConfig QuadratureConfig::tightened(double factor) const {
    QuadratureConfig out = *this;
    out.abs_tol = std::max(abs_tol / factor, 5e-15);
    out.rel_tol = std::max(rel_tol / factor, 1e-14);
    return out;
}

namespace {

// Gauss 7 / Kronrod 15 pair on [-1,1] (QUADPACK dqk15 constants).
constexpr double kXgk[8] = {
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144838258730,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.000000000000000000000000000000000};
constexpr double kWgk[8] = {
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714};
constexpr double kWg[4] = {
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327};

struct Panel {
    double a, b;
    double value;
    double error;
};

Panel evaluate_panel(const std::function<double(double)>& f, double a, double b) {
    const double center = 0.5 * (a + b);
    const double half = 0.5 * (b - a);

    const double fc = f(center);
    double kronrod = kWgk[7] * fc;
    double gauss = kWg[3] * fc;
    for (int j = 0; j < 7; ++j) {
        const double dx = half * kXgk[j];
        const double fsum = f(center - dx) + f(center + dx);
        kronrod += kWgk[j] * fsum;
        if (j % 2 == 1) gauss += kWg[j / 2] * fsum;
    }
    kronrod *= half;
    gauss *= half;
    if (!std::isfinite(kronrod))
        throw DomainError("integrate_adaptive: integrand not finite on a panel");
    return {a, b, kronrod, std::abs(kronrod - gauss)};
}

double compensated_total(const std::vector<Panel>& panels, double& error_out) {
    std::vector<const Panel*> order;
    order.reserve(panels.size());
    for (const Panel& p : panels) order.push_back(&p);
    std::sort(order.begin(), order.end(),
              [](const Panel* x, const Panel* y) { return x->a < y->a; });
    double sum = 0.0, comp = 0.0, err = 0.0;
    for (const Panel* p : order) {
        double y = p->value - comp;
        double t = sum + y;
        comp = (t - sum) - y;
        sum = t;
        err += p->error;
    }
    error_out = err;
    return sum;
}

} // namespace

QuadResult integrate_adaptive(const std::function<double(double)>& f, double a, double b,
                              const QuadratureConfig& cfg, const std::vector<double>& breakpoints) {
    cfg.validate();
    if (!(a < b) || !std::isfinite(a) || !std::isfinite(b))
        throw DomainError("integrate_adaptive requires finite a < b");

    std::vector<double> cuts{a, b};
    for (double c : breakpoints)
        if (c > a && c < b) cuts.push_back(c);
    std::sort(cuts.begin(), cuts.end());
    cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());

    std::vector<Panel> panels;
    panels.reserve(static_cast<size_t>(cfg.max_subdivisions) + cuts.size());
    for (size_t i = 0; i + 1 < cuts.size(); ++i)
        panels.push_back(evaluate_panel(f, cuts[i], cuts[i + 1]));

    // index of worst panel, ties broken by position for determinism
    auto worst = [&panels]() {
        size_t w = 0;
        for (size_t i = 1; i < panels.size(); ++i) {
            if (panels[i].error > panels[w].error ||
                (panels[i].error == panels[w].error && panels[i].a < panels[w].a))
                w = i;
        }
        return w;
    };

    double total_err = 0.0;
    double total = compensated_total(panels, total_err);
    int splits = 0;
    while (total_err > std::max(cfg.abs_tol, cfg.rel_tol * std::abs(total))) {
        if (splits >= cfg.max_subdivisions)
            throw NonConvergence("integrate_adaptive: subdivision budget exhausted", total,
                                 total_err);
        const size_t w = worst();
        const Panel p = panels[w];
        const double mid = 0.5 * (p.a + p.b);
        // below roundoff width further splitting cannot help; accept the panel
        if (!(mid > p.a && mid < p.b) || (p.b - p.a) < 1e-14 * (std::abs(p.a) + std::abs(p.b) + 1.0)) {
            bool any = false;
            for (size_t i = 0; i < panels.size(); ++i) {
                if (i == w) continue;
                const Panel& q = panels[i];
                const double qm = 0.5 * (q.a + q.b);
                if (q.error > 0 && qm > q.a && qm < q.b &&
                    (q.b - q.a) >= 1e-14 * (std::abs(q.a) + std::abs(q.b) + 1.0)) {
                    any = true;
                    break;
                }
            }
            if (!any)
                throw NonConvergence("integrate_adaptive: panels at roundoff width", total,
                                     total_err);
            panels[w].error = 0.0; // freeze; its true error is below representable width
            total = compensated_total(panels, total_err);
            continue;
        }
        panels[w] = evaluate_panel(f, p.a, mid);
        panels.push_back(evaluate_panel(f, mid, p.b));
        ++splits;
        total = compensated_total(panels, total_err);
    }
    return {total, total_err, static_cast<int>(panels.size())};
}

QuadResult integrate_adaptive(const std::function<double(double)>& f, double a, double b,
                              const QuadratureConfig& cfg) {
    return integrate_adaptive(f, a, b, cfg, {});
}

namespace {

double tail_bound_at(const HalfLineDecay& decay, double T) {
    if (decay.kind == HalfLineDecay::Kind::polynomial)
        return decay.constant * std::pow(T, 1.0 - decay.p) / (decay.p - 1.0);
    const double s = decay.scale;
    return decay.constant * s * s / std::max(T, s) * std::exp(-0.5 * (T / s) * (T / s));
}

} // namespace

double halfline_truncation(const HalfLineDecay& decay, const QuadratureConfig& cfg) {
    cfg.validate();
    const double budget = std::max(0.5 * (cfg.abs_tol > 0 ? cfg.abs_tol : cfg.rel_tol), 1e-300);
    double T;
    if (decay.kind == HalfLineDecay::Kind::polynomial) {
        if (!(decay.p > 1.0)) throw InvalidDecay("polynomial decay requires p > 1");
        // constant * T^(1-p) / (p-1) <= budget
        T = std::pow(decay.constant / ((decay.p - 1.0) * budget), 1.0 / (decay.p - 1.0));
        T = std::max(T, decay.valid_from);
    } else {
        if (!(decay.scale > 0.0)) throw InvalidDecay("gaussian decay requires positive scale");
        // constant * scale^2/T * exp(-T^2/(2 scale^2)) <= budget, solved by iteration
        const double s = decay.scale;
        double arg = std::max(decay.constant * s / budget, 2.0);
        T = s * std::sqrt(2.0 * std::log(arg));
        for (int it = 0; it < 4; ++it) {
            arg = std::max(decay.constant * s * s / (budget * std::max(T, s)), 2.0);
            T = s * std::sqrt(2.0 * std::log(arg));
        }
    }
    T = std::max(T * cfg.tail_cut, 1.0);
    return std::min(T, 1e12);
}

QuadResult integrate_halfline(const std::function<double(double)>& f, const HalfLineDecay& decay,
                              const QuadratureConfig& cfg) {
    const double T = halfline_truncation(decay, cfg);
    std::vector<double> cuts;
    for (double c = 1.0; c < T; c *= 2.0) cuts.push_back(c);
    QuadResult r = integrate_adaptive(f, 0.0, T, cfg, cuts);
    r.error += tail_bound_at(decay, T);
    return r;
}

} // namespace gpoly::num
