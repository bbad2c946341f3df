#include "gpoly/cli.hpp"

#include <chrono>
#include <cmath>
#include <sstream>

#include <json.hpp>

#include "gpoly/absorption.hpp"
#include "gpoly/cones.hpp"
#include "gpoly/errors.hpp"
#include "gpoly/montecarlo.hpp"
#include "gpoly/orthant.hpp"
#include "gpoly/polytope_stats.hpp"
#include "gpoly/spherical.hpp"

namespace gpoly::cli {

using json = nlohmann::ordered_json;
using num::QuadratureConfig;

namespace {

struct ValidationError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

double round_sig(double v, int digits = 12) {
    if (v == 0.0 || !std::isfinite(v)) return v;
    const double mag = std::floor(std::log10(std::abs(v)));
    const double factor = std::pow(10.0, digits - 1 - mag);
    return std::round(v * factor) / factor;
}

double finite(double v) {
    if (std::isnan(v)) return 0.0;
    if (std::isinf(v)) return v > 0 ? 1e300 : -1e300;
    return v;
}

class Params {
  public:
    Params(const std::map<std::string, std::string>& kv, std::string command)
        : kv_(kv), command_(std::move(command)) {}

    bool has(const std::string& key) const { return kv_.count(key) > 0; }

    double number(const std::string& key) const {
        auto it = kv_.find(key);
        if (it == kv_.end())
            throw ValidationError(command_ + ": missing required parameter --" + key);
        try {
            size_t pos = 0;
            const double v = std::stod(it->second, &pos);
            if (pos != it->second.size()) throw std::invalid_argument("trailing characters");
            return v;
        } catch (const std::exception&) {
            throw ValidationError(command_ + ": parameter --" + key + " is not a number: '" +
                                  it->second + "'");
        }
    }

    double number_or(const std::string& key, double fallback) const {
        return has(key) ? number(key) : fallback;
    }

    int integer(const std::string& key) const {
        const double v = number(key);
        if (v != std::floor(v) || std::abs(v) > 1e9)
            throw ValidationError(command_ + ": parameter --" + key + " must be an integer");
        return static_cast<int>(v);
    }

    std::string text(const std::string& key, const std::string& fallback = "") const {
        auto it = kv_.find(key);
        return it == kv_.end() ? fallback : it->second;
    }

    void allow_only(std::initializer_list<const char*> keys) const {
        for (const auto& [k, v] : kv_) {
            bool ok = false;
            for (const char* key : keys)
                if (k == key) ok = true;
            if (!ok) throw ValidationError(command_ + ": unknown parameter --" + k);
        }
    }

  private:
    const std::map<std::string, std::string>& kv_;
    std::string command_;
};

json params_echo(const std::map<std::string, std::string>& kv) {
    json j = json::object();
    for (const auto& [k, v] : kv) j[k] = v;
    return j;
}

struct VerifyRow {
    std::string quantity;
    double analytic = 0.0;
    mc::Estimate estimate;
};

double z_score(const VerifyRow& row) {
    const double diff = row.estimate.mean - row.analytic;
    if (row.estimate.std_error <= 0.0) return diff == 0.0 ? 0.0 : 1e9;
    return diff / row.estimate.std_error;
}

// ---- command handlers; each fills the payload part of the report ----

void run_gn(const Params& p, const QuadratureConfig& cfg, json& out) {
    p.allow_only({"n", "r", "prime"});
    const int n = p.integer("n");
    const double r = p.number("r");
    if (p.has("prime")) {
        out["value"] = round_sig(orthant::g_prime(n, r, cfg));
        return;
    }
    const auto res = orthant::g(n, r, cfg);
    out["value"] = round_sig(res.value);
    out["stderr_est"] = finite(res.error);
}

void run_cone(const Params& p, const QuadratureConfig& cfg, json& out) {
    p.allow_only({"n", "r", "what", "k", "kind"});
    const int n = p.integer("n");
    const double r = p.number("r");
    const std::string what = p.text("what", "solid_angle");
    if (what == "solid_angle") {
        const auto res = cones::solid_angle({n, r}, cfg);
        out["value"] = round_sig(res.value);
        out["stderr_est"] = finite(res.error);
    } else if (what == "intrinsic") {
        json values = json::array();
        for (double b : cones::intrinsic_volumes({n, r}, cfg)) values.push_back(round_sig(b));
        out["values"] = values;
    } else if (what == "polar") {
        out["value"] = round_sig(cones::polar_parameter(n, r));
    } else if (what == "angle") {
        const int k = p.integer("k");
        const std::string kind = p.text("kind", "external");
        if (kind != "internal" && kind != "external")
            throw ValidationError("cone: --kind must be internal or external");
        out["value"] = round_sig(cones::simplex_angle(
            n, k, kind == "internal" ? cones::AngleKind::internal : cones::AngleKind::external,
            cfg));
    } else {
        throw ValidationError("cone: --what must be solid_angle, intrinsic, polar or angle");
    }
}

void run_sphere(const Params& p, const QuadratureConfig& cfg, json& out) {
    p.allow_only({"n", "ell", "absolute"});
    const int n = p.integer("n");
    const double ell = p.number("ell");
    const auto res = spherical::volume_fraction({n, ell}, cfg);
    out["value"] = round_sig(res.value);
    out["stderr_est"] = finite(res.error);
    if (p.has("absolute")) out["absolute_volume"] = round_sig(spherical::absolute_volume({n, ell}, cfg));
}

void run_absorption(const Params& p, const QuadratureConfig& cfg, bool complement, json& out) {
    p.allow_only({"n", "d", "sigma2", "u", "method", "content"});
    const int n = p.integer("n");
    const int d = p.integer("d");
    if (p.has("content")) {
        // closed-form probability content C_{n,d} = P[X in hull], d in {2,3,4}
        const double content = absorption::probability_content(n, d, cfg);
        out["value"] = round_sig(complement ? content : 1.0 - content);
        return;
    }
    const bool have_sigma = p.has("sigma2"), have_u = p.has("u");
    if (have_sigma == have_u)
        throw ValidationError("absorption: exactly one of --sigma2, --u is required");
    double value, err;
    if (have_sigma) {
        const auto res = absorption::p(n, d, p.number("sigma2"), cfg);
        value = res.value;
        err = res.error;
    } else {
        const double u = p.number("u");
        if (u > 25.0) throw ValidationError("absorption: --u above the supported range (25)");
        if (u * std::max(1, d - 1) > 500.0)
            throw ValidationError("absorption: u*(d-1) too large for the inversion kernels");
        const std::string method = p.text("method", d == 2 ? "closed" : "inversion");
        if (method == "closed") {
            if (d != 2) throw ValidationError("absorption: --method closed requires d = 2");
            const auto res = absorption::f_d2_closed(n, u, cfg);
            value = res.value;
            err = res.error;
        } else if (method == "inversion") {
            const auto res = absorption::f(n, d, u, cfg);
            value = res.value;
            err = res.error;
        } else {
            throw ValidationError("absorption: --method must be closed or inversion");
        }
    }
    out["value"] = round_sig(complement ? 1.0 - value : value);
    out["stderr_est"] = finite(err);
}

void run_faces(const Params& p, const QuadratureConfig& cfg, json& out) {
    p.allow_only({"n", "d", "k", "b"});
    const stats::FaceQuery q{p.integer("n"), p.integer("d"), p.integer("k"),
                             p.number_or("b", 0.0)};
    if (q.b > 0.0) {
        out["value"] = round_sig(stats::expected_face_functional(q, cfg));
        return;
    }
    const auto res = stats::expected_faces(q, cfg);
    out["value"] = round_sig(res.value);
    out["alt_value"] = round_sig(res.alt);
    out["formulas_agree"] = res.rel_diff < 1e-8;
}

void run_volume(const Params& p, const QuadratureConfig& cfg, json& out) {
    p.allow_only({"n", "d"});
    const auto res = stats::expected_volume(p.integer("n"), p.integer("d"), cfg);
    out["value"] = round_sig(res.value);
    out["alt_value"] = round_sig(res.alt);
    out["formulas_agree"] = res.rel_diff < 1e-9;
}

void run_asympt(const Params& p, const QuadratureConfig& cfg, json& out) {
    p.allow_only({"what", "n", "d", "k", "r", "eps", "sigma2"});
    const std::string what = p.text("what");
    const int n = p.integer("n");
    if (what == "gn") {
        out["value"] = round_sig(orthant::g_asymptotic_fixed_r(n, p.number("r")));
    } else if (what == "gn-edge") {
        out["value"] = round_sig(orthant::g_edge_asymptotic(n, p.number("eps")));
    } else if (what == "faces") {
        out["value"] =
            round_sig(stats::expected_faces_asymptotic(n, p.integer("d"), p.integer("k"), cfg));
    } else if (what == "volume") {
        out["value"] = round_sig(stats::expected_volume_asymptotic(n, p.integer("d")));
    } else if (what == "p") {
        out["value"] = round_sig(stats::p_asymptotic(n, p.integer("d"), p.number("sigma2"), cfg));
    } else {
        throw ValidationError("asympt: --what must be gn, gn-edge, faces, volume or p");
    }
}

void run_verify(const Params& p, const QuadratureConfig& cfg, const RunRequest& req, json& out) {
    p.allow_only({"target", "n", "d", "k", "r", "ell", "sigma2", "u"});
    const std::string target = p.text("target");
    const mc::RngSpec spec{req.seed, 0};
    const std::uint64_t samples = req.samples;
    std::vector<VerifyRow> rows;

    if (target == "absorb") {
        const int n = p.integer("n"), d = p.integer("d");
        const double s2 = p.number("sigma2");
        rows.push_back({"p", absorption::p(n, d, s2, cfg).value,
                        mc::estimate_absorption(n, d, mc::AbsorptionMode::scaled_gaussian, s2,
                                                samples, spec)});
    } else if (target == "fixed") {
        const int n = p.integer("n"), d = p.integer("d");
        const double u = p.number("u");
        const double analytic = (d == 2) ? absorption::f_d2_closed(n, u, cfg).value
                                         : absorption::f(n, d, u, cfg).value;
        rows.push_back({"f", analytic,
                        mc::estimate_absorption(n, d, mc::AbsorptionMode::fixed_point,
                                                std::sqrt(2.0 * u), samples, spec)});
    } else if (target == "faces") {
        const int n = p.integer("n"), d = p.integer("d");
        const auto estimates = mc::estimate_faces(n, d, samples, spec);
        for (int k = 0; k < d; ++k)
            rows.push_back({"f_" + std::to_string(k),
                            stats::expected_faces({n, d, k, 0.0}, cfg).value, estimates[k]});
    } else if (target == "volume") {
        const int n = p.integer("n"), d = p.integer("d");
        rows.push_back({"volume", stats::expected_volume(n, d, cfg).value,
                        mc::estimate_volume(n, d, samples, spec)});
    } else if (target == "solid_angle") {
        const int n = p.integer("n");
        const double r = p.number("r");
        rows.push_back({"solid_angle", cones::solid_angle({n, r}, cfg).value,
                        mc::estimate_solid_angle(n, r, samples, spec)});
    } else if (target == "intrinsic") {
        const int n = p.integer("n");
        const double r = p.number("r");
        const auto analytic = cones::intrinsic_volumes({n, r}, cfg);
        const auto estimates = mc::estimate_intrinsic_volumes(n, r, samples, spec);
        for (int k = 0; k <= n; ++k)
            rows.push_back({"b_" + std::to_string(k), analytic[k], estimates[k]});
    } else if (target == "gp" || target == "gp-unit") {
        const int n = p.integer("n"), d = p.integer("d");
        const double s2 = p.number("sigma2");
        const double one_sided = 0.5 * absorption::detail::p_sum(n, d, s2, cfg).value;
        const auto variant =
            target == "gp" ? mc::GpVariant::inscribed : mc::GpVariant::unit_vectors;
        rows.push_back({"b_sum", one_sided,
                        mc::estimate_gp_transform(n, d, s2, samples, spec, variant)});
    } else if (target == "sphere") {
        const int n = p.integer("n");
        const double ell = p.number("ell");
        rows.push_back({"fraction", spherical::volume_fraction({n, ell}, cfg).value,
                        mc::estimate_solid_angle(n, spherical::side_length_to_r(ell), samples,
                                                 spec)});
    } else {
        throw ValidationError(
            "verify: --target must be absorb, fixed, faces, volume, solid_angle, intrinsic, "
            "gp, gp-unit or sphere");
    }

    bool pass = true;
    json checks = json::array();
    for (const auto& row : rows) {
        const double z = z_score(row);
        const bool row_pass = std::abs(z) <= 3.0;
        pass = pass && row_pass;
        json c;
        c["quantity"] = row.quantity;
        c["analytic"] = round_sig(row.analytic);
        c["estimate"] = round_sig(row.estimate.mean);
        c["stderr"] = finite(round_sig(row.estimate.std_error));
        c["ci"] = {{"lo", round_sig(row.estimate.ci_lo)},
                   {"hi", round_sig(row.estimate.ci_hi)},
                   {"level", row.estimate.ci_level}};
        c["z"] = finite(round_sig(z, 6));
        c["pass"] = row_pass;
        checks.push_back(c);
    }
    out["samples"] = samples;
    out["seed"] = req.seed;
    out["checks"] = checks;
    out["pass"] = pass;
}

// ---- serialization ----

std::string csv_escape(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string q = "\"";
    for (char c : s) {
        if (c == '"') q += '"';
        q += c;
    }
    q += '"';
    return q;
}

void flatten_for_csv(const std::string& prefix, const json& j,
                     std::vector<std::pair<std::string, std::string>>& cells) {
    if (j.is_object()) {
        for (const auto& [k, v] : j.items())
            flatten_for_csv(prefix.empty() ? k : prefix + "." + k, v, cells);
    } else if (j.is_array()) {
        int i = 0;
        for (const auto& v : j) flatten_for_csv(prefix + "." + std::to_string(i++), v, cells);
    } else if (j.is_string()) {
        cells.emplace_back(prefix, j.get<std::string>());
    } else {
        cells.emplace_back(prefix, j.dump());
    }
}

std::string to_csv(const json& report) {
    std::vector<std::pair<std::string, std::string>> cells;
    flatten_for_csv("", report, cells);
    std::ostringstream head, row;
    bool first = true;
    for (const auto& [k, v] : cells) {
        if (!first) {
            head << ',';
            row << ',';
        }
        head << csv_escape(k);
        row << csv_escape(v);
        first = false;
    }
    return head.str() + "\n" + row.str() + "\n";
}

std::string to_plain(const json& report) {
    std::vector<std::pair<std::string, std::string>> cells;
    flatten_for_csv("", report, cells);
    std::ostringstream os;
    for (const auto& [k, v] : cells) os << k << " = " << v << "\n";
    return os.str();
}

std::string error_object(const std::string& type, const std::string& message) {
    json e;
    e["error"] = {{"type", type}, {"message", message}};
    return e.dump() + "\n";
}

} // namespace

RunOutcome run(const RunRequest& req) {
    const auto t0 = std::chrono::steady_clock::now();
    RunOutcome outcome;
    json report;
    report["schema"] = 1;
    report["command"] = req.command;
    report["params"] = params_echo(req.params);

    QuadratureConfig cfg;
    cfg.abs_tol = req.tol;
    cfg.rel_tol = req.tol;

    if (req.threads > 0) mc::set_thread_count(req.threads);

    try {
        const Params p(req.params, req.command);
        if (!(req.tol > 0.0) || req.tol > 0.1)
            throw ValidationError("--tol must be in (0, 0.1]");
        if (req.format != "json" && req.format != "csv" && req.format != "plain")
            throw ValidationError("--format must be json, csv or plain");
        if (req.command == "verify" && req.samples < 1)
            throw ValidationError("--samples must be >= 1");

        if (req.command == "gn")
            run_gn(p, cfg, report);
        else if (req.command == "cone")
            run_cone(p, cfg, report);
        else if (req.command == "sphere")
            run_sphere(p, cfg, report);
        else if (req.command == "absorb")
            run_absorption(p, cfg, /*complement=*/true, report);
        else if (req.command == "nonabsorb")
            run_absorption(p, cfg, /*complement=*/false, report);
        else if (req.command == "faces")
            run_faces(p, cfg, report);
        else if (req.command == "volume")
            run_volume(p, cfg, report);
        else if (req.command == "asympt")
            run_asympt(p, cfg, report);
        else if (req.command == "verify")
            run_verify(p, cfg, req, report);
        else
            throw ValidationError("unknown command: " + req.command);

        if (req.command == "verify" && !report["pass"].get<bool>()) outcome.exit_code = 1;
    } catch (const ValidationError& e) {
        outcome.exit_code = 2;
        outcome.error = error_object("validation", e.what());
    } catch (const DomainError& e) {
        outcome.exit_code = 2;
        outcome.error = error_object("validation", e.what());
    } catch (const NonConvergence& e) {
        outcome.exit_code = 3;
        outcome.error = error_object("non_convergence", e.what());
    } catch (const NumericalDegeneracy& e) {
        outcome.exit_code = 4;
        outcome.error = error_object("numerical_degeneracy", e.what());
    }
    if (req.threads > 0) mc::set_thread_count(0); // back to the default policy
    if (outcome.exit_code >= 2) return outcome;

    const auto t1 = std::chrono::steady_clock::now();
    report["runtime_ms"] =
        std::chrono::duration_cast<std::chrono::milliseconds>(t1 - t0).count();
    report["version"] = kVersion;

    if (req.format == "json")
        outcome.report = report.dump(2) + "\n";
    else if (req.format == "csv")
        outcome.report = to_csv(report);
    else
        outcome.report = to_plain(report);
    return outcome;
}

} // namespace gpoly::cli
