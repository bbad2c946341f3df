// Command-line front end: analytic quantities for Gaussian polytopes and the
// Monte Carlo verification harness. See README for the command reference.

#include <cstdio>
#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "gpoly/cli.hpp"

namespace {

using gpoly::cli::RunRequest;

void add_param_option(CLI::App* cmd, RunRequest& req, const std::string& name,
                      const std::string& desc) {
    cmd->add_option_function<std::string>(
        "--" + name, [&req, name](const std::string& v) { req.params[name] = v; }, desc);
}

void add_flag_param(CLI::App* cmd, RunRequest& req, const std::string& name,
                    const std::string& desc) {
    cmd->add_flag_callback(
        "--" + name, [&req, name]() { req.params[name] = "1"; }, desc);
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Gaussian polytope calculator: absorption probabilities, conic intrinsic "
                 "volumes, spherical simplex volumes, expected faces/volume, and Monte Carlo "
                 "verification"};
    app.require_subcommand(1);

    RunRequest req;
    app.add_option("--tol", req.tol, "quadrature tolerance (absolute and relative)");
    app.add_option("--seed", req.seed, "RNG seed for Monte Carlo commands");
    app.add_option("--samples", req.samples, "Monte Carlo sample count");
    app.add_option("--threads", req.threads, "worker threads (0 = all cores)");
    app.add_option("--format", req.format, "output format: json, csv or plain");
    app.add_option("--out", req.out, "write the report to a file instead of stdout");

    auto* gn = app.add_subcommand("gn", "orthant function g_n(r)");
    add_param_option(gn, req, "n", "dimension n >= 0");
    add_param_option(gn, req, "r", "correlation parameter, r >= -1/n");
    add_flag_param(gn, req, "prime", "return the derivative instead");

    auto* cone = app.add_subcommand("cone", "equicorrelated cone quantities");
    add_param_option(cone, req, "n", "number of generators");
    add_param_option(cone, req, "r", "correlation parameter, r > -1/n");
    add_param_option(cone, req, "what", "solid_angle (default), intrinsic, polar or angle");
    add_param_option(cone, req, "k", "face index for --what angle");
    add_param_option(cone, req, "kind", "internal or external for --what angle");

    auto* sphere = app.add_subcommand("sphere", "regular spherical simplex volume");
    add_param_option(sphere, req, "n", "vertex count");
    add_param_option(sphere, req, "ell", "geodesic side length in (0, arccos(-1/(n-1)))");
    add_flag_param(sphere, req, "absolute", "also report the absolute volume");

    auto* absorb = app.add_subcommand("absorb", "absorption probability P[point in hull]");
    auto* nonabsorb = app.add_subcommand("nonabsorb", "non-absorption probability");
    for (auto* cmd : {absorb, nonabsorb}) {
        add_param_option(cmd, req, "n", "number of Gaussian points");
        add_param_option(cmd, req, "d", "ambient dimension");
        add_param_option(cmd, req, "sigma2", "variance of the Gaussian probe point");
        add_param_option(cmd, req, "u", "fixed probe point at radius sqrt(2u)");
        add_param_option(cmd, req, "method", "closed (d=2) or inversion, for --u");
        add_flag_param(cmd, req, "content", "closed-form probability content (d in {2,3,4})");
    }

    auto* faces = app.add_subcommand("faces", "expected k-face count / face functional");
    add_param_option(faces, req, "n", "number of Gaussian points");
    add_param_option(faces, req, "d", "ambient dimension");
    add_param_option(faces, req, "k", "face dimension, 0 <= k <= d-1");
    add_param_option(faces, req, "b", "volume exponent (0 = plain face count)");

    auto* volume = app.add_subcommand("volume", "expected volume of the Gaussian polytope");
    add_param_option(volume, req, "n", "number of Gaussian points");
    add_param_option(volume, req, "d", "ambient dimension");

    auto* asympt = app.add_subcommand("asympt", "large-n asymptotic expressions");
    add_param_option(asympt, req, "what", "gn, gn-edge, faces, volume or p");
    add_param_option(asympt, req, "n", "number of points");
    add_param_option(asympt, req, "d", "ambient dimension");
    add_param_option(asympt, req, "k", "face dimension");
    add_param_option(asympt, req, "r", "correlation parameter (gn)");
    add_param_option(asympt, req, "eps", "offset from -1/n (gn-edge)");
    add_param_option(asympt, req, "sigma2", "probe variance (p)");

    auto* verify = app.add_subcommand("verify", "analytic value vs Monte Carlo, PASS at 3 sigma");
    add_param_option(verify, req, "target",
                     "absorb, fixed, faces, volume, solid_angle, intrinsic, gp, gp-unit, sphere");
    add_param_option(verify, req, "n", "number of points / generators");
    add_param_option(verify, req, "d", "ambient dimension");
    add_param_option(verify, req, "k", "face dimension");
    add_param_option(verify, req, "r", "correlation parameter");
    add_param_option(verify, req, "ell", "spherical side length");
    add_param_option(verify, req, "sigma2", "probe variance");
    add_param_option(verify, req, "u", "fixed-point radius parameter");

    for (auto* sub : {gn, cone, sphere, absorb, nonabsorb, faces, volume, asympt, verify})
        sub->fallthrough();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << "{\"error\":{\"type\":\"validation\",\"message\":\"" << e.what()
                  << "\"}}\n";
        return 2;
    }

    for (auto* sub : {gn, cone, sphere, absorb, nonabsorb, faces, volume, asympt, verify})
        if (sub->parsed()) req.command = sub->get_name();

    const auto outcome = gpoly::cli::run(req);
    if (!outcome.error.empty()) std::cerr << outcome.error;
    if (!outcome.report.empty()) {
        if (req.out.empty()) {
            std::cout << outcome.report;
        } else {
            std::ofstream f(req.out, std::ios::binary);
            if (!f) {
                std::cerr << "{\"error\":{\"type\":\"validation\",\"message\":\"cannot open "
                             "output file\"}}\n";
                return 2;
            }
            f << outcome.report;
        }
    }
    return outcome.exit_code;
}
