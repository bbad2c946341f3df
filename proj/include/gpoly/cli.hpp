#pragma once

#include <cstdint>
#include <map>
#include <string>

namespace gpoly::cli {

inline constexpr const char* kVersion = "1.0.0";

/// A fully parsed command invocation. `params` carries the command-specific
/// key/value pairs; they are validated against the command's schema before
/// any computation runs.
struct RunRequest {
    std::string command; // gn | cone | sphere | absorb | nonabsorb | faces | volume | asympt | verify
    std::map<std::string, std::string> params;
    std::string format = "json"; // json | csv | plain
    std::uint64_t seed = 0;
    std::uint64_t samples = 100000;
    double tol = 1e-10;
    int threads = 0;   // 0 = default (env GPOLY_THREADS or all cores)
    std::string out;   // optional output file; empty = stdout
};

/// exit_code: 0 ok, 1 verification FAIL, 2 validation error,
/// 3 non-convergence, 4 numerical degeneracy.
struct RunOutcome {
    int exit_code = 0;
    std::string report; // serialized per req.format
    std::string error;  // machine-readable JSON error object when exit_code >= 2
};

/// Same request (including seed) gives a byte-identical report except for the
/// runtime_ms field.
RunOutcome run(const RunRequest& req);

} // namespace gpoly::cli
