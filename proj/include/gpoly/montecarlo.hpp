#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "gpoly/linalg.hpp"
#include "gpoly/rng.hpp"

namespace gpoly::mc {

/// Worker threads used by the chunked estimators. Values never change results,
/// only speed: chunks are keyed by index, merged in index order.
int thread_count();
void set_thread_count(int n); // n <= 0 restores the default (env GPOLY_THREADS or all cores)

struct Estimate {
    double mean = 0.0;
    double std_error = 0.0;
    double ci_lo = 0.0;
    double ci_hi = 0.0;
    double ci_level = 0.99;
    std::uint64_t n_samples = 0;
    RngSpec rng;
};

/// Wilson score interval around successes/trials.
Estimate bernoulli_estimate(double successes, std::uint64_t trials, double ci_level,
                            const RngSpec& spec);

/// Normal interval for a sample mean from (sum, sum of squares).
Estimate mean_estimate(double sum, double sum_sq, std::uint64_t trials, double ci_level,
                       const RngSpec& spec);

/// n independent standard Gaussian points in R^d.
std::vector<std::vector<double>> sample_gaussian_points(int n, int d, Rng& rng);

enum class AbsorptionMode { scaled_gaussian, fixed_point };

/// Bernoulli estimate of the non-absorption probability: fresh X_1..X_n per
/// trial; the probe point is sigma*X (scaled_gaussian, param = sigma^2) or
/// radius*e_1 (fixed_point, param = radius).
Estimate estimate_absorption(int n, int d, AbsorptionMode mode, double param,
                             std::uint64_t samples, const RngSpec& spec, double ci_level = 0.99);

/// Expected k-face counts for d in {2,3}, one Estimate per k = 0..d-1.
/// Vertices are counted by LP membership ("X_i outside the hull of the rest");
/// d = 2 uses edges = vertices, d = 3 the simplicial relations f1 = 3 f0 - 6,
/// f2 = 2 f0 - 4. Samples hitting LP degeneracy are discarded and counted,
/// with a hard cap of 0.01% of the total.
std::vector<Estimate> estimate_faces(int n, int d, std::uint64_t samples, const RngSpec& spec,
                                     double ci_level = 0.99);

/// Expected volume for d in {2,3}: exact hull area per sample in the plane
/// (monotone chain + shoelace), hit-or-miss in a per-sample bounding box for d=3.
Estimate estimate_volume(int n, int d, std::uint64_t samples, const RngSpec& spec,
                         double ci_level = 0.99);

/// Haar-distributed orthogonal matrix: QR of a Gaussian matrix with the signs
/// of R's diagonal folded into Q.
Matrix haar_orthogonal(int n, Rng& rng);

/// Regular simplex with n unit vertices (pairwise inner product -1/(n-1)),
/// Haar-rotated in R^(n-1) and projected onto the first d coordinates.
struct GoodmanPollackSample {
    std::vector<std::vector<double>> projected_vertices; // n points in R^d
};
GoodmanPollackSample goodman_pollack_sample(int n, int d, Rng& rng);

enum class GpVariant {
    inscribed,   // n unit vertices, chi ratio chi_d / chi_(n-d), scale sqrt((n sigma^2+1)/(n-1))
    unit_vectors // rotated conv(e_1..e_n), chi_d / chi_(n-d+1), scale sigma
};

/// Estimates the one-sided intrinsic-volume sum b_{n,d-1} + b_{n,d-3} + ...
/// behind the Goodman-Pollack transform. The underlying Bernoulli event
/// "scaled chi-ratio point escapes the projected simplex" has probability
/// exactly twice that sum (it equals p_{n,d}(sigma^2)), so the reported
/// estimate is the halved tally.
Estimate estimate_gp_transform(int n, int d, double sigma2, std::uint64_t samples,
                               const RngSpec& spec, GpVariant variant = GpVariant::inscribed,
                               double ci_level = 0.99);

/// Gaussian vectors in R^(n+1) projected onto L(C), membership via the polar
/// generators of C_n(r).
Estimate estimate_solid_angle(int n, double r, std::uint64_t samples, const RngSpec& spec,
                              double ci_level = 0.99);

/// Conic intrinsic volume histogram: metric projection onto the cone by NNLS
/// over the primal generators; the face dimension of the projection is the
/// support size. One Estimate per k = 0..n.
std::vector<Estimate> estimate_intrinsic_volumes(int n, double r, std::uint64_t samples,
                                                 const RngSpec& spec, double ci_level = 0.99);

namespace detail {
/// Runs fn once per chunk (threaded, deterministic chunk keying) and returns
/// the per-chunk accumulator vectors in chunk order.
std::vector<std::vector<double>> run_chunks(
    std::uint64_t samples, std::uint64_t chunk_size, const RngSpec& spec,
    const std::function<std::vector<double>(Rng&, std::uint64_t)>& fn);

double hull_area_2d(const std::vector<std::vector<double>>& pts);
} // namespace detail

} // namespace gpoly::mc
