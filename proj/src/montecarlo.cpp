#include "gpoly/montecarlo.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <mutex>
#include <thread>

#include "gpoly/cones.hpp"
#include "gpoly/errors.hpp"
#include "gpoly/lp.hpp"
#include "gpoly/nnls.hpp"
#include "gpoly/special_functions.hpp"

namespace gpoly::mc {

namespace {

constexpr std::uint64_t kChunkSize = 4096;

std::atomic<int> g_thread_override{0};

int default_threads() {
    if (const char* env = std::getenv("GPOLY_THREADS")) {
        const int v = std::atoi(env);
        if (v >= 1) return v;
    }
    const unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : static_cast<int>(hw);
}

} // namespace

int thread_count() {
    const int o = g_thread_override.load();
    return o >= 1 ? o : default_threads();
}

void set_thread_count(int n) { g_thread_override.store(n); }

namespace detail {

std::vector<std::vector<double>> run_chunks(
    std::uint64_t samples, std::uint64_t chunk_size, const RngSpec& spec,
    const std::function<std::vector<double>(Rng&, std::uint64_t)>& fn) {
    const std::uint64_t n_chunks = (samples + chunk_size - 1) / chunk_size;
    std::vector<std::vector<double>> results(n_chunks);
    std::atomic<std::uint64_t> cursor{0};
    std::exception_ptr first_error;
    std::mutex error_mutex;

    auto worker = [&]() {
        for (;;) {
            const std::uint64_t idx = cursor.fetch_add(1);
            if (idx >= n_chunks) return;
            const std::uint64_t count = std::min(chunk_size, samples - idx * chunk_size);
            Rng rng = make_chunk_rng(spec, idx);
            try {
                results[idx] = fn(rng, count);
            } catch (...) {
                std::lock_guard<std::mutex> lock(error_mutex);
                if (!first_error) first_error = std::current_exception();
                return;
            }
        }
    };

    const int workers =
        static_cast<int>(std::min<std::uint64_t>(n_chunks, static_cast<std::uint64_t>(thread_count())));
    if (workers <= 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        pool.reserve(workers);
        for (int i = 0; i < workers; ++i) pool.emplace_back(worker);
        for (auto& t : pool) t.join();
    }
    if (first_error) std::rethrow_exception(first_error);
    return results;
}

double hull_area_2d(const std::vector<std::vector<double>>& pts) {
    const size_t n = pts.size();
    if (n < 3) return 0.0;
    std::vector<std::pair<double, double>> p(n);
    for (size_t i = 0; i < n; ++i) p[i] = {pts[i][0], pts[i][1]};
    std::sort(p.begin(), p.end());
    auto cross = [](const std::pair<double, double>& o, const std::pair<double, double>& a,
                    const std::pair<double, double>& b) {
        return (a.first - o.first) * (b.second - o.second) -
               (a.second - o.second) * (b.first - o.first);
    };
    std::vector<std::pair<double, double>> hull(2 * n);
    size_t k = 0;
    for (size_t i = 0; i < n; ++i) { // lower chain
        while (k >= 2 && cross(hull[k - 2], hull[k - 1], p[i]) <= 0.0) --k;
        hull[k++] = p[i];
    }
    for (size_t i = n - 1, lower = k + 1; i-- > 0;) { // upper chain
        while (k >= lower && cross(hull[k - 2], hull[k - 1], p[i]) <= 0.0) --k;
        hull[k++] = p[i];
    }
    hull.resize(k > 0 ? k - 1 : 0);
    double area = 0.0;
    for (size_t i = 0; i < hull.size(); ++i) {
        const auto& a = hull[i];
        const auto& b = hull[(i + 1) % hull.size()];
        area += a.first * b.second - b.first * a.second;
    }
    return 0.5 * std::abs(area);
}

} // namespace detail

Estimate bernoulli_estimate(double successes, std::uint64_t trials, double ci_level,
                            const RngSpec& spec) {
    if (trials == 0) throw DomainError("bernoulli_estimate: trials must be positive");
    const double n = static_cast<double>(trials);
    const double phat = successes / n;
    const double z = num::normal_quantile(0.5 * (1.0 + ci_level));
    const double z2 = z * z;
    const double denom = 1.0 + z2 / n;
    const double center = (phat + z2 / (2.0 * n)) / denom;
    const double half = z * std::sqrt(phat * (1.0 - phat) / n + z2 / (4.0 * n * n)) / denom;
    Estimate e;
    e.mean = phat;
    e.std_error = std::sqrt(phat * (1.0 - phat) / n);
    e.ci_lo = center - half;
    e.ci_hi = center + half;
    e.ci_level = ci_level;
    e.n_samples = trials;
    e.rng = spec;
    return e;
}

Estimate mean_estimate(double sum, double sum_sq, std::uint64_t trials, double ci_level,
                       const RngSpec& spec) {
    if (trials == 0) throw DomainError("mean_estimate: trials must be positive");
    const double n = static_cast<double>(trials);
    const double mean = sum / n;
    const double var = std::max(0.0, (sum_sq - n * mean * mean) / std::max(1.0, n - 1.0));
    const double se = std::sqrt(var / n);
    const double z = num::normal_quantile(0.5 * (1.0 + ci_level));
    Estimate e;
    e.mean = mean;
    e.std_error = se;
    e.ci_lo = mean - z * se;
    e.ci_hi = mean + z * se;
    e.ci_level = ci_level;
    e.n_samples = trials;
    e.rng = spec;
    return e;
}

std::vector<std::vector<double>> sample_gaussian_points(int n, int d, Rng& rng) {
    if (n < 1 || d < 1) throw DomainError("sample_gaussian_points: n, d must be >= 1");
    std::vector<std::vector<double>> pts(n, std::vector<double>(d));
    for (auto& p : pts)
        for (double& c : p) c = rng.normal();
    return pts;
}

Estimate estimate_absorption(int n, int d, AbsorptionMode mode, double param,
                             std::uint64_t samples, const RngSpec& spec, double ci_level) {
    if (n < d + 1) throw DomainError("estimate_absorption: n must be >= d+1");
    if (!(param >= 0.0)) throw DomainError("estimate_absorption: parameter must be >= 0");
    const double sigma = (mode == AbsorptionMode::scaled_gaussian) ? std::sqrt(param) : 0.0;

    auto chunk = [=](Rng& rng, std::uint64_t count) {
        std::vector<double> acc(1, 0.0);
        std::vector<double> probe(d, 0.0);
        for (std::uint64_t t = 0; t < count; ++t) {
            const auto pts = sample_gaussian_points(n, d, rng);
            if (mode == AbsorptionMode::scaled_gaussian) {
                for (int i = 0; i < d; ++i) probe[i] = sigma * rng.normal();
            } else {
                probe.assign(d, 0.0);
                probe[0] = param;
            }
            if (!hull_contains(probe, pts)) acc[0] += 1.0;
        }
        return acc;
    };
    double successes = 0.0;
    for (const auto& r : detail::run_chunks(samples, kChunkSize, spec, chunk)) successes += r[0];
    return bernoulli_estimate(successes, samples, ci_level, spec);
}

std::vector<Estimate> estimate_faces(int n, int d, std::uint64_t samples, const RngSpec& spec,
                                     double ci_level) {
    if (d != 2 && d != 3) throw DomainError("estimate_faces: d must be 2 or 3");
    if (n < d + 1) throw DomainError("estimate_faces: n must be >= d+1");

    // acc = [sum f_0, sum f_0^2, ..., sum f_(d-1), sum f_(d-1)^2, used, discarded]
    auto chunk = [=](Rng& rng, std::uint64_t count) {
        std::vector<double> acc(2 * d + 2, 0.0);
        std::vector<std::vector<double>> others(n - 1, std::vector<double>(d));
        for (std::uint64_t t = 0; t < count; ++t) {
            const auto pts = sample_gaussian_points(n, d, rng);
            int vertices = 0;
            bool degenerate = false;
            for (int i = 0; i < n && !degenerate; ++i) {
                for (int j = 0, w = 0; j < n; ++j)
                    if (j != i) others[w++] = pts[j];
                try {
                    if (!hull_contains(pts[i], others)) ++vertices;
                } catch (const NumericalDegeneracy&) {
                    degenerate = true;
                }
            }
            if (degenerate) {
                acc[2 * d + 1] += 1.0;
                continue;
            }
            acc[2 * d] += 1.0;
            double counts[3] = {0, 0, 0};
            if (d == 2) {
                counts[0] = vertices;
                counts[1] = vertices; // planar polytope: edges = vertices
            } else {
                counts[0] = vertices;
                counts[1] = 3.0 * vertices - 6.0; // a.s. simplicial
                counts[2] = 2.0 * vertices - 4.0;
            }
            for (int k = 0; k < d; ++k) {
                acc[2 * k] += counts[k];
                acc[2 * k + 1] += counts[k] * counts[k];
            }
        }
        return acc;
    };

    std::vector<double> total(2 * d + 2, 0.0);
    for (const auto& r : detail::run_chunks(samples, kChunkSize, spec, chunk))
        for (size_t i = 0; i < total.size(); ++i) total[i] += r[i];

    const double used = total[2 * d], discarded = total[2 * d + 1];
    if (discarded > std::max(1.0, 1e-4 * static_cast<double>(samples)))
        throw NumericalDegeneracy("estimate_faces: degenerate-sample cap exceeded");
    std::vector<Estimate> out;
    out.reserve(d);
    for (int k = 0; k < d; ++k)
        out.push_back(mean_estimate(total[2 * k], total[2 * k + 1],
                                    static_cast<std::uint64_t>(used), ci_level, spec));
    return out;
}

Estimate estimate_volume(int n, int d, std::uint64_t samples, const RngSpec& spec,
                         double ci_level) {
    if (d != 2 && d != 3) throw DomainError("estimate_volume: d must be 2 or 3");
    if (n < 1) throw DomainError("estimate_volume: n must be >= 1");
    constexpr int kHitOrMissDraws = 64;

    auto chunk = [=](Rng& rng, std::uint64_t count) {
        std::vector<double> acc(2, 0.0);
        for (std::uint64_t t = 0; t < count; ++t) {
            const auto pts = sample_gaussian_points(n, d, rng);
            double vol = 0.0;
            if (d == 2) {
                vol = detail::hull_area_2d(pts);
            } else {
                double radius = 0.0;
                for (const auto& p : pts)
                    for (double c : p) radius = std::max(radius, std::abs(c));
                if (radius > 0.0 && n >= 4) {
                    int hits = 0;
                    std::vector<double> probe(3);
                    for (int s = 0; s < kHitOrMissDraws; ++s) {
                        for (double& c : probe) c = radius * (2.0 * rng.uniform01() - 1.0);
                        if (hull_contains(probe, pts)) ++hits;
                    }
                    vol = 8.0 * radius * radius * radius * hits / kHitOrMissDraws;
                }
            }
            acc[0] += vol;
            acc[1] += vol * vol;
        }
        return acc;
    };

    double sum = 0.0, sum_sq = 0.0;
    for (const auto& r : detail::run_chunks(samples, kChunkSize, spec, chunk)) {
        sum += r[0];
        sum_sq += r[1];
    }
    return mean_estimate(sum, sum_sq, samples, ci_level, spec);
}

Matrix haar_orthogonal(int n, Rng& rng) {
    if (n < 1) throw DomainError("haar_orthogonal: n must be >= 1");
    Matrix g(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) g(i, j) = rng.normal();
    return qr_orthogonal_factor(g);
}

GoodmanPollackSample goodman_pollack_sample(int n, int d, Rng& rng) {
    if (n < d + 1) throw DomainError("goodman_pollack_sample: n must be >= d+1");
    if (d < 1) throw DomainError("goodman_pollack_sample: d must be >= 1");
    const Matrix verts = regular_simplex_vertices(n); // (n-1) x n
    const Matrix rot = haar_orthogonal(n - 1, rng);
    const Matrix rotated = matmul(rot, verts);
    GoodmanPollackSample out;
    out.projected_vertices.assign(n, std::vector<double>(d));
    for (int j = 0; j < n; ++j)
        for (int i = 0; i < d; ++i) out.projected_vertices[j][i] = rotated(i, j);
    return out;
}

Estimate estimate_gp_transform(int n, int d, double sigma2, std::uint64_t samples,
                               const RngSpec& spec, GpVariant variant, double ci_level) {
    if (n < d + 1) throw DomainError("estimate_gp_transform: n must be >= d+1");
    if (!(sigma2 >= 0.0)) throw DomainError("estimate_gp_transform: sigma2 must be >= 0");
    if (variant == GpVariant::unit_vectors && !(sigma2 > 0.0))
        throw DomainError("estimate_gp_transform: unit_vectors variant needs sigma2 > 0");

    const double scale = (variant == GpVariant::inscribed)
                             ? std::sqrt((n * sigma2 + 1.0) / (n - 1.0))
                             : std::sqrt(sigma2);
    const int chi_df = (variant == GpVariant::inscribed) ? n - d : n - d + 1;

    auto chunk = [=](Rng& rng, std::uint64_t count) {
        std::vector<double> acc(1, 0.0);
        std::vector<std::vector<double>> verts(n, std::vector<double>(d));
        std::vector<double> probe(d, 0.0);
        const Matrix simplex =
            (variant == GpVariant::inscribed) ? regular_simplex_vertices(n) : Matrix();
        for (std::uint64_t t = 0; t < count; ++t) {
            if (variant == GpVariant::inscribed) {
                const Matrix rot = haar_orthogonal(n - 1, rng);
                const Matrix rotated = matmul(rot, simplex);
                for (int j = 0; j < n; ++j)
                    for (int i = 0; i < d; ++i) verts[j][i] = rotated(i, j);
            } else {
                const Matrix rot = haar_orthogonal(n, rng);
                for (int j = 0; j < n; ++j)
                    for (int i = 0; i < d; ++i) verts[j][i] = rot(i, j);
            }
            const double r1 = rng.chi(d);
            const double r2 = rng.chi(chi_df);
            probe.assign(d, 0.0);
            probe[0] = scale * r1 / r2;
            if (!hull_contains(probe, verts)) acc[0] += 1.0;
        }
        return acc;
    };

    double successes = 0.0;
    for (const auto& r : detail::run_chunks(samples, kChunkSize, spec, chunk)) successes += r[0];
    // the escape event has probability 2 (b_{n,d-1} + b_{n,d-3} + ...); report
    // the one-sided sum
    Estimate e = bernoulli_estimate(successes, samples, ci_level, spec);
    e.mean *= 0.5;
    e.std_error *= 0.5;
    e.ci_lo *= 0.5;
    e.ci_hi *= 0.5;
    return e;
}

Estimate estimate_solid_angle(int n, double r, std::uint64_t samples, const RngSpec& spec,
                              double ci_level) {
    const cones::ConeGenerators gens = cones::make_generators(n, r);

    auto chunk = [=, &gens](Rng& rng, std::uint64_t count) {
        std::vector<double> acc(1, 0.0);
        std::vector<double> z(n + 1);
        for (std::uint64_t t = 0; t < count; ++t) {
            for (double& c : z) c = rng.normal();
            double along = dot(z, gens.hull_normal);
            for (int i = 0; i <= n; ++i) z[i] -= along * gens.hull_normal[i];
            if (cones::cone_membership(z, gens)) acc[0] += 1.0;
        }
        return acc;
    };
    double successes = 0.0;
    for (const auto& rr : detail::run_chunks(samples, kChunkSize, spec, chunk)) successes += rr[0];
    return bernoulli_estimate(successes, samples, ci_level, spec);
}

std::vector<Estimate> estimate_intrinsic_volumes(int n, double r, std::uint64_t samples,
                                                 const RngSpec& spec, double ci_level) {
    const cones::ConeGenerators gens = cones::make_generators(n, r);
    Matrix a(n + 1, n);
    for (int j = 0; j < n; ++j)
        for (int i = 0; i <= n; ++i) a(i, j) = gens.primal[j][i];

    auto chunk = [=, &a](Rng& rng, std::uint64_t count) {
        std::vector<double> acc(n + 1, 0.0);
        std::vector<double> z(n + 1);
        for (std::uint64_t t = 0; t < count; ++t) {
            for (double& c : z) c = rng.normal();
            const NnlsResult res = nnls(a, z);
            acc[res.support] += 1.0;
        }
        return acc;
    };
    std::vector<double> hist(n + 1, 0.0);
    for (const auto& rr : detail::run_chunks(samples, kChunkSize, spec, chunk))
        for (int k = 0; k <= n; ++k) hist[k] += rr[k];
    std::vector<Estimate> out;
    out.reserve(n + 1);
    for (int k = 0; k <= n; ++k) out.push_back(bernoulli_estimate(hist[k], samples, ci_level, spec));
    return out;
}

} // namespace gpoly::mc
