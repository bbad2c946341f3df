#pragma once

#include <cstdint>

namespace gpoly::mc {

/// (seed, stream) fully determines every sample sequence; distinct streams
/// give statistically independent sequences.
struct RngSpec {
    std::uint64_t seed = 0;
    std::uint64_t stream = 0;
};

/// Counter-based generator: a SplitMix64 walk whose start state is a hash of
/// (seed, stream, chunk). Parallel estimators hand one chunk to each task, so
/// serial and threaded runs produce identical streams.
class Rng {
  public:
    explicit Rng(std::uint64_t state) : state_(state) {}

    std::uint64_t next_u64() {
        std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

    /// Uniform on (0,1]; never 0, safe under log().
    double uniform01() { return ((next_u64() >> 11) + 1) * 0x1.0p-53; }

    /// Standard normal via Box-Muller (pairs cached).
    double normal();

    /// chi-distributed variate with df degrees of freedom (sqrt of chi^2).
    double chi(int df);

  private:
    std::uint64_t state_;
    double cached_ = 0.0;
    bool have_cached_ = false;
};

inline std::uint64_t mix64(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

inline Rng make_chunk_rng(const RngSpec& spec, std::uint64_t chunk) {
    std::uint64_t s = mix64(spec.seed + 0x9E3779B97F4A7C15ULL);
    s = mix64(s ^ (spec.stream + 0xD1B54A32D192ED03ULL));
    s = mix64(s ^ (chunk + 0x8CB92BA72F3D8DD7ULL));
    return Rng(s);
}

} // namespace gpoly::mc
