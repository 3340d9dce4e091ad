#pragma once

#include <cstdint>
#include <string_view>

namespace bvr {

/// Counter-based generator: every draw is a pure function of
/// (seed, stream, counter), so named substreams never perturb one another and
/// results are identical across standard libraries.
class CounterRng {
public:
    static constexpr std::string_view kAlgorithm = "ctr-splitmix64/1";

    CounterRng() = default;
    CounterRng(std::uint64_t seed, std::uint64_t stream) : seed_(seed), stream_(stream) {}

    /// Substream keyed by name, e.g. "agent" or "launcher.1".
    static CounterRng substream(std::uint64_t seed, std::string_view name);

    std::uint64_t next_u64();

    /// Uniform in [0, 1) with 53 random bits.
    double uniform();

    /// Uniform in [lo, hi).
    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

    std::uint64_t counter() const { return counter_; }

private:
    std::uint64_t seed_ = 0;
    std::uint64_t stream_ = 0;
    std::uint64_t counter_ = 0;
};

std::uint64_t splitmix64(std::uint64_t x);

/// 64-bit FNV-1a.
std::uint64_t fnv1a64(std::string_view bytes, std::uint64_t basis = 0xcbf29ce484222325ULL);

}  // namespace bvr
