#include "bvr/rng.hpp"

namespace bvr {

std::uint64_t splitmix64(std::uint64_t x)
{
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

std::uint64_t fnv1a64(std::string_view bytes, std::uint64_t basis)
{
    std::uint64_t h = basis;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return h;
}

CounterRng CounterRng::substream(std::uint64_t seed, std::string_view name) { return {seed, fnv1a64(name)}; }

std::uint64_t CounterRng::next_u64()
{
    const std::uint64_t key = splitmix64(seed_ ^ splitmix64(stream_));
    return splitmix64(key + 0x9e3779b97f4a7c15ULL * ++counter_);
}

double CounterRng::uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

}  // namespace bvr
