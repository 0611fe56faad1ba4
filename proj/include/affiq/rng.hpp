#pragma once

#include <cmath>
#include <cstdint>
#include <vector>

#include "affiq/errors.hpp"

namespace affiq {

// Counter-based splittable random stream. Every draw is a pure function of
// (seed, stream id, counter), so replaying a stream or splitting work across
// threads by sample index cannot change results.
class RngStream {
public:
    explicit RngStream(uint64_t seed, uint64_t stream_id = 0)
        : seed_(seed), stream_(stream_id), counter_(0) {}

    uint64_t seed() const { return seed_; }
    uint64_t stream_id() const { return stream_; }
    uint64_t counter() const { return counter_; }

    uint64_t next_u64() { return mix3(seed_, stream_, counter_++); }

    // [0, 1)
    double uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    // (0, 1]
    double uniform_pos() { return static_cast<double>((next_u64() >> 11) + 1) * 0x1.0p-53; }

    // Standard normal via Box-Muller; consumes exactly two draws per call.
    double gaussian() {
        const double u1 = uniform_pos();
        const double u2 = uniform();
        return std::sqrt(-2.0 * std::log(u1)) * std::cos(two_pi() * u2);
    }

    // Uniform in {0, 1, ..., bound-1} by rejection (unbiased).
    uint64_t below(uint64_t bound) {
        require(bound > 0, ErrorCode::InvalidArgument, "below(0)");
        const uint64_t limit = UINT64_MAX - UINT64_MAX % bound;
        uint64_t v = next_u64();
        while (v >= limit) v = next_u64();
        return v % bound;
    }

    // Derived stream with an independent id; counter restarts at zero.
    RngStream substream(uint64_t key) const {
        return RngStream(seed_, split_mix(split_mix(stream_ + 0x632be59bd9b4e019ULL) ^ key));
    }

private:
    static constexpr double two_pi() { return 6.283185307179586476925286766559; }

    static uint64_t split_mix(uint64_t z) {
        z += 0x9e3779b97f4a7c15ULL;
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    static uint64_t mix3(uint64_t seed, uint64_t stream, uint64_t counter) {
        uint64_t z = split_mix(seed);
        z = split_mix(z ^ stream);
        z = split_mix(z ^ counter);
        return z;
    }

    uint64_t seed_;
    uint64_t stream_;
    uint64_t counter_;
};

// count standard normals drawn from s (advances the stream).
std::vector<double> rng_draw_gaussian(RngStream& s, std::size_t count);

}  // namespace affiq
