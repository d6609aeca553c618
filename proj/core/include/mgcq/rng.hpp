#pragma once

#include <cmath>
#include <cstdint>
#include <limits>
#include <random>

namespace mgcq {

inline std::uint64_t splitmix64(std::uint64_t& state) {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

// Every consumer of randomness owns a dedicated stream, keyed by
// (root seed, server index, purpose).  Extending one stream can never
// perturb draws made from another.
enum class StreamPurpose : std::uint64_t {
    equilibrium_draw = 1,
    reversed_events = 2,
    forward_extension = 3,
    replication = 4,
};

inline std::uint64_t substream_seed(std::uint64_t root, std::uint64_t index,
                                    StreamPurpose purpose) {
    std::uint64_t s = root;
    std::uint64_t h = splitmix64(s);
    s = h ^ ((index + 1) * 0x9e3779b97f4a7c15ULL);
    h = splitmix64(s);
    s = h ^ (static_cast<std::uint64_t>(purpose) * 0xc2b2ae3d27d4eb4fULL);
    return splitmix64(s);
}

class RandomStream {
public:
    explicit RandomStream(std::uint64_t seed) : eng_(seed) {}

    // uniform on (0,1); never returns an exact endpoint
    double uniform() {
        return (static_cast<double>(eng_() >> 11) + 0.5) * 0x1.0p-53;
    }

    double exponential(double rate) {
        if (rate <= 0.0) return std::numeric_limits<double>::infinity();
        return -std::log(uniform()) / rate;
    }

    // P(N = n) = q^n (1 - q), n >= 0
    long geometric(double q) {
        if (q <= 0.0) return 0;
        return static_cast<long>(std::floor(std::log(uniform()) / std::log(q)));
    }

private:
    std::mt19937_64 eng_;
};

inline RandomStream make_stream(std::uint64_t root, std::uint64_t index,
                                StreamPurpose purpose) {
    return RandomStream(substream_seed(root, index, purpose));
}

}  // namespace mgcq
