#pragma once

#include <cstdint>
#include <limits>

namespace ctrw {

// xoshiro256** seeded through splitmix64. A stream is fully determined by
// (seed, stream index), so each Monte Carlo path owns an independent stream
// and results do not depend on how paths are scheduled across threads.
class RandomStream {
public:
    using result_type = std::uint64_t;

    explicit RandomStream(std::uint64_t seed, std::uint64_t stream = 0);

    static constexpr result_type min() { return 0; }
    static constexpr result_type max() { return std::numeric_limits<result_type>::max(); }

    result_type operator()();

    // Uniform on the open interval (0, 1); never returns 0 or 1.
    double uniform();

private:
    std::uint64_t s_[4];
};

std::uint64_t splitmix64(std::uint64_t& state);

}  // namespace ctrw
