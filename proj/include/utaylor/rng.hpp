#pragma once

#include <cstdint>

namespace utaylor {

/// Counter-based generator: the stream for (key, stream) is a pure function of
/// the pair, so walks can be generated in any order with identical results.
class CounterRng {
public:
    CounterRng(std::uint64_t key, std::uint64_t stream) noexcept;

    std::uint64_t next() noexcept;
    // Uniform in (0, 1).
    double uniform() noexcept;

private:
    std::uint64_t base_;
    std::uint64_t counter_ = 0;
};

// SplitMix64 finalizer.
std::uint64_t mix64(std::uint64_t x) noexcept;

}  // namespace utaylor
