#include "utaylor/rng.hpp"

namespace utaylor {

std::uint64_t mix64(std::uint64_t x) noexcept {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30U)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27U)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31U);
}

CounterRng::CounterRng(std::uint64_t key, std::uint64_t stream) noexcept
    : base_(mix64(key ^ mix64(stream ^ 0x5851f42d4c957f2dULL))) {}

std::uint64_t CounterRng::next() noexcept { return mix64(base_ + 0x9e3779b97f4a7c15ULL * ++counter_); }

double CounterRng::uniform() noexcept {
    // 53 random bits, offset by half an ulp so 0 is never returned.
    return (static_cast<double>(next() >> 11U) + 0.5) * 0x1.0p-53;
}

}  // namespace utaylor
