#pragma once

#include <cstdint>
#include <limits>

namespace fiegarch {

/// splitmix64 finalizer.
constexpr std::uint64_t mix64(std::uint64_t x) noexcept {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

/// Seed for stream `b` under base seed `a`; chained for several indices.
constexpr std::uint64_t derive_seed(std::uint64_t base, std::uint64_t index) noexcept {
    return mix64(mix64(base) ^ (index * 0xd1b54a32d192ed03ULL + 0x8cb92ba72f3d8dd7ULL));
}

constexpr std::uint64_t derive_seed(std::uint64_t base, std::uint64_t i, std::uint64_t j) noexcept {
    return derive_seed(derive_seed(base, i), j);
}

/// Counter-based generator: output n is mix64(key + n * golden). Streams with
/// different keys are independent and any position can be reached directly.
class CounterRng {
public:
    using result_type = std::uint64_t;

    explicit constexpr CounterRng(std::uint64_t seed) noexcept : key_(mix64(seed)) {}

    static constexpr result_type min() noexcept { return 0; }
    static constexpr result_type max() noexcept { return std::numeric_limits<result_type>::max(); }

    constexpr result_type operator()() noexcept {
        return mix64(key_ + 0x9e3779b97f4a7c15ULL * (counter_++));
    }

    /// Uniform on (0, 1) with 53 random bits; never returns 0.
    double uniform_open() noexcept {
        const std::uint64_t bits = (*this)() >> 11;
        return (static_cast<double>(bits) + 0.5) * 0x1.0p-53;
    }

    [[nodiscard]] constexpr std::uint64_t position() const noexcept { return counter_; }

private:
    std::uint64_t key_;
    std::uint64_t counter_ = 0;
};

}  // namespace fiegarch
