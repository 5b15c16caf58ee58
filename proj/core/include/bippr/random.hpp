#pragma once

#include <cstdint>
#include <limits>

namespace bippr {

/// SplitMix64 finalizer; a bijective 64-bit mixing function.
constexpr std::uint64_t mix64(std::uint64_t z) noexcept {
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

/// Reproducible, splittable pseudo-random stream.
///
/// A stream is identified by (seed, stream_id). Identical identifiers give
/// identical sequences; `split(i)` derives the i-th child stream, so walk i of
/// a query can be sampled by any worker without coordination. The generator
/// is xoshiro256** with its state expanded from the identifier by SplitMix64.
/// Satisfies std::uniform_random_bit_generator.
class RandomStream {
public:
    using result_type = std::uint64_t;

    RandomStream(std::uint64_t seed, std::uint64_t stream_id) noexcept;

    std::uint64_t seed() const noexcept { return seed_; }
    std::uint64_t stream_id() const noexcept { return stream_id_; }

    /// Child stream `index`; independent of how much of *this has been consumed.
    RandomStream split(std::uint64_t index) const noexcept;

    std::uint64_t operator()() noexcept;

    /// Uniform double in [0, 1) with 53 random bits.
    double uniform() noexcept { return static_cast<double>((*this)() >> 11) * 0x1.0p-53; }

    /// Uniform integer in [0, bound); bound must be positive.
    std::uint64_t below(std::uint64_t bound) noexcept;

    static constexpr result_type min() noexcept { return 0; }
    static constexpr result_type max() noexcept { return std::numeric_limits<result_type>::max(); }

private:
    std::uint64_t seed_;
    std::uint64_t stream_id_;
    std::uint64_t state_[4];
};

}  // namespace bippr
