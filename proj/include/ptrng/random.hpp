#pragma once
#include <array>
#include <cstdint>

namespace ptrng {

/// Identifies a reproducible random substream. Identical (seed, stream_id)
/// pairs reproduce identical draw sequences; distinct stream_ids yield
/// statistically independent sequences from the same seed.
struct RandomStream {
    std::uint64_t seed = 0;
    std::uint64_t stream_id = 0;
};

namespace detail {

/// SplitMix64 output finalizer: a full-avalanche bijective 64-bit mix.
constexpr std::uint64_t mix64(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

/// SplitMix64 sequence generator, used only to key the main engine.
class SplitMix64 {
public:
    explicit constexpr SplitMix64(std::uint64_t state) : state_{state} {}

    constexpr std::uint64_t next() {
        state_ += 0x9E3779B97F4A7C15ULL;
        return mix64(state_);
    }

private:
    std::uint64_t state_;
};

}  // namespace detail

/// xoshiro256** engine keyed by (seed, stream_id).
///
/// Both key words are avalanched through the SplitMix64 finalizer before
/// expanding the state, so structurally related keys (seed 0, consecutive
/// stream ids, ...) still land in unrelated regions of the state space.
class Xoshiro256StarStar {
public:
    explicit Xoshiro256StarStar(RandomStream stream) {
        std::uint64_t key = detail::mix64(stream.seed ^ 0x6A09E667F3BCC909ULL);
        key = detail::mix64(key ^ stream.stream_id);
        detail::SplitMix64 expander{key};
        for (auto& word : state_) word = expander.next();
        if ((state_[0] | state_[1] | state_[2] | state_[3]) == 0)
            state_[0] = 0x9E3779B97F4A7C15ULL;  // the all-zero state is invalid
    }

    Xoshiro256StarStar(std::uint64_t seed, std::uint64_t stream_id)
        : Xoshiro256StarStar(RandomStream{seed, stream_id}) {}

    std::uint64_t next_u64() {
        const std::uint64_t result = rotl(state_[1] * 5, 7) * 9;
        const std::uint64_t t = state_[1] << 17;
        state_[2] ^= state_[0];
        state_[3] ^= state_[1];
        state_[1] ^= state_[2];
        state_[0] ^= state_[3];
        state_[2] ^= t;
        state_[3] = rotl(state_[3], 45);
        return result;
    }

    /// Uniform double in [0, 1) with 53 random bits.
    double next_double() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    bool bernoulli(double p) { return next_double() < p; }

private:
    static constexpr std::uint64_t rotl(std::uint64_t x, int k) {
        return (x << k) | (x >> (64 - k));
    }

    std::array<std::uint64_t, 4> state_{};
};

}  // namespace ptrng
