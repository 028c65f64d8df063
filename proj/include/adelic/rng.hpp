#ifndef ADELIC_RNG_HPP
#define ADELIC_RNG_HPP

#include <cstdint>

namespace adelic::rng {

// splitmix64 output permutation; bijective on 64 bits.
inline constexpr std::uint64_t mix64(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

// Splittable stream key. Every random decision in the library is drawn from a
// generator keyed by a chain of child() tags (seed, purpose, prime, trial,
// variable, ...), so results are reproducible and independent of scheduling.
struct Key {
    std::uint64_t v = 0;

    constexpr Key child(std::uint64_t tag) const {
        return Key{mix64(v + 0x9E3779B97F4A7C15ULL + mix64(tag ^ 0xD1B54A32D192ED03ULL))};
    }
};

// Stream tags for the top-level purposes; children of the user seed.
inline constexpr std::uint64_t kTagDigits = 0x70616469;     // p-adic digit streams
inline constexpr std::uint64_t kTagUniform = 0x756e6966;    // uniform points on {1..n}^s
inline constexpr std::uint64_t kTagUnitCube = 0x63756265;   // points on [0,1]^s

class SplitMix64 {
public:
    explicit constexpr SplitMix64(Key k) : state_(k.v) {}

    std::uint64_t next() {
        state_ += 0x9E3779B97F4A7C15ULL;
        return mix64(state_);
    }

    // Uniform on {0, ..., bound-1}; rejection sampling, no modulo bias.
    std::uint64_t below(std::uint64_t bound) {
        const std::uint64_t limit = bound * ((~std::uint64_t{0}) / bound);
        for (;;) {
            const std::uint64_t x = next();
            if (x < limit) return x % bound;
        }
    }

    // Uniform on {1, ..., n}.
    std::uint64_t one_to(std::uint64_t n) { return 1 + below(n); }

    // Uniform on [0,1) with 64 fractional bits (nearest long double).
    long double unit_real() {
        return static_cast<long double>(next()) / 18446744073709551616.0L;
    }

private:
    std::uint64_t state_;
};

}  // namespace adelic::rng

#endif
