#pragma once

#include <cstdint>
#include <string_view>

namespace sumeta {

// SplitMix64 (Steele, Lea, Flood 2014). Chosen because the whole generator
// is a fixed 64-bit integer recurrence: results are identical on every
// platform and the state is a single counter, so streams can be derived
// and replayed cheaply. All randomness in the library flows through this
// type; nothing uses std::rand or unseeded std:: engines.
class SplitMix64 {
public:
    explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next() {
        std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ull);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
        return z ^ (z >> 31);
    }

    // Uniform draw in [0, n). Plain modulo: the bias for the n used here
    // (corpus and resample sizes, far below 2^32) is < 2^-32 and the
    // reduction is the same on every platform.
    std::uint64_t next_below(std::uint64_t n) { return next() % n; }

private:
    std::uint64_t state_;
};

inline std::uint64_t fnv1a64(std::string_view s) {
    std::uint64_t h = 0xCBF29CE484222325ull;
    for (unsigned char c : s) {
        h ^= c;
        h *= 0x100000001B3ull;
    }
    return h;
}

// Derives an independent stream seed from a base seed and a textual tag
// (e.g. a system pair). Defined as the first SplitMix64 output of
// base ^ fnv1a64(tag), so derived streams do not overlap the base stream.
inline std::uint64_t derive_seed(std::uint64_t base, std::string_view tag) {
    return SplitMix64(base ^ fnv1a64(tag)).next();
}

} // namespace sumeta
