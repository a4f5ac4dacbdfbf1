#pragma once

#include <cstdint>
#include <vector>

namespace catcode {

// Deterministic counter-style generator. Every consumer derives its own stream
// from (seed, purpose tag, item index), so results never depend on how work is
// split across threads. Standard-library engines are avoided on purpose: their
// distributions are implementation-defined and would break cross-run byte
// reproducibility guarantees.

inline std::uint64_t mix64(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
}

inline std::uint64_t fold_seed(std::uint64_t h, std::uint64_t word) {
    return mix64(h ^ (word + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2)));
}

inline std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t tag, std::uint64_t index) {
    std::uint64_t h = mix64(seed + 0x9e3779b97f4a7c15ull);
    h = fold_seed(h, tag);
    h = fold_seed(h, index);
    return h;
}

// Stream purposes. Values are part of the reproducibility contract: changing
// them changes every seeded output.
namespace tag {
inline constexpr std::uint64_t channel = 0x01;
inline constexpr std::uint64_t source = 0x02;
inline constexpr std::uint64_t interleaver = 0x03;
inline constexpr std::uint64_t pe_position = 0x04;
inline constexpr std::uint64_t idealized = 0x05;
inline constexpr std::uint64_t fixture = 0x06;
}  // namespace tag

class Rng {
  public:
    explicit Rng(std::uint64_t seed) : state_(seed) {}

    static Rng derive(std::uint64_t seed, std::uint64_t t, std::uint64_t index) {
        return Rng(derive_seed(seed, t, index));
    }

    std::uint64_t next_u64() {
        state_ += 0x9e3779b97f4a7c15ull;
        return mix64(state_);
    }

    // Uniform in [0, 1) with 53 random bits.
    double next_u01() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    std::uint8_t next_bit() { return static_cast<std::uint8_t>(next_u64() >> 63); }

    // Unbiased uniform integer in [0, n).
    std::uint64_t next_below(std::uint64_t n) {
        std::uint64_t threshold = (0 - n) % n;
        for (;;) {
            std::uint64_t r = next_u64();
            if (r >= threshold) return r % n;
        }
    }

    std::vector<std::uint32_t> permutation(std::size_t n) {
        std::vector<std::uint32_t> p(n);
        for (std::size_t i = 0; i < n; ++i) p[i] = static_cast<std::uint32_t>(i);
        for (std::size_t i = n; i > 1; --i) {
            std::size_t j = static_cast<std::size_t>(next_below(i));
            std::swap(p[i - 1], p[j]);
        }
        return p;
    }

  private:
    std::uint64_t state_;
};

}  // namespace catcode
