#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

namespace catcode {

// One bit per element, values 0/1. Wasteful but simple; streams at desk scale
// are a few hundred kilobits and the decoders dominate runtime anyway.
using BitVec = std::vector<std::uint8_t>;

inline std::vector<std::uint8_t> bytes_from_bits(const BitVec& bits) {
    std::vector<std::uint8_t> out((bits.size() + 7) / 8, 0);
    for (std::size_t i = 0; i < bits.size(); ++i)
        if (bits[i]) out[i / 8] |= static_cast<std::uint8_t>(0x80u >> (i % 8));
    return out;
}

inline BitVec bits_from_bytes(const std::vector<std::uint8_t>& bytes, std::size_t nbits) {
    BitVec out(nbits, 0);
    for (std::size_t i = 0; i < nbits; ++i)
        out[i] = (bytes[i / 8] >> (7 - i % 8)) & 1u;
    return out;
}

// Each character contributes 8 bits, most significant first.
inline BitVec bits_from_ascii(const std::string& text) {
    BitVec out;
    out.reserve(text.size() * 8);
    for (unsigned char c : text)
        for (int b = 7; b >= 0; --b) out.push_back((c >> b) & 1u);
    return out;
}

inline void append_uint(BitVec& bits, std::uint64_t value, int width) {
    for (int b = width - 1; b >= 0; --b) bits.push_back((value >> b) & 1u);
}

inline std::uint64_t read_uint(const BitVec& bits, std::size_t pos, int width) {
    std::uint64_t v = 0;
    for (int b = 0; b < width; ++b) v = (v << 1) | bits[pos + static_cast<std::size_t>(b)];
    return v;
}

}  // namespace catcode
