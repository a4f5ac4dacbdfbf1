#include "catcode/crc.hpp"

namespace catcode {

namespace {

std::uint16_t reverse16(std::uint16_t v) {
    std::uint16_t r = 0;
    for (int i = 0; i < 16; ++i) r = static_cast<std::uint16_t>((r << 1) | ((v >> i) & 1u));
    return r;
}

}  // namespace

std::uint16_t crc16(const BitVec& payload, const CrcSpec& spec) {
    std::uint16_t reg = spec.init;
    if (spec.msb_first) {
        for (std::uint8_t bit : payload) {
            reg ^= static_cast<std::uint16_t>((bit & 1u) << 15);
            if (reg & 0x8000u)
                reg = static_cast<std::uint16_t>((reg << 1) ^ spec.poly);
            else
                reg = static_cast<std::uint16_t>(reg << 1);
        }
    } else {
        std::uint16_t rpoly = reverse16(spec.poly);
        for (std::uint8_t bit : payload) {
            reg ^= static_cast<std::uint16_t>(bit & 1u);
            if (reg & 1u)
                reg = static_cast<std::uint16_t>((reg >> 1) ^ rpoly);
            else
                reg = static_cast<std::uint16_t>(reg >> 1);
        }
    }
    return reg;
}

BitVec crc_append(const BitVec& payload, const CrcSpec& spec) {
    require(!payload.empty(), Errc::empty_payload, "cannot checksum an empty payload");
    std::uint16_t word = crc16(payload, spec);
    BitVec frame = payload;
    frame.reserve(payload.size() + kCrcBits);
    if (spec.msb_first) {
        for (int b = 15; b >= 0; --b) frame.push_back((word >> b) & 1u);
    } else {
        for (int b = 0; b < 16; ++b) frame.push_back((word >> b) & 1u);
    }
    return frame;
}

bool crc_check(const BitVec& frame, const CrcSpec& spec) {
    require(frame.size() > static_cast<std::size_t>(kCrcBits), Errc::frame_too_short,
            "frame must be longer than the check field");
    BitVec payload(frame.begin(), frame.end() - kCrcBits);
    std::uint16_t expect = crc16(payload, spec);
    std::uint16_t stored = 0;
    std::size_t base = frame.size() - kCrcBits;
    if (spec.msb_first) {
        for (int b = 0; b < 16; ++b)
            stored = static_cast<std::uint16_t>((stored << 1) | frame[base + static_cast<std::size_t>(b)]);
    } else {
        for (int b = 0; b < 16; ++b)
            stored |= static_cast<std::uint16_t>(frame[base + static_cast<std::size_t>(b)] << b);
    }
    return stored == expect;
}

}  // namespace catcode
