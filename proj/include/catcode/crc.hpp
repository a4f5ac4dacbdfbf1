#pragma once

#include <cstdint>

#include "catcode/bits.hpp"
#include "catcode/errors.hpp"

namespace catcode {

inline constexpr int kCrcBits = 16;

// Degree-16 detection code. The polynomial word carries the low 16 coefficients
// (the x^16 term is implicit). msb_first selects the register orientation; the
// check word is appended in the same orientation so append/check round-trip in
// either mode.
struct CrcSpec {
    std::uint16_t poly = 0x1021;
    std::uint16_t init = 0;
    bool msb_first = true;
};

std::uint16_t crc16(const BitVec& payload, const CrcSpec& spec);

// payload followed by the 16 check bits; EmptyPayload on empty input.
BitVec crc_append(const BitVec& payload, const CrcSpec& spec);

// FrameTooShort unless the frame is longer than the check field.
bool crc_check(const BitVec& frame, const CrcSpec& spec);

}  // namespace catcode
