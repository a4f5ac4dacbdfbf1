#include <doctest.h>

#include "catcode/crc.hpp"
#include "catcode/errors.hpp"
#include "catcode/rng.hpp"

#include "helpers.hpp"

using namespace catcode;

TEST_CASE("known check values") {
    BitVec msg = bits_from_ascii("123456789");
    CHECK(crc16(msg, CrcSpec{}) == 0x31C3);

    CrcSpec reflected;
    reflected.msb_first = false;
    // reflected register convention over LSB-first message bits
    BitVec lsb;
    for (unsigned char c : std::string("123456789"))
        for (int b = 0; b < 8; ++b) lsb.push_back((c >> b) & 1);
    CHECK(crc16(lsb, reflected) == 0x2189);
}

TEST_CASE("zero payload and linearity") {
    BitVec zeros(64, 0);
    CHECK(crc16(zeros, CrcSpec{}) == 0);

    Rng rng(99);
    for (int t = 0; t < 200; ++t) {
        std::size_t n = 8 + rng.next_below(120);
        BitVec a = testutil::random_bits(n, 1000 + t);
        BitVec b = testutil::random_bits(n, 5000 + t);
        BitVec x(n);
        for (std::size_t i = 0; i < n; ++i) x[i] = a[i] ^ b[i];
        CHECK((crc16(a, CrcSpec{}) ^ crc16(b, CrcSpec{})) == crc16(x, CrcSpec{}));
    }
}

TEST_CASE("append and check round trip") {
    for (bool msb : {true, false}) {
        CrcSpec spec;
        spec.msb_first = msb;
        BitVec payload = testutil::random_bits(100, msb ? 7 : 8);
        BitVec frame = crc_append(payload, spec);
        CHECK(frame.size() == 116);
        CHECK(crc_check(frame, spec));
    }
    CHECK_THROWS_AS(crc_append(BitVec{}, CrcSpec{}), Error);
    CHECK_THROWS_AS(crc_check(BitVec(16, 0), CrcSpec{}), Error);  // nothing but the word
}

TEST_CASE("single-bit flips always detected") {
    BitVec frame = crc_append(testutil::random_bits(64, 42), CrcSpec{});
    for (std::size_t i = 0; i < frame.size(); ++i) {
        frame[i] ^= 1;
        CHECK_FALSE(crc_check(frame, CrcSpec{}));
        frame[i] ^= 1;
    }
}

TEST_CASE("bursts up to 16 bits always detected") {
    BitVec frame = crc_append(testutil::random_bits(120, 43), CrcSpec{});
    Rng rng(4242);
    for (int t = 0; t < 2000; ++t) {
        BitVec hit = frame;
        std::size_t len = 1 + rng.next_below(16);
        std::size_t at = rng.next_below(hit.size() - len + 1);
        hit[at] ^= 1;  // nonzero burst endpoints
        hit[at + len - 1] ^= 1;
        for (std::size_t i = at + 1; i + 1 < at + len; ++i) hit[i] ^= rng.next_bit();
        if (len == 1) hit[at] ^= 1;  // the two flips above cancelled; re-flip
        CHECK_FALSE(crc_check(hit, CrcSpec{}));
    }
}
