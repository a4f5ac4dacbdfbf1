#include <doctest.h>

#include "catcode/code_set.hpp"
#include "catcode/conv_code.hpp"
#include "catcode/errors.hpp"
#include "catcode/rng.hpp"

#include "helpers.hpp"

using namespace catcode;

namespace {

const std::vector<Rate> kLadder = {{8, 9}, {4, 5}, {2, 3}, {1, 2},
                                   {4, 9}, {4, 11}, {1, 3}, {1, 4}};

}  // namespace

TEST_CASE("encoded length bookkeeping") {
    ConvCodeSpec half = make_rcpc({1, 2});
    CHECK(half.memory == 6);
    CHECK(half.encoded_length(100) == 212);  // (100 + 6) tail steps at rate 1/2

    for (const Rate& r : kLadder) {
        ConvCodeSpec spec = make_rcpc(r);
        for (int total = 1; total <= 200; ++total) {
            std::size_t want = static_cast<std::size_t>(
                (static_cast<std::int64_t>(total) * r.den + r.num - 1) / r.num);
            CHECK(spec.kept_in_steps(total) == want);
        }
    }
}

TEST_CASE("noiseless round trip across the ladder") {
    for (const Rate& r : kLadder) {
        ConvCodeSpec spec = make_rcpc(r);
        for (std::size_t len : {8u, 64u, 129u}) {
            BitVec payload = testutil::random_bits(len, 17 * len + r.den);
            BitVec coded = conv_encode(payload, spec);
            CHECK(coded.size() == spec.encoded_length(len));
            BitVec back = viterbi_decode(coded, spec, len);
            CHECK(back == payload);
        }
    }
}

TEST_CASE("single channel flip is always corrected at rate 1/2") {
    ConvCodeSpec spec = make_rcpc({1, 2});
    BitVec payload = testutil::random_bits(64, 321);
    BitVec coded = conv_encode(payload, spec);
    for (std::size_t i = 0; i < coded.size(); ++i) {
        coded[i] ^= 1;
        CHECK(viterbi_decode(coded, spec, 64) == payload);
        coded[i] ^= 1;
    }
}

TEST_CASE("decoder interface errors") {
    ConvCodeSpec spec = make_rcpc({1, 2});
    BitVec coded = conv_encode(testutil::random_bits(10, 5), spec);
    CHECK_THROWS_AS(viterbi_decode(BitVec(coded.size() - 1, 0), spec, 10), Error);
    CHECK_THROWS_AS(viterbi_decode(coded, spec, 0), Error);
    CHECK_THROWS_AS(conv_encode(BitVec{}, spec), Error);
}

TEST_CASE("heavy corruption still yields a full-length guess") {
    ConvCodeSpec spec = make_rcpc({2, 3});
    BitVec coded = conv_encode(testutil::random_bits(80, 9), spec);
    for (std::size_t i = 0; i < coded.size(); i += 2) coded[i] ^= 1;
    BitVec guess = viterbi_decode(coded, spec, 80);
    CHECK(guess.size() == 80);
}

TEST_CASE("spec validation") {
    ConvCodeSpec bad = make_rcpc({1, 2});
    bad.generators[0] = 1u << 9;  // taps outside the register
    CHECK_THROWS_AS(bad.validate(), Error);

    ConvCodeSpec ragged = make_rcpc({1, 2});
    ragged.puncture[1].pop_back();
    CHECK_THROWS_AS(ragged.validate(), Error);

    ConvCodeSpec lying = make_rcpc({1, 2});
    lying.rate = {1, 3};
    CHECK_THROWS_AS(lying.validate(), Error);
}

TEST_CASE("encoder drives the register back to zero") {
    // With zero tail bits the last `memory` decoded steps force input 0, so a
    // decode of the unpunctured mother stream must end in state 0; check via
    // the 1/4 code where every output is kept.
    ConvCodeSpec spec = make_rcpc({1, 4});
    BitVec payload = testutil::random_bits(40, 77);
    BitVec coded = conv_encode(payload, spec);
    // re-encode the decoded payload: identical stream
    CHECK(conv_encode(viterbi_decode(coded, spec, 40), spec) == coded);
}
