#include <cmath>

#include <doctest.h>

#include "catcode/bsc.hpp"
#include "catcode/errors.hpp"

#include "helpers.hpp"

using namespace catcode;

namespace {

std::size_t flips(const BitVec& a, const BitVec& b) {
    std::size_t n = 0;
    for (std::size_t i = 0; i < a.size(); ++i) n += a[i] != b[i];
    return n;
}

}  // namespace

TEST_CASE("noiseless channel is the identity") {
    BscChannel ch{0.0, 99};
    BitVec in = testutil::random_bits(5000, 1);
    CHECK(transmit(in, ch, 0) == in);
}

TEST_CASE("crossover validation") {
    BitVec in(8, 0);
    CHECK_THROWS_AS(transmit(in, BscChannel{-0.01, 0}, 0), Error);
    CHECK_THROWS_AS(transmit(in, BscChannel{0.51, 0}, 0), Error);
    CHECK_NOTHROW(transmit(in, BscChannel{0.5, 0}, 0));
}

TEST_CASE("flip fraction tracks the crossover") {
    const std::size_t n = 20000;
    BitVec in = testutil::random_bits(n, 2);
    for (double eps : {0.1, 0.5}) {
        BscChannel ch{eps, 1234};
        double frac = static_cast<double>(flips(in, transmit(in, ch, 7))) / n;
        double sigma = std::sqrt(eps * (1 - eps) / n);
        CHECK(std::abs(frac - eps) <= 3 * sigma);
    }
}

TEST_CASE("deterministic per seed and trial index") {
    BitVec in = testutil::random_bits(4000, 3);
    BscChannel ch{0.2, 55};
    CHECK(transmit(in, ch, 11) == transmit(in, ch, 11));
    CHECK(transmit(in, ch, 11) != transmit(in, ch, 12));
    BscChannel other{0.2, 56};
    CHECK(transmit(in, ch, 11) != transmit(in, other, 11));
}
