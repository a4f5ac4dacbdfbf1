#include <doctest.h>

#include "catcode/code_set.hpp"
#include "catcode/errors.hpp"
#include "helpers.hpp"

using namespace catcode;

TEST_CASE("default family inventory") {
    CodeSet set = default_code_set();
    CHECK(set.size() == 9);
    for (const Rate& r : std::vector<Rate>{
             {8, 9}, {4, 5}, {2, 3}, {1, 2}, {4, 9}, {4, 11}, {1, 3}, {1, 4}}) {
        CHECK(set.contains(r));
        CHECK(set.by_rate(r).kind == CodeKind::conv);
        CHECK(set.tail_bits(r) == 6);
    }
    CHECK(set.contains({1, 1}));
    CHECK(set.by_rate({1, 1}).kind == CodeKind::ideal);
    CHECK(set.tail_bits({1, 1}) == 0);
    CHECK_THROWS_AS(set.by_rate({9, 10}), Error);
}

TEST_CASE("rcpc construction") {
    ConvCodeSpec strongest = make_rcpc({1, 4});
    CHECK(strongest.memory == 6);
    CHECK(strongest.generators.size() == 4);
    CHECK(strongest.period() == 8);
    // mother code: every generator output kept at every phase
    for (const auto& row : strongest.puncture)
        for (std::uint8_t kept : row) CHECK(kept == 1);

    ConvCodeSpec weakest = make_rcpc({8, 9});
    int kept = 0;
    for (const auto& row : weakest.puncture)
        for (std::uint8_t k : row) kept += k;
    CHECK(kept == 9);  // 9 outputs per 8 inputs

    CHECK_THROWS_AS(make_rcpc({3, 7}), Error);  // 8*7/3 is not an integer
    CHECK_THROWS_AS(make_rcpc({1, 5}), Error);  // beyond the rate-1/4 mother code
}

TEST_CASE("ladder is rate-compatible") {
    // Walking from the weakest to the strongest code only ever adds kept
    // positions, never removes one.
    const std::vector<Rate> ladder = {{8, 9}, {4, 5}, {2, 3}, {1, 2},
                                      {4, 9}, {4, 11}, {1, 3}, {1, 4}};
    for (std::size_t i = 0; i + 1 < ladder.size(); ++i) {
        const auto& weak = make_rcpc(ladder[i]).puncture;
        const auto& strong = make_rcpc(ladder[i + 1]).puncture;
        for (std::size_t g = 0; g < weak.size(); ++g)
            for (std::size_t p = 0; p < weak[g].size(); ++p)
                CHECK(weak[g][p] <= strong[g][p]);
    }
}

TEST_CASE("set hygiene") {
    CodeSet set;
    set.add(testutil::rcpc_spec({1, 2}));
    CHECK_THROWS_AS(set.add(testutil::rcpc_spec({1, 2})), Error);

    CodeSpec bogus;
    bogus.kind = CodeKind::ideal;
    bogus.rate = {3, 2};  // expands? no: rate above 1 is meaningless here
    CHECK_THROWS_AS(set.add(bogus), Error);
}
