#include <cmath>

#include <doctest.h>

#include "catcode/code_set.hpp"
#include "catcode/errors.hpp"
#include "catcode/pe_table.hpp"

using namespace catcode;

namespace {

Policy two_stage_policy() {
    Policy policy;
    policy.plan.stages = 2;
    policy.plan.m = {1, 1};
    policy.plan.upsilon = 40;
    policy.plan.n_samples = 100;
    policy.codes = {{4, 5}, {2, 3}};
    return policy;
}

}  // namespace

TEST_CASE("table insert, lookup, and keys") {
    PeTable table;
    CHECK_FALSE(table.contains({{1, 2}}, 40, 0.05));
    table.insert({{1, 2}}, 40, 0.05, PeEntry{0.25, 100, Provenance::measured});
    CHECK(table.contains({{1, 2}}, 40, 0.05));
    CHECK(table.lookup({{1, 2}}, 40, 0.05).pe == 0.25);
    CHECK_THROWS_AS(table.lookup({{1, 2}}, 41, 0.05), Error);
    CHECK_THROWS_AS(table.lookup({{1, 3}}, 40, 0.05), Error);
    CHECK_THROWS_AS(table.lookup({{1, 2}}, 40, 0.051), Error);

    // same key updates in place
    table.insert({{1, 2}}, 40, 0.05, PeEntry{0.5, 200, Provenance::ingested});
    CHECK(table.lookup({{1, 2}}, 40, 0.05).pe == 0.5);
    CHECK(table.rows().size() == 1);

    CHECK_THROWS_AS(table.insert({{1, 2}}, 40, 0.05, PeEntry{1.5, 1, Provenance::measured}),
                    Error);
    CHECK_THROWS_AS(table.insert({}, 40, 0.05, PeEntry{0.1, 1, Provenance::measured}), Error);
}

TEST_CASE("per-stage lookup walks protection suffixes") {
    Policy policy = two_stage_policy();
    PeTable table;
    table.insert({{4, 5}, {2, 3}}, 40, 0.05, PeEntry{0.3, 100, Provenance::measured});
    table.insert({{2, 3}}, 40, 0.05, PeEntry{0.1, 100, Provenance::measured});

    CHECK(table.pe_for_stage(policy, 1, 0.05) == 0.3);
    CHECK(table.pe_for_stage(policy, 2, 0.05) == 0.1);
    CHECK(table.pe_for_stage(policy, 3, 0.05) == 1.0);  // past the last stage
    CHECK(table.pe_for_stage(policy, 9, 0.05) == 1.0);
    CHECK_THROWS_AS(table.pe_for_stage(policy, 0, 0.05), Error);
    CHECK_THROWS_AS(table.pe_for_stage(policy, 1, 0.06), Error);  // not measured
}

TEST_CASE("distinct crossover inventory") {
    PeTable table;
    table.insert({{1, 2}}, 40, 0.1, PeEntry{0.2, 10, Provenance::measured});
    table.insert({{1, 2}}, 60, 0.1, PeEntry{0.3, 10, Provenance::measured});
    table.insert({{1, 2}}, 40, 0.05, PeEntry{0.1, 10, Provenance::measured});
    CHECK(table.eps0_values() == std::vector<double>{0.05, 0.1});
}

TEST_CASE("measurement: clean channel never fails") {
    CodeSet set = default_code_set();
    PeEntry entry = estimate_pe({{1, 2}}, 40, 0.0, 50, 7, set, CrcSpec{});
    CHECK(entry.pe == 0.0);
    CHECK(entry.trials == 50);
    CHECK(entry.provenance == Provenance::measured);
}

TEST_CASE("measurement matches the uncoded closed form") {
    CodeSet set = default_code_set();
    const int upsilon = 40;
    const double eps = 0.05;
    const std::uint64_t n = 4000;
    PeEntry entry = estimate_pe({{1, 1}}, upsilon, eps, n, 11, set, CrcSpec{});
    double want = 1.0 - std::pow(1.0 - eps, upsilon);
    double sigma = std::sqrt(want * (1.0 - want) / static_cast<double>(n));
    CHECK(std::abs(entry.pe - want) <= 4 * sigma);
}

TEST_CASE("measurement is reproducible for any worker count") {
    CodeSet set = default_code_set();
    PeEntry a = estimate_pe({{2, 3}}, 40, 0.03, 300, 5, set, CrcSpec{}, 3, 1);
    PeEntry b = estimate_pe({{2, 3}}, 40, 0.03, 300, 5, set, CrcSpec{}, 3, 4);
    CHECK(a.pe == b.pe);
    PeEntry c = estimate_pe({{2, 3}}, 40, 0.03, 300, 6, set, CrcSpec{}, 3, 1);
    CHECK(a.pe != c.pe);  // seed actually matters
}

TEST_CASE("measurement input validation") {
    CodeSet set = default_code_set();
    CHECK_THROWS_AS(estimate_pe({{5, 7}}, 40, 0.05, 10, 0, set, CrcSpec{}), Error);
    CHECK_THROWS_AS(estimate_pe({{1, 2}}, 16, 0.05, 10, 0, set, CrcSpec{}), Error);
    CHECK_THROWS_AS(estimate_pe({{1, 2}}, 40, 0.7, 10, 0, set, CrcSpec{}), Error);
    CHECK_THROWS_AS(estimate_pe({{1, 2}}, 40, 0.05, 0, 0, set, CrcSpec{}), Error);
}
