#include <cmath>
#include <limits>

#include <doctest.h>

#include "catcode/errors.hpp"
#include "catcode/optimizer.hpp"

#include "helpers.hpp"

using namespace catcode;

namespace {

CodeSet two_code_set() {
    CodeSet set;
    CodeSpec ideal;
    ideal.kind = CodeKind::ideal;
    ideal.rate = {1, 1};
    set.add(ideal);
    set.add(testutil::rcpc_spec({1, 2}));
    return set;
}

// Entries for every stage-code vector of length <= stages_max over the set.
void fill_all_suffixes(PeTable& table, const CodeSet& set, int stages_max,
                       const std::vector<int>& upsilons, double eps0, std::uint64_t seed) {
    Rng rng(seed);
    std::vector<std::vector<Rate>> vectors = {{}};
    for (int len = 1; len <= stages_max; ++len) {
        std::vector<std::vector<Rate>> next;
        for (const auto& v : vectors) {
            if (static_cast<int>(v.size()) + 1 != len) continue;
            for (const CodeSpec& code : set.codes()) {
                auto grown = v;
                grown.push_back(code.rate);
                next.push_back(grown);
            }
        }
        for (const auto& v : next)
            for (int u : upsilons)
                if (!table.contains(v, u, eps0))
                    table.insert(v, u, eps0,
                                 PeEntry{0.05 + 0.9 * rng.next_u01(), 1000,
                                         Provenance::ingested});
        // suffixes of longer vectors are exactly the shorter vectors already added
        vectors.insert(vectors.end(), next.begin(), next.end());
    }
}

// Same coverage but every entry gets one exactly-representable value, so all
// candidate moments come out bit-identical and only the tiebreak can decide.
void fill_all_suffixes_const(PeTable& table, const CodeSet& set, int stages_max,
                             const std::vector<int>& upsilons, double eps0, double pe) {
    std::vector<std::vector<Rate>> vectors = {{}};
    for (int len = 1; len <= stages_max; ++len) {
        std::vector<std::vector<Rate>> next;
        for (const auto& v : vectors) {
            if (static_cast<int>(v.size()) + 1 != len) continue;
            for (const CodeSpec& code : set.codes()) {
                auto grown = v;
                grown.push_back(code.rate);
                next.push_back(grown);
            }
        }
        for (const auto& v : next)
            for (int u : upsilons)
                if (!table.contains(v, u, eps0))
                    table.insert(v, u, eps0, PeEntry{pe, 1000, Provenance::ingested});
        vectors.insert(vectors.end(), next.begin(), next.end());
    }
}

SearchSpace small_space() {
    SearchSpace space;
    space.stages_min = 1;
    space.stages_max = 2;
    space.upsilon_grid = {40, 60};
    space.budget = 0.9;
    space.n_samples = 400;
    space.max_total_chunks = 4;
    return space;
}

}  // namespace

TEST_CASE("a one-candidate space returns that candidate") {
    CodeSet set;
    CodeSpec ideal;
    ideal.kind = CodeKind::ideal;
    ideal.rate = {1, 1};
    set.add(ideal);

    PeTable table;
    table.insert({{1, 1}}, 40, 0.05, PeEntry{0.2, 100, Provenance::ingested});

    SearchSpace space;
    space.stages_min = 1;
    space.stages_max = 1;
    space.upsilon_grid = {40};
    space.budget = 0.6;
    space.n_samples = 100;
    RdCurve curve = testutil::exp_curve();

    auto candidates = enumerate_candidates(space, set, table, 0.05, curve);
    REQUIRE(candidates.size() == 1);
    CHECK(candidates[0].policy.plan.m == std::vector<int>{1});

    Solution sol = solve_p1(space, set, table, 0.05, curve);
    CHECK(sol.policy.plan.m == std::vector<int>{1});
    CHECK(sol.policy.codes == std::vector<Rate>{{1, 1}});
    CHECK(sol.objective == candidates[0].report.mean());
    CHECK(sol.r_tr == doctest::Approx(0.4));
}

TEST_CASE("enumeration matches an independent re-derivation") {
    CodeSet set = two_code_set();
    PeTable table;
    fill_all_suffixes(table, set, 2, {40, 60}, 0.05, 77);
    SearchSpace space = small_space();
    RdCurve curve = testutil::exp_curve();

    auto candidates = enumerate_candidates(space, set, table, 0.05, curve);
    REQUIRE(!candidates.empty());

    // independent nested loops in the documented order
    struct Key {
        int stages;
        int upsilon;
        std::vector<Rate> codes;
        std::vector<int> m;
    };
    std::vector<Key> expected;
    for (int stages = space.stages_min; stages <= space.stages_max; ++stages) {
        for (int upsilon : space.upsilon_grid) {
            std::vector<std::size_t> pick(static_cast<std::size_t>(stages), 0);
            while (true) {
                std::vector<Rate> codes;
                for (std::size_t s = 0; s < pick.size(); ++s)
                    codes.push_back(set.codes()[pick[s]].rate);
                try {
                    auto plans = plan_from_budget(stages, upsilon, space.n_r,
                                                  space.n_samples, codes, set, space.budget,
                                                  space.budget_mode, space.max_total_chunks);
                    for (const ChunkPlan& plan : plans)
                        expected.push_back({stages, upsilon, codes, plan.m});
                } catch (const Error& e) {
                    if (e.code() != Errc::infeasible) throw;
                }
                // odometer: last stage fastest
                bool wrapped = false;
                std::size_t pos = pick.size();
                while (true) {
                    if (pos == 0) {
                        wrapped = true;
                        break;
                    }
                    --pos;
                    if (++pick[pos] < set.size()) break;
                    pick[pos] = 0;
                }
                if (wrapped) break;
            }
        }
    }

    REQUIRE(candidates.size() == expected.size());
    for (std::size_t i = 0; i < expected.size(); ++i) {
        CHECK(candidates[i].index == i);
        CHECK(candidates[i].policy.plan.stages == expected[i].stages);
        CHECK(candidates[i].policy.plan.upsilon == expected[i].upsilon);
        CHECK(candidates[i].policy.codes == expected[i].codes);
        CHECK(candidates[i].policy.plan.m == expected[i].m);
    }
}

TEST_CASE("objectives equal re-enumerated minima") {
    CodeSet set = two_code_set();
    PeTable table;
    fill_all_suffixes(table, set, 2, {40, 60}, 0.05, 123);
    SearchSpace space = small_space();
    RdCurve curve = testutil::exp_curve();

    auto candidates = enumerate_candidates(space, set, table, 0.05, curve);
    double best_mean = 1e300, best_m2 = 1e300;
    for (const Candidate& c : candidates) {
        best_mean = std::min(best_mean, c.report.mean());
        best_m2 = std::min(best_m2, c.report.second_moment());
    }
    CHECK(solve_p1(space, set, table, 0.05, curve).objective == best_mean);

    double gamma = best_mean + 5.0;
    double best_var = 1e300;
    for (const Candidate& c : candidates)
        if (c.report.mean() <= gamma) best_var = std::min(best_var, c.report.variance());
    Solution p2 = solve_p2(space, set, table, 0.05, curve, gamma);
    CHECK(p2.objective == best_var);
    CHECK(p2.report.mean() <= gamma);

    Solution p3 = solve_p3(space, set, table, 0.05, curve, gamma,
                           std::numeric_limits<double>::infinity());
    CHECK(p3.objective == best_m2);
}

TEST_CASE("ties resolve to the earliest candidate") {
    CodeSet set = two_code_set();
    PeTable table;
    fill_all_suffixes_const(table, set, 2, {40, 60}, 0.05, 0.5);
    SearchSpace space = small_space();
    RdCurve flat = load_rd_curve({{0.0, 5.0}, {4.0, 5.0}}, Interp::linear);

    auto candidates = enumerate_candidates(space, set, table, 0.05, flat);
    Solution p1 = solve_p1(space, set, table, 0.05, flat);
    CHECK(p1.objective == 5.0);
    CHECK(p1.policy.plan.m == candidates[0].policy.plan.m);
    CHECK(p1.policy.codes == candidates[0].policy.codes);
    CHECK(p1.policy.plan.upsilon == candidates[0].policy.plan.upsilon);

    Solution p3 = solve_p3(space, set, table, 0.05, flat, 5.0, 0.0);
    CHECK(p3.policy.codes == candidates[0].policy.codes);
    CHECK(p3.achieved_margin.has_value());
    CHECK(*p3.achieved_margin == 0.0);
}

TEST_CASE("unreachable mean target") {
    CodeSet set = two_code_set();
    PeTable table;
    fill_all_suffixes(table, set, 2, {40, 60}, 0.05, 55);
    SearchSpace space = small_space();
    RdCurve curve = testutil::exp_curve();

    double dstar = solve_p1(space, set, table, 0.05, curve).objective;
    try {
        solve_p2(space, set, table, 0.05, curve, dstar - 0.01);
        FAIL("expected an aborted search");
    } catch (const Error& e) {
        CHECK(e.code() == Errc::no_feasible_policy);
    }
    try {
        solve_p3(space, set, table, 0.05, curve, dstar - 1.0, 0.5);
        FAIL("expected an aborted search");
    } catch (const Error& e) {
        CHECK(e.code() == Errc::no_feasible_policy);
    }
}

TEST_CASE("relaxing the mean bound never raises the best variance") {
    CodeSet set = two_code_set();
    PeTable table;
    fill_all_suffixes(table, set, 2, {40, 60}, 0.05, 2024);
    SearchSpace space = small_space();
    RdCurve curve = testutil::exp_curve();

    double dstar = solve_p1(space, set, table, 0.05, curve).objective;
    double prev = 1e300;
    for (int step = 0; step < 10; ++step) {
        double gamma = dstar + 2.0 * step;
        double sigma2 = solve_p2(space, set, table, 0.05, curve, gamma).objective;
        CHECK(sigma2 <= prev + 1e-15);
        prev = sigma2;
    }
}

TEST_CASE("candidate cap is an error, not a truncation") {
    CodeSet set = two_code_set();
    PeTable table;
    fill_all_suffixes(table, set, 2, {40, 60}, 0.05, 3);
    SearchSpace space = small_space();
    space.max_candidates = 2;
    try {
        enumerate_candidates(space, set, table, 0.05, testutil::exp_curve());
        FAIL("expected the cap to fire");
    } catch (const Error& e) {
        CHECK(e.code() == Errc::cap_exceeded);
    }
}

TEST_CASE("empty search spaces are reported as such") {
    CodeSet set = two_code_set();
    PeTable table;
    fill_all_suffixes(table, set, 1, {40}, 0.05, 4);
    SearchSpace space;
    space.stages_min = 1;
    space.stages_max = 1;
    space.upsilon_grid = {40};
    space.budget = 0.01;  // nothing fits
    space.n_samples = 100;
    try {
        solve_p1(space, set, table, 0.05, testutil::exp_curve());
        FAIL("expected an empty space");
    } catch (const Error& e) {
        CHECK(e.code() == Errc::no_feasible_policy);
    }
}

TEST_CASE("solution audit catches tampering") {
    CodeSet set = two_code_set();
    PeTable table;
    fill_all_suffixes(table, set, 2, {40, 60}, 0.05, 31);
    SearchSpace space = small_space();
    RdCurve curve = testutil::exp_curve();

    Solution sol = solve_p1(space, set, table, 0.05, curve);
    CHECK_NOTHROW(validate_solution(sol, space, set, table, curve));

    Solution lied = sol;
    lied.objective += 0.5;
    CHECK_THROWS_AS(validate_solution(lied, space, set, table, curve), Error);

    Solution over = sol;
    over.policy.plan.m[0] += 100;  // blows the budget
    CHECK_THROWS_AS(validate_solution(over, space, set, table, curve), Error);
}

TEST_CASE("side-by-side percentages") {
    auto with_var = [](double mean, double var) {
        Solution s;
        s.report.moments = {mean, var + mean * mean};
        return s;
    };

    CompareReport r = compare_solutions(with_var(10.0, 22.65), with_var(10.0, 9.53));
    REQUIRE(r.pct_decrease_var.has_value());
    CHECK(*r.pct_decrease_var == doctest::Approx(57.9249).epsilon(1e-4));
    CHECK(*r.pct_decrease_var == doctest::Approx(58.0).epsilon(0.01));

    CompareReport s =
        compare_solutions(with_var(20.0, 47.25 * 47.25), with_var(20.0, 1.88 * 1.88));
    REQUIRE(s.pct_decrease_std.has_value());
    CHECK(*s.pct_decrease_std == doctest::Approx(96.0212).epsilon(1e-4));

    CompareReport same = compare_solutions(with_var(5.0, 2.0), with_var(5.0, 2.0));
    CHECK(*same.pct_decrease_std == 0.0);
    CHECK(*same.pct_decrease_var == 0.0);
    CHECK(same.psnr_a == doctest::Approx(10.0 * std::log10(255.0 * 255.0 / 5.0)));

    CompareReport degenerate = compare_solutions(with_var(5.0, 0.0), with_var(5.0, 2.0));
    CHECK_FALSE(degenerate.pct_decrease_std.has_value());
    CHECK_FALSE(degenerate.pct_decrease_var.has_value());
}
