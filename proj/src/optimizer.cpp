#include "catcode/optimizer.hpp"

#include <algorithm>
#include <cmath>
#include <functional>

#include "catcode/parallel.hpp"

namespace catcode {

void SearchSpace::validate() const {
    require(stages_min >= 1 && stages_min <= stages_max, Errc::invalid_plan,
            "bad stage range");
    require(!upsilon_grid.empty(), Errc::invalid_plan, "empty chunk-size grid");
    for (int u : upsilon_grid)
        require(u > n_r, Errc::invalid_plan, "chunk sizes must exceed the detection overhead");
    require(budget > 0.0, Errc::invalid_plan, "budget must be positive");
    require(n_samples >= 1, Errc::invalid_plan, "sample count must be positive");
    require(max_total_chunks >= 1, Errc::invalid_plan, "chunk cap must be positive");
    require(max_candidates >= 1, Errc::invalid_plan, "candidate cap must be positive");
}

const char* problem_name(Problem p) {
    switch (p) {
        case Problem::p1: return "p1";
        case Problem::p2: return "p2";
        default: return "p3";
    }
}

Problem problem_from_name(const std::string& name) {
    if (name == "p1") return Problem::p1;
    if (name == "p2") return Problem::p2;
    if (name == "p3") return Problem::p3;
    throw_error(Errc::bad_file, "unknown problem '" + name + "'");
}

namespace {

// Odometer over code-rate vectors: stage 1 is the slowest digit, so the order
// is lexicographic in code-set position.
bool advance_indices(std::vector<std::size_t>& idx, std::size_t radix) {
    for (std::size_t pos = idx.size(); pos-- > 0;) {
        if (++idx[pos] < radix) return true;
        idx[pos] = 0;
    }
    return false;
}

}  // namespace

std::vector<Candidate> enumerate_candidates(const SearchSpace& space, const CodeSet& set,
                                            const PeTable& table, double eps0,
                                            const RdCurve& curve, unsigned threads) {
    space.validate();
    require(set.size() >= 1, Errc::invalid_plan, "empty code set");

    std::vector<Candidate> out;
    for (int stages = space.stages_min; stages <= space.stages_max; ++stages) {
        for (int upsilon : space.upsilon_grid) {
            std::vector<std::size_t> idx(static_cast<std::size_t>(stages), 0);
            do {
                std::vector<Rate> code_vec;
                code_vec.reserve(idx.size());
                for (std::size_t i : idx) code_vec.push_back(set.codes()[i].rate);
                std::vector<ChunkPlan> plans;
                try {
                    plans = plan_from_budget(stages, upsilon, space.n_r, space.n_samples,
                                             code_vec, set, space.budget, space.budget_mode,
                                             space.max_total_chunks);
                } catch (const Error& e) {
                    if (e.code() == Errc::infeasible) continue;  // empty cell, not a failure
                    throw;
                }
                for (ChunkPlan& plan : plans) {
                    require(static_cast<std::int64_t>(out.size()) < space.max_candidates,
                            Errc::cap_exceeded,
                            "candidate count exceeds the configured cap of " +
                                std::to_string(space.max_candidates));
                    Candidate cand;
                    cand.policy.plan = std::move(plan);
                    cand.policy.codes = code_vec;
                    cand.policy.interleaver_seed = space.interleaver_seed;
                    cand.policy.budget_mode = space.budget_mode;
                    cand.index = out.size();
                    out.push_back(std::move(cand));
                }
            } while (advance_indices(idx, set.size()));
        }
    }

    parallel_for(out.size(), threads, [&](std::size_t i) {
        out[i].report = compute_moments(out[i].policy, table, eps0, curve, 2);
        out[i].r_tr = transmission_rate(out[i].policy.plan, out[i].policy.codes, set,
                                        space.budget_mode);
    });
    return out;
}

namespace {

struct Pick {
    bool found = false;
    std::size_t at = 0;
    double primary = 0.0;
    double secondary = 0.0;
};

// Full scan with a composite key; ties fall through to enumeration order, so
// the result does not depend on how candidates were evaluated.
Pick argmin(const std::vector<Candidate>& cands,
            const std::function<bool(const Candidate&)>& admit,
            const std::function<double(const Candidate&)>& primary,
            const std::function<double(const Candidate&)>& secondary) {
    Pick best;
    for (std::size_t i = 0; i < cands.size(); ++i) {
        if (!admit(cands[i])) continue;
        double p = primary(cands[i]);
        double s = secondary(cands[i]);
        if (!best.found || p < best.primary ||
            (p == best.primary && s < best.secondary)) {
            best.found = true;
            best.at = i;
            best.primary = p;
            best.secondary = s;
        }
    }
    return best;
}

Solution finish(const Candidate& winner, Problem problem, double eps0, double objective) {
    Solution s;
    s.policy = winner.policy;
    s.report = winner.report;
    s.problem = problem;
    s.objective = objective;
    s.r_tr = winner.r_tr;
    s.eps0 = eps0;
    return s;
}

}  // namespace

Solution solve_p1(const SearchSpace& space, const CodeSet& set, const PeTable& table,
                  double eps0, const RdCurve& curve, unsigned threads) {
    auto cands = enumerate_candidates(space, set, table, eps0, curve, threads);
    Pick best = argmin(
        cands, [](const Candidate&) { return true; },
        [](const Candidate& c) { return c.report.mean(); },
        [](const Candidate& c) { return c.report.variance(); });
    require(best.found, Errc::no_feasible_policy, "no policy fits the budget");
    return finish(cands[best.at], Problem::p1, eps0, best.primary);
}

Solution solve_p2(const SearchSpace& space, const CodeSet& set, const PeTable& table,
                  double eps0, const RdCurve& curve, double gamma_d, unsigned threads) {
    auto cands = enumerate_candidates(space, set, table, eps0, curve, threads);
    require(!cands.empty(), Errc::no_feasible_policy, "no policy fits the budget");
    Pick best = argmin(
        cands, [&](const Candidate& c) { return c.report.mean() <= gamma_d; },
        [](const Candidate& c) { return c.report.variance(); },
        [](const Candidate& c) { return c.report.mean(); });
    if (!best.found) {
        double d_star = cands.front().report.mean();
        for (const auto& c : cands) d_star = std::min(d_star, c.report.mean());
        throw_error(Errc::no_feasible_policy,
                    "mean-distortion target " + std::to_string(gamma_d) +
                        " is below the achievable minimum " + std::to_string(d_star));
    }
    Solution s = finish(cands[best.at], Problem::p2, eps0, best.primary);
    s.gamma_d = gamma_d;
    s.achieved_margin = std::fabs(cands[best.at].report.mean() - gamma_d);
    return s;
}

Solution solve_p3(const SearchSpace& space, const CodeSet& set, const PeTable& table,
                  double eps0, const RdCurve& curve, double gamma_d, double zeta,
                  unsigned threads) {
    auto cands = enumerate_candidates(space, set, table, eps0, curve, threads);
    require(!cands.empty(), Errc::no_feasible_policy, "no policy fits the budget");
    Pick best = argmin(
        cands,
        [&](const Candidate& c) { return std::fabs(c.report.mean() - gamma_d) <= zeta; },
        [](const Candidate& c) { return c.report.second_moment(); },
        [](const Candidate& c) { return c.report.mean(); });
    require(best.found, Errc::no_feasible_policy,
            "no policy lands within the mean-distortion margin");
    Solution s = finish(cands[best.at], Problem::p3, eps0, best.primary);
    s.gamma_d = gamma_d;
    s.zeta = zeta;
    s.achieved_margin = std::fabs(cands[best.at].report.mean() - gamma_d);
    return s;
}

void validate_solution(const Solution& solution, const SearchSpace& space, const CodeSet& set,
                       const PeTable& table, const RdCurve& curve) {
    space.validate();
    solution.policy.validate(set);
    double r_tr = transmission_rate(solution.policy.plan, solution.policy.codes, set,
                                    space.budget_mode);
    require(r_tr <= space.budget, Errc::invalid_plan, "solution violates the budget");

    MomentReport fresh = compute_moments(solution.policy, table, solution.eps0, curve,
                                         static_cast<int>(solution.report.moments.size()));
    require(fresh.moments.size() == solution.report.moments.size(), Errc::invalid_plan,
            "moment count mismatch");
    for (std::size_t n = 0; n < fresh.moments.size(); ++n) {
        double a = fresh.moments[n], b = solution.report.moments[n];
        double scale = std::max({std::fabs(a), std::fabs(b), 1e-30});
        require(std::fabs(a - b) <= 1e-9 * scale, Errc::invalid_plan,
                "reported moments do not match a fresh evaluation");
    }
    double expect = solution.problem == Problem::p1   ? fresh.mean()
                    : solution.problem == Problem::p2 ? fresh.variance()
                                                      : fresh.second_moment();
    double obj_scale = std::max({std::fabs(expect), std::fabs(solution.objective), 1e-30});
    require(std::fabs(solution.objective - expect) <= 1e-9 * obj_scale, Errc::invalid_plan,
            "reported objective does not match a fresh evaluation");
    if (solution.problem == Problem::p2) {
        require(solution.gamma_d.has_value(), Errc::invalid_plan, "missing mean target");
        require(fresh.mean() <= *solution.gamma_d + 1e-12, Errc::invalid_plan,
                "solution violates the mean-distortion constraint");
    }
    if (solution.problem == Problem::p3) {
        require(solution.gamma_d.has_value() && solution.zeta.has_value(), Errc::invalid_plan,
                "missing margin parameters");
        require(std::fabs(fresh.mean() - *solution.gamma_d) <= *solution.zeta + 1e-12,
                Errc::invalid_plan, "solution violates the mean-distortion margin");
    }
}

CompareReport compare_solutions(const Solution& baseline, const Solution& candidate) {
    CompareReport r;
    r.mean_a = baseline.report.mean();
    r.mean_b = candidate.report.mean();
    r.var_a = baseline.report.variance();
    r.var_b = candidate.report.variance();
    r.std_a = std::sqrt(std::max(0.0, r.var_a));
    r.std_b = std::sqrt(std::max(0.0, r.var_b));
    r.psnr_a = psnr_from_mse(r.mean_a);
    r.psnr_b = psnr_from_mse(r.mean_b);
    if (r.std_a > 0.0) r.pct_decrease_std = 100.0 * (r.std_a - r.std_b) / r.std_a;
    if (r.var_a > 0.0) r.pct_decrease_var = 100.0 * (r.var_a - r.var_b) / r.var_a;
    return r;
}

}  // namespace catcode
