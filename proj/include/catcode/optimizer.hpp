#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "catcode/analysis.hpp"
#include "catcode/framing.hpp"

namespace catcode {

struct SearchSpace {
    int stages_min = 1;
    int stages_max = 1;
    std::vector<int> upsilon_grid;
    double budget = 0.0;            // bits per source sample
    int n_r = kCrcBits;
    std::int64_t n_samples = 1;
    int max_total_chunks = 64;      // bounds the chunk-count vectors (space definition)
    std::int64_t max_candidates = 1000000;  // honesty cap; exceeding it is an error
    BudgetMode budget_mode = BudgetMode::idealized;
    std::uint64_t interleaver_seed = 1;

    void validate() const;
};

enum class Problem { p1, p2, p3 };
const char* problem_name(Problem p);
Problem problem_from_name(const std::string& name);

struct Candidate {
    Policy policy;
    MomentReport report;
    double r_tr = 0.0;
    std::size_t index = 0;  // position in enumeration order; final tiebreak
};

// Every budget-feasible (stage count, chunk size, code vector, chunk counts)
// combination, in a fixed lexicographic order. CapExceeded once the count
// passes space.max_candidates — never a silent truncation.
std::vector<Candidate> enumerate_candidates(const SearchSpace& space, const CodeSet& set,
                                            const PeTable& table, double eps0,
                                            const RdCurve& curve, unsigned threads = 1);

struct Solution {
    Policy policy;
    MomentReport report;
    Problem problem = Problem::p1;
    double objective = 0.0;
    double r_tr = 0.0;
    double eps0 = 0.0;
    std::optional<double> gamma_d;
    std::optional<double> zeta;
    std::optional<double> achieved_margin;  // |mean - gamma_d| of the winner
};

Solution solve_p1(const SearchSpace& space, const CodeSet& set, const PeTable& table,
                  double eps0, const RdCurve& curve, unsigned threads = 1);

Solution solve_p2(const SearchSpace& space, const CodeSet& set, const PeTable& table,
                  double eps0, const RdCurve& curve, double gamma_d, unsigned threads = 1);

Solution solve_p3(const SearchSpace& space, const CodeSet& set, const PeTable& table,
                  double eps0, const RdCurve& curve, double gamma_d, double zeta,
                  unsigned threads = 1);

// Re-checks a solution against the space from scratch: budget, problem
// constraints, and the moment arithmetic. Throws on any violation.
void validate_solution(const Solution& solution, const SearchSpace& space, const CodeSet& set,
                       const PeTable& table, const RdCurve& curve);

struct CompareReport {
    double mean_a = 0.0, mean_b = 0.0;
    double std_a = 0.0, std_b = 0.0;
    double var_a = 0.0, var_b = 0.0;
    double psnr_a = 0.0, psnr_b = 0.0;
    // 100*(a-b)/a; absent when the baseline is zero.
    std::optional<double> pct_decrease_std;
    std::optional<double> pct_decrease_var;
};

CompareReport compare_solutions(const Solution& baseline, const Solution& candidate);

}  // namespace catcode
