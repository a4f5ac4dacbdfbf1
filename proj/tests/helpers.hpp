#pragma once

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

#include "catcode/code_set.hpp"
#include "catcode/rd_curve.hpp"
#include "catcode/rng.hpp"

namespace testutil {

// Full registry entry for one punctured family member.
inline catcode::CodeSpec rcpc_spec(const catcode::Rate& rate) {
    catcode::CodeSpec spec;
    spec.rate = rate;
    spec.kind = catcode::CodeKind::conv;
    spec.conv = catcode::make_rcpc(rate);
    return spec;
}

// D(R) = peak * 2^(-2R) sampled densely enough that grid points of interest
// land exactly on samples.
inline catcode::RdCurve exp_curve(double peak = 100.0, double max_rate = 2.0,
                                  int n_points = 41) {
    return catcode::parametric_exponential(peak, max_rate, n_points);
}

// Fresh scratch directory per test binary run.
inline std::string scratch_dir() {
    static std::string dir = [] {
        char tmpl[] = "/tmp/catcode_test_XXXXXX";
        char* got = mkdtemp(tmpl);
        return std::string(got ? got : "/tmp");
    }();
    return dir;
}

inline std::string scratch_path(const std::string& name) {
    return scratch_dir() + "/" + name;
}

inline std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

inline catcode::BitVec random_bits(std::size_t n, std::uint64_t seed) {
    catcode::Rng rng(seed);
    catcode::BitVec out(n);
    for (std::size_t i = 0; i < n; ++i) out[i] = rng.next_bit();
    return out;
}

}  // namespace testutil
