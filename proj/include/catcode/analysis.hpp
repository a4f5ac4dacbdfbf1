#pragma once

#include <vector>

#include "catcode/framing.hpp"
#include "catcode/pe_table.hpp"
#include "catcode/rd_curve.hpp"

namespace catcode {

struct LevelEntry {
    int stage = 0;       // 1..M+1; M+1 is the everything-arrived outcome
    int index = 0;       // chunk index within the stage, 0-based
    double rate = 0.0;   // source bits per sample at this truncation level
    double distortion = 0.0;
    double prob = 0.0;
};

struct MomentReport {
    std::vector<double> moments;  // moments[n-1] = n-th moment of distortion
    std::vector<LevelEntry> levels;

    double mean() const { return moments[0]; }
    double second_moment() const { return moments.size() > 1 ? moments[1] : 0.0; }
    double variance() const { return second_moment() - mean() * mean(); }
};

// Source rate reached when the first detection failure hits chunk `index` of
// stage `stage` (levels() distinct outcomes; stage M+1/index 0 means a clean
// transmission). IndexOutOfRange on invalid coordinates.
double level_rate(const ChunkPlan& plan, int stage, int index);

// Probability of that truncation outcome under per-stage independent chunk
// failures.
double level_prob(const Policy& policy, const PeTable& table, double eps0, int stage, int index);

// Exact distortion moments 1..max_moment of the truncated reconstruction.
MomentReport compute_moments(const Policy& policy, const PeTable& table, double eps0,
                             const RdCurve& curve, int max_moment = 2);

// Independent check: enumerates every per-chunk failure pattern (2^total).
// TooManyChunks above 20 total chunks.
MomentReport brute_force_moments(const Policy& policy, const PeTable& table, double eps0,
                                 const RdCurve& curve, int max_moment = 2);

}  // namespace catcode
