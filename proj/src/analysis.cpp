#include "catcode/analysis.hpp"

#include <cmath>

namespace catcode {

namespace {

// Chunk failure probability per stage 1..M, plus the defined value 1 for the
// virtual stage M+1.
std::vector<double> stage_pe(const Policy& policy, const PeTable& table, double eps0) {
    std::vector<double> pe(static_cast<std::size_t>(policy.plan.stages) + 2, 1.0);
    for (int z = 1; z <= policy.plan.stages; ++z)
        pe[static_cast<std::size_t>(z)] = table.pe_for_stage(policy, z, eps0);
    return pe;
}

int stage_chunks(const ChunkPlan& plan, int stage) {
    return stage <= plan.stages ? plan.m[static_cast<std::size_t>(stage - 1)] : 1;
}

void check_level(const ChunkPlan& plan, int stage, int index) {
    require(stage >= 1 && stage <= plan.stages + 1, Errc::index_out_of_range,
            "stage out of range");
    require(index >= 0 && index < stage_chunks(plan, stage), Errc::index_out_of_range,
            "chunk index out of range for the stage");
}

// pe * (1-pe)^i * prod_{s<j} (1-pe_s)^{m_s}, with a log-space fallback once the
// direct product underflows (large chunk counts under very reliable codes).
double truncation_prob(const std::vector<double>& pe, const ChunkPlan& plan, int stage,
                       int index) {
    double lead = pe[static_cast<std::size_t>(stage)];
    double direct = lead;
    bool positive = lead > 0.0;
    auto survive = [&](double p, int count) {
        for (int c = 0; c < count; ++c) direct *= 1.0 - p;
        if (p >= 1.0 && count > 0) positive = false;
    };
    survive(pe[static_cast<std::size_t>(stage)], index);
    for (int s = 1; s < stage; ++s)
        survive(pe[static_cast<std::size_t>(s)], stage_chunks(plan, s));
    if (!positive || direct >= 1e-300) return direct;
    double log_p = std::log(lead) + static_cast<double>(index) * std::log1p(-lead);
    for (int s = 1; s < stage; ++s)
        log_p += static_cast<double>(stage_chunks(plan, s)) *
                 std::log1p(-pe[static_cast<std::size_t>(s)]);
    return std::exp(log_p);
}

double pow_int(double base, int n) {
    double out = 1.0;
    for (int i = 0; i < n; ++i) out *= base;
    return out;
}

}  // namespace

double level_rate(const ChunkPlan& plan, int stage, int index) {
    plan.validate();
    check_level(plan, stage, index);
    std::int64_t decoded = index;
    for (int s = 1; s < stage; ++s) decoded += stage_chunks(plan, s);
    return static_cast<double>(decoded) * static_cast<double>(plan.k()) /
           static_cast<double>(plan.n_samples);
}

double level_prob(const Policy& policy, const PeTable& table, double eps0, int stage,
                  int index) {
    policy.plan.validate();
    check_level(policy.plan, stage, index);
    return truncation_prob(stage_pe(policy, table, eps0), policy.plan, stage, index);
}

MomentReport compute_moments(const Policy& policy, const PeTable& table, double eps0,
                             const RdCurve& curve, int max_moment) {
    policy.plan.validate();
    if (max_moment < 2) max_moment = 2;
    std::vector<double> pe = stage_pe(policy, table, eps0);

    MomentReport report;
    report.moments.assign(static_cast<std::size_t>(max_moment), 0.0);
    for (int stage = 1; stage <= policy.plan.stages + 1; ++stage) {
        for (int index = 0; index < stage_chunks(policy.plan, stage); ++index) {
            LevelEntry entry;
            entry.stage = stage;
            entry.index = index;
            entry.rate = level_rate(policy.plan, stage, index);
            entry.distortion = curve.eval(entry.rate);
            entry.prob = truncation_prob(pe, policy.plan, stage, index);
            for (int n = 1; n <= max_moment; ++n)
                report.moments[static_cast<std::size_t>(n - 1)] +=
                    entry.prob * pow_int(entry.distortion, n);
            report.levels.push_back(entry);
        }
    }
    return report;
}

MomentReport brute_force_moments(const Policy& policy, const PeTable& table, double eps0,
                                 const RdCurve& curve, int max_moment) {
    policy.plan.validate();
    if (max_moment < 2) max_moment = 2;
    int total = policy.plan.total_chunks();
    require(total <= 20, Errc::too_many_chunks,
            "pattern enumeration is limited to 20 chunks (" + std::to_string(total) +
                " requested)");
    std::vector<double> pe = stage_pe(policy, table, eps0);

    // Stage of each chunk in transmission order.
    std::vector<int> chunk_stage;
    for (int s = 1; s <= policy.plan.stages; ++s)
        for (int c = 0; c < stage_chunks(policy.plan, s); ++c) chunk_stage.push_back(s);

    std::vector<double> level_mass(static_cast<std::size_t>(total) + 1, 0.0);
    for (std::uint64_t pattern = 0; pattern < (std::uint64_t{1} << total); ++pattern) {
        double weight = 1.0;
        int level = total;
        for (int c = 0; c < total; ++c) {
            bool fails = (pattern >> c) & 1u;
            double p = pe[static_cast<std::size_t>(chunk_stage[static_cast<std::size_t>(c)])];
            weight *= fails ? p : 1.0 - p;
            if (fails && c < level) level = c;
        }
        level_mass[static_cast<std::size_t>(level)] += weight;
    }

    MomentReport report;
    report.moments.assign(static_cast<std::size_t>(max_moment), 0.0);
    int seen = 0;
    for (int stage = 1; stage <= policy.plan.stages + 1; ++stage) {
        for (int index = 0; index < stage_chunks(policy.plan, stage); ++index) {
            int level = stage <= policy.plan.stages ? seen + index : total;
            LevelEntry entry;
            entry.stage = stage;
            entry.index = index;
            entry.rate = level_rate(policy.plan, stage, index);
            entry.distortion = curve.eval(entry.rate);
            entry.prob = level_mass[static_cast<std::size_t>(level)];
            for (int n = 1; n <= max_moment; ++n)
                report.moments[static_cast<std::size_t>(n - 1)] +=
                    entry.prob * pow_int(entry.distortion, n);
            report.levels.push_back(entry);
        }
        if (stage <= policy.plan.stages) seen += stage_chunks(policy.plan, stage);
    }
    return report;
}

}  // namespace catcode
