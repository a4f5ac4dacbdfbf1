#include "catcode/sim.hpp"

#include <algorithm>
#include <cmath>

#include "catcode/bsc.hpp"
#include "catcode/parallel.hpp"
#include "catcode/rng.hpp"

namespace catcode {

const char* sim_mode_name(SimMode mode) {
    return mode == SimMode::end_to_end ? "end_to_end" : "idealized";
}

SimMode sim_mode_from_name(const std::string& name) {
    if (name == "end_to_end") return SimMode::end_to_end;
    if (name == "idealized") return SimMode::idealized;
    throw_error(Errc::bad_file, "unknown simulation mode '" + name + "'");
}

void TrialConfig::validate() const {
    policy.plan.validate();
    require(trials >= 1, Errc::invalid_value, "need at least one trial");
    require(eps0 >= 0.0 && eps0 <= 0.5, Errc::invalid_value,
            "crossover probability must lie in [0, 0.5]");
}

double EmpiricalReport::variance_std_error() const {
    if (trials < 2) return 0.0;
    double n = static_cast<double>(trials);
    double s2 = variance;
    double inner = fourth_central - s2 * s2 * (n - 3.0) / (n - 1.0);
    return inner > 0.0 ? std::sqrt(inner / n) : 0.0;
}

namespace {

struct TrialResult {
    int decoded = 0;
    double distortion = 0.0;
    std::uint8_t undetected = 0;
};

TrialResult one_end_to_end(const TrialConfig& config, const CodeSet& set, const CrcSpec& crc,
                           const RdCurve& curve, std::uint64_t trial) {
    const ChunkPlan& plan = config.policy.plan;
    Rng source_rng = Rng::derive(config.seed, tag::source, trial);
    BitVec source(static_cast<std::size_t>(plan.source_bits()));
    for (auto& b : source) b = source_rng.next_bit();

    BscChannel channel{config.eps0, derive_seed(config.seed, tag::channel, 0)};
    BitVec sent = encode_stream(source, config.policy, set, crc);
    BitVec got = transmit(sent, channel, trial);
    DecodeOutcome outcome = decode_stream(got, config.policy, set, crc);

    // A chunk that clears its check but carries the wrong bits silently
    // corrupts the reconstruction from that point on; score the trial as
    // truncated there and surface the event in the report.
    std::size_t k = static_cast<std::size_t>(plan.k());
    int effective = outcome.decoded_chunks;
    TrialResult result;
    for (int c = 0; c < outcome.decoded_chunks; ++c) {
        const BitVec& decoded_bits = outcome.chunk_payloads[static_cast<std::size_t>(c)];
        bool match = std::equal(decoded_bits.begin(), decoded_bits.end(),
                                source.begin() + static_cast<std::ptrdiff_t>(k * static_cast<std::size_t>(c)));
        if (!match) {
            result.undetected = 1;
            effective = c;
            break;
        }
    }
    result.decoded = effective;
    result.distortion = curve.eval(static_cast<double>(effective) * static_cast<double>(plan.k()) /
                                   static_cast<double>(plan.n_samples));
    return result;
}

TrialResult one_idealized(const TrialConfig& config, const std::vector<double>& stage_pe,
                          const RdCurve& curve, std::uint64_t trial) {
    const ChunkPlan& plan = config.policy.plan;
    Rng rng = Rng::derive(config.seed, tag::idealized, trial);
    const int total = plan.total_chunks();
    int decoded = total;
    int chunk_index = 0;
    for (int s = 0; s < plan.stages && decoded == total; ++s) {
        double pe = stage_pe[static_cast<std::size_t>(s)];
        for (int c = 0; c < plan.m[static_cast<std::size_t>(s)]; ++c, ++chunk_index) {
            if (rng.next_u01() < pe) {
                decoded = chunk_index;
                break;
            }
        }
    }
    TrialResult result;
    result.decoded = decoded;
    result.distortion = curve.eval(static_cast<double>(decoded) * static_cast<double>(plan.k()) /
                                   static_cast<double>(plan.n_samples));
    return result;
}

}  // namespace

EmpiricalReport run_trials(const TrialConfig& config, const CodeSet& set, const CrcSpec& crc,
                           const PeTable* table, const RdCurve& curve, unsigned threads,
                           std::vector<TrialRow>* per_trial) {
    config.validate();
    config.policy.validate(set);

    std::vector<double> stage_pe;
    if (config.mode == SimMode::idealized) {
        require(table != nullptr, Errc::missing_entry,
                "idealized simulation needs a failure-probability table");
        for (int z = 1; z <= config.policy.plan.stages; ++z)
            stage_pe.push_back(table->pe_for_stage(config.policy, z, config.eps0));
    } else {
        // Fail fast (and deterministically) on non-realizable codes.
        for (const Rate& r : config.policy.codes) {
            const CodeSpec& code = set.by_rate(r);
            require(code.kind == CodeKind::conv || code.rate == Rate(1, 1),
                    Errc::unrealizable_code,
                    "policy uses table-only code " + r.str() +
                        "; end-to-end simulation needs realizable codes");
        }
    }

    std::size_t n = static_cast<std::size_t>(config.trials);
    std::vector<TrialResult> results(n);
    if (config.mode == SimMode::end_to_end) {
        parallel_for(n, threads, [&](std::size_t i) {
            results[i] = one_end_to_end(config, set, crc, curve, static_cast<std::uint64_t>(i));
        });
    } else {
        parallel_for(n, threads, [&](std::size_t i) {
            results[i] = one_idealized(config, stage_pe, curve, static_cast<std::uint64_t>(i));
        });
    }

    EmpiricalReport report;
    report.trials = config.trials;
    report.level_histogram.assign(static_cast<std::size_t>(config.policy.plan.total_chunks()) + 1,
                                  0);
    double sum = 0.0;
    for (const TrialResult& r : results) {
        sum += r.distortion;
        report.level_histogram[static_cast<std::size_t>(r.decoded)] += 1;
        report.undetected_errors += r.undetected;
    }
    report.mean = sum / static_cast<double>(n);
    double m2 = 0.0, m4 = 0.0;
    for (const TrialResult& r : results) {
        double d = r.distortion - report.mean;
        m2 += d * d;
        m4 += d * d * d * d;
    }
    report.variance = n > 1 ? m2 / static_cast<double>(n - 1) : 0.0;
    report.fourth_central = m4 / static_cast<double>(n);
    report.std_error = std::sqrt(std::max(0.0, report.variance) / static_cast<double>(n));

    if (per_trial) {
        per_trial->reserve(per_trial->size() + n);
        for (std::size_t i = 0; i < n; ++i)
            per_trial->push_back(TrialRow{static_cast<std::uint64_t>(i), results[i].decoded,
                                          results[i].distortion});
    }
    return report;
}

GapReport assumption_gap(const Policy& policy, double eps0, std::uint64_t trials,
                         const PeTable& table, const RdCurve& curve, const CodeSet& set,
                         const CrcSpec& crc, std::uint64_t seed, unsigned threads) {
    TrialConfig config;
    config.policy = policy;
    config.eps0 = eps0;
    config.trials = trials;
    config.seed = seed;

    GapReport gap;
    config.mode = SimMode::end_to_end;
    gap.end_to_end = run_trials(config, set, crc, &table, curve, threads);
    config.mode = SimMode::idealized;
    gap.idealized = run_trials(config, set, crc, &table, curve, threads);

    gap.mean_gap = gap.end_to_end.mean - gap.idealized.mean;
    gap.mean_gap_se = std::sqrt(gap.end_to_end.std_error * gap.end_to_end.std_error +
                                gap.idealized.std_error * gap.idealized.std_error);
    gap.var_gap = gap.end_to_end.variance - gap.idealized.variance;
    double a = gap.end_to_end.variance_std_error();
    double b = gap.idealized.variance_std_error();
    gap.var_gap_se = std::sqrt(a * a + b * b);
    return gap;
}

}  // namespace catcode
