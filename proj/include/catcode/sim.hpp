#pragma once

#include <cstdint>
#include <vector>

#include "catcode/analysis.hpp"
#include "catcode/framing.hpp"
#include "catcode/pe_table.hpp"
#include "catcode/rd_curve.hpp"

namespace catcode {

// end_to_end pushes real bits through encode -> channel -> decode; idealized
// draws each chunk's failure as an independent coin using the failure table.
enum class SimMode { end_to_end, idealized };

const char* sim_mode_name(SimMode mode);
SimMode sim_mode_from_name(const std::string& name);

struct TrialConfig {
    Policy policy;
    double eps0 = 0.0;
    std::uint64_t trials = 1;
    SimMode mode = SimMode::end_to_end;
    std::uint64_t seed = 0;

    void validate() const;
};

struct TrialRow {
    std::uint64_t trial = 0;
    int decoded_chunks = 0;
    double distortion = 0.0;
};

struct EmpiricalReport {
    std::uint64_t trials = 0;
    double mean = 0.0;
    double variance = 0.0;       // unbiased sample variance
    double std_error = 0.0;      // of the mean
    double fourth_central = 0.0; // for variance confidence intervals
    std::vector<std::uint64_t> level_histogram;  // index = decoded chunk count
    std::uint64_t undetected_errors = 0;         // end_to_end only

    // Standard error of the sample variance (normal-free moment formula).
    double variance_std_error() const;
};

// pe table is only consulted in idealized mode. When per_trial is non-null the
// per-trial rows are appended in trial order.
EmpiricalReport run_trials(const TrialConfig& config, const CodeSet& set, const CrcSpec& crc,
                           const PeTable* table, const RdCurve& curve, unsigned threads = 1,
                           std::vector<TrialRow>* per_trial = nullptr);

struct GapReport {
    EmpiricalReport end_to_end;
    EmpiricalReport idealized;
    double mean_gap = 0.0;
    double mean_gap_se = 0.0;  // combined standard error
    double var_gap = 0.0;
    double var_gap_se = 0.0;
};

// Matched-trial comparison of the two modes; quantifies how far the
// independent-failure approximation sits from the real decoder.
GapReport assumption_gap(const Policy& policy, double eps0, std::uint64_t trials,
                         const PeTable& table, const RdCurve& curve, const CodeSet& set,
                         const CrcSpec& crc, std::uint64_t seed, unsigned threads = 1);

}  // namespace catcode
