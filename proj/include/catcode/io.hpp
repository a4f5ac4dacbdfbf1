#pragma once

#include <string>
#include <vector>

#include "catcode/code_set.hpp"
#include "catcode/framing.hpp"
#include "catcode/manifest.hpp"
#include "catcode/optimizer.hpp"
#include "catcode/pe_table.hpp"
#include "catcode/rd_curve.hpp"
#include "catcode/sim.hpp"

namespace catcode {

// All floats in CSV output carry 17 significant digits, and JSON numbers use
// shortest-round-trip printing, so artifacts reload to bit-identical values.
std::string fmt_double(double v);

std::string manifest_to_json(const RunManifest& manifest);

// CSV with header `rate,distortion`; lines starting with '#' are skipped.
RdCurve load_rd_csv(const std::string& path, Interp interp = Interp::linear);
void write_rd_csv(const std::string& path, const RdCurve& curve,
                  const RunManifest* manifest = nullptr);

CodeSet load_code_set_json(const std::string& path);
void write_code_set_json(const std::string& path, const CodeSet& set);

// CSV with header `rates,upsilon,eps0,pe,trials`; `rates` is ';'-joined.
PeTable load_pe_csv(const std::string& path);
void write_pe_csv(const std::string& path, const PeTable& table,
                  const RunManifest* manifest = nullptr);

struct PolicyFile {
    Policy policy;
    std::vector<CodeSpec> embedded;  // full code objects carried inline, if any
};
PolicyFile load_policy_json(const std::string& path);
void write_policy_json(const std::string& path, const Policy& policy);

// Returns the space; code_set_ref receives either "default" or a file path.
SearchSpace load_space_json(const std::string& path, std::string* code_set_ref);

void write_moment_json(const std::string& path, const MomentReport& report,
                       const RunManifest* manifest = nullptr);
void write_moment_csv(const std::string& path, const MomentReport& report,
                      const RunManifest* manifest = nullptr);
// Loaders re-verify that the level probabilities are a distribution.
MomentReport load_moment_json(const std::string& path);
MomentReport load_moment_csv(const std::string& path);

void write_solution_json(const std::string& path, const Solution& solution,
                         const RunManifest* manifest = nullptr);
Solution load_solution_json(const std::string& path);

void write_empirical_json(const std::string& path, const EmpiricalReport& report,
                          const RunManifest* manifest = nullptr);
void write_trials_csv(const std::string& path, const std::vector<TrialRow>& rows,
                      const RunManifest* manifest = nullptr);
void write_gap_json(const std::string& path, const GapReport& gap,
                    const RunManifest* manifest = nullptr);

void write_compare_csv(const std::string& path, const Solution& baseline,
                       const Solution& candidate, const CompareReport& report,
                       const RunManifest* manifest = nullptr);

// Packed big-endian-within-byte bit files; nbits == 0 reads the whole file.
void write_bit_file(const std::string& path, const BitVec& bits);
BitVec read_bit_file(const std::string& path, std::size_t nbits = 0);

}  // namespace catcode
