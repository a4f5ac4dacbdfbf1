#pragma once

#include <cstdint>
#include <vector>

#include "catcode/bits.hpp"
#include "catcode/code_set.hpp"
#include "catcode/crc.hpp"
#include "catcode/errors.hpp"
#include "catcode/rational.hpp"

namespace catcode {

// `idealized` charges each stage payload by the product of the enclosing code
// rates only; `exact` uses realized codeword lengths, which additionally pay
// for trellis tails and puncturing granularity.
enum class BudgetMode { idealized, exact };

const char* budget_mode_name(BudgetMode mode);
BudgetMode budget_mode_from_name(const std::string& name);

// Geometry of one chopped concatenated transmission: stage l carries m[l-1]
// chunks of upsilon bits (k info bits + n_r detection bits each) on top of the
// previous stage's codeword.
struct ChunkPlan {
    int stages = 1;                // M
    std::vector<int> m;            // chunks per stage, size M
    int upsilon = 0;               // chunk size in bits
    int n_r = kCrcBits;            // detection bits per chunk
    std::int64_t n_samples = 1;    // source samples the stream describes
    std::vector<int> tail_bits;    // per-stage termination cost, size M

    int k() const { return upsilon - n_r; }
    int total_chunks() const;
    int levels() const { return total_chunks() + 1; }
    std::int64_t source_bits() const { return static_cast<std::int64_t>(k()) * total_chunks(); }
    void validate() const;
};

// A plan plus the per-stage code rates, innermost first.
struct Policy {
    ChunkPlan plan;
    std::vector<Rate> codes;
    std::uint64_t interleaver_seed = 0;
    BudgetMode budget_mode = BudgetMode::idealized;

    void validate(const CodeSet& set) const;
};

struct DecodeOutcome {
    int decoded_chunks = 0;               // leading chunks before the first detection failure
    std::vector<std::uint8_t> chunk_ok;   // per chunk, transmission order (stage 1 first)
    std::vector<BitVec> chunk_payloads;   // decoder's view of each chunk's k info bits
    double source_rate = 0.0;             // decoded_chunks * k / n_samples
};

// --- budget arithmetic -------------------------------------------------------

// Bits per source sample the policy costs on the wire.
double transmission_rate(const ChunkPlan& plan, const std::vector<Rate>& codes,
                         const CodeSet& set, BudgetMode mode);

// Exact outer codeword length in bits for the plan under its codes.
std::size_t realized_outer_length(const ChunkPlan& plan, const std::vector<Rate>& codes,
                                  const CodeSet& set);

// Every chunk-count vector (m_1..m_M), each >= 1, whose transmission rate fits
// the budget. Lexicographically ordered. max_total_chunks == 0 means no cap;
// a nonzero cap bounds the enumeration (it is part of the search-space
// definition, not an error). Throws Infeasible when even (1,..,1) misses.
std::vector<ChunkPlan> plan_from_budget(int stages, int upsilon, int n_r,
                                        std::int64_t n_samples, const std::vector<Rate>& codes,
                                        const CodeSet& set, double budget, BudgetMode mode,
                                        int max_total_chunks = 0);

// --- codec -------------------------------------------------------------------

// Splits the leading k*total_chunks source bits into chunks and appends each
// chunk's detection bits (computed over that chunk's k bits only).
std::vector<BitVec> chunkize(const BitVec& source_bits, const ChunkPlan& plan,
                             const CrcSpec& crc);

// Stage >= 2 payload permutation; stage 1 passes through. The permutation is a
// pure function of (seed, stage, length).
BitVec interleave(const BitVec& bits, std::uint64_t seed, int stage);
BitVec deinterleave(const BitVec& bits, std::uint64_t seed, int stage);

BitVec encode_stream(const BitVec& source_bits, const Policy& policy, const CodeSet& set,
                     const CrcSpec& crc);

DecodeOutcome decode_stream(const BitVec& received, const Policy& policy, const CodeSet& set,
                            const CrcSpec& crc);

}  // namespace catcode
