#include "catcode/framing.hpp"

#include <algorithm>

#include "catcode/rng.hpp"

namespace catcode {

const char* budget_mode_name(BudgetMode mode) {
    return mode == BudgetMode::idealized ? "idealized" : "exact";
}

BudgetMode budget_mode_from_name(const std::string& name) {
    if (name == "idealized") return BudgetMode::idealized;
    if (name == "exact") return BudgetMode::exact;
    throw_error(Errc::bad_file, "unknown budget mode '" + name + "'");
}

int ChunkPlan::total_chunks() const {
    int total = 0;
    for (int count : m) total += count;
    return total;
}

void ChunkPlan::validate() const {
    require(stages >= 1, Errc::invalid_plan, "need at least one stage");
    require(static_cast<int>(m.size()) == stages, Errc::invalid_plan,
            "chunk-count vector does not match the stage count");
    for (int count : m)
        require(count >= 1, Errc::invalid_plan, "every stage needs at least one chunk");
    require(n_r >= 0, Errc::invalid_plan, "detection overhead cannot be negative");
    require(upsilon > n_r, Errc::invalid_plan,
            "chunk size must exceed the detection overhead");
    require(n_samples >= 1, Errc::invalid_plan, "sample count must be positive");
    require(tail_bits.empty() || tail_bits.size() == m.size(), Errc::invalid_plan,
            "per-stage tail list does not match the stage count");
}

void Policy::validate(const CodeSet& set) const {
    plan.validate();
    require(static_cast<int>(codes.size()) == plan.stages, Errc::invalid_plan,
            "per-stage code list does not match the stage count");
    for (const Rate& r : codes) set.by_rate(r);  // UnknownCode when absent
}

// --- budget arithmetic -------------------------------------------------------

namespace {

std::size_t encoded_payload_length(const CodeSpec& code, std::size_t payload_len) {
    if (code.kind == CodeKind::conv) return code.conv.encoded_length(payload_len);
    // Table-driven codes carry no tail; length is payload marked up by the rate.
    std::size_t num = static_cast<std::size_t>(code.rate.num);
    std::size_t den = static_cast<std::size_t>(code.rate.den);
    return (payload_len * den + num - 1) / num;
}

}  // namespace

std::size_t realized_outer_length(const ChunkPlan& plan, const std::vector<Rate>& codes,
                                  const CodeSet& set) {
    std::size_t inner = 0;
    for (int l = 0; l < plan.stages; ++l) {
        std::size_t payload = inner + static_cast<std::size_t>(plan.m[static_cast<std::size_t>(l)]) *
                                          static_cast<std::size_t>(plan.upsilon);
        inner = encoded_payload_length(set.by_rate(codes[static_cast<std::size_t>(l)]), payload);
    }
    return inner;
}

double transmission_rate(const ChunkPlan& plan, const std::vector<Rate>& codes,
                         const CodeSet& set, BudgetMode mode) {
    require(static_cast<int>(codes.size()) == plan.stages, Errc::invalid_plan,
            "per-stage code list does not match the stage count");
    if (mode == BudgetMode::exact)
        return static_cast<double>(realized_outer_length(plan, codes, set)) /
               static_cast<double>(plan.n_samples);
    // Each stage's chunks pay for every code that wraps them.
    double total = 0.0;
    double expansion = 1.0;
    for (int l = plan.stages - 1; l >= 0; --l) {
        const Rate& r = codes[static_cast<std::size_t>(l)];
        expansion *= static_cast<double>(r.den) / static_cast<double>(r.num);
        total += static_cast<double>(plan.m[static_cast<std::size_t>(l)]) *
                 static_cast<double>(plan.upsilon) * expansion;
    }
    return total / static_cast<double>(plan.n_samples);
}

std::vector<ChunkPlan> plan_from_budget(int stages, int upsilon, int n_r,
                                        std::int64_t n_samples, const std::vector<Rate>& codes,
                                        const CodeSet& set, double budget, BudgetMode mode,
                                        int max_total_chunks) {
    require(budget > 0.0, Errc::invalid_plan, "budget must be positive");
    require(static_cast<int>(codes.size()) == stages, Errc::invalid_plan,
            "need one code per stage");

    ChunkPlan base;
    base.stages = stages;
    base.m.assign(static_cast<std::size_t>(stages), 1);
    base.upsilon = upsilon;
    base.n_r = n_r;
    base.n_samples = n_samples;
    base.tail_bits.clear();
    for (const Rate& r : codes) base.tail_bits.push_back(set.tail_bits(r));
    base.validate();

    auto fits = [&](const ChunkPlan& plan) {
        return transmission_rate(plan, codes, set, mode) <= budget;
    };

    std::vector<ChunkPlan> out;
    ChunkPlan probe = base;
    // Depth-first over m-vectors in lexicographic order. Cost is strictly
    // increasing in every m_i, so once the cheapest completion (all remaining
    // counts at 1) misses the budget the current digit can stop advancing.
    auto rec = [&](auto&& self, int stage) -> void {
        if (stage == stages) {
            out.push_back(probe);
            return;
        }
        for (int count = 1;; ++count) {
            probe.m[static_cast<std::size_t>(stage)] = count;
            if (max_total_chunks > 0 && probe.total_chunks() > max_total_chunks) break;
            // Remaining stages are already at their minimum of 1.
            bool feasible_prefix;
            {
                ChunkPlan cheapest = probe;
                for (int later = stage + 1; later < stages; ++later)
                    cheapest.m[static_cast<std::size_t>(later)] = 1;
                feasible_prefix = fits(cheapest);
            }
            if (!feasible_prefix) break;
            self(self, stage + 1);
        }
        probe.m[static_cast<std::size_t>(stage)] = 1;
    };
    rec(rec, 0);

    require(!out.empty(), Errc::infeasible,
            "no chunk-count vector fits a budget of " + std::to_string(budget) +
                " bits/sample for this geometry");
    return out;
}

// --- codec -------------------------------------------------------------------

std::vector<BitVec> chunkize(const BitVec& source_bits, const ChunkPlan& plan,
                             const CrcSpec& crc) {
    plan.validate();
    require(plan.n_r == kCrcBits, Errc::invalid_plan,
            "realized framing carries a 16-bit check per chunk");
    std::size_t k = static_cast<std::size_t>(plan.k());
    std::size_t total = static_cast<std::size_t>(plan.total_chunks());
    require(source_bits.size() >= k * total, Errc::source_too_short,
            "source stream shorter than the plan's payload");
    std::vector<BitVec> chunks;
    chunks.reserve(total);
    for (std::size_t c = 0; c < total; ++c) {
        BitVec info(source_bits.begin() + static_cast<std::ptrdiff_t>(c * k),
                    source_bits.begin() + static_cast<std::ptrdiff_t>((c + 1) * k));
        chunks.push_back(crc_append(info, crc));
    }
    return chunks;
}

namespace {

std::vector<std::uint32_t> stage_permutation(std::uint64_t seed, int stage, std::size_t n) {
    Rng rng(fold_seed(derive_seed(seed, tag::interleaver, static_cast<std::uint64_t>(stage)),
                      static_cast<std::uint64_t>(n)));
    return rng.permutation(n);
}

}  // namespace

BitVec interleave(const BitVec& bits, std::uint64_t seed, int stage) {
    if (stage <= 1) return bits;
    auto perm = stage_permutation(seed, stage, bits.size());
    BitVec out(bits.size());
    for (std::size_t i = 0; i < bits.size(); ++i) out[i] = bits[perm[i]];
    return out;
}

BitVec deinterleave(const BitVec& bits, std::uint64_t seed, int stage) {
    if (stage <= 1) return bits;
    auto perm = stage_permutation(seed, stage, bits.size());
    BitVec out(bits.size());
    for (std::size_t i = 0; i < bits.size(); ++i) out[perm[i]] = bits[i];
    return out;
}

namespace {

BitVec encode_one_stage(const BitVec& payload, const CodeSpec& code) {
    if (code.kind == CodeKind::conv) return conv_encode(payload, code.conv);
    require(code.rate == Rate(1, 1), Errc::unrealizable_code,
            "table-only code with rate " + code.rate.str() +
                " cannot be run through the real codec");
    return payload;
}

BitVec decode_one_stage(const BitVec& codeword, const CodeSpec& code, std::size_t payload_len) {
    if (code.kind == CodeKind::conv) return viterbi_decode(codeword, code.conv, payload_len);
    require(code.rate == Rate(1, 1), Errc::unrealizable_code,
            "table-only code with rate " + code.rate.str() +
                " cannot be run through the real codec");
    require(codeword.size() == payload_len, Errc::length_mismatch,
            "passthrough codeword length mismatch");
    return codeword;
}

}  // namespace

BitVec encode_stream(const BitVec& source_bits, const Policy& policy, const CodeSet& set,
                     const CrcSpec& crc) {
    policy.validate(set);
    const ChunkPlan& plan = policy.plan;
    std::vector<BitVec> chunks = chunkize(source_bits, plan, crc);

    BitVec codeword;
    std::size_t next_chunk = 0;
    for (int l = 0; l < plan.stages; ++l) {
        BitVec payload = std::move(codeword);
        for (int c = 0; c < plan.m[static_cast<std::size_t>(l)]; ++c, ++next_chunk)
            payload.insert(payload.end(), chunks[next_chunk].begin(), chunks[next_chunk].end());
        payload = interleave(payload, policy.interleaver_seed, l + 1);
        codeword = encode_one_stage(payload, set.by_rate(policy.codes[static_cast<std::size_t>(l)]));
    }
    return codeword;
}

DecodeOutcome decode_stream(const BitVec& received, const Policy& policy, const CodeSet& set,
                            const CrcSpec& crc) {
    policy.validate(set);
    const ChunkPlan& plan = policy.plan;
    require(plan.n_r == kCrcBits, Errc::invalid_plan,
            "realized framing carries a 16-bit check per chunk");
    require(received.size() == realized_outer_length(plan, policy.codes, set),
            Errc::length_mismatch, "received length does not match the plan");

    // Payload length of each stage = inner codeword + that stage's chunks.
    std::vector<std::size_t> payload_len(static_cast<std::size_t>(plan.stages));
    {
        std::size_t inner = 0;
        for (int l = 0; l < plan.stages; ++l) {
            payload_len[static_cast<std::size_t>(l)] =
                inner + static_cast<std::size_t>(plan.m[static_cast<std::size_t>(l)]) *
                            static_cast<std::size_t>(plan.upsilon);
            inner = encoded_payload_length(set.by_rate(policy.codes[static_cast<std::size_t>(l)]),
                                           payload_len[static_cast<std::size_t>(l)]);
        }
    }

    std::vector<BitVec> stage_chunk_bits(static_cast<std::size_t>(plan.stages));
    BitVec codeword = received;
    for (int l = plan.stages - 1; l >= 0; --l) {
        const CodeSpec& code = set.by_rate(policy.codes[static_cast<std::size_t>(l)]);
        BitVec payload = decode_one_stage(codeword, code, payload_len[static_cast<std::size_t>(l)]);
        payload = deinterleave(payload, policy.interleaver_seed, l + 1);
        std::size_t inner_len = payload.size() - static_cast<std::size_t>(plan.m[static_cast<std::size_t>(l)]) *
                                                     static_cast<std::size_t>(plan.upsilon);
        stage_chunk_bits[static_cast<std::size_t>(l)] =
            BitVec(payload.begin() + static_cast<std::ptrdiff_t>(inner_len), payload.end());
        codeword.assign(payload.begin(), payload.begin() + static_cast<std::ptrdiff_t>(inner_len));
    }

    DecodeOutcome outcome;
    std::size_t upsilon = static_cast<std::size_t>(plan.upsilon);
    std::size_t k = static_cast<std::size_t>(plan.k());
    for (int l = 0; l < plan.stages; ++l) {
        const BitVec& bits = stage_chunk_bits[static_cast<std::size_t>(l)];
        for (int c = 0; c < plan.m[static_cast<std::size_t>(l)]; ++c) {
            std::size_t base = static_cast<std::size_t>(c) * upsilon;
            BitVec frame(bits.begin() + static_cast<std::ptrdiff_t>(base),
                         bits.begin() + static_cast<std::ptrdiff_t>(base + upsilon));
            outcome.chunk_ok.push_back(crc_check(frame, crc) ? 1 : 0);
            outcome.chunk_payloads.emplace_back(frame.begin(),
                                                frame.begin() + static_cast<std::ptrdiff_t>(k));
        }
    }
    int decoded = 0;
    while (decoded < plan.total_chunks() && outcome.chunk_ok[static_cast<std::size_t>(decoded)])
        ++decoded;
    outcome.decoded_chunks = decoded;
    outcome.source_rate = static_cast<double>(decoded) * static_cast<double>(plan.k()) /
                          static_cast<double>(plan.n_samples);
    return outcome;
}

}  // namespace catcode
