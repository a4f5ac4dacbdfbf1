#include "catcode/bsc.hpp"
#include "catcode/parallel.hpp"
#include "catcode/pe_table.hpp"
#include "catcode/rng.hpp"

namespace catcode {

PeEntry estimate_pe(const std::vector<Rate>& rates, int upsilon, double eps0,
                    std::uint64_t trials, std::uint64_t seed, const CodeSet& set,
                    const CrcSpec& crc, int frame_chunks, unsigned threads) {
    require(trials >= 1, Errc::invalid_value, "need at least one trial");
    require(!rates.empty(), Errc::invalid_value, "empty code sequence");
    require(frame_chunks >= 1, Errc::invalid_value, "frame needs at least one inner chunk");
    for (const Rate& r : rates) set.by_rate(r);  // UnknownCode when absent

    // Measurement frame: the chunk under test lives in the innermost stage
    // (whose chunks pass through the entire code sequence) alongside
    // frame_chunks - 1 siblings; each outer stage carries a single chunk so the
    // nested decodes behave as they would in a real transmission.
    Policy policy;
    policy.plan.stages = static_cast<int>(rates.size());
    policy.plan.m.assign(rates.size(), 1);
    policy.plan.m[0] = frame_chunks;
    policy.plan.upsilon = upsilon;
    policy.plan.n_r = kCrcBits;
    policy.codes = rates;
    for (const Rate& r : rates) policy.plan.tail_bits.push_back(set.tail_bits(r));
    policy.plan.n_samples = policy.plan.source_bits() > 0 ? policy.plan.source_bits() : 1;
    policy.plan.validate();

    const std::size_t source_len = static_cast<std::size_t>(policy.plan.source_bits());
    BscChannel channel{eps0, derive_seed(seed, tag::channel, 0)};
    channel.validate();

    std::vector<std::uint8_t> failed(trials, 0);
    parallel_for(static_cast<std::size_t>(trials), threads, [&](std::size_t trial) {
        Rng source_rng = Rng::derive(seed, tag::source, trial);
        BitVec source(source_len);
        for (auto& b : source) b = source_rng.next_bit();

        Policy trial_policy = policy;
        trial_policy.interleaver_seed = derive_seed(seed, tag::interleaver, trial);

        BitVec sent = encode_stream(source, trial_policy, set, crc);
        BitVec got = transmit(sent, channel, trial);
        DecodeOutcome outcome = decode_stream(got, trial_policy, set, crc);

        Rng pos_rng = Rng::derive(seed, tag::pe_position, trial);
        std::size_t target = static_cast<std::size_t>(
            pos_rng.next_below(static_cast<std::uint64_t>(frame_chunks)));
        failed[trial] = outcome.chunk_ok[target] ? 0 : 1;
    });

    std::uint64_t failures = 0;
    for (std::uint8_t f : failed) failures += f;

    PeEntry entry;
    entry.pe = static_cast<double>(failures) / static_cast<double>(trials);
    entry.trials = trials;
    entry.provenance = Provenance::measured;
    return entry;
}

}  // namespace catcode
