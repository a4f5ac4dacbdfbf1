#include "catcode/conv_code.hpp"

#include <bit>

namespace catcode {

int ConvCodeSpec::kept_per_period() const {
    if (puncture.empty()) return static_cast<int>(generators.size());
    int kept = 0;
    for (const auto& row : puncture)
        for (std::uint8_t keep : row) kept += keep ? 1 : 0;
    return kept;
}

bool ConvCodeSpec::keeps(std::size_t g, std::size_t step) const {
    if (puncture.empty()) return true;
    return puncture[g][step % puncture[g].size()] != 0;
}

std::size_t ConvCodeSpec::kept_in_steps(std::size_t steps) const {
    if (puncture.empty()) return steps * generators.size();
    std::size_t p = puncture[0].size();
    std::size_t per_period = static_cast<std::size_t>(kept_per_period());
    std::size_t total = (steps / p) * per_period;
    for (std::size_t c = 0; c < steps % p; ++c)
        for (const auto& row : puncture) total += row[c] ? 1 : 0;
    return total;
}

void ConvCodeSpec::validate() const {
    require(memory >= 1 && memory <= 16, Errc::invalid_code, "memory out of range");
    require(!generators.empty() && generators.size() <= 8, Errc::invalid_code,
            "need between 1 and 8 generators");
    std::uint32_t reg_mask = (2u << memory) - 1u;
    for (std::uint32_t g : generators)
        require(g != 0 && g <= reg_mask, Errc::invalid_code, "generator does not fit the register");
    if (!puncture.empty()) {
        require(puncture.size() == generators.size(), Errc::invalid_code,
                "puncturing rows must match generators");
        std::size_t p = puncture[0].size();
        require(p >= 1, Errc::invalid_code, "empty puncturing period");
        for (const auto& row : puncture) {
            require(row.size() == p, Errc::invalid_code, "ragged puncturing matrix");
            for (std::uint8_t v : row)
                require(v == 0 || v == 1, Errc::invalid_code, "puncturing entries must be 0/1");
        }
    }
    int kept = kept_per_period();
    require(kept >= 1, Errc::invalid_code, "puncturing keeps no output");
    // Nominal rate must equal inputs-per-period / outputs-kept-per-period.
    require(Rate(period(), kept) == rate, Errc::invalid_code,
            "nominal rate " + rate.str() + " does not match puncturing (" +
                std::to_string(period()) + " in / " + std::to_string(kept) + " out)");
}

BitVec conv_encode(const BitVec& payload, const ConvCodeSpec& spec) {
    require(!payload.empty(), Errc::empty_payload, "cannot encode an empty payload");
    std::size_t steps = payload.size() + static_cast<std::size_t>(spec.memory);
    BitVec out;
    out.reserve(spec.kept_in_steps(steps));
    std::uint32_t state = 0;
    std::uint32_t state_mask = (1u << spec.memory) - 1u;
    for (std::size_t t = 0; t < steps; ++t) {
        std::uint32_t bit = t < payload.size() ? payload[t] : 0u;
        std::uint32_t reg = (state << 1) | bit;
        for (std::size_t g = 0; g < spec.generators.size(); ++g)
            if (spec.keeps(g, t))
                out.push_back(static_cast<std::uint8_t>(std::popcount(reg & spec.generators[g]) & 1));
        state = reg & state_mask;
    }
    return out;
}

BitVec viterbi_decode(const BitVec& received, const ConvCodeSpec& spec, std::size_t payload_len) {
    require(payload_len >= 1, Errc::empty_payload, "payload length must be positive");
    std::size_t steps = payload_len + static_cast<std::size_t>(spec.memory);
    require(received.size() == spec.kept_in_steps(steps), Errc::length_mismatch,
            "received length does not match the codeword length for this payload size");

    const std::size_t n_gen = spec.generators.size();
    const int s_count = 1 << spec.memory;
    const std::uint32_t state_mask = static_cast<std::uint32_t>(s_count - 1);
    constexpr std::uint32_t kInf = 0x3fffffffu;

    // Branch outputs for every (state, input) register value, one bit per generator.
    std::vector<std::uint8_t> branch_out(static_cast<std::size_t>(s_count) * 2);
    for (std::uint32_t reg = 0; reg < branch_out.size(); ++reg) {
        std::uint8_t bits = 0;
        for (std::size_t g = 0; g < n_gen; ++g)
            bits |= static_cast<std::uint8_t>((std::popcount(reg & spec.generators[g]) & 1) << g);
        branch_out[reg] = bits;
    }

    // Re-expand the punctured stream into per-step (expected bits, care mask);
    // punctured positions stay outside the care mask and cost nothing.
    std::vector<std::uint8_t> expect(steps, 0), care(steps, 0);
    {
        std::size_t pos = 0;
        for (std::size_t t = 0; t < steps; ++t) {
            for (std::size_t g = 0; g < n_gen; ++g) {
                if (!spec.keeps(g, t)) continue;
                care[t] |= static_cast<std::uint8_t>(1u << g);
                expect[t] |= static_cast<std::uint8_t>((received[pos] & 1u) << g);
                ++pos;
            }
        }
    }

    std::vector<std::uint32_t> pm(static_cast<std::size_t>(s_count), kInf);
    std::vector<std::uint32_t> pm_next(static_cast<std::size_t>(s_count), kInf);
    pm[0] = 0;
    // Per step and landing state: the predecessor bit shifted out of the register.
    std::vector<std::uint8_t> back(steps * static_cast<std::size_t>(s_count));

    for (std::size_t t = 0; t < steps; ++t) {
        std::fill(pm_next.begin(), pm_next.end(), kInf);
        std::uint8_t exp_t = expect[t];
        std::uint8_t care_t = care[t];
        std::uint32_t max_input = t < payload_len ? 1u : 0u;  // tail inputs are zero
        std::uint8_t* back_t = back.data() + t * static_cast<std::size_t>(s_count);
        for (int s = 0; s < s_count; ++s) {
            std::uint32_t base = pm[static_cast<std::size_t>(s)];
            if (base >= kInf) continue;
            std::uint32_t lost = static_cast<std::uint32_t>(s) >> (spec.memory - 1);
            for (std::uint32_t b = 0; b <= max_input; ++b) {
                std::uint32_t reg = (static_cast<std::uint32_t>(s) << 1) | b;
                std::uint32_t metric =
                    base + static_cast<std::uint32_t>(
                               std::popcount(static_cast<unsigned>((branch_out[reg] ^ exp_t) & care_t)));
                std::uint32_t ns = reg & state_mask;
                if (metric < pm_next[ns]) {
                    pm_next[ns] = metric;
                    back_t[ns] = static_cast<std::uint8_t>(lost);
                }
            }
        }
        pm.swap(pm_next);
    }

    require(pm[0] < kInf, Errc::internal, "no surviving zero-terminated path");

    BitVec payload(payload_len);
    std::uint32_t s = 0;
    for (std::size_t t = steps; t-- > 0;) {
        std::uint8_t lost = back[t * static_cast<std::size_t>(s_count) + s];
        if (t < payload_len) payload[t] = static_cast<std::uint8_t>(s & 1u);
        s = (s >> 1) | (static_cast<std::uint32_t>(lost) << (spec.memory - 1));
    }
    return payload;
}

}  // namespace catcode
