#pragma once

#include <cstdint>
#include <vector>

#include "catcode/bits.hpp"
#include "catcode/errors.hpp"
#include "catcode/rational.hpp"

namespace catcode {

// Zero-tail feedforward convolutional code with optional periodic puncturing.
// Register convention: reg = (state << 1) | input, so generator bit 0 taps the
// current input and bit `memory` the oldest stored bit. Appending `memory`
// zero inputs drives the trellis back to state 0, which is what lets the code
// act as a block code on each stage payload.
struct ConvCodeSpec {
    int memory = 6;
    std::vector<std::uint32_t> generators;
    // puncture[g][phase] == 1 keeps generator g's output at trellis steps
    // congruent to phase; empty matrix keeps everything.
    std::vector<std::vector<std::uint8_t>> puncture;
    Rate rate{1, 1};

    int period() const { return puncture.empty() ? 1 : static_cast<int>(puncture[0].size()); }
    int kept_per_period() const;
    bool keeps(std::size_t g, std::size_t step) const;
    std::size_t kept_in_steps(std::size_t steps) const;
    // Codeword length for a payload (tail included, puncturing applied).
    std::size_t encoded_length(std::size_t payload_len) const {
        return kept_in_steps(payload_len + static_cast<std::size_t>(memory));
    }
    void validate() const;
};

BitVec conv_encode(const BitVec& payload, const ConvCodeSpec& spec);

// Maximum-likelihood payload under the Hamming metric among zero-terminated
// paths. Punctured positions contribute nothing to any branch metric. Ties are
// resolved deterministically (lowest predecessor state, then input bit 0).
BitVec viterbi_decode(const BitVec& received, const ConvCodeSpec& spec, std::size_t payload_len);

}  // namespace catcode
