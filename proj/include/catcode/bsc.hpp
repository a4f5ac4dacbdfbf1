#pragma once

#include <cstdint>

#include "catcode/bits.hpp"
#include "catcode/errors.hpp"
#include "catcode/rng.hpp"

namespace catcode {

// Memoryless binary symmetric channel. The noise stream for a given trial is a
// pure function of (seed, trial_index), never of scheduling.
struct BscChannel {
    double eps0 = 0.0;
    std::uint64_t seed = 0;

    void validate() const {
        require(eps0 >= 0.0 && eps0 <= 0.5, Errc::invalid_value,
                "crossover probability must lie in [0, 0.5]");
    }
};

inline BitVec transmit(const BitVec& bits, const BscChannel& channel, std::uint64_t trial_index) {
    channel.validate();
    BitVec out = bits;
    if (channel.eps0 == 0.0) return out;
    Rng rng = Rng::derive(channel.seed, tag::channel, trial_index);
    for (auto& bit : out)
        if (rng.next_u01() < channel.eps0) bit ^= 1u;
    return out;
}

}  // namespace catcode
