#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "catcode/code_set.hpp"
#include "catcode/crc.hpp"
#include "catcode/errors.hpp"
#include "catcode/framing.hpp"
#include "catcode/rational.hpp"

namespace catcode {

enum class Provenance { measured, ingested };

struct PeEntry {
    double pe = 0.0;
    std::uint64_t trials = 0;  // 0 when the value was ingested without one
    Provenance provenance = Provenance::ingested;
};

// Chunk decoding-failure probabilities, keyed by the sequence of codes a chunk
// passes through (own stage's code first, outermost last), the chunk size, and
// the channel crossover.
class PeTable {
  public:
    void insert(const std::vector<Rate>& rates, int upsilon, double eps0, PeEntry entry);
    const PeEntry& lookup(const std::vector<Rate>& rates, int upsilon, double eps0) const;
    bool contains(const std::vector<Rate>& rates, int upsilon, double eps0) const;

    // Failure probability of a stage-z chunk under the policy (1-based z).
    // Defined as exactly 1 beyond the last stage.
    double pe_for_stage(const Policy& policy, int z, double eps0) const;

    // Distinct crossover values present, ascending.
    std::vector<double> eps0_values() const;

    static std::string key(const std::vector<Rate>& rates, int upsilon, double eps0);

    struct Row {
        std::vector<Rate> rates;
        int upsilon;
        double eps0;
        PeEntry entry;
    };
    const std::vector<Row>& rows() const { return rows_; }

  private:
    std::map<std::string, std::size_t> index_;
    std::vector<Row> rows_;
};

// Monte Carlo measurement of one table entry. The chunk under test sits at a
// uniformly random position among `frame_chunks` innermost chunks of a framed
// transmission that also carries one chunk per outer code, so the measurement
// sees the full nested decode chain. Trials use per-index derived seeds and are
// reproducible for any worker count.
PeEntry estimate_pe(const std::vector<Rate>& rates, int upsilon, double eps0,
                    std::uint64_t trials, std::uint64_t seed, const CodeSet& set,
                    const CrcSpec& crc, int frame_chunks = 3, unsigned threads = 1);

}  // namespace catcode
