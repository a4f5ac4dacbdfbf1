#pragma once

#include <string>
#include <vector>

#include "catcode/conv_code.hpp"
#include "catcode/errors.hpp"
#include "catcode/rational.hpp"

namespace catcode {

// A code may exist only as a rate plus externally supplied failure
// probabilities ("ideal"); those are usable by the analysis and the optimizer
// but cannot be run end-to-end unless the rate is 1 (plain passthrough).
enum class CodeKind { conv, ideal };

struct CodeSpec {
    Rate rate;
    CodeKind kind = CodeKind::conv;
    ConvCodeSpec conv;  // meaningful only when kind == conv

    void validate() const;
};

class CodeSet {
  public:
    CodeSet() = default;
    explicit CodeSet(std::vector<CodeSpec> codes);

    const CodeSpec& by_rate(const Rate& rate) const;          // UnknownCode when absent
    bool contains(const Rate& rate) const;
    const std::vector<CodeSpec>& codes() const { return codes_; }
    std::size_t size() const { return codes_.size(); }
    void add(CodeSpec spec);

    int tail_bits(const Rate& rate) const;  // memory for conv codes, 0 for ideal

  private:
    std::vector<CodeSpec> codes_;
};

// Punctured descendant of the memory-6, rate-1/4 mother code (generators
// 0133, 0171, 0145, 0163 octal) over an 8-step period. Masks are nested: each
// higher-protection rate keeps a superset of the positions of every
// lower-protection rate, so one decoder family serves the whole ladder.
ConvCodeSpec make_rcpc(const Rate& rate);

// The default rate ladder {8/9, 4/5, 2/3, 1/2, 4/9, 4/11, 1/3, 1/4} plus an
// ideal rate-1 passthrough entry.
CodeSet default_code_set();

}  // namespace catcode
