#include "catcode/code_set.hpp"

namespace catcode {

void CodeSpec::validate() const {
    require(rate.num >= 1 && rate.num <= rate.den, Errc::invalid_code,
            "code rate must lie in (0, 1]");
    if (kind == CodeKind::conv) {
        conv.validate();
        require(conv.rate == rate, Errc::invalid_code, "code rate disagrees with realization");
    }
}

CodeSet::CodeSet(std::vector<CodeSpec> codes) {
    for (auto& c : codes) add(std::move(c));
}

void CodeSet::add(CodeSpec spec) {
    spec.validate();
    require(!contains(spec.rate), Errc::invalid_code,
            "duplicate code rate " + spec.rate.str());
    codes_.push_back(std::move(spec));
}

bool CodeSet::contains(const Rate& rate) const {
    for (const auto& c : codes_)
        if (c.rate == rate) return true;
    return false;
}

const CodeSpec& CodeSet::by_rate(const Rate& rate) const {
    for (const auto& c : codes_)
        if (c.rate == rate) return c;
    throw_error(Errc::unknown_code, "no code with rate " + rate.str() + " in the set");
}

int CodeSet::tail_bits(const Rate& rate) const {
    const CodeSpec& c = by_rate(rate);
    return c.kind == CodeKind::conv ? c.conv.memory : 0;
}

namespace {

constexpr std::uint32_t kMotherGenerators[4] = {0133, 0171, 0145, 0163};
// Order in which a generator's positions are reinstated as the rate drops;
// spreads kept bits evenly across the period.
constexpr int kFillOrder[8] = {0, 4, 2, 6, 1, 5, 3, 7};

}  // namespace

ConvCodeSpec make_rcpc(const Rate& rate) {
    constexpr int kPeriod = 8;
    // Outputs kept per period: period / rate.
    require(static_cast<std::int64_t>(kPeriod) * rate.den % rate.num == 0, Errc::invalid_code,
            "rate " + rate.str() + " is not expressible over an 8-step period");
    int kept = static_cast<int>(static_cast<std::int64_t>(kPeriod) * rate.den / rate.num);
    require(kept >= kPeriod && kept <= 4 * kPeriod, Errc::invalid_code,
            "rate " + rate.str() + " outside the ladder's range");

    ConvCodeSpec spec;
    spec.memory = 6;
    spec.generators.assign(std::begin(kMotherGenerators), std::end(kMotherGenerators));
    spec.puncture.assign(4, std::vector<std::uint8_t>(kPeriod, 0));
    for (int t = 0; t < kPeriod; ++t) spec.puncture[0][t] = 1;  // first generator always on
    int remaining = kept - kPeriod;
    for (int g = 1; g < 4 && remaining > 0; ++g)
        for (int idx = 0; idx < kPeriod && remaining > 0; ++idx, --remaining)
            spec.puncture[g][kFillOrder[idx]] = 1;
    spec.rate = rate;
    spec.validate();
    return spec;
}

CodeSet default_code_set() {
    const Rate ladder[] = {Rate(8, 9), Rate(4, 5), Rate(2, 3), Rate(1, 2),
                           Rate(4, 9), Rate(4, 11), Rate(1, 3), Rate(1, 4)};
    std::vector<CodeSpec> codes;
    for (const Rate& r : ladder) {
        CodeSpec c;
        c.rate = r;
        c.kind = CodeKind::conv;
        c.conv = make_rcpc(r);
        codes.push_back(std::move(c));
    }
    CodeSpec passthrough;
    passthrough.rate = Rate(1, 1);
    passthrough.kind = CodeKind::ideal;
    codes.push_back(std::move(passthrough));
    return CodeSet(std::move(codes));
}

}  // namespace catcode
