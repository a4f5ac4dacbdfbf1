#include "catcode/pe_table.hpp"

#include <algorithm>
#include <cstdio>

namespace catcode {

std::string PeTable::key(const std::vector<Rate>& rates, int upsilon, double eps0) {
    std::string k;
    for (std::size_t i = 0; i < rates.size(); ++i) {
        if (i) k += ';';
        k += rates[i].str();
    }
    char buf[64];
    std::snprintf(buf, sizeof(buf), "|%d|%.17g", upsilon, eps0);
    k += buf;
    return k;
}

void PeTable::insert(const std::vector<Rate>& rates, int upsilon, double eps0, PeEntry entry) {
    require(!rates.empty(), Errc::invalid_value, "empty code sequence");
    require(entry.pe >= 0.0 && entry.pe <= 1.0, Errc::invalid_value,
            "failure probability must lie in [0, 1]");
    std::string k = key(rates, upsilon, eps0);
    auto it = index_.find(k);
    if (it != index_.end()) {
        rows_[it->second].entry = entry;
        return;
    }
    index_.emplace(std::move(k), rows_.size());
    rows_.push_back(Row{rates, upsilon, eps0, entry});
}

bool PeTable::contains(const std::vector<Rate>& rates, int upsilon, double eps0) const {
    return index_.count(key(rates, upsilon, eps0)) != 0;
}

const PeEntry& PeTable::lookup(const std::vector<Rate>& rates, int upsilon, double eps0) const {
    auto it = index_.find(key(rates, upsilon, eps0));
    if (it == index_.end())
        throw_error(Errc::missing_entry,
                    "no failure probability for sequence " + key(rates, upsilon, eps0));
    return rows_[it->second].entry;
}

double PeTable::pe_for_stage(const Policy& policy, int z, double eps0) const {
    require(z >= 1, Errc::index_out_of_range, "stage index must be positive");
    if (z > policy.plan.stages) return 1.0;
    std::vector<Rate> suffix(policy.codes.begin() + (z - 1), policy.codes.end());
    return lookup(suffix, policy.plan.upsilon, eps0).pe;
}

std::vector<double> PeTable::eps0_values() const {
    std::vector<double> out;
    for (const Row& row : rows_)
        if (std::find(out.begin(), out.end(), row.eps0) == out.end()) out.push_back(row.eps0);
    std::sort(out.begin(), out.end());
    return out;
}

}  // namespace catcode
