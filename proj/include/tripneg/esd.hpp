// esd.hpp — sudden-death, revival and freezing detectors on negativity tables

#pragma once

#include <algorithm>
#include <cmath>
#include <span>
#include <vector>

#include "tripneg/entanglement.hpp"

namespace tripneg {

// N3 below this counts as dead; exact zeros are out of reach in floating point.
inline constexpr double kDeathThreshold = 1e-6;
inline constexpr double kRevivalThreshold = 1e-3;
inline constexpr double kFreezeTolerance = 0.1;

struct DeathInterval {
    double start{0.0};  // first dead sample
    double end{0.0};    // last dead sample
    bool revival{false};
};

// Maximal runs of samples with N3 < 1e-6. A run revives if N3 exceeds 1e-3 at
// any later sample.
inline std::vector<DeathInterval> detect_esd(std::span<const NegativityRecord> table) {
    std::vector<DeathInterval> out;
    std::size_t i = 0;
    while (i < table.size()) {
        if (!(table[i].n3 < kDeathThreshold)) {
            ++i;
            continue;
        }
        std::size_t j = i;
        while (j + 1 < table.size() && table[j + 1].n3 < kDeathThreshold) ++j;
        DeathInterval d{table[i].t, table[j].t, false};
        d.revival = std::any_of(table.begin() + static_cast<std::ptrdiff_t>(j) + 1, table.end(),
                                [](const NegativityRecord& r) { return r.n3 > kRevivalThreshold; });
        out.push_back(d);
        i = j + 1;
    }
    return out;
}

// N3 stays within `tolerance` (relative) of its first value across the table.
inline bool is_frozen(std::span<const NegativityRecord> table, double tolerance = kFreezeTolerance) {
    if (table.empty()) return false;
    const double n0 = table.front().n3;
    return std::all_of(table.begin(), table.end(), [&](const NegativityRecord& r) {
        return std::abs(r.n3 - n0) <= tolerance * n0;
    });
}

}  // namespace tripneg
