#pragma once

// Plain reference computations, written without the library's kernels.

#include <cmath>
#include <cstdint>
#include <vector>

#include "fbl/functional.hpp"

namespace brute {

/// max over all 2^m sign vectors on the joint support, no pinning, no Gray code.
inline double ball_sup(const std::vector<fbl::SparseFunctional>& tuple) {
    const auto columns = fbl::joint_support(tuple);
    const std::size_t m = columns.size();
    double best = 0.0;
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << m); ++mask) {
        double total = 0.0;
        for (const auto& x : tuple) {
            double dot = 0.0;
            for (std::size_t j = 0; j < m; ++j) dot += ((mask >> j) & 1 ? -1.0 : 1.0) * x(columns[j]);
            total += std::fabs(dot);
        }
        best = std::max(best, total);
    }
    return best;
}

}  // namespace brute
