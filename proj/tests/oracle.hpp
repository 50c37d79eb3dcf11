// Test-only oracles, independent of the dynamic-programming path they check.
#pragma once

#include <map>
#include <vector>

#include "latwalk/walks.hpp"

namespace latwalk::testing {

// Exhaustive enumeration of all step sequences staying inside the region,
// counted by endpoint at every length 0..m_max.
inline std::vector<std::map<std::vector<long>, Int>> brute_force_counts(const StepSet& steps,
                                                                        const Region& region,
                                                                        int m_max) {
    std::vector<std::map<std::vector<long>, Int>> counts(static_cast<size_t>(m_max) + 1);
    std::vector<long> pos(steps.dim, 0);
    auto dfs = [&](auto&& self, int depth) -> void {
        counts[static_cast<size_t>(depth)][pos] += 1;
        if (depth == m_max) return;
        for (const auto& s : steps.steps) {
            for (size_t i = 0; i < steps.dim; ++i) pos[i] += s[i];
            if (region.contains(pos)) self(self, depth + 1);
            for (size_t i = 0; i < steps.dim; ++i) pos[i] -= s[i];
        }
    };
    dfs(dfs, 0);
    return counts;
}

// Brute-force refined count: walks with exactly A_i steps of kind i.
inline Int brute_force_refined(const StepSet& steps, const Region& region,
                               const std::vector<long>& A) {
    std::vector<long> pos(steps.dim, 0);
    std::vector<long> left = A;
    Int total = 0;
    auto dfs = [&](auto&& self) -> void {
        bool done = true;
        for (long l : left)
            if (l > 0) done = false;
        if (done) {
            total += 1;
            return;
        }
        for (size_t k = 0; k < steps.steps.size(); ++k) {
            if (left[k] == 0) continue;
            for (size_t i = 0; i < steps.dim; ++i) pos[i] += steps.steps[k][i];
            left[k] -= 1;
            if (region.contains(pos)) self(self);
            left[k] += 1;
            for (size_t i = 0; i < steps.dim; ++i) pos[i] -= steps.steps[k][i];
        }
    };
    dfs(dfs);
    return total;
}

}  // namespace latwalk::testing
