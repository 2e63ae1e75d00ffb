#pragma once

#include <utility>
#include <vector>

namespace popmatch::detail {

/// Exact maximum-weight perfect assignment on a square integer matrix,
/// O(n^3) shortest augmenting paths with potentials. Returns the optimal
/// value and, per row, the assigned column. Entries around -1e9 act as
/// forbidden; they are never chosen when a fully-allowed assignment exists.
std::pair<long long, std::vector<int>> solve_max_assignment(
    const std::vector<std::vector<long long>>& weight);

constexpr long long kForbidden = -1'000'000'000LL;

}  // namespace popmatch::detail
