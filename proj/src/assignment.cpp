#include "assignment.hpp"

#include <limits>
#include <stdexcept>

namespace popmatch::detail {

// Classic Jonker-Volgenant style assignment: rows are inserted one at a
// time, each via a shortest augmenting path in the reduced-cost graph.
// Minimizes cost = -weight.
std::pair<long long, std::vector<int>> solve_max_assignment(
    const std::vector<std::vector<long long>>& weight) {
    const int n = static_cast<int>(weight.size());
    for (const auto& row : weight) {
        if (static_cast<int>(row.size()) != n) {
            throw std::invalid_argument("assignment matrix must be square");
        }
    }
    if (n == 0) return {0, {}};

    constexpr long long kInf = std::numeric_limits<long long>::max() / 4;
    // 1-based arrays; p[j] = row matched to column j, column 0 is virtual.
    std::vector<long long> u(n + 1, 0), v(n + 1, 0);
    std::vector<int> p(n + 1, 0), way(n + 1, 0);

    for (int i = 1; i <= n; ++i) {
        p[0] = i;
        int j0 = 0;
        std::vector<long long> minv(n + 1, kInf);
        std::vector<char> used(n + 1, 0);
        do {
            used[j0] = 1;
            const int i0 = p[j0];
            long long delta = kInf;
            int j1 = -1;
            for (int j = 1; j <= n; ++j) {
                if (used[j]) continue;
                const long long cur = -weight[i0 - 1][j - 1] - u[i0] - v[j];
                if (cur < minv[j]) {
                    minv[j] = cur;
                    way[j] = j0;
                }
                if (minv[j] < delta) {
                    delta = minv[j];
                    j1 = j;
                }
            }
            for (int j = 0; j <= n; ++j) {
                if (used[j]) {
                    u[p[j]] += delta;
                    v[j] -= delta;
                } else {
                    minv[j] -= delta;
                }
            }
            j0 = j1;
        } while (p[j0] != 0);
        do {
            const int j1 = way[j0];
            p[j0] = p[j1];
            j0 = j1;
        } while (j0 != 0);
    }

    std::vector<int> row_to_col(n, -1);
    long long value = 0;
    for (int j = 1; j <= n; ++j) {
        row_to_col[p[j] - 1] = j - 1;
        value += weight[p[j] - 1][j - 1];
    }
    return {value, row_to_col};
}

}  // namespace popmatch::detail
