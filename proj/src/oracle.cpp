#include "popmatch/oracle.hpp"

#include <algorithm>
#include <bit>
#include <limits>

#include "popmatch/votes.hpp"

namespace popmatch {

namespace {

constexpr int kNullRank = std::numeric_limits<int>::max();

// Per-vertex incident edges are already stored in preference order, so a
// matching restricted to one vertex is a bitmask whose bit t means "matched
// to my rank-t neighbor". delta over two such masks needs no rank lookups.
int delta_local(std::uint32_t s0, std::uint32_t s1) {
    const std::uint32_t common = s0 & s1;
    s0 ^= common;
    s1 ^= common;
    const int n0 = std::popcount(s0);
    const int n1 = std::popcount(s1);
    const int k = std::max(n0, n1);
    if (k == 0) return 0;

    int r0[36], r1[36];
    int i = 0;
    for (std::uint32_t m = s0; m; m &= m - 1) r0[i++] = std::countr_zero(m);
    while (i < k) r0[i++] = kNullRank;
    i = 0;
    for (std::uint32_t m = s1; m; m &= m - 1) r1[i++] = std::countr_zero(m);
    while (i < k) r1[i++] = kNullRank;

    // Greedy adversarial pairing: count slots the s1 side can win.
    int beats = 0;
    for (int x = 0, j = 0; x < k && j < k; ++x) {
        while (j < k && r1[x] >= r0[j]) ++j;
        if (j < k) {
            ++beats;
            ++j;
        }
    }
    return k - 2 * beats;
}

// Memoized per-vertex delta evaluations keyed by (mask0, mask1); flat tables
// for small degrees, direct evaluation otherwise.
class DeltaTables {
public:
    explicit DeltaTables(const Instance& inst) : inst_(inst) {
        degrees_s_.resize(inst.num_students());
        degrees_c_.resize(inst.num_courses());
        tables_s_.resize(inst.num_students());
        tables_c_.resize(inst.num_courses());
        for (int a = 0; a < inst.num_students(); ++a) {
            degrees_s_[a] = inst.degree(VertexId::student(a));
            if (degrees_s_[a] > 32) throw BudgetError("vertex degree above 32 in oracle");
            if (degrees_s_[a] <= 8) tables_s_[a].assign(1u << (2 * degrees_s_[a]), kUnset);
        }
        for (int b = 0; b < inst.num_courses(); ++b) {
            degrees_c_[b] = inst.degree(VertexId::course(b));
            if (degrees_c_[b] > 32) throw BudgetError("vertex degree above 32 in oracle");
            if (degrees_c_[b] <= 8) tables_c_[b].assign(1u << (2 * degrees_c_[b]), kUnset);
        }
    }

    int delta(Side side, int idx, std::uint32_t m0, std::uint32_t m1) {
        const int deg = side == Side::Student ? degrees_s_[idx] : degrees_c_[idx];
        auto& table = side == Side::Student ? tables_s_[idx] : tables_c_[idx];
        if (table.empty()) return delta_local(m0, m1);
        const std::uint32_t key = (m0 << deg) | m1;
        if (table[key] == kUnset) table[key] = static_cast<std::int16_t>(delta_local(m0, m1));
        return table[key];
    }

private:
    static constexpr std::int16_t kUnset = std::numeric_limits<std::int16_t>::min();
    const Instance& inst_;
    std::vector<int> degrees_s_, degrees_c_;
    std::vector<std::vector<std::int16_t>> tables_s_, tables_c_;
};

// Per-vertex local masks of one matching.
struct Locals {
    std::vector<std::uint32_t> s, c;
};

Locals locals_of_mask(const Instance& inst, std::uint64_t mask) {
    Locals out;
    out.s.assign(inst.num_students(), 0);
    out.c.assign(inst.num_courses(), 0);
    for (std::uint64_t m = mask; m; m &= m - 1) {
        const Edge& e = inst.edges()[std::countr_zero(m)];
        out.s[e.student] |= 1u << e.student_rank;
        out.c[e.course] |= 1u << e.course_rank;
    }
    return out;
}

Locals locals_of_matching(const Instance& inst, const Matching& m) {
    Locals out;
    out.s.assign(inst.num_students(), 0);
    out.c.assign(inst.num_courses(), 0);
    for (auto [a, b] : m.pairs()) {
        const Edge& e = inst.edges()[inst.edge_id(a, b)];
        out.s[a] |= 1u << e.student_rank;
        out.c[b] |= 1u << e.course_rank;
    }
    return out;
}

int delta_between(const Instance& inst, DeltaTables& tables, const Locals& x, const Locals& y) {
    int total = 0;
    for (int a = 0; a < inst.num_students(); ++a) {
        total += tables.delta(Side::Student, a, x.s[a], y.s[a]);
    }
    for (int b = 0; b < inst.num_courses(); ++b) {
        total += tables.delta(Side::Course, b, x.c[b], y.c[b]);
    }
    return total;
}

Matching matching_of_mask(const Instance& inst, std::uint64_t mask) {
    std::vector<std::pair<int, int>> pairs;
    for (std::uint64_t m = mask; m; m &= m - 1) {
        const Edge& e = inst.edges()[std::countr_zero(m)];
        pairs.emplace_back(e.student, e.course);
    }
    return Matching::create(inst, std::move(pairs));
}

// Every capacity-respecting edge subset in ascending bitmask order:
// recursing from the highest edge index with the exclude branch first yields
// masks in increasing numeric order, and capacity overflows prune whole
// include subtrees.
template <typename Visitor>
void enumerate_masks(const Instance& inst, const EnumerationBudget& budget, Visitor&& visit) {
    const int m = inst.edge_count();
    if (m > budget.max_edges) {
        throw BudgetError("instance has " + std::to_string(m) +
                          " edges, over the enumeration budget of " +
                          std::to_string(budget.max_edges));
    }
    std::vector<int> load_s(inst.num_students(), 0), load_c(inst.num_courses(), 0);
    long long count = 0;
    bool stopped = false;

    auto rec = [&](auto&& self, int bit, std::uint64_t mask) -> void {
        if (stopped) return;
        if (bit < 0) {
            if (++count > budget.max_matchings) {
                throw BudgetError("more than " + std::to_string(budget.max_matchings) +
                                  " matchings; enumeration budget exceeded");
            }
            if (!visit(mask)) stopped = true;
            return;
        }
        self(self, bit - 1, mask);
        const Edge& e = inst.edges()[bit];
        if (load_s[e.student] < inst.capacity(VertexId::student(e.student)) &&
            load_c[e.course] < inst.capacity(VertexId::course(e.course))) {
            ++load_s[e.student];
            ++load_c[e.course];
            self(self, bit - 1, mask | (1ull << bit));
            --load_s[e.student];
            --load_c[e.course];
        }
    };
    rec(rec, m - 1, 0);
}

}  // namespace

std::vector<Matching> enumerate_matchings(const Instance& inst, const EnumerationBudget& budget) {
    std::vector<Matching> out;
    enumerate_masks(inst, budget, [&](std::uint64_t mask) {
        out.push_back(matching_of_mask(inst, mask));
        return true;
    });
    return out;
}

void for_each_matching(const Instance& inst, const EnumerationBudget& budget,
                       const std::function<bool(const Matching&)>& visit) {
    enumerate_masks(inst, budget,
                    [&](std::uint64_t mask) { return visit(matching_of_mask(inst, mask)); });
}

std::pair<bool, std::optional<Matching>> is_popular_bruteforce(const Instance& inst,
                                                               const Matching& n,
                                                               const EnumerationBudget& budget) {
    DeltaTables tables(inst);
    const Locals n_locals = locals_of_matching(inst, n);
    std::optional<Matching> counterexample;
    enumerate_masks(inst, budget, [&](std::uint64_t mask) {
        const Locals t_locals = locals_of_mask(inst, mask);
        if (delta_between(inst, tables, n_locals, t_locals) < 0) {
            counterexample = matching_of_mask(inst, mask);
            return false;
        }
        return true;
    });
    return {!counterexample.has_value(), std::move(counterexample)};
}

std::pair<bool, std::optional<Matching>> is_weakly_popular_bruteforce(
    const Instance& inst, const Matching& n, const EnumerationBudget& budget) {
    DeltaTables tables(inst);
    const Locals n_locals = locals_of_matching(inst, n);
    std::optional<Matching> counterexample;
    enumerate_masks(inst, budget, [&](std::uint64_t mask) {
        const Locals t_locals = locals_of_mask(inst, mask);
        if (delta_between(inst, tables, t_locals, n_locals) > 0) {
            counterexample = matching_of_mask(inst, mask);
            return false;
        }
        return true;
    });
    return {!counterexample.has_value(), std::move(counterexample)};
}

SizeSpectrum popular_size_spectrum(const Instance& inst, const EnumerationBudget& budget) {
    std::vector<std::uint64_t> masks;
    enumerate_masks(inst, budget, [&](std::uint64_t mask) {
        masks.push_back(mask);
        return true;
    });
    const int count = static_cast<int>(masks.size());

    DeltaTables tables(inst);
    std::vector<Locals> locals;
    locals.reserve(count);
    for (std::uint64_t mask : masks) locals.push_back(locals_of_mask(inst, mask));

    std::vector<char> popular(count, 1), weakly(count, 1);
    for (int i = 0; i < count; ++i) {
        for (int j = 0; j < count; ++j) {
            if (i == j || (!popular[i] && !weakly[j])) continue;
            const int d = delta_between(inst, tables, locals[i], locals[j]);
            if (d < 0) popular[i] = 0;
            if (d > 0) weakly[j] = 0;
        }
    }

    SizeSpectrum out;
    int max_pop = -1, min_pop = std::numeric_limits<int>::max();
    int max_weak = -1, min_weak = std::numeric_limits<int>::max();
    for (int i = 0; i < count; ++i) {
        const int size = std::popcount(masks[i]);
        if (popular[i]) {
            max_pop = std::max(max_pop, size);
            min_pop = std::min(min_pop, size);
        }
        if (weakly[i]) {
            max_weak = std::max(max_weak, size);
            min_weak = std::min(min_weak, size);
        }
    }
    if (max_pop < 0) {
        throw std::logic_error("no popular matching found; a stable matching always is one");
    }
    out.max_popular = max_pop;
    out.min_popular = min_pop;
    out.max_weakly_popular = std::max(max_weak, 0);
    out.min_weakly_popular = max_weak < 0 ? 0 : min_weak;
    for (int i = 0; i < count; ++i) {
        if (popular[i] && std::popcount(masks[i]) == max_pop) {
            out.all_max_popular.push_back(matching_of_mask(inst, masks[i]));
        }
    }
    return out;
}

int max_matching_size_bruteforce(const Instance& inst, const EnumerationBudget& budget) {
    int best = 0;
    enumerate_masks(inst, budget, [&](std::uint64_t mask) {
        best = std::max(best, std::popcount(mask));
        return true;
    });
    return best;
}

}  // namespace popmatch
