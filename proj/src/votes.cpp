#include "popmatch/votes.hpp"

#include <algorithm>
#include <limits>

namespace popmatch {

namespace {

constexpr int kNullRank = std::numeric_limits<int>::max();

using RankedElem = std::pair<int, int>;  // (rank, neighbor index); (kNullRank, -1) = null

int rank_or_throw(const Instance& inst, VertexId u, Candidate v) {
    if (!v) return kNullRank;
    if (v->side != opposite(u.side)) {
        throw std::invalid_argument("candidate is on the same side as the voter");
    }
    const int r = inst.rank_of(u, v->index);
    if (r < 0) {
        throw std::invalid_argument("candidate '" + inst.name(*v) + "' is not acceptable to '" +
                                    inst.name(u) + "'");
    }
    return r;
}

int vote_by_rank(int rv, int rw) {
    if (rv < rw) return 1;
    if (rv > rw) return -1;
    return 0;
}

// Validates one side of a set comparison; returns (rank, neighbor) ascending.
std::vector<RankedElem> ranked(const Instance& inst, VertexId u, std::span<const int> set) {
    if (static_cast<int>(set.size()) > inst.capacity(u)) {
        throw std::invalid_argument("set exceeds the capacity of '" + inst.name(u) + "'");
    }
    std::vector<RankedElem> out;
    out.reserve(set.size());
    for (int v : set) {
        out.emplace_back(rank_or_throw(inst, u, Candidate(VertexId{opposite(u.side), v})), v);
    }
    std::sort(out.begin(), out.end());
    if (std::adjacent_find(out.begin(), out.end()) != out.end()) {
        throw std::invalid_argument("set passed to delta_u contains a repeated neighbor");
    }
    return out;
}

// Removes the intersection and pads the shorter side with nulls; both arrays
// come back rank-sorted with k = max(|S0'|, |S1'|) elements each.
int reduce_and_pad(std::vector<RankedElem>& r0, std::vector<RankedElem>& r1) {
    std::vector<RankedElem> only0, only1;
    std::set_difference(r0.begin(), r0.end(), r1.begin(), r1.end(), std::back_inserter(only0));
    std::set_difference(r1.begin(), r1.end(), r0.begin(), r0.end(), std::back_inserter(only1));
    r0 = std::move(only0);
    r1 = std::move(only1);
    const int k = static_cast<int>(std::max(r0.size(), r1.size()));
    while (static_cast<int>(r0.size()) < k) r0.emplace_back(kNullRank, -1);
    while (static_cast<int>(r1.size()) < k) r1.emplace_back(kNullRank, -1);
    return k;
}

Candidate to_candidate(Side other, const RankedElem& e) {
    if (e.second < 0) return std::nullopt;
    return VertexId{other, e.second};
}

}  // namespace

int vote(const Instance& inst, VertexId u, Candidate v, Candidate w) {
    if (v && w && *v == *w) return 0;
    return vote_by_rank(rank_or_throw(inst, u, v), rank_or_throw(inst, u, w));
}

SetComparison compare_sets(const Instance& inst, VertexId u, std::span<const int> s0,
                           std::span<const int> s1) {
    auto r0 = ranked(inst, u, s0);
    auto r1 = ranked(inst, u, s1);
    const int k = reduce_and_pad(r0, r1);

    // Adversarial pairing: maximize the number of slots won by the s1 side.
    // Both arrays ascend by rank. The most preferred unbeaten s0 element is
    // the hardest target; if the best remaining s1 element cannot beat it,
    // nothing later can, so that s0 element wins its slot no matter what.
    std::vector<std::pair<int, int>> beats;  // (s0 slot, s1 slot)
    std::vector<int> unbeaten;               // s0 slots won by s0
    {
        int i = 0, j = 0;
        while (i < k && j < k) {
            if (r1[i].first < r0[j].first) {
                beats.emplace_back(j, i);
                ++i;
                ++j;
            } else {
                unbeaten.push_back(j);
                ++j;
            }
        }
    }

    SetComparison cmp;
    cmp.pairs.reserve(k);
    cmp.score = 0;
    const Side other = opposite(u.side);
    for (auto [j, i] : beats) {
        cmp.pairs.push_back({to_candidate(other, r0[j]), to_candidate(other, r1[i]), -1});
        cmp.score -= 1;
    }
    const int c = static_cast<int>(beats.size());
    for (std::size_t t = 0; t < unbeaten.size(); ++t) {
        // Leftover s1 elements rank below every unbeaten s0 element.
        cmp.pairs.push_back(
            {to_candidate(other, r0[unbeaten[t]]), to_candidate(other, r1[c + t]), +1});
        cmp.score += 1;
    }
    return cmp;
}

int delta_u(const Instance& inst, VertexId u, std::span<const int> s0, std::span<const int> s1) {
    return compare_sets(inst, u, s0, s1).score;
}

int delta_u_bruteforce(const Instance& inst, VertexId u, std::span<const int> s0,
                       std::span<const int> s1) {
    auto r0 = ranked(inst, u, s0);
    auto r1 = ranked(inst, u, s1);
    const int k = reduce_and_pad(r0, r1);
    if (k > 8) throw std::invalid_argument("delta_u_bruteforce refuses padded sizes above 8");
    if (k == 0) return 0;

    std::vector<int> perm(k);
    for (int i = 0; i < k; ++i) perm[i] = i;
    int best = k + 1;
    do {
        int sum = 0;
        for (int i = 0; i < k; ++i) sum += vote_by_rank(r0[i].first, r1[perm[i]].first);
        best = std::min(best, sum);
    } while (std::next_permutation(perm.begin(), perm.end()));
    return best;
}

int big_delta(const Instance& inst, const Matching& m0, const Matching& m1) {
    int total = 0;
    for (int a = 0; a < inst.num_students(); ++a) {
        const VertexId u = VertexId::student(a);
        total += delta_u(inst, u, m0.partners(u), m1.partners(u));
    }
    for (int b = 0; b < inst.num_courses(); ++b) {
        const VertexId u = VertexId::course(b);
        total += delta_u(inst, u, m0.partners(u), m1.partners(u));
    }
    return total;
}

bool is_at_least_as_popular(const Instance& inst, const Matching& m0, const Matching& m1) {
    return big_delta(inst, m0, m1) >= 0;
}

bool is_weakly_dominated(const Instance& inst, const Matching& m0, const Matching& m1) {
    return big_delta(inst, m1, m0) > 0;
}

}  // namespace popmatch
