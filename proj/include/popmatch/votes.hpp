#pragma once

#include <optional>
#include <span>
#include <vector>

#include "popmatch/instance.hpp"

namespace popmatch {

/// A vote candidate: a real neighbor of the voting vertex, or the null
/// option (unmatched slot). Null is strictly less preferred than every real
/// neighbor. Null never appears in stored matchings, only in comparisons.
using Candidate = std::optional<VertexId>;

/// +1 if u prefers v to w, -1 if u prefers w to v, 0 iff v == w.
/// Throws std::invalid_argument when a real candidate is not acceptable to u.
int vote(const Instance& inst, VertexId u, Candidate v, Candidate w);

/// One aligned slot of an adversarial set comparison: the element kept from
/// each side after removing the intersection (null = padding).
struct ComparedPair {
    Candidate from_s0;
    Candidate from_s1;
    int vote;  // vote_u(from_s0, from_s1)
};

struct SetComparison {
    std::vector<ComparedPair> pairs;  // |pairs| = padded size k
    int score;                        // sum of pair votes = delta_u
};

/// The adversarial comparison of S0 versus S1 by u: drop S0 n S1, pad the
/// smaller side with nulls, and pair so the vote sum is minimized. Inputs are
/// neighbor indices (opposite side of u), duplicate-free, each within cap(u).
SetComparison compare_sets(const Instance& inst, VertexId u, std::span<const int> s0,
                           std::span<const int> s1);

/// Minimum vote sum over all pairings, via the greedy adversarial pairing.
int delta_u(const Instance& inst, VertexId u, std::span<const int> s0, std::span<const int> s1);

/// Literal enumeration over all k! pairings; the independence oracle for
/// delta_u. Refuses padded sizes k > 8.
int delta_u_bruteforce(const Instance& inst, VertexId u, std::span<const int> s0,
                       std::span<const int> s1);

/// Sum of delta_u(M0(u), M1(u)) over every vertex. M0 is at least as popular
/// as M1 iff the result is >= 0, more popular iff > 0.
int big_delta(const Instance& inst, const Matching& m0, const Matching& m1);

bool is_at_least_as_popular(const Instance& inst, const Matching& m0, const Matching& m1);

/// True when M1 is more popular than M0 under M1's most favorable pairing,
/// i.e. big_delta(M1, M0) > 0; such an M1 disqualifies M0 from weak popularity.
bool is_weakly_dominated(const Instance& inst, const Matching& m0, const Matching& m1);

}  // namespace popmatch
