#pragma once

#include <vector>

#include "popmatch/instance.hpp"

namespace popmatch {

struct LevelEdge {
    int student;
    int level;  // 0 or 1
    int course;
    friend bool operator==(const LevelEdge&, const LevelEdge&) = default;
    friend auto operator<=>(const LevelEdge&, const LevelEdge&) = default;
};

/// Output of the 2-level proposal algorithm: matched edges tagged with the
/// level of the student copy that holds them, the projection obtained by
/// dropping the tags, and each student's remaining capacity.
struct LevelMatching {
    std::vector<LevelEdge> edges;  // sorted (student, course); one level per pair
    Matching projection;
    std::vector<int> residual;  // per student: cap(a) - |projection(a)|
};

/// Classical many-to-many deferred acceptance, students proposing in input
/// order from a FIFO queue. The result has no blocking pair.
Matching stable_matching(const Instance& inst);

/// The 2-level proposal algorithm: each student has a level-0 and a level-1
/// copy; courses prefer any level-1 proposer to any level-0 proposer; the
/// level-1 copy activates only once the level-0 copy has exhausted its list
/// with capacity to spare. The projection is a max-size popular matching.
/// Runs in O(m + n).
LevelMatching max_size_popular(const Instance& inst);

/// Drops the level tags. Throws std::logic_error if a duplicate pair would
/// result (that would mean the LevelMatching invariant is broken).
Matching project(const Instance& inst, const std::vector<LevelEdge>& edges);

}  // namespace popmatch
