#pragma once

#include <string_view>

#include "popmatch/io.hpp"

namespace popmatch::fixtures {

// Two students, two courses, all capacities 1. The unique stable matching
// {(a,b)} has half the size of the maximum matching {(a,b'),(a',b)}.
inline constexpr std::string_view kGapText = R"(students: a a'
courses: b b'
pref: a b b'
pref: a' b
pref: b a a'
pref: b' a
)";

inline Instance gap_instance() { return parse_instance(kGapText); }

// Residents r, r' and hospitals h (cap 1), h' (cap 2) with complete and
// identical preferences. Two max-size popular matchings exist and h' holds
// different partners in them, so the strong rural-hospitals property fails.
inline constexpr std::string_view kSharedCapText = R"(students: r r'
courses: h h'
cap: h' 2
pref: r h h'
pref: r' h h'
pref: h r r'
pref: h' r r'
)";

inline Instance shared_cap_instance() { return parse_instance(kSharedCapText); }

// Hospitals/residents instance whose matching {(p,h),(q,h'),(r,h)} is
// popular despite the blocking pair (q,h); the one-to-one clone expansion
// admits no popular realization of it.
inline constexpr std::string_view kCloneTrapText = R"(students: p q r s
courses: h h' h''
cap: h 2
pref: p h h''
pref: q h h'
pref: r h
pref: s h
pref: h p q r s
pref: h' q
pref: h'' p
)";

inline Instance clone_trap_instance() { return parse_instance(kCloneTrapText); }

// One student u with capacity 3 ranking six courses v1 > ... > v6.
inline constexpr std::string_view kChainSixText = R"(students: u
courses: v1 v2 v3 v4 v5 v6
cap: u 3
pref: u v1 v2 v3 v4 v5 v6
pref: v1 u
pref: v2 u
pref: v3 u
pref: v4 u
pref: v5 u
pref: v6 u
)";

inline Instance chain_six_instance() { return parse_instance(kChainSixText); }

}  // namespace popmatch::fixtures
