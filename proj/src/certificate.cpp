#include "popmatch/certificate.hpp"

#include <algorithm>
#include <limits>
#include <unordered_map>

#include "assignment.hpp"
#include "popmatch/votes.hpp"

namespace popmatch {

namespace {

constexpr int kNullRank = std::numeric_limits<int>::max();

std::int64_t pair_key(int student, int course) {
    return (static_cast<std::int64_t>(student) << 32) | static_cast<std::uint32_t>(course);
}

// +1 if the challenger rank beats the incumbent rank, -1 if it loses, 0 on a tie
// (which only happens when both are the same partner).
int vote_against(int challenger_rank, int incumbent_rank) {
    if (challenger_rank < incumbent_rank) return 1;
    if (challenger_rank > incumbent_rank) return -1;
    return 0;
}

}  // namespace

int CloneGraph::last_resort_weight(Side side, int clone) const {
    const bool matched =
        side == Side::Student ? nprime_s_.at(clone) >= 0 : nprime_c_.at(clone) >= 0;
    return matched ? -1 : 0;
}

long long CloneGraph::nstar_weight() const {
    // Every N* edge has weight 0 by construction; recomputed for checks.
    long long total = 0;
    for (int s = 0; s < num_student_clones(); ++s) {
        const int c = nprime_s_[s];
        if (c >= 0) {
            const Edge& e = inst_->edges()[inst_->edge_id(s_owner_[s], c_owner_[c])];
            total += vote_against(e.student_rank, nstar_rank_s_[s]) +
                     vote_against(e.course_rank, nstar_rank_c_[c]);
        } else {
            total += last_resort_weight(Side::Student, s);
        }
    }
    for (int c = 0; c < num_course_clones(); ++c) {
        if (nprime_c_[c] < 0) total += last_resort_weight(Side::Course, c);
    }
    return total;
}

long long CloneGraph::matching_weight(const CloneMatching& m) const {
    long long total = 0;
    for (int s = 0; s < num_student_clones(); ++s) {
        const int c = m.student_to.at(s);
        if (c < 0) {
            total += last_resort_weight(Side::Student, s);
            continue;
        }
        const int id = inst_->edge_id(s_owner_[s], c_owner_[c]);
        if (id < 0) throw std::logic_error("clone matching uses a non-edge");
        if (n_.contains(s_owner_[s], c_owner_[c]) &&
            (nprime_s_[s] != c || nprime_c_[c] != s)) {
            throw std::logic_error("clone matching uses a copy of an N-edge outside N'");
        }
        const Edge& e = inst_->edges()[id];
        total += vote_against(e.student_rank, nstar_rank_s_[s]) +
                 vote_against(e.course_rank, nstar_rank_c_[c]);
    }
    for (int c = 0; c < num_course_clones(); ++c) {
        if (m.course_to.at(c) < 0) total += last_resort_weight(Side::Course, c);
    }
    return total;
}

CloneGraph build_clone_graph(const Instance& inst, const Matching& n) {
    CloneGraph cg(inst, n);

    const int na = inst.num_students();
    const int nb = inst.num_courses();
    cg.s_offset_.resize(na + 1, 0);
    for (int a = 0; a < na; ++a) {
        cg.s_offset_[a + 1] = cg.s_offset_[a] + inst.capacity(VertexId::student(a));
    }
    cg.c_offset_.resize(nb + 1, 0);
    for (int b = 0; b < nb; ++b) {
        cg.c_offset_[b + 1] = cg.c_offset_[b] + inst.capacity(VertexId::course(b));
    }
    const int ca = cg.s_offset_[na];
    const int cb = cg.c_offset_[nb];
    cg.s_owner_.resize(ca);
    cg.s_copy_.resize(ca);
    for (int a = 0; a < na; ++a) {
        for (int i = cg.s_offset_[a]; i < cg.s_offset_[a + 1]; ++i) {
            cg.s_owner_[i] = a;
            cg.s_copy_[i] = i - cg.s_offset_[a];
        }
    }
    cg.c_owner_.resize(cb);
    cg.c_copy_.resize(cb);
    for (int b = 0; b < nb; ++b) {
        for (int j = cg.c_offset_[b]; j < cg.c_offset_[b + 1]; ++j) {
            cg.c_owner_[j] = b;
            cg.c_copy_[j] = j - cg.c_offset_[b];
        }
    }

    // N': processing N-edges in (student, course) order, each takes the
    // smallest free copy index on both sides.
    cg.nprime_s_.assign(ca, -1);
    cg.nprime_c_.assign(cb, -1);
    std::vector<int> next_s(na), next_c(nb);
    for (int a = 0; a < na; ++a) next_s[a] = cg.s_offset_[a];
    for (int b = 0; b < nb; ++b) next_c[b] = cg.c_offset_[b];
    std::unordered_map<std::int64_t, std::pair<int, int>> nprime_copy;
    for (auto [a, b] : n.pairs()) {
        const int s = next_s[a]++;
        const int c = next_c[b]++;
        cg.nprime_s_[s] = c;
        cg.nprime_c_[c] = s;
        nprime_copy.emplace(pair_key(a, b), std::pair{s, c});
    }

    cg.nstar_rank_s_.assign(ca, kNullRank);
    cg.nstar_rank_c_.assign(cb, kNullRank);
    for (int s = 0; s < ca; ++s) {
        if (cg.nprime_s_[s] >= 0) {
            cg.nstar_rank_s_[s] =
                inst.rank_of(VertexId::student(cg.s_owner_[s]), cg.c_owner_[cg.nprime_s_[s]]);
        }
    }
    for (int c = 0; c < cb; ++c) {
        if (cg.nprime_c_[c] >= 0) {
            cg.nstar_rank_c_[c] =
                inst.rank_of(VertexId::course(cg.c_owner_[c]), cg.s_owner_[cg.nprime_c_[c]]);
        }
    }

    for (int id = 0; id < inst.edge_count(); ++id) {
        const Edge& e = inst.edges()[id];
        if (n.contains(e.student, e.course)) {
            const auto [s, c] = nprime_copy.at(pair_key(e.student, e.course));
            cg.edges_.push_back({s, c, 0, id});  // both votes are ties
        } else {
            for (int s = cg.s_offset_[e.student]; s < cg.s_offset_[e.student + 1]; ++s) {
                for (int c = cg.c_offset_[e.course]; c < cg.c_offset_[e.course + 1]; ++c) {
                    const int wt = vote_against(e.student_rank, cg.nstar_rank_s_[s]) +
                                   vote_against(e.course_rank, cg.nstar_rank_c_[c]);
                    cg.edges_.push_back({s, c, wt, id});
                }
            }
        }
    }
    return cg;
}

CloneMatching realize_matching(const CloneGraph& cg, const Matching& t) {
    const Instance& inst = cg.instance();
    const Matching& n = cg.base_matching();
    constexpr int kUnset = -2;
    CloneMatching out;
    out.student_to.assign(cg.num_student_clones(), kUnset);
    out.course_to.assign(cg.num_course_clones(), kUnset);

    // Copy lookup for N-edges, and per-vertex cursors over N'-unmatched clones.
    std::unordered_map<std::int64_t, std::pair<int, int>> nprime_copy;
    for (int s = 0; s < cg.num_student_clones(); ++s) {
        if (cg.nprime_of_student_clone(s) >= 0) {
            const int c = cg.nprime_of_student_clone(s);
            nprime_copy.emplace(pair_key(cg.student_clone(s).original.index,
                                         cg.course_clone(c).original.index),
                                std::pair{s, c});
        }
    }
    std::vector<int> free_s(inst.num_students()), free_c(inst.num_courses());
    for (int a = 0; a < inst.num_students(); ++a) free_s[a] = cg.first_student_clone(a);
    for (int b = 0; b < inst.num_courses(); ++b) free_c[b] = cg.first_course_clone(b);
    auto next_free_student = [&](int a) {
        int& cur = free_s[a];
        while (cg.nprime_of_student_clone(cur) >= 0 || out.student_to[cur] != kUnset) ++cur;
        return cur++;
    };
    auto next_free_course = [&](int b) {
        int& cur = free_c[b];
        while (cg.nprime_of_course_clone(cur) >= 0 || out.course_to[cur] != kUnset) ++cur;
        return cur++;
    };

    // Shared edges keep their N' copies.
    for (auto [a, b] : t.pairs()) {
        if (!n.contains(a, b)) continue;
        const auto [s, c] = nprime_copy.at(pair_key(a, b));
        out.student_to[s] = c;
        out.course_to[c] = s;
    }

    // For each vertex, the adversarial pairing of lost versus gained partners
    // decides which clone copy hosts each new partner: the copy matched in N'
    // to the compared lost partner, or a fresh unmatched copy when the new
    // partner was compared against null.
    std::unordered_map<std::int64_t, int> student_copy_for, course_copy_for;
    for (int a = 0; a < inst.num_students(); ++a) {
        const VertexId u = VertexId::student(a);
        auto cmp = compare_sets(inst, u, n.partners(u), t.partners(u));
        for (const ComparedPair& p : cmp.pairs) {
            if (!p.from_s1) continue;  // a lost partner's clone falls back to its last resort
            const int b = p.from_s1->index;
            const int s = p.from_s0 ? nprime_copy.at(pair_key(a, p.from_s0->index)).first
                                    : next_free_student(a);
            student_copy_for.emplace(pair_key(a, b), s);
        }
    }
    for (int b = 0; b < inst.num_courses(); ++b) {
        const VertexId u = VertexId::course(b);
        auto cmp = compare_sets(inst, u, n.partners(u), t.partners(u));
        for (const ComparedPair& p : cmp.pairs) {
            if (!p.from_s1) continue;
            const int a = p.from_s1->index;
            const int c = p.from_s0 ? nprime_copy.at(pair_key(p.from_s0->index, b)).second
                                    : next_free_course(b);
            course_copy_for.emplace(pair_key(a, b), c);
        }
    }

    for (auto [a, b] : t.pairs()) {
        if (n.contains(a, b)) continue;
        const int s = student_copy_for.at(pair_key(a, b));
        const int c = course_copy_for.at(pair_key(a, b));
        if (out.student_to[s] != kUnset || out.course_to[c] != kUnset) {
            throw std::logic_error("realization pairing bookkeeping reused a clone");
        }
        out.student_to[s] = c;
        out.course_to[c] = s;
    }

    for (int& s : out.student_to) {
        if (s == kUnset) s = -1;
    }
    for (int& c : out.course_to) {
        if (c == kUnset) c = -1;
    }
    return out;
}

std::pair<long long, CloneMatching> max_weight_complete_matching(const CloneGraph& cg) {
    const int ca = cg.num_student_clones();
    const int cb = cg.num_course_clones();
    const int n = ca + cb;
    if (n > 2048) {
        throw std::runtime_error(
            "clone graph too large for exact verification (" + std::to_string(n) +
            " clones); verification is meant for desk-scale instances");
    }
    if (n == 0) return {0, CloneMatching{}};

    // Square assignment: rows = student clones then course last resorts,
    // columns = course clones then student last resorts. Dummy-dummy cells
    // cost 0 so unused last resorts pair off freely.
    std::vector<std::vector<long long>> w(n, std::vector<long long>(n, detail::kForbidden));
    for (const CloneEdge& e : cg.edges()) w[e.s_clone][e.c_clone] = e.weight;
    for (int s = 0; s < ca; ++s) w[s][cb + s] = cg.last_resort_weight(Side::Student, s);
    for (int c = 0; c < cb; ++c) w[ca + c][c] = cg.last_resort_weight(Side::Course, c);
    for (int c = 0; c < cb; ++c) {
        for (int s = 0; s < ca; ++s) w[ca + c][cb + s] = 0;
    }

    auto [value, row_to_col] = detail::solve_max_assignment(w);
    if (value <= detail::kForbidden / 2) {
        throw std::logic_error("assignment used a forbidden cell");
    }

    CloneMatching m;
    m.student_to.assign(ca, -1);
    m.course_to.assign(cb, -1);
    for (int s = 0; s < ca; ++s) {
        const int col = row_to_col[s];
        if (col < cb) {
            m.student_to[s] = col;
            m.course_to[col] = s;
        }
    }
    return {value, std::move(m)};
}

PopularityVerdict verify_popular(const Instance& inst, const Matching& n) {
    const CloneGraph cg = build_clone_graph(inst, n);
    auto [value, witness] = max_weight_complete_matching(cg);
    if (value <= 0) return {VerdictKind::Popular, value, std::nullopt, std::nullopt};

    std::vector<std::pair<int, int>> pairs;
    for (int s = 0; s < cg.num_student_clones(); ++s) {
        const int c = witness.student_to[s];
        if (c >= 0) {
            pairs.emplace_back(cg.student_clone(s).original.index,
                               cg.course_clone(c).original.index);
        }
    }
    std::sort(pairs.begin(), pairs.end());
    const bool duplicated = std::adjacent_find(pairs.begin(), pairs.end()) != pairs.end();
    if (!duplicated) {
        Matching t = Matching::create(inst, std::move(pairs));
        // The witness certifies unpopularity only if t genuinely beats n;
        // positive weight alone is not proof, so confirm by definition.
        if (big_delta(inst, n, t) < 0) {
            return {VerdictKind::NotPopular, value, std::move(t), std::move(witness)};
        }
    }
    return {VerdictKind::Inconclusive, value, std::nullopt, std::move(witness)};
}

namespace {

// Copy assignment identical to build_clone_graph: pairs in (student, course)
// order take the smallest free copies.
struct LevelClasses {
    std::vector<CloneClass> class_s, class_c;
    std::vector<int> alpha_s, alpha_c;
};

LevelClasses classify(const Instance& inst, const LevelMatching& lm, const CloneGraph& cg) {
    std::unordered_map<std::int64_t, int> level_of;
    for (const LevelEdge& e : lm.edges) {
        if (e.level != 0 && e.level != 1) {
            throw std::invalid_argument("level matching holds a level outside {0, 1}");
        }
        if (!level_of.emplace(pair_key(e.student, e.course), e.level).second) {
            throw std::invalid_argument("level matching holds both copies of one pair");
        }
    }

    LevelClasses out;
    out.class_s.assign(cg.num_student_clones(), CloneClass::A1);
    out.alpha_s.assign(cg.num_student_clones(), 0);
    out.class_c.assign(cg.num_course_clones(), CloneClass::B0);
    out.alpha_c.assign(cg.num_course_clones(), 0);
    for (int s = 0; s < cg.num_student_clones(); ++s) {
        const int c = cg.nprime_of_student_clone(s);
        if (c < 0) continue;
        const int a = cg.student_clone(s).original.index;
        const int b = cg.course_clone(c).original.index;
        const auto it = level_of.find(pair_key(a, b));
        if (it == level_of.end()) {
            throw std::invalid_argument("projection pair missing from the level matching");
        }
        if (it->second == 0) {
            out.class_s[s] = CloneClass::A0;
            out.class_c[c] = CloneClass::B0;
            out.alpha_s[s] = 1;
            out.alpha_c[c] = -1;
        } else {
            out.class_s[s] = CloneClass::A1;
            out.class_c[c] = CloneClass::B1;
            out.alpha_s[s] = -1;
            out.alpha_c[c] = 1;
        }
    }
    return out;
}

}  // namespace

DualWitness build_dual_witness(const Instance& inst, const LevelMatching& lm) {
    const Matching projection = project(inst, lm.edges);  // re-derives and validates
    const CloneGraph cg = build_clone_graph(inst, projection);
    LevelClasses cls = classify(inst, lm, cg);
    DualWitness w;
    w.alpha_students = std::move(cls.alpha_s);
    w.alpha_courses = std::move(cls.alpha_c);
    w.class_students = std::move(cls.class_s);
    w.class_courses = std::move(cls.class_c);
    return w;
}

DualCheck check_dual(const CloneGraph& cg, const DualWitness& w) {
    if (static_cast<int>(w.alpha_students.size()) != cg.num_student_clones() ||
        static_cast<int>(w.alpha_courses.size()) != cg.num_course_clones()) {
        throw std::invalid_argument("dual witness does not match the clone graph");
    }
    DualCheck out;
    out.objective = 0;
    for (int alpha : w.alpha_students) out.objective += alpha;
    for (int alpha : w.alpha_courses) out.objective += alpha;
    for (const CloneEdge& e : cg.edges()) {
        if (w.alpha_students[e.s_clone] + w.alpha_courses[e.c_clone] < e.weight) {
            out.violated.push_back({e.s_clone, e.c_clone});
        }
    }
    for (int s = 0; s < cg.num_student_clones(); ++s) {
        if (w.alpha_students[s] < cg.last_resort_weight(Side::Student, s)) {
            out.violated.push_back({s, -1});
        }
    }
    for (int c = 0; c < cg.num_course_clones(); ++c) {
        if (w.alpha_courses[c] < cg.last_resort_weight(Side::Course, c)) {
            out.violated.push_back({-1, c});
        }
    }
    out.feasible = out.violated.empty();
    return out;
}

bool check_claim1(const Instance& inst, const LevelMatching& lm) {
    const Matching projection = project(inst, lm.edges);
    const CloneGraph cg = build_clone_graph(inst, projection);
    const LevelClasses cls = classify(inst, lm, cg);
    for (const CloneEdge& e : cg.edges()) {
        const CloneClass s = cls.class_s[e.s_clone];
        const CloneClass c = cls.class_c[e.c_clone];
        if (s == CloneClass::A1 && c == CloneClass::B0) {
            if (e.weight != -2) return false;
        } else if ((s == CloneClass::A0 && c == CloneClass::B0) ||
                   (s == CloneClass::A1 && c == CloneClass::B1)) {
            if (e.weight > 0) return false;
        }
    }
    return true;
}

}  // namespace popmatch
