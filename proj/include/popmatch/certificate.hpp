#pragma once

#include <optional>
#include <vector>

#include "popmatch/instance.hpp"
#include "popmatch/solvers.hpp"

namespace popmatch {

/// Which copy of which original vertex a clone is.
struct CloneRef {
    VertexId original;
    int copy;  // in [0, cap(original))
};

/// A real-clone-to-real-clone edge of the verification graph, with its
/// integer weight in {-2, 0, +2}.
struct CloneEdge {
    int s_clone;
    int c_clone;
    int weight;
    int edge_id;  // underlying instance edge
};

/// An (A' u B')-complete matching stated per real clone: the partner clone id
/// on the opposite side, or -1 for the clone's private last resort.
struct CloneMatching {
    std::vector<int> student_to;
    std::vector<int> course_to;
};

/// The verification graph built from a matching N. Every vertex u is cloned
/// cap(u) times; an N-edge keeps exactly one clone copy (the N' copy), a
/// non-N-edge keeps all cap(a)*cap(b) copies, and each clone owns a last
/// resort ranked below all real neighbors. Edge weights are summed votes
/// against the completed matching N*. Immutable after construction.
class CloneGraph {
public:
    const Instance& instance() const { return *inst_; }
    const Matching& base_matching() const { return n_; }

    int num_student_clones() const { return static_cast<int>(s_owner_.size()); }
    int num_course_clones() const { return static_cast<int>(c_owner_.size()); }
    CloneRef student_clone(int id) const { return {VertexId::student(s_owner_[id]), s_copy_[id]}; }
    CloneRef course_clone(int id) const { return {VertexId::course(c_owner_[id]), c_copy_[id]}; }
    int first_student_clone(int a) const { return s_offset_[a]; }
    int first_course_clone(int b) const { return c_offset_[b]; }

    /// N' partner clone on the other side, or -1 if the clone is unmatched.
    int nprime_of_student_clone(int id) const { return nprime_s_[id]; }
    int nprime_of_course_clone(int id) const { return nprime_c_[id]; }

    const std::vector<CloneEdge>& edges() const { return edges_; }
    /// Weight of the (v, l(v)) edge: -1 when v is matched in N', else 0.
    int last_resort_weight(Side side, int clone) const;

    /// wt(N*) as a sanity value; always 0.
    long long nstar_weight() const;

    long long matching_weight(const CloneMatching& m) const;

    friend CloneGraph build_clone_graph(const Instance& inst, const Matching& n);

private:
    CloneGraph(const Instance& inst, Matching n) : inst_(&inst), n_(std::move(n)) {}

    const Instance* inst_ = nullptr;
    Matching n_;
    std::vector<int> s_offset_, c_offset_;  // first clone id per vertex
    std::vector<int> s_owner_, s_copy_;     // per student clone
    std::vector<int> c_owner_, c_copy_;     // per course clone
    std::vector<int> nprime_s_, nprime_c_;  // partner clone or -1
    std::vector<int> nstar_rank_s_, nstar_rank_c_;  // rank of N* partner, INT_MAX for last resort
    std::vector<CloneEdge> edges_;
};

/// Clone copies for N-edges are assigned deterministically: edges processed
/// in (student, course) order, each taking the smallest free copy index on
/// both sides.
CloneGraph build_clone_graph(const Instance& inst, const Matching& n);

/// Realizes an arbitrary matching T as a complete clone matching T* with
/// wt(T*) = -big_delta(N, T): shared edges keep their N' copies, new partners
/// are placed on the copies chosen by the adversarial pairing, leftovers take
/// their last resorts.
CloneMatching realize_matching(const CloneGraph& cg, const Matching& t);

/// Exact maximum over all matchings covering every real clone, solved as an
/// integer assignment problem. The value is always >= 0 since N* has weight 0.
std::pair<long long, CloneMatching> max_weight_complete_matching(const CloneGraph& cg);

enum class VerdictKind { Popular, NotPopular, Inconclusive };

struct PopularityVerdict {
    VerdictKind kind;
    long long optimum;  // max-weight complete clone matching value
    std::optional<Matching> counterexample;    // NotPopular: big_delta(n, T) < 0
    std::optional<CloneMatching> clone_witness;  // positive-weight witness when not Popular
};

/// Decides popularity of n. Optimum <= 0 proves popularity. A positive
/// optimum whose witness projects to a valid matching T with
/// big_delta(n,T) < 0 disproves it; otherwise the clone witness alone is
/// returned as Inconclusive (the sufficient condition is one-directional).
PopularityVerdict verify_popular(const Instance& inst, const Matching& n);

enum class CloneClass : std::uint8_t { A0, A1, B0, B1 };

/// Integer dual values certifying that no complete clone matching of
/// G'_{M0} has positive weight: alpha sums to zero and covers every edge.
struct DualWitness {
    std::vector<int> alpha_students;  // per student clone, in {-1, 0, +1}
    std::vector<int> alpha_courses;
    std::vector<CloneClass> class_students;
    std::vector<CloneClass> class_courses;
};

/// Builds the witness for a 2-level solver output: matched clones are
/// classified by the level of their edge (level 0 -> A0/B0, level 1 ->
/// A1/B1), unmatched student clones go to A1 and unmatched course clones to
/// B0; alpha is +1 on matched A0/B1 clones, -1 on matched A1/B0 clones, 0 on
/// unmatched ones.
DualWitness build_dual_witness(const Instance& inst, const LevelMatching& lm);

/// One violated dual constraint: a real-real edge (s, c), or a last-resort
/// constraint (s, -1) / (-1, c).
struct DualViolation {
    int s_clone;
    int c_clone;
    friend bool operator==(const DualViolation&, const DualViolation&) = default;
};

struct DualCheck {
    bool feasible;
    long long objective;  // sum of alpha
    std::vector<DualViolation> violated;
};

/// Checks alpha_a + alpha_b >= wt on every real-real edge and
/// alpha_v >= wt(v, l(v)) on every clone. Feasible with objective 0 proves
/// the max-weight complete matching is at most 0.
DualCheck check_dual(const CloneGraph& cg, const DualWitness& w);

/// True iff in G'_{M0} every real-real edge between A1 and B0 clones weighs
/// exactly -2 and every edge inside A0 x B0 or A1 x B1 weighs at most 0.
bool check_claim1(const Instance& inst, const LevelMatching& lm);

}  // namespace popmatch
