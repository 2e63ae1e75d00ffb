#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

namespace popmatch {

enum class Side : std::uint8_t { Student, Course };

inline Side opposite(Side s) { return s == Side::Student ? Side::Course : Side::Student; }

/// Identity of a vertex: which side it lives on plus its index in that
/// side's vertex table. Display names are kept on the Instance.
struct VertexId {
    Side side;
    int index;

    static VertexId student(int i) { return {Side::Student, i}; }
    static VertexId course(int j) { return {Side::Course, j}; }

    friend bool operator==(const VertexId&, const VertexId&) = default;
    friend auto operator<=>(const VertexId&, const VertexId&) = default;
};

/// Raw, possibly-invalid description of an instance. Preference lists hold
/// indices into the opposite side's name table; the edge set is derived from
/// them, never stated separately.
struct InstanceData {
    std::vector<std::string> students;
    std::vector<std::string> courses;
    std::vector<int> student_caps;  // one per student, >= 1
    std::vector<int> course_caps;   // one per course, >= 1
    std::vector<std::vector<int>> student_prefs;  // course indices, best first
    std::vector<std::vector<int>> course_prefs;   // student indices, best first
};

enum class ViolationKind {
    SizeMismatch,
    DuplicateName,
    BadCapacity,
    UnknownNeighbor,
    DuplicatePreference,
    NonMutualEdge,
};

struct Violation {
    ViolationKind kind;
    std::string message;
};

/// Checks every InstanceData invariant; an empty result means the data can
/// be frozen into an Instance. Violations are data, not errors.
std::vector<Violation> validate(const InstanceData& data);

class ValidationError : public std::runtime_error {
public:
    explicit ValidationError(std::vector<Violation> violations);
    const std::vector<Violation>& violations() const { return violations_; }

private:
    std::vector<Violation> violations_;
};

/// A mutually acceptable pair, with the rank it occupies in each endpoint's
/// preference list (0 = most preferred). Cross ranks make vote comparisons O(1).
struct Edge {
    int student;
    int course;
    int student_rank;  // position of `course` in the student's list
    int course_rank;   // position of `student` in the course's list
};

/// Validated, immutable instance. Safe to share across threads; all
/// operations on it are pure.
class Instance {
public:
    static Instance create(InstanceData data);  // throws ValidationError

    int num_students() const { return static_cast<int>(data_.students.size()); }
    int num_courses() const { return static_cast<int>(data_.courses.size()); }
    const std::string& name(VertexId u) const;
    int capacity(VertexId u) const;
    int degree(VertexId u) const { return static_cast<int>(preferences(u).size()); }

    /// Neighbor indices on the opposite side, most preferred first.
    const std::vector<int>& preferences(VertexId u) const;

    /// Rank of `neighbor` in u's preference list, or -1 if unacceptable.
    int rank_of(VertexId u, int neighbor) const;

    int edge_count() const { return static_cast<int>(edges_.size()); }
    const std::vector<Edge>& edges() const { return edges_; }
    int edge_id(int student, int course) const;  // -1 if not an edge
    bool adjacent(int student, int course) const { return edge_id(student, course) >= 0; }

    /// Edge ids incident to a student, in its preference order.
    const std::vector<int>& student_edges(int a) const { return student_edges_[a]; }
    /// Edge ids incident to a course, in its preference order.
    const std::vector<int>& course_edges(int b) const { return course_edges_[b]; }

    int find_student(const std::string& name) const;  // -1 if unknown
    int find_course(const std::string& name) const;

    const InstanceData& data() const { return data_; }

private:
    explicit Instance(InstanceData data);

    InstanceData data_;
    std::vector<Edge> edges_;
    std::vector<std::vector<int>> student_edges_;
    std::vector<std::vector<int>> course_edges_;
    std::unordered_map<std::int64_t, int> edge_index_;
    std::unordered_map<std::string, int> student_by_name_;
    std::unordered_map<std::string, int> course_by_name_;
};

/// Capacity-respecting set of student-course pairs drawn from E.
/// Construction validates membership, duplicates and capacities.
class Matching {
public:
    static Matching create(const Instance& inst, std::vector<std::pair<int, int>> pairs);
    static Matching empty(const Instance& inst);

    const std::vector<std::pair<int, int>>& pairs() const { return pairs_; }  // sorted
    int size() const { return static_cast<int>(pairs_.size()); }
    bool contains(int student, int course) const;

    /// Matched partner indices of u, ascending.
    const std::vector<int>& partners(VertexId u) const;
    int matched_degree(VertexId u) const { return static_cast<int>(partners(u).size()); }

    friend bool operator==(const Matching& x, const Matching& y) { return x.pairs_ == y.pairs_; }

private:
    Matching() = default;
    std::vector<std::pair<int, int>> pairs_;
    std::vector<std::vector<int>> student_partners_;
    std::vector<std::vector<int>> course_partners_;
};

struct BlockingPair {
    int student;
    int course;
    friend bool operator==(const BlockingPair&, const BlockingPair&) = default;
};

/// A pair (a,b) in E \ M blocks M when a has spare capacity or prefers b to
/// its worst partner, and symmetrically for b. Returns (no blocking pair,
/// every blocking pair sorted by (student, course)).
std::pair<bool, std::vector<BlockingPair>> is_pairwise_stable(const Instance& inst,
                                                              const Matching& m);

/// Maximum cardinality of any matching, computed exactly by expanding every
/// vertex into cap(u) clones and running augmenting paths.
int max_matching_size(const Instance& inst);

/// Deterministic pseudo-random instance: every pair (a,b) becomes mutually
/// acceptable with probability edge_density, preference orders are uniform
/// permutations of the accepted neighbors, capacities uniform in [1, max_cap].
Instance random_instance(int n_students, int n_courses, int max_cap, double edge_density,
                         std::uint64_t seed);

}  // namespace popmatch
