#include "popmatch/instance.hpp"

#include <algorithm>
#include <random>
#include <unordered_set>

namespace popmatch {

namespace {

std::int64_t pair_key(int student, int course) {
    return (static_cast<std::int64_t>(student) << 32) | static_cast<std::uint32_t>(course);
}

std::string violation_text(const std::vector<Violation>& violations) {
    std::string text = "invalid instance:";
    for (const auto& v : violations) {
        text += "\n  - " + v.message;
    }
    return text;
}

}  // namespace

ValidationError::ValidationError(std::vector<Violation> violations)
    : std::runtime_error(violation_text(violations)), violations_(std::move(violations)) {}

std::vector<Violation> validate(const InstanceData& data) {
    std::vector<Violation> out;
    const int na = static_cast<int>(data.students.size());
    const int nb = static_cast<int>(data.courses.size());

    auto check_sizes = [&](std::size_t got, std::size_t want, const char* what) {
        if (got != want) {
            out.push_back({ViolationKind::SizeMismatch,
                           std::string(what) + " table has " + std::to_string(got) +
                               " entries for " + std::to_string(want) + " vertices"});
        }
    };
    check_sizes(data.student_caps.size(), data.students.size(), "student capacity");
    check_sizes(data.course_caps.size(), data.courses.size(), "course capacity");
    check_sizes(data.student_prefs.size(), data.students.size(), "student preference");
    check_sizes(data.course_prefs.size(), data.courses.size(), "course preference");
    if (!out.empty()) return out;  // indices below would be meaningless

    auto check_names = [&](const std::vector<std::string>& names, const char* side) {
        std::unordered_set<std::string> seen;
        for (const auto& name : names) {
            if (!seen.insert(name).second) {
                out.push_back({ViolationKind::DuplicateName,
                               std::string("duplicate ") + side + " name '" + name + "'"});
            }
        }
    };
    check_names(data.students, "student");
    check_names(data.courses, "course");

    for (int a = 0; a < na; ++a) {
        if (data.student_caps[a] < 1) {
            out.push_back({ViolationKind::BadCapacity,
                           "student '" + data.students[a] + "' has capacity " +
                               std::to_string(data.student_caps[a]) + " (must be >= 1)"});
        }
    }
    for (int b = 0; b < nb; ++b) {
        if (data.course_caps[b] < 1) {
            out.push_back({ViolationKind::BadCapacity,
                           "course '" + data.courses[b] + "' has capacity " +
                               std::to_string(data.course_caps[b]) + " (must be >= 1)"});
        }
    }

    auto check_prefs = [&](const std::vector<std::vector<int>>& prefs,
                           const std::vector<std::string>& names, int other_count,
                           const std::vector<std::string>& other_names) {
        for (std::size_t i = 0; i < prefs.size(); ++i) {
            std::unordered_set<int> seen;
            for (int v : prefs[i]) {
                if (v < 0 || v >= other_count) {
                    out.push_back({ViolationKind::UnknownNeighbor,
                                   "'" + names[i] + "' ranks neighbor index " + std::to_string(v) +
                                       " which does not exist"});
                    continue;
                }
                if (!seen.insert(v).second) {
                    out.push_back({ViolationKind::DuplicatePreference,
                                   "'" + names[i] + "' lists '" + other_names[v] +
                                       "' more than once"});
                }
            }
        }
    };
    check_prefs(data.student_prefs, data.students, nb, data.courses);
    check_prefs(data.course_prefs, data.courses, na, data.students);

    // Mutual acceptability: b in prefs(a) iff a in prefs(b).
    std::unordered_set<std::int64_t> from_students;
    for (int a = 0; a < na; ++a) {
        for (int b : data.student_prefs[a]) {
            if (b >= 0 && b < nb) from_students.insert(pair_key(a, b));
        }
    }
    std::unordered_set<std::int64_t> from_courses;
    for (int b = 0; b < nb; ++b) {
        for (int a : data.course_prefs[b]) {
            if (a >= 0 && a < na) from_courses.insert(pair_key(a, b));
        }
    }
    for (int a = 0; a < na; ++a) {
        for (int b : data.student_prefs[a]) {
            if (b >= 0 && b < nb && !from_courses.count(pair_key(a, b))) {
                out.push_back({ViolationKind::NonMutualEdge,
                               "'" + data.students[a] + "' lists '" + data.courses[b] +
                                   "' but not vice versa"});
            }
        }
    }
    for (int b = 0; b < nb; ++b) {
        for (int a : data.course_prefs[b]) {
            if (a >= 0 && a < na && !from_students.count(pair_key(a, b))) {
                out.push_back({ViolationKind::NonMutualEdge,
                               "'" + data.courses[b] + "' lists '" + data.students[a] +
                                   "' but not vice versa"});
            }
        }
    }
    return out;
}

Instance Instance::create(InstanceData data) {
    auto violations = validate(data);
    if (!violations.empty()) throw ValidationError(std::move(violations));
    return Instance(std::move(data));
}

Instance::Instance(InstanceData data) : data_(std::move(data)) {
    const int na = num_students();
    const int nb = num_courses();
    student_edges_.resize(na);
    course_edges_.resize(nb);
    for (int a = 0; a < na; ++a) {
        const auto& prefs = data_.student_prefs[a];
        for (int r = 0; r < static_cast<int>(prefs.size()); ++r) {
            const int id = static_cast<int>(edges_.size());
            edges_.push_back({a, prefs[r], r, -1});
            edge_index_.emplace(pair_key(a, prefs[r]), id);
            student_edges_[a].push_back(id);
        }
    }
    for (int b = 0; b < nb; ++b) {
        const auto& prefs = data_.course_prefs[b];
        for (int r = 0; r < static_cast<int>(prefs.size()); ++r) {
            const int id = edge_index_.at(pair_key(prefs[r], b));  // mutuality validated
            edges_[id].course_rank = r;
            course_edges_[b].push_back(id);
        }
    }
    for (int a = 0; a < na; ++a) student_by_name_.emplace(data_.students[a], a);
    for (int b = 0; b < nb; ++b) course_by_name_.emplace(data_.courses[b], b);
}

const std::string& Instance::name(VertexId u) const {
    return u.side == Side::Student ? data_.students.at(u.index) : data_.courses.at(u.index);
}

int Instance::capacity(VertexId u) const {
    return u.side == Side::Student ? data_.student_caps.at(u.index)
                                   : data_.course_caps.at(u.index);
}

const std::vector<int>& Instance::preferences(VertexId u) const {
    return u.side == Side::Student ? data_.student_prefs.at(u.index)
                                   : data_.course_prefs.at(u.index);
}

int Instance::rank_of(VertexId u, int neighbor) const {
    const int id = u.side == Side::Student ? edge_id(u.index, neighbor)
                                           : edge_id(neighbor, u.index);
    if (id < 0) return -1;
    return u.side == Side::Student ? edges_[id].student_rank : edges_[id].course_rank;
}

int Instance::edge_id(int student, int course) const {
    auto it = edge_index_.find(pair_key(student, course));
    return it == edge_index_.end() ? -1 : it->second;
}

int Instance::find_student(const std::string& name) const {
    auto it = student_by_name_.find(name);
    return it == student_by_name_.end() ? -1 : it->second;
}

int Instance::find_course(const std::string& name) const {
    auto it = course_by_name_.find(name);
    return it == course_by_name_.end() ? -1 : it->second;
}

Matching Matching::create(const Instance& inst, std::vector<std::pair<int, int>> pairs) {
    std::sort(pairs.begin(), pairs.end());
    if (std::adjacent_find(pairs.begin(), pairs.end()) != pairs.end()) {
        throw std::invalid_argument("matching contains a duplicate pair");
    }
    Matching m;
    m.student_partners_.resize(inst.num_students());
    m.course_partners_.resize(inst.num_courses());
    for (auto [a, b] : pairs) {
        if (a < 0 || a >= inst.num_students() || b < 0 || b >= inst.num_courses() ||
            !inst.adjacent(a, b)) {
            throw std::invalid_argument("matching pair (" + std::to_string(a) + ", " +
                                        std::to_string(b) + ") is not a mutually acceptable edge");
        }
        m.student_partners_[a].push_back(b);
        m.course_partners_[b].push_back(a);
    }
    for (int a = 0; a < inst.num_students(); ++a) {
        if (static_cast<int>(m.student_partners_[a].size()) >
            inst.capacity(VertexId::student(a))) {
            throw std::invalid_argument("student '" + inst.data().students[a] +
                                        "' exceeds its capacity");
        }
    }
    for (int b = 0; b < inst.num_courses(); ++b) {
        if (static_cast<int>(m.course_partners_[b].size()) > inst.capacity(VertexId::course(b))) {
            throw std::invalid_argument("course '" + inst.data().courses[b] +
                                        "' exceeds its capacity");
        }
    }
    m.pairs_ = std::move(pairs);
    return m;
}

Matching Matching::empty(const Instance& inst) { return create(inst, {}); }

bool Matching::contains(int student, int course) const {
    return std::binary_search(pairs_.begin(), pairs_.end(), std::pair{student, course});
}

const std::vector<int>& Matching::partners(VertexId u) const {
    return u.side == Side::Student ? student_partners_.at(u.index)
                                   : course_partners_.at(u.index);
}

std::pair<bool, std::vector<BlockingPair>> is_pairwise_stable(const Instance& inst,
                                                              const Matching& m) {
    const int na = inst.num_students();
    const int nb = inst.num_courses();
    // Worst matched rank per vertex; -1 when unmatched.
    std::vector<int> worst_s(na, -1), worst_c(nb, -1);
    for (auto [a, b] : m.pairs()) {
        const Edge& e = inst.edges()[inst.edge_id(a, b)];
        worst_s[a] = std::max(worst_s[a], e.student_rank);
        worst_c[b] = std::max(worst_c[b], e.course_rank);
    }
    std::vector<BlockingPair> blocking;
    for (const Edge& e : inst.edges()) {
        if (m.contains(e.student, e.course)) continue;
        const bool student_wants =
            m.matched_degree(VertexId::student(e.student)) <
                inst.capacity(VertexId::student(e.student)) ||
            e.student_rank < worst_s[e.student];
        const bool course_wants = m.matched_degree(VertexId::course(e.course)) <
                                      inst.capacity(VertexId::course(e.course)) ||
                                  e.course_rank < worst_c[e.course];
        if (student_wants && course_wants) blocking.push_back({e.student, e.course});
    }
    std::sort(blocking.begin(), blocking.end(), [](const BlockingPair& x, const BlockingPair& y) {
        return std::pair{x.student, x.course} < std::pair{y.student, y.course};
    });
    return {blocking.empty(), std::move(blocking)};
}

namespace {

// One unit of capacity is augmented at a time. Every original edge may carry
// at most one unit (a matching is a subset of E), so the search alternates
// between unused edges forward and used edges backward.
struct BMatcher {
    const Instance& inst;
    std::vector<char> edge_used;
    std::vector<int> load_c;
    std::vector<char> seen_s, seen_c;

    explicit BMatcher(const Instance& g)
        : inst(g),
          edge_used(g.edge_count(), 0),
          load_c(g.num_courses(), 0),
          seen_s(g.num_students(), 0),
          seen_c(g.num_courses(), 0) {}

    bool augment(int a) {
        if (seen_s[a]) return false;
        seen_s[a] = 1;
        for (int id : inst.student_edges(a)) {
            if (edge_used[id]) continue;
            const int b = inst.edges()[id].course;
            if (seen_c[b]) continue;
            if (load_c[b] < inst.capacity(VertexId::course(b))) {
                edge_used[id] = 1;
                ++load_c[b];
                return true;
            }
            seen_c[b] = 1;
            for (int back : inst.course_edges(b)) {
                if (!edge_used[back]) continue;
                if (augment(inst.edges()[back].student)) {
                    edge_used[back] = 0;
                    edge_used[id] = 1;
                    return true;
                }
            }
        }
        return false;
    }
};

}  // namespace

int max_matching_size(const Instance& inst) {
    BMatcher matcher(inst);
    int size = 0;
    for (int a = 0; a < inst.num_students(); ++a) {
        for (int unit = 0; unit < inst.capacity(VertexId::student(a)); ++unit) {
            matcher.seen_s.assign(inst.num_students(), 0);
            matcher.seen_c.assign(inst.num_courses(), 0);
            if (matcher.augment(a)) ++size;
        }
    }
    return size;
}

namespace {

// Bounded draws use plain modulo on mt19937_64 output so generated instances
// are identical across standard library implementations.
class DetRng {
public:
    explicit DetRng(std::uint64_t seed) : engine_(seed) {}

    int below(int n) { return static_cast<int>(engine_() % static_cast<std::uint64_t>(n)); }

    double unit() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

    template <typename T>
    void shuffle(std::vector<T>& v) {
        for (int i = static_cast<int>(v.size()) - 1; i > 0; --i) {
            std::swap(v[i], v[below(i + 1)]);
        }
    }

private:
    std::mt19937_64 engine_;
};

}  // namespace

Instance random_instance(int n_students, int n_courses, int max_cap, double edge_density,
                         std::uint64_t seed) {
    if (n_students < 0 || n_courses < 0) {
        throw std::invalid_argument("vertex counts must be non-negative");
    }
    if (max_cap < 1) throw std::invalid_argument("max_cap must be >= 1");
    if (!(edge_density >= 0.0 && edge_density <= 1.0)) {
        throw std::invalid_argument("edge_density must be in [0, 1]");
    }

    DetRng rng(seed);
    InstanceData data;
    for (int a = 0; a < n_students; ++a) data.students.push_back("s" + std::to_string(a));
    for (int b = 0; b < n_courses; ++b) data.courses.push_back("c" + std::to_string(b));
    for (int a = 0; a < n_students; ++a) data.student_caps.push_back(1 + rng.below(max_cap));
    for (int b = 0; b < n_courses; ++b) data.course_caps.push_back(1 + rng.below(max_cap));

    data.student_prefs.resize(n_students);
    data.course_prefs.resize(n_courses);
    for (int a = 0; a < n_students; ++a) {
        for (int b = 0; b < n_courses; ++b) {
            if (rng.unit() < edge_density) {
                data.student_prefs[a].push_back(b);
                data.course_prefs[b].push_back(a);
            }
        }
    }
    for (auto& prefs : data.student_prefs) rng.shuffle(prefs);
    for (auto& prefs : data.course_prefs) rng.shuffle(prefs);
    return Instance::create(std::move(data));
}

}  // namespace popmatch
