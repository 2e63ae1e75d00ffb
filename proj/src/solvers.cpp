#include "popmatch/solvers.hpp"

#include <algorithm>
#include <deque>
#include <limits>
#include <tuple>

namespace popmatch {

namespace {

// Deferred acceptance over student copies. With levels == 1 this is the
// classical many-to-many Gale-Shapley algorithm; with levels == 2 every
// student also has a level-1 copy that activates once the level-0 copy has
// exhausted its list with capacity to spare, and courses rank any level-1
// proposer above any level-0 proposer.
//
// A course b keeps one flag per (neighbor, level) slot, indexed by b's
// preference order in the two-level graph: level-1 slots occupy positions
// [0, deg(b)), level-0 slots [deg(b), 2*deg(b)). The matching is stored in
// these flags; max_rank(b) tracks the position of b's worst partner while b
// is full, and moves only leftward, which keeps the whole run O(m + n).
class ProposalEngine {
public:
    ProposalEngine(const Instance& inst, int levels) : inst_(inst), levels_(levels) {
        const int na = inst.num_students();
        const int nb = inst.num_courses();
        residual_.resize(na);
        for (int a = 0; a < na; ++a) residual_[a] = inst.capacity(VertexId::student(a));
        cursor_.assign(na * levels_, 0);
        in_queue_.assign(na * levels_, 0);
        flag_offset_.resize(nb + 1, 0);
        for (int b = 0; b < nb; ++b) {
            flag_offset_[b + 1] = flag_offset_[b] + levels_ * inst.degree(VertexId::course(b));
        }
        flags_.assign(flag_offset_.back(), 0);
        matched_count_.assign(nb, 0);
        max_rank_.assign(nb, kInfinity);

        for (int a = 0; a < na; ++a) push(copy_id(a, 0));
    }

    std::vector<LevelEdge> run() {
        while (!queue_.empty()) {
            const int copy = queue_.front();
            queue_.pop_front();
            in_queue_[copy] = 0;
            process(copy);
        }
        return collect();
    }

    const std::vector<int>& residual() const { return residual_; }

private:
    static constexpr int kInfinity = std::numeric_limits<int>::max();

    int copy_id(int student, int level) const { return student * levels_ + level; }

    void push(int copy) {
        if (!in_queue_[copy]) {
            in_queue_[copy] = 1;
            queue_.push_back(copy);
        }
    }

    // Position of (student at course_rank, level) in b's two-level order.
    int slot(int b, int course_rank, int level) const {
        const int deg = inst_.degree(VertexId::course(b));
        return levels_ == 1 ? course_rank : (level == 1 ? course_rank : deg + course_rank);
    }

    void process(const int copy) {
        const int a = copy / levels_;
        const int level = copy % levels_;
        const auto& edge_ids = inst_.student_edges(a);
        int& cur = cursor_[copy];

        while (residual_[a] > 0 && cur < static_cast<int>(edge_ids.size())) {
            const Edge& e = inst_.edges()[edge_ids[cur]];
            ++cur;
            const int b = e.course;
            const int pos = slot(b, e.course_rank, level);
            if (pos >= max_rank_[b]) continue;  // edge pruned from the graph

            if (levels_ == 2 && level == 1) {
                const int pos0 = slot(b, e.course_rank, 0);
                if (flags_[flag_offset_[b] + pos0]) {
                    // b already holds the level-0 copy of this edge: replace
                    // it in place; neither residual nor b's load changes.
                    flags_[flag_offset_[b] + pos0] = 0;
                    flags_[flag_offset_[b] + pos] = 1;
                    refresh_max_rank(b);
                    continue;
                }
            }

            flags_[flag_offset_[b] + pos] = 1;
            --residual_[a];
            ++matched_count_[b];
            if (matched_count_[b] > inst_.capacity(VertexId::course(b))) {
                reject_worst(b);
            }
            refresh_max_rank(b);
        }

        if (levels_ == 2 && level == 0 && residual_[a] > 0) {
            push(copy_id(a, 1));  // level-0 list exhausted with capacity left
        }
    }

    void reject_worst(int b) {
        const int deg = inst_.degree(VertexId::course(b));
        int pos = max_rank_[b] == kInfinity ? levels_ * deg - 1 : max_rank_[b];
        while (!flags_[flag_offset_[b] + pos]) --pos;
        flags_[flag_offset_[b] + pos] = 0;
        --matched_count_[b];

        const Edge& e = inst_.edges()[inst_.course_edges(b)[pos % deg]];
        const int level = levels_ == 1 ? 0 : (pos < deg ? 1 : 0);
        ++residual_[e.student];
        push(copy_id(e.student, level));
    }

    void refresh_max_rank(int b) {
        if (matched_count_[b] < inst_.capacity(VertexId::course(b))) return;
        const int deg = inst_.degree(VertexId::course(b));
        int pos = max_rank_[b] == kInfinity ? levels_ * deg - 1 : max_rank_[b];
        while (pos >= 0 && !flags_[flag_offset_[b] + pos]) --pos;
        max_rank_[b] = pos;
    }

    std::vector<LevelEdge> collect() const {
        std::vector<LevelEdge> out;
        for (int b = 0; b < inst_.num_courses(); ++b) {
            const int deg = inst_.degree(VertexId::course(b));
            for (int pos = 0; pos < levels_ * deg; ++pos) {
                if (!flags_[flag_offset_[b] + pos]) continue;
                const Edge& e = inst_.edges()[inst_.course_edges(b)[pos % deg]];
                const int level = levels_ == 1 ? 0 : (pos < deg ? 1 : 0);
                out.push_back({e.student, level, b});
            }
        }
        std::sort(out.begin(), out.end(), [](const LevelEdge& x, const LevelEdge& y) {
            return std::tie(x.student, x.course) < std::tie(y.student, y.course);
        });
        return out;
    }

    const Instance& inst_;
    const int levels_;
    std::vector<int> residual_;
    std::vector<int> cursor_;
    std::vector<char> in_queue_;
    std::deque<int> queue_;
    std::vector<int> flag_offset_;
    std::vector<char> flags_;
    std::vector<int> matched_count_;
    std::vector<int> max_rank_;
};

}  // namespace

Matching project(const Instance& inst, const std::vector<LevelEdge>& edges) {
    std::vector<std::pair<int, int>> pairs;
    pairs.reserve(edges.size());
    for (const LevelEdge& e : edges) pairs.emplace_back(e.student, e.course);
    std::sort(pairs.begin(), pairs.end());
    if (std::adjacent_find(pairs.begin(), pairs.end()) != pairs.end()) {
        throw std::logic_error("level matching holds both copies of one pair");
    }
    return Matching::create(inst, std::move(pairs));
}

Matching stable_matching(const Instance& inst) {
    ProposalEngine engine(inst, 1);
    return project(inst, engine.run());
}

LevelMatching max_size_popular(const Instance& inst) {
    ProposalEngine engine(inst, 2);
    std::vector<LevelEdge> edges = engine.run();
    Matching projection = project(inst, edges);
    return {std::move(edges), std::move(projection), engine.residual()};
}

}  // namespace popmatch
