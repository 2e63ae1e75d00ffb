#include "doctest.h"

#include <random>

#include "fixtures.hpp"
#include "popmatch/oracle.hpp"
#include "popmatch/votes.hpp"

using namespace popmatch;

namespace {

Candidate course(int j) { return VertexId::course(j); }

}  // namespace

TEST_CASE("vote follows the preference order with null at the bottom") {
    const Instance inst = fixtures::chain_six_instance();
    const VertexId u = VertexId::student(0);
    CHECK(vote(inst, u, course(0), course(1)) == 1);
    CHECK(vote(inst, u, course(1), course(0)) == -1);
    CHECK(vote(inst, u, course(2), std::nullopt) == 1);
    CHECK(vote(inst, u, std::nullopt, course(2)) == -1);
    CHECK(vote(inst, u, std::nullopt, std::nullopt) == 0);
    CHECK(vote(inst, u, course(3), course(3)) == 0);
}

TEST_CASE("vote rejects unacceptable candidates") {
    const Instance inst = fixtures::gap_instance();
    // b' is not on a''s list
    CHECK_THROWS_AS(vote(inst, VertexId::student(1), course(1), std::nullopt),
                    std::invalid_argument);
}

TEST_CASE("the adversarial comparison of alternating sixths") {
    const Instance inst = fixtures::chain_six_instance();
    const VertexId u = VertexId::student(0);
    const std::vector<int> odd{0, 2, 4};   // v1, v3, v5
    const std::vector<int> even{1, 3, 5};  // v2, v4, v6
    CHECK(delta_u(inst, u, odd, even) == -1);
    CHECK(delta_u(inst, u, even, odd) == -3);
    CHECK(delta_u_bruteforce(inst, u, odd, even) == -1);
    CHECK(delta_u_bruteforce(inst, u, even, odd) == -3);
}

TEST_CASE("delta_u edge cases") {
    const Instance inst = fixtures::chain_six_instance();
    const VertexId u = VertexId::student(0);
    CHECK(delta_u(inst, u, std::vector<int>{0, 3}, std::vector<int>{0, 3}) == 0);
    CHECK(delta_u(inst, u, std::vector<int>{0}, std::vector<int>{}) == 1);
    CHECK(delta_u(inst, u, std::vector<int>{}, std::vector<int>{5}) == -1);
    CHECK(delta_u_bruteforce(inst, u, std::vector<int>{2}, std::vector<int>{2}) == 0);

    CHECK_THROWS_AS(delta_u(inst, u, std::vector<int>{0, 1, 2, 3}, std::vector<int>{}),
                    std::invalid_argument);  // above cap(u) = 3
    CHECK_THROWS_AS(delta_u(inst, u, std::vector<int>{0, 0}, std::vector<int>{}),
                    std::invalid_argument);
}

TEST_CASE("compare_sets exposes the minimizing pairing") {
    const Instance inst = fixtures::chain_six_instance();
    const VertexId u = VertexId::student(0);
    const auto cmp = compare_sets(inst, u, std::vector<int>{0, 2, 4}, std::vector<int>{1, 3, 5});
    CHECK(cmp.score == -1);
    REQUIRE(cmp.pairs.size() == 3);
    int sum = 0;
    for (const auto& p : cmp.pairs) {
        sum += p.vote;
        CHECK(p.vote == vote(inst, u, p.from_s0, p.from_s1));
    }
    CHECK(sum == cmp.score);
}

TEST_CASE("greedy pairing equals brute force on random sets") {
    // Wide random instance; subsets drawn with padded size <= 7.
    const Instance inst = random_instance(3, 12, 7, 1.0, 99);
    std::mt19937_64 rng(7);
    for (int trial = 0; trial < 400; ++trial) {
        const int a = static_cast<int>(rng() % 3);
        const VertexId u = VertexId::student(a);
        const int cap = inst.capacity(u);
        std::vector<int> all(12);
        for (int j = 0; j < 12; ++j) all[j] = j;
        for (int j = 11; j > 0; --j) std::swap(all[j], all[rng() % (j + 1)]);
        const int n0 = static_cast<int>(rng() % (std::min(cap, 7) + 1));
        const int n1 = static_cast<int>(rng() % (std::min(cap, 7) + 1));
        std::vector<int> s0(all.begin(), all.begin() + n0);
        for (int j = 11; j > 0; --j) std::swap(all[j], all[rng() % (j + 1)]);
        std::vector<int> s1(all.begin(), all.begin() + n1);
        CAPTURE(trial);
        CHECK(delta_u(inst, u, s0, s1) == delta_u_bruteforce(inst, u, s0, s1));
    }
}

TEST_CASE("delta_u properties") {
    const Instance inst = random_instance(2, 10, 6, 1.0, 5);
    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 300; ++trial) {
        const VertexId u = VertexId::student(static_cast<int>(rng() % 2));
        const int cap = inst.capacity(u);
        std::vector<int> all(10);
        for (int j = 0; j < 10; ++j) all[j] = j;
        for (int j = 9; j > 0; --j) std::swap(all[j], all[rng() % (j + 1)]);
        std::vector<int> s0(all.begin(), all.begin() + rng() % (std::min(cap, 6) + 1));
        for (int j = 9; j > 0; --j) std::swap(all[j], all[rng() % (j + 1)]);
        std::vector<int> s1(all.begin(), all.begin() + rng() % (std::min(cap, 6) + 1));

        const int d01 = delta_u(inst, u, s0, s1);
        const int d10 = delta_u(inst, u, s1, s0);
        CAPTURE(trial);
        CHECK(d01 + d10 <= 0);

        const auto cmp = compare_sets(inst, u, s0, s1);
        const int k = static_cast<int>(cmp.pairs.size());
        CHECK(std::abs(d01) <= k);
        CHECK((d01 - k) % 2 == 0);
    }
}

TEST_CASE("big_delta on the gap instance") {
    const Instance inst = fixtures::gap_instance();
    const Matching stable = Matching::create(inst, {{0, 0}});
    const Matching maxm = Matching::create(inst, {{0, 1}, {1, 0}});
    CHECK(big_delta(inst, stable, stable) == 0);
    CHECK(big_delta(inst, stable, maxm) == 0);
    CHECK(is_at_least_as_popular(inst, stable, maxm));
    CHECK_FALSE(is_weakly_dominated(inst, stable, maxm));
}

TEST_CASE("big_delta on the shared-capacity instance") {
    const Instance inst = fixtures::shared_cap_instance();
    const Matching m = Matching::create(inst, {{0, 0}, {1, 1}});
    const Matching m2 = Matching::create(inst, {{0, 1}, {1, 0}});
    CHECK(big_delta(inst, m, m2) == 0);
    CHECK(big_delta(inst, m2, m) == 0);
}

TEST_CASE("unit capacities make big_delta antisymmetric") {
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        const Instance inst = random_instance(3, 3, 1, 0.8, seed);
        if (inst.edge_count() > 12) continue;
        const auto all = enumerate_matchings(inst);
        for (std::size_t i = 0; i < all.size(); ++i) {
            for (std::size_t j = 0; j < all.size(); ++j) {
                CAPTURE(seed);
                CHECK(big_delta(inst, all[i], all[j]) == -big_delta(inst, all[j], all[i]));
            }
        }
    }
}
