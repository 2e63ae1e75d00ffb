#include "doctest.h"

#include "fixtures.hpp"
#include "popmatch/certificate.hpp"
#include "popmatch/oracle.hpp"
#include "popmatch/solvers.hpp"
#include "popmatch/votes.hpp"

using namespace popmatch;

TEST_CASE("enumeration of the gap instance") {
    const Instance inst = fixtures::gap_instance();
    const auto all = enumerate_matchings(inst);
    REQUIRE(all.size() == 5);  // empty, three singletons, one size-2
    CHECK(all[0].size() == 0);
    int by_size[3] = {0, 0, 0};
    for (const Matching& m : all) ++by_size[m.size()];
    CHECK(by_size[0] == 1);
    CHECK(by_size[1] == 3);
    CHECK(by_size[2] == 1);
}

TEST_CASE("enumeration corner cases") {
    CHECK(enumerate_matchings(parse_instance("students:\ncourses:\n")).size() == 1);
    const Instance single = parse_instance("students: a\ncourses: b\npref: a b\npref: b a\n");
    CHECK(enumerate_matchings(single).size() == 2);
}

TEST_CASE("enumeration budgets abort loudly") {
    const Instance inst = random_instance(5, 5, 2, 1.0, 3);  // 25 edges
    CHECK_THROWS_AS(enumerate_matchings(inst), BudgetError);

    EnumerationBudget tight;
    tight.max_matchings = 3;
    CHECK_THROWS_AS(enumerate_matchings(fixtures::gap_instance(), tight), BudgetError);
}

TEST_CASE("streaming enumeration can stop early") {
    int seen = 0;
    for_each_matching(fixtures::gap_instance(), {}, [&](const Matching&) {
        ++seen;
        return seen < 3;
    });
    CHECK(seen == 3);
}

TEST_CASE("popularity brute force on the gap instance") {
    const Instance inst = fixtures::gap_instance();
    auto [ok, cex] = is_popular_bruteforce(inst, Matching::create(inst, {{0, 0}}));
    CHECK(ok);
    CHECK_FALSE(cex.has_value());

    auto [bad, witness] = is_popular_bruteforce(inst, Matching::create(inst, {{0, 1}}));
    CHECK_FALSE(bad);
    REQUIRE(witness.has_value());
    CHECK(big_delta(inst, Matching::create(inst, {{0, 1}}), *witness) < 0);
}

TEST_CASE("both shared-capacity matchings are popular") {
    const Instance inst = fixtures::shared_cap_instance();
    const Matching m = Matching::create(inst, {{0, 0}, {1, 1}});
    const Matching m_prime = Matching::create(inst, {{0, 1}, {1, 0}});
    CHECK(is_popular_bruteforce(inst, m).first);
    CHECK(is_popular_bruteforce(inst, m_prime).first);
    CHECK(big_delta(inst, m, m_prime) == 0);
    CHECK(big_delta(inst, m_prime, m) == 0);
}

TEST_CASE("weak popularity brute force") {
    const Instance inst = fixtures::gap_instance();
    const Matching stable = Matching::create(inst, {{0, 0}});
    CHECK(is_weakly_popular_bruteforce(inst, stable).first);

    // Everything popular is weakly popular.
    for (const Matching& m : enumerate_matchings(inst)) {
        if (is_popular_bruteforce(inst, m).first) {
            CHECK(is_weakly_popular_bruteforce(inst, m).first);
        }
    }
}

TEST_CASE("no matching larger than the 2-level output is weakly popular") {
    for (std::uint64_t seed = 0; seed < 40; ++seed) {
        const Instance inst = random_instance(1 + seed % 3, 1 + (seed / 3) % 3, 2, 0.8, seed);
        if (inst.edge_count() > 10) continue;
        const LevelMatching lm = max_size_popular(inst);
        CAPTURE(seed);
        for (const Matching& t : enumerate_matchings(inst)) {
            if (t.size() > lm.projection.size()) {
                auto [weakly, cex] = is_weakly_popular_bruteforce(inst, t);
                CHECK_FALSE(weakly);
                CHECK(big_delta(inst, lm.projection, t) > 0);
            }
        }
    }
}

TEST_CASE("size spectrum of the gap instance") {
    const auto s = popular_size_spectrum(fixtures::gap_instance());
    CHECK(s.max_popular == 2);
    CHECK(s.min_popular == 1);
    CHECK(s.max_weakly_popular == 2);
    CHECK(s.min_weakly_popular == 1);
    REQUIRE(s.all_max_popular.size() == 1);
    CHECK(s.all_max_popular[0].size() == 2);
}

TEST_CASE("size spectrum of the shared-capacity instance") {
    const Instance inst = fixtures::shared_cap_instance();
    const auto s = popular_size_spectrum(inst);
    CHECK(s.max_popular == 2);
    REQUIRE(s.all_max_popular.size() == 2);
    const Matching m = Matching::create(inst, {{0, 0}, {1, 1}});
    const Matching m_prime = Matching::create(inst, {{0, 1}, {1, 0}});
    CHECK(((s.all_max_popular[0] == m && s.all_max_popular[1] == m_prime) ||
           (s.all_max_popular[0] == m_prime && s.all_max_popular[1] == m)));
}

TEST_CASE("size spectrum of an empty instance") {
    const auto s = popular_size_spectrum(parse_instance("students:\ncourses:\n"));
    CHECK(s.max_popular == 0);
    CHECK(s.min_popular == 0);
    CHECK(s.max_weakly_popular == 0);
    CHECK(s.min_weakly_popular == 0);
    REQUIRE(s.all_max_popular.size() == 1);
    CHECK(s.all_max_popular[0].size() == 0);
}

TEST_CASE("oracle invariants on random instances") {
    for (std::uint64_t seed = 0; seed < 50; ++seed) {
        const Instance inst = random_instance(1 + seed % 3, 1 + (seed / 2) % 3, 2, 0.7, seed);
        if (inst.edge_count() > 10) continue;
        CAPTURE(seed);

        const auto spectrum = popular_size_spectrum(inst);
        const Matching stable = stable_matching(inst);
        const LevelMatching lm = max_size_popular(inst);

        CHECK(is_popular_bruteforce(inst, stable).first);
        CHECK(stable.size() == spectrum.min_weakly_popular);
        CHECK(lm.projection.size() == spectrum.max_popular);
        CHECK(spectrum.max_popular == spectrum.max_weakly_popular);

        // Inclusion: every popular matching is weakly popular.
        for (const Matching& m : enumerate_matchings(inst)) {
            if (is_popular_bruteforce(inst, m).first) {
                CHECK(is_weakly_popular_bruteforce(inst, m).first);
            }
        }
    }
}
