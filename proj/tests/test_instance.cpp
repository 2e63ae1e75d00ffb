#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "fixtures.hpp"
#include "popmatch/io.hpp"
#include "popmatch/oracle.hpp"
#include "popmatch/solvers.hpp"

using namespace popmatch;

TEST_CASE("parsing the gap instance") {
    const Instance inst = fixtures::gap_instance();
    CHECK(inst.num_students() == 2);
    CHECK(inst.num_courses() == 2);
    CHECK(inst.edge_count() == 3);
    CHECK(inst.capacity(VertexId::student(0)) == 1);
    CHECK(inst.rank_of(VertexId::student(0), 0) == 0);   // a ranks b first
    CHECK(inst.rank_of(VertexId::student(0), 1) == 1);   // then b'
    CHECK(inst.rank_of(VertexId::course(1), 1) == -1);   // b' does not rank a'
    CHECK(inst.adjacent(0, 0));
    CHECK_FALSE(inst.adjacent(1, 1));
}

TEST_CASE("empty sections give an empty instance") {
    const Instance inst = parse_instance("students:\ncourses:\n");
    CHECK(inst.num_students() == 0);
    CHECK(inst.edge_count() == 0);
}

TEST_CASE("capacities default to 1 when cap lines are omitted") {
    const Instance inst = parse_instance("students: a\ncourses: b\npref: a b\npref: b a\n");
    CHECK(inst.capacity(VertexId::student(0)) == 1);
    CHECK(inst.capacity(VertexId::course(0)) == 1);
}

TEST_CASE("parse errors carry line numbers") {
    CHECK_THROWS_AS(parse_instance("students: a\ncourses: b\nwat: a\n"), ParseError);
    CHECK_THROWS_AS(parse_instance("students: a\ncourses: b\npref: a z\n"), ParseError);
    CHECK_THROWS_AS(parse_instance("students: a a\ncourses: b\n"), ParseError);
    CHECK_THROWS_AS(parse_instance("students: a\ncourses: b\ncap: a 0\n"), ParseError);
    CHECK_THROWS_AS(parse_instance("students: a\ncourses: b\ncap: a x\n"), ParseError);
    try {
        parse_instance("students: a\ncourses: b\n\npref: a zz\n");
        FAIL("expected ParseError");
    } catch (const ParseError& e) {
        CHECK(e.line() == 4);
    }
}

TEST_CASE("comments and blank lines are ignored") {
    const Instance inst = parse_instance(
        "# a tiny instance\nstudents: a  # trailing\ncourses: b\n\npref: a b\npref: b a\n");
    CHECK(inst.edge_count() == 1);
}

TEST_CASE("validate reports duplicate preferences") {
    InstanceData d;
    d.students = {"a"};
    d.courses = {"b"};
    d.student_caps = {1};
    d.course_caps = {1};
    d.student_prefs = {{0, 0}};
    d.course_prefs = {{0}};
    const auto violations = validate(d);
    REQUIRE(violations.size() == 1);
    CHECK(violations[0].kind == ViolationKind::DuplicatePreference);
    CHECK_THROWS_AS(Instance::create(d), ValidationError);
}

TEST_CASE("validate reports non-mutual edges") {
    InstanceData d;
    d.students = {"a"};
    d.courses = {"b"};
    d.student_caps = {1};
    d.course_caps = {1};
    d.student_prefs = {{0}};
    d.course_prefs = {{}};
    const auto violations = validate(d);
    REQUIRE(violations.size() == 1);
    CHECK(violations[0].kind == ViolationKind::NonMutualEdge);
}

TEST_CASE("validate accepts the gap instance and rejects bad caps") {
    CHECK(validate(fixtures::gap_instance().data()).empty());

    InstanceData d = fixtures::gap_instance().data();
    d.student_caps[0] = 0;
    const auto violations = validate(d);
    REQUIRE(violations.size() == 1);
    CHECK(violations[0].kind == ViolationKind::BadCapacity);
}

TEST_CASE("matching construction enforces edges, duplicates and capacities") {
    const Instance inst = fixtures::gap_instance();
    CHECK_THROWS_AS(Matching::create(inst, {{1, 1}}), std::invalid_argument);  // not an edge
    CHECK_THROWS_AS(Matching::create(inst, {{0, 0}, {0, 0}}), std::invalid_argument);
    CHECK_THROWS_AS(Matching::create(inst, {{0, 0}, {0, 1}}), std::invalid_argument);  // cap(a)=1
    const Matching ok = Matching::create(inst, {{1, 0}, {0, 1}});
    CHECK(ok.size() == 2);
    CHECK(ok.partners(VertexId::course(0)) == std::vector<int>{1});
}

TEST_CASE("blocking pairs of the gap instance") {
    const Instance inst = fixtures::gap_instance();

    auto [stable1, blocking1] = is_pairwise_stable(inst, Matching::create(inst, {{0, 0}}));
    CHECK(stable1);
    CHECK(blocking1.empty());

    auto [stable2, blocking2] =
        is_pairwise_stable(inst, Matching::create(inst, {{0, 1}, {1, 0}}));
    CHECK_FALSE(stable2);
    REQUIRE(blocking2.size() == 1);
    CHECK(blocking2[0] == BlockingPair{0, 0});
}

TEST_CASE("matching all of E is stable when capacities cover degrees") {
    const Instance inst = parse_instance(
        "students: a a'\ncourses: b b'\ncap: a 2\ncap: b 2\n"
        "pref: a b b'\npref: a' b\npref: b a a'\npref: b' a\n");
    const Matching all = Matching::create(inst, {{0, 0}, {0, 1}, {1, 0}});
    auto [stable, blocking] = is_pairwise_stable(inst, all);
    CHECK(stable);
    CHECK(blocking.empty());
}

TEST_CASE("max matching sizes") {
    CHECK(max_matching_size(fixtures::gap_instance()) == 2);
    CHECK(max_matching_size(parse_instance("students:\ncourses:\n")) == 0);
    CHECK(max_matching_size(fixtures::shared_cap_instance()) == 2);
}

TEST_CASE("max matching size agrees with brute force on random instances") {
    for (std::uint64_t seed = 0; seed < 60; ++seed) {
        const Instance inst = random_instance(1 + seed % 4, 1 + (seed / 2) % 4, 2, 0.7, seed);
        if (inst.edge_count() > 12) continue;
        CAPTURE(seed);
        CHECK(max_matching_size(inst) == max_matching_size_bruteforce(inst));
    }
}

TEST_CASE("serialize then parse is the identity on instance data") {
    for (std::uint64_t seed = 0; seed < 30; ++seed) {
        const Instance inst = random_instance(1 + seed % 5, 1 + (seed / 3) % 5, 3, 0.6, seed);
        const Instance back = parse_instance(serialize_instance(inst));
        CAPTURE(seed);
        CHECK(back.data().students == inst.data().students);
        CHECK(back.data().courses == inst.data().courses);
        CHECK(back.data().student_caps == inst.data().student_caps);
        CHECK(back.data().course_caps == inst.data().course_caps);
        CHECK(back.data().student_prefs == inst.data().student_prefs);
        CHECK(back.data().course_prefs == inst.data().course_prefs);
    }
}

TEST_CASE("random instances are deterministic in the seed") {
    const Instance x = random_instance(3, 3, 2, 0.5, 42);
    const Instance y = random_instance(3, 3, 2, 0.5, 42);
    CHECK(serialize_instance(x) == serialize_instance(y));
}

TEST_CASE("random instance corner cases") {
    const Instance full = random_instance(2, 2, 1, 1.0, 1);
    CHECK(full.edge_count() == 4);
    for (int a = 0; a < 2; ++a) CHECK(full.capacity(VertexId::student(a)) == 1);

    const Instance none = random_instance(0, 0, 1, 0.5, 7);
    CHECK(none.num_students() == 0);
    CHECK(none.edge_count() == 0);

    CHECK_THROWS_AS(random_instance(2, 2, 0, 0.5, 1), std::invalid_argument);
    CHECK_THROWS_AS(random_instance(2, 2, 1, 1.5, 1), std::invalid_argument);
}

TEST_CASE("stable matchings are maximal: at least half the maximum size") {
    for (std::uint64_t seed = 100; seed < 160; ++seed) {
        const Instance inst = random_instance(1 + seed % 5, 1 + (seed / 2) % 5, 2, 0.6, seed);
        CAPTURE(seed);
        CHECK(2 * stable_matching(inst).size() >= max_matching_size(inst));
    }
}

TEST_CASE("matching files round-trip") {
    const Instance inst = fixtures::gap_instance();
    const Matching m = Matching::create(inst, {{0, 1}, {1, 0}});
    CHECK(parse_matching(inst, serialize_matching(inst, m)) == m);
    CHECK_THROWS_AS(parse_matching(inst, "a zz\n"), ParseError);
    CHECK_THROWS_AS(parse_matching(inst, "a b b'\n"), ParseError);
}
