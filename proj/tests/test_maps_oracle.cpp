#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "stringforge/maps_oracle.hpp"
#include "stringforge/specialize.hpp"

using namespace stringforge;

TEST_CASE("one 4-valent vertex: 3 pairings split 2 planar + 1 torus") {
    OracleCounts c = enumerate_maps_serial({{4, 1}});
    CHECK(c.size() == 2);
    CHECK(c.at({0, 3}) == 2);
    CHECK(c.at({1, 1}) == 1);
}

TEST_CASE("hand-built rotation systems") {
    // non-crossing pairing of one 4-valent vertex: genus 0, 3 faces
    RotationSystem planar = RotationSystem::with_profile({{4, 1}}, {1, 0, 3, 2});
    CHECK(planar.genus() == 0);
    CHECK(planar.face_count() == 3);
    // crossing pairing: genus 1, 1 face
    RotationSystem torus = RotationSystem::with_profile({{4, 1}}, {2, 3, 0, 1});
    CHECK(torus.genus() == 1);
    CHECK(torus.face_count() == 1);
    // two 1-valent vertices joined by an edge: the segment map
    RotationSystem segment = RotationSystem::with_profile({{1, 2}}, {1, 0});
    CHECK(segment.genus() == 0);
    CHECK(segment.face_count() == 1);
    // disconnected: two 2-valent vertices with self-pairings
    RotationSystem disc = RotationSystem::with_profile({{2, 2}}, {1, 0, 3, 2});
    CHECK(!disc.connected());
    CHECK_THROWS_AS(disc.genus(), Disconnected);
}

TEST_CASE("two trivalent vertices") {
    OracleCounts c = enumerate_maps_serial({{3, 2}});
    // all 15 pairings are connected (3 darts per vertex cannot self-pair)
    int64_t total = 0;
    for (const auto& [k, n] : c) total += n;
    CHECK(total == double_factorial_odd(3));
    // euler consistency built into genus(); spot check the genus split
    int64_t g0 = 0, g1 = 0;
    for (const auto& [k, n] : c) (k.first == 0 ? g0 : g1) += n;
    CHECK(g0 + g1 == 15);
    CHECK(c.count({0, 3}) == 1);  // three-face planar gluings exist
}

TEST_CASE("2-valent profiles give only genus zero cycles") {
    for (int n : {2, 3, 4}) {
        OracleCounts c = enumerate_maps({{2, n}});
        for (const auto& [k, cnt] : c) CHECK(k.first == 0);
    }
}

TEST_CASE("serial and parallel enumeration agree") {
    for (const auto& profile :
         std::vector<std::map<int, int>>{{{4, 1}}, {{3, 2}}, {{4, 2}}, {{3, 2}, {4, 1}}}) {
        CHECK(enumerate_maps_serial(profile) == enumerate_maps_parallel(profile));
    }
}

TEST_CASE("connected pairing totals stay below the involution count") {
    for (const auto& profile :
         std::vector<std::map<int, int>>{{{4, 2}}, {{3, 2}, {4, 1}}}) {
        int darts = 0;
        for (const auto& [j, n] : profile) darts += j * n;
        int64_t total = 0;
        for (const auto& [k, n] : enumerate_maps_serial(profile)) total += n;
        CHECK(total <= double_factorial_odd(darts / 2));
        CHECK(total > 0);
    }
}

TEST_CASE("dart cap is enforced") {
    CHECK_THROWS_AS(enumerate_maps_serial({{4, 5}}), TooLarge);
    CHECK_THROWS_AS(enumerate_maps_serial({{3, 1}}), std::invalid_argument);
}

TEST_CASE("gaussian potential has no higher-genus maps") {
    Potential G = Potential::parse("0.5*l^2");
    GenusTable t = GenusTable::base();
    OperatorTable ops;
    CompareReport rep = compare_with_series(G, 1, 3, t, ops);
    CHECK(rep.all_match);  // both sides identically empty
}

TEST_CASE("quartic genus 0 and 1 against the generating function, small") {
    Potential V = Potential::parse("0.5*l^2 + t4*l^4");
    GenusTable t = GenusTable::base();
    OperatorTable ops;
    CompareReport g0 = compare_with_series(V, 0, 2, t, ops);
    CHECK(g0.all_match);
    CHECK(g0.profiles_checked == 2);
    CompareReport g1 = compare_with_series(V, 1, 2, t, ops);
    CHECK(g1.all_match);
}

TEST_CASE("mixed potential against the generating function") {
    // profiles with both valences present, e.g. two trivalent plus one
    // 4-valent vertex (10 darts)
    Potential V = Potential::parse("0.5*l^2 + t3*l^3 + t4*l^4");
    GenusTable t = GenusTable::base();
    OperatorTable ops;
    for (int g : {0, 1}) {
        CompareReport rep = compare_with_series(V, g, 3, t, ops);
        for (const auto& m : rep.mismatches) MESSAGE(m);
        CHECK(rep.all_match);
        CHECK(rep.profiles_checked >= 5);
    }
    // the mixed profile really contributes
    std::map<int, int64_t> mixed = enumerate_maps_genus({{3, 2}, {4, 1}}, 0);
    int64_t total = 0;
    for (const auto& [f, c] : mixed) total += c;
    CHECK(total > 0);
}

TEST_CASE("quartic genus 2 against the generating function") {
    // exercises the genus-2 closed form end to end; the first nonzero counts
    // are the 1440 one-face maps on three vertices and the 770688 two-face
    // maps on four (the full 16-dart enumeration)
    Potential V = Potential::parse("0.5*l^2 + t4*l^4");
    GenusTable t = GenusTable::base();
    OperatorTable ops;
    CompareReport g2 = compare_with_series(V, 2, 4, t, ops);
    for (const auto& m : g2.mismatches) MESSAGE(m);
    CHECK(g2.all_match);
    CHECK(g2.profiles_checked == 4);
    CHECK(enumerate_maps_genus({{4, 3}}, 2).at(1) == 1440);
    CHECK(enumerate_maps_genus({{4, 4}}, 2).at(2) == 770688);
}
