#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <expanse/group.hpp>
#include <expanse/horoball.hpp>
#include <expanse/zgraph.hpp>

using namespace expanse;

TEST_CASE("group laws on Z") {
    GroupSpec z = GroupSpec::integers();
    GroupElement a = z_elem(3), b = z_elem(-5);
    CHECK(z.mul(a, b) == z_elem(-2));
    CHECK(z.mul(a, z.inverse(a)) == z.identity());
    CHECK(word_length(z_elem(7), z) == 7);
    CHECK(word_length(z_elem(-7), z) == 7);
    CHECK(word_distance(z_elem(2), z_elem(-3), z) == 5);
}

TEST_CASE("ball sizes match closed forms") {
    CHECK(ball(GroupSpec::integers(), 3).size() == 7);
    CHECK(ball(GroupSpec::lattice(2), 2).size() == 13); // |{|x|+|y| <= 2}|
    CHECK(ball(GroupSpec::cyclic(5), 10).size() == 5);  // saturates at the group
    CHECK(ball(GroupSpec::free_group(2), 2).size() == 17); // 1 + 4 + 12
}

TEST_CASE("balls are canonical and closed under inverse") {
    for (const auto& g : {GroupSpec::integers(), GroupSpec::lattice(2), GroupSpec::free_group(2)}) {
        auto b = ball(g, 2);
        auto sorted = b;
        std::sort(sorted.begin(), sorted.end());
        CHECK(b == sorted);
        for (const auto& e : b) {
            auto inv = g.inverse(e);
            CHECK(std::binary_search(b.begin(), b.end(), inv));
        }
    }
}

TEST_CASE("free group reduces words") {
    GroupSpec f = GroupSpec::free_group(2);
    auto gens = f.generators();
    GroupElement x;
    bool found = false;
    for (const auto& g : gens)
        if (g != f.identity()) { x = g; found = true; break; }
    REQUIRE(found);
    CHECK(f.mul(x, f.inverse(x)) == f.identity());
    CHECK(word_length(f.mul(x, x), f) == 2);
}

TEST_CASE("group JSON round trip") {
    for (const char* txt : {R"({"kind":"Z"})", R"({"kind":"Zd","d":2})", R"({"kind":"cyclic","n":6})",
                            R"({"kind":"free","rank":2})"}) {
        GroupSpec g = GroupSpec::from_json(json::parse(txt));
        GroupSpec g2 = GroupSpec::from_json(g.describe());
        CHECK(g.describe() == g2.describe());
        auto e = ball(g, 1).back();
        CHECK(g.element_from_json(g.element_to_json(e)) == e);
    }
}

TEST_CASE("invalid elements are rejected") {
    GroupSpec z = GroupSpec::integers();
    GroupElement bad;
    bad.coords = {1, 2};
    CHECK_THROWS_AS(z.mul(bad, z.identity()), malformed_input);
    CHECK_THROWS_AS(z.element_from_json(json::parse("[1,2]")), malformed_input);
}

TEST_CASE("horoball surrogate on Z") {
    GroupSpec z = GroupSpec::integers();
    auto h = horoball_approx(z, 3);
    CHECK(h.R == 3);
    CHECK(h.r == 6);
    CHECK(z_coord(h.center) == -6); // default direction is the least generator
    REQUIRE(h.membership.size() == 3);
    CHECK(z_coord(h.membership.front()) == -3);
    CHECK(z_coord(h.membership.back()) == -1);

    auto h2 = horoball_approx(z, 3, {z_elem(1)});
    REQUIRE(h2.membership.size() == 3);
    CHECK(z_coord(h2.membership.front()) == 1);
    auto c = find_ball_in_horoball(h2, z, 1);
    REQUIRE(c.has_value());
    CHECK(z_coord(*c) == 2); // the radius-1 ball around 2 sits inside {1,2,3}
}

TEST_CASE("horoball membership is strictly inside the defining ball") {
    GroupSpec z2 = GroupSpec::lattice(2);
    auto h = horoball_approx(z2, 2);
    for (const auto& m : h.membership) {
        CHECK(word_distance(h.center, m, z2) < h.r);
        CHECK(m != z2.identity());
    }
}

TEST_CASE("finite groups admit no horoball") {
    CHECK_THROWS_AS(horoball_approx(GroupSpec::cyclic(6), 2), no_horoball_error);
}
