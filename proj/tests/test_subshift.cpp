#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <expanse/periodic.hpp>
#include <expanse/subshift.hpp>
#include <expanse/zgraph.hpp>

using namespace expanse;

namespace {

SubshiftSpec z_sft(std::vector<std::vector<std::pair<long long, const char*>>> forb) {
    std::vector<Pattern> ps;
    for (auto& f : forb) {
        Pattern p;
        for (auto& [at, s] : f) p.cells[z_elem(at)] = s;
        ps.push_back(p);
    }
    return SubshiftSpec(GroupSpec::integers(), {"0", "1"}, ps);
}

const SubshiftSpec golden_mean = z_sft({{{0, "1"}, {1, "1"}}});
const SubshiftSpec period2 = z_sft({{{0, "0"}, {1, "0"}}, {{0, "1"}, {1, "1"}}});
const SubshiftSpec full_shift = z_sft({});

} // namespace

TEST_CASE("pattern JSON round trip") {
    GroupSpec z = GroupSpec::integers();
    Pattern p;
    p.cells[z_elem(-1)] = "1";
    p.cells[z_elem(2)] = "0";
    CHECK(pattern_from_json(z, pattern_to_json(z, p)) == p);
}

TEST_CASE("shift is a group action on patterns") {
    GroupSpec z = GroupSpec::integers();
    Pattern p;
    p.cells[z_elem(0)] = "1";
    p.cells[z_elem(1)] = "0";
    auto q = shift(p, z_elem(3), z);
    CHECK(q.cells.at(z_elem(3)) == "1");
    CHECK(q.cells.at(z_elem(4)) == "0");
    CHECK(shift(shift(p, z_elem(2), z), z_elem(-2), z) == p);
}

TEST_CASE("local admissibility detects translated forbidden patterns") {
    Pattern ok, bad;
    ok.cells[z_elem(0)] = "1";
    ok.cells[z_elem(1)] = "0";
    ok.cells[z_elem(2)] = "1";
    bad.cells[z_elem(5)] = "1";
    bad.cells[z_elem(6)] = "1";
    CHECK(locally_admissible(golden_mean, ok));
    CHECK_FALSE(locally_admissible(golden_mean, bad));
}

TEST_CASE("extend counts match transfer-matrix values") {
    // golden mean words of length n are Fibonacci-counted: 2, 3, 5, 8, 13
    for (int n = 1; n <= 5; ++n) {
        std::vector<GroupElement> target;
        for (int i = 0; i < n; ++i) target.push_back(z_elem(i));
        static const std::size_t fib[] = {2, 3, 5, 8, 13};
        CHECK(extend(golden_mean, Pattern{}, target).size() == fib[n - 1]);
    }
    std::vector<GroupElement> target{z_elem(0), z_elem(1), z_elem(2)};
    CHECK(extend(period2, Pattern{}, target).size() == 2);
    CHECK(extend(full_shift, Pattern{}, target).size() == 8);
}

TEST_CASE("extend respects pinned cells and rejects foreign support") {
    Pattern pin;
    pin.cells[z_elem(0)] = "1";
    auto exts = extend(golden_mean, pin, {z_elem(0), z_elem(1)});
    REQUIRE(exts.size() == 1);
    CHECK(exts[0].cells.at(z_elem(1)) == "0");
    CHECK_THROWS_AS(extend(golden_mean, pin, {z_elem(1)}), malformed_input);
}

TEST_CASE("ZGraph agrees with the oracle on admissible words") {
    ZGraph g(golden_mean);
    CHECK(g.memory() == 1);
    auto words = g.admissible_words(4);
    std::vector<GroupElement> target{z_elem(0), z_elem(1), z_elem(2), z_elem(3)};
    CHECK(words.size() == extend(golden_mean, Pattern{}, target).size());
    CHECK(std::is_sorted(words.begin(), words.end()));
    for (const auto& w : words) CHECK(g.globally_admissible(w));
    CHECK_FALSE(g.globally_admissible({1, 1}));
}

TEST_CASE("global admissibility is stricter than local") {
    // forbidding "10" leaves the non-decreasing points; 0...01...1 blocks are
    // fine but nothing may ever descend
    auto s = z_sft({{{0, "1"}, {1, "0"}}});
    ZGraph g(s);
    auto w = g.admissible_words(3);
    std::vector<std::vector<int>> want{{0, 0, 0}, {0, 0, 1}, {0, 1, 1}, {1, 1, 1}};
    CHECK(w == want);
    CHECK_FALSE(g.globally_admissible({1, 0}));
}

TEST_CASE("periodic point enumeration on Z") {
    auto pts = enumerate_periodic_points(period2, 4);
    REQUIRE(pts.size() == 1);
    CHECK(pts[0].word == std::vector<int>{0, 1});
    CHECK(pts[0].stabilizer_index == 2);

    auto gm = enumerate_periodic_points(golden_mean, 3);
    // primitive lex-least words: 0, 001, 01 (011 and 1 contain "11")
    std::vector<std::vector<int>> got;
    for (const auto& p : gm) got.push_back(p.word);
    std::vector<std::vector<int>> want{{0}, {0, 0, 1}, {0, 1}};
    CHECK(got == want);
}

TEST_CASE("finiteness verdicts") {
    auto fin = is_finite_sft(period2);
    CHECK(fin.kind == FinitenessVerdict::Kind::finite);
    CHECK(fin.count == 2);
    CHECK(is_finite_sft(golden_mean).kind == FinitenessVerdict::Kind::infinite);
    CHECK(is_finite_sft(full_shift).kind == FinitenessVerdict::Kind::infinite);

    auto single = z_sft({{{0, "1"}}});
    auto fs = is_finite_sft(single);
    CHECK(fs.kind == FinitenessVerdict::Kind::finite);
    CHECK(fs.count == 1);
}

TEST_CASE("periodic counts cover the finite SFT exactly") {
    auto fin = is_finite_sft(period2);
    long long covered = 0;
    for (const auto& p : enumerate_periodic_points(period2, 4)) covered += p.stabilizer_index;
    CHECK(covered == fin.count);
}

TEST_CASE("subshift JSON round trip") {
    auto j = golden_mean.to_json();
    auto back = SubshiftSpec::from_json(j);
    CHECK(back.to_json() == j);
    CHECK_THROWS_AS(SubshiftSpec(GroupSpec::integers(), {}), malformed_input);
    CHECK_THROWS_AS(SubshiftSpec(GroupSpec::integers(), {"a", "a"}), malformed_input);
}
