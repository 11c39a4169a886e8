#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <fstream>

#include <expanse/corpus.hpp>
#include <expanse/tiling.hpp>

using namespace expanse;

namespace {

TileSet dominoes() {
    TileSet ts;
    ts.tiles.push_back({"h", {{0, 0}, {1, 0}}});
    ts.tiles.push_back({"v", {{0, 0}, {0, 1}}});
    return ts;
}

TileSet jigsaw() {
    return TileSet::from_json(corpus_entry(EXPANSE_CORPUS_DIR, "jigsaw-tile").payload);
}

TileSet skew() {
    return TileSet::from_json(corpus_entry(EXPANSE_CORPUS_DIR, "skew-pair-tile").payload);
}

} // namespace

TEST_CASE("tile validation") {
    Tile no_origin{"bad", {{1, 0}, {2, 0}}};
    Tile dup{"dup", {{0, 0}, {0, 0}}};
    CHECK_THROWS_AS(no_origin.validate(), malformed_input);
    CHECK_THROWS_AS(dup.validate(), malformed_input);
    CHECK(jigsaw().tiles[0].connected());
    CHECK_FALSE(skew().tiles[0].connected());
}

TEST_CASE("tileset JSON round trip") {
    auto ts = dominoes();
    auto back = TileSet::from_json(ts.to_json());
    CHECK(back.to_json() == ts.to_json());
}

TEST_CASE("enumeration counts match the frozen golden file") {
    json golden = load_json_file(std::string(EXPANSE_GOLDEN_DIR) + "/tiling_counts.json");
    REQUIRE(!golden.empty());
    for (const auto& row : golden) {
        TileSet ts = TileSet::from_json(corpus_entry(EXPANSE_CORPUS_DIR, row.at("tileset").get<std::string>()).payload);
        int W = row.at("torus").at(0).get<int>(), H = row.at("torus").at(1).get<int>();
        auto tilings = enumerate_tilings(ts, W, H);
        CHECK(tilings.size() == row.at("tilings").get<std::size_t>());
        CHECK(translation_classes(tilings).size() == row.at("classes").get<std::size_t>());
        for (const auto& x : tilings) x.cover(ts); // independent exact-cover audit
    }
}

TEST_CASE("enumeration is deterministic and sorted") {
    auto t1 = enumerate_tilings(dominoes(), 4, 4);
    auto t2 = enumerate_tilings(dominoes(), 4, 4);
    CHECK(t1 == t2);
    CHECK(std::is_sorted(t1.begin(), t1.end()));
}

TEST_CASE("odd tori admit no domino tiling; oversized tiles are rejected") {
    CHECK(enumerate_tilings(dominoes(), 3, 3).empty());
    TileSet big;
    big.tiles.push_back({"wide", {{0, 0}, {1, 0}, {2, 0}}});
    CHECK_THROWS_AS(enumerate_tilings(big, 2, 2), malformed_input); // self-overlaps mod the torus
}

TEST_CASE("translation classes partition the tilings") {
    auto tilings = enumerate_tilings(dominoes(), 4, 4);
    auto classes = translation_classes(tilings);
    std::size_t covered = 0;
    for (const auto& c : classes) {
        covered += c.size;
        // every translate of the representative is one of the enumerated tilings
        for (int dx = 0; dx < 4; ++dx)
            for (int dy = 0; dy < 4; ++dy) {
                auto t = c.representative.translated({dx, dy});
                CHECK(std::binary_search(tilings.begin(), tilings.end(), t));
            }
    }
    CHECK(covered == tilings.size());
}

TEST_CASE("intersection graphs are connected with edge adjacency") {
    auto ts = dominoes();
    for (const auto& x : enumerate_tilings(ts, 4, 4)) {
        auto g = intersection_graph(x, ts);
        CHECK(g.vertices.size() == x.placements.size());
        CHECK(g.dot().substr(0, 5) == "graph");
    }
}

TEST_CASE("realized displacements and finite local complexity") {
    auto ts = dominoes();
    auto tilings = enumerate_tilings(ts, 4, 4);
    auto flc = flc_check(ts, tilings);
    CHECK(flc.finite);
    CHECK(flc.bound == 3); // two unit diameters + 1
    for (const auto& d : flc.realized) CHECK(d.norm() <= flc.bound);
}

TEST_CASE("recentering maps and the inverse-orbit identity") {
    auto ts = dominoes();
    for (const auto& x : enumerate_tilings(ts, 4, 4)) {
        auto d = centering_vector(x, ts);
        auto xc = x.translated({-d.x, -d.y});
        REQUIRE(xc.centered());
        auto mt = mt_inverse_orbit(xc, ts);
        CHECK(mt.orbit == mt.expected);
        // one recentering per tile, up to coincident translates of periodic tilings
        CHECK(mt.orbit.size() <= xc.placements.size());
        for (const auto& v : xc.centers())
            CHECK(std::binary_search(mt.orbit.begin(), mt.orbit.end(), xc.translated({-v.x, -v.y})));
        // phi at a center is the corresponding translation
        auto centers = xc.centers();
        auto y = phi_v(xc, centers[0], ts);
        CHECK(y == xc.translated({-centers[0].x, -centers[0].y}));
    }
}

TEST_CASE("expansiveness of the recentering system") {
    auto ts = dominoes();
    auto tilings = enumerate_tilings(ts, 4, 4);
    std::vector<TorusTiling> centered;
    for (const auto& x : tilings)
        if (x.centered()) centered.push_back(x);
    auto exp = mt_expansiveness_check(centered, ts);
    CHECK(exp.all_separated);
    CHECK(exp.max_word_length <= static_cast<long long>(centered[0].placements.size()));
}

TEST_CASE("fault lines") {
    auto ts = dominoes();
    TorusTiling allh;
    allh.W = 4;
    allh.H = 4;
    for (int y = 0; y < 4; ++y)
        for (int x = 0; x < 4; x += 2) allh.placements.push_back({0, {x, y}});
    std::sort(allh.placements.begin(), allh.placements.end());
    allh.cover(ts);
    auto lines = fault_lines(allh, ts);
    CHECK(lines.size() == 6); // 4 horizontal seams + the 2 vertical seams between columns
    int h = 0, v = 0;
    for (const auto& l : lines) (l.axis == 'h' ? h : v)++;
    CHECK(h == 4);
    CHECK(v == 2);

    // a brick-layer offset pattern kills the vertical fault lines
    TorusTiling brick;
    brick.W = 4;
    brick.H = 2;
    brick.placements = {{0, {0, 0}}, {0, {2, 0}}, {0, {1, 1}}, {0, {3, 1}}};
    std::sort(brick.placements.begin(), brick.placements.end());
    brick.cover(ts);
    for (const auto& l : fault_lines(brick, ts)) CHECK(l.axis == 'h');
}

TEST_CASE("total periodicity verdicts") {
    auto rep = total_periodicity_report(jigsaw(), {{3, 3}, {6, 6}});
    CHECK(rep.verdict == "consistent");
    auto grow = total_periodicity_report(skew(), {{4, 4}, {6, 6}, {8, 8}});
    CHECK(grow.verdict == "growth-witness");
    REQUIRE(grow.rows.size() == 3);
    CHECK(grow.rows[0].classes < grow.rows[1].classes);
    CHECK(grow.rows[1].classes < grow.rows[2].classes);
}

TEST_CASE("corrupted tilings fail the cover audit") {
    auto ts = dominoes();
    auto x = enumerate_tilings(ts, 2, 2).front();
    auto bad = x;
    bad.placements[0] = bad.placements[1]; // double cover
    CHECK_THROWS_AS(bad.cover(ts), invariant_violation);
}
