#pragma once

// Polyomino tile sets on the integer grid, exact-cover enumeration of torus
// tilings, translation classes, intersection graphs, admissible displacement
// vectors, the recentering maps phi_v with their monoid, fault lines, and the
// total-periodicity report.

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <unordered_map>
#include <vector>

#include <json.hpp>

#include "action.hpp"
#include "core.hpp"

namespace expanse {

struct Cell {
    int x = 0, y = 0;
    auto operator<=>(const Cell&) const = default;
    Cell operator+(const Cell& o) const { return {x + o.x, y + o.y}; }
    Cell operator-(const Cell& o) const { return {x - o.x, y - o.y}; }
    long long norm() const { return std::max(std::abs(static_cast<long long>(x)), std::abs(static_cast<long long>(y))); }
};

struct Tile {
    std::string name;
    std::vector<Cell> cells; // sorted, contains the origin

    void validate() const {
        if (cells.empty()) throw malformed_input("tile needs at least one cell");
        if (!std::is_sorted(cells.begin(), cells.end())) throw malformed_input("tile cells must be sorted");
        if (std::adjacent_find(cells.begin(), cells.end()) != cells.end())
            throw malformed_input("tile cells must be distinct");
        if (!std::binary_search(cells.begin(), cells.end(), Cell{0, 0}))
            throw malformed_input("tile must contain the origin");
    }

    bool connected() const { // 4-adjacency
        std::set<Cell> rest(cells.begin(), cells.end());
        std::vector<Cell> frontier{cells.front()};
        rest.erase(cells.front());
        while (!frontier.empty()) {
            Cell c = frontier.back();
            frontier.pop_back();
            for (Cell u : {Cell{1, 0}, Cell{-1, 0}, Cell{0, 1}, Cell{0, -1}}) {
                auto it = rest.find(c + u);
                if (it != rest.end()) {
                    frontier.push_back(*it);
                    rest.erase(it);
                }
            }
        }
        return rest.empty();
    }

    long long radius() const { // max Chebyshev norm of a cell (origin is in the tile)
        long long r = 0;
        for (const auto& c : cells) r = std::max(r, c.norm());
        return r;
    }

    long long diameter() const {
        long long d = 0;
        for (const auto& a : cells)
            for (const auto& b : cells) d = std::max(d, (a - b).norm());
        return d;
    }
};

struct TileSet {
    std::vector<Tile> tiles;
    bool corner_adjacency = false;

    void validate() const {
        if (tiles.empty()) throw malformed_input("tile set must be nonempty");
        std::set<std::string> names;
        for (const auto& t : tiles) {
            t.validate();
            if (!names.insert(t.name).second) throw malformed_input("duplicate tile name: " + t.name);
        }
    }

    static TileSet from_json(const json& j) {
        TileSet ts;
        for (const auto& jt : j.at("tiles")) {
            Tile t;
            t.name = jt.at("name").get<std::string>();
            for (const auto& c : jt.at("cells")) t.cells.push_back({c.at(0).get<int>(), c.at(1).get<int>()});
            std::sort(t.cells.begin(), t.cells.end());
            ts.tiles.push_back(std::move(t));
        }
        if (j.contains("adjacency")) {
            std::string adj = j.at("adjacency").get<std::string>();
            if (adj == "corner") ts.corner_adjacency = true;
            else if (adj != "edge") throw malformed_input("adjacency must be \"edge\" or \"corner\"");
        }
        ts.validate();
        return ts;
    }

    json to_json() const {
        json jt = json::array();
        for (const auto& t : tiles) {
            json cells = json::array();
            for (const auto& c : t.cells) cells.push_back({c.x, c.y});
            jt.push_back({{"name", t.name}, {"cells", cells}});
        }
        return json{{"tiles", jt}, {"adjacency", corner_adjacency ? "corner" : "edge"}};
    }
};

struct Placement {
    int tile = 0;
    Cell v; // translation, coordinates in [0,W) x [0,H)
    auto operator<=>(const Placement&) const = default;
};

struct TorusTiling {
    int W = 0, H = 0;
    std::vector<Placement> placements; // sorted

    auto operator<=>(const TorusTiling&) const = default;

    Cell wrap(Cell c) const { return {((c.x % W) + W) % W, ((c.y % H) + H) % H}; }

    std::vector<Cell> centers() const { // V_x
        std::vector<Cell> out;
        for (const auto& p : placements) out.push_back(p.v);
        return out;
    }

    bool centered() const {
        for (const auto& p : placements)
            if (p.v == Cell{0, 0}) return true;
        return false;
    }

    // cell -> placement index; re-verifies the exact cover independently.
    std::vector<int> cover(const TileSet& ts) const {
        std::vector<int> cov(static_cast<std::size_t>(W) * static_cast<std::size_t>(H), -1);
        for (std::size_t i = 0; i < placements.size(); ++i)
            for (const auto& c : ts.tiles[static_cast<std::size_t>(placements[i].tile)].cells) {
                Cell w = wrap(placements[i].v + c);
                int& slot = cov[static_cast<std::size_t>(w.y * W + w.x)];
                if (slot != -1) throw invariant_violation("tiling covers a cell twice");
                slot = static_cast<int>(i);
            }
        for (int s : cov)
            if (s == -1) throw invariant_violation("tiling leaves a cell uncovered");
        return cov;
    }

    TorusTiling translated(Cell d) const { // d + x
        TorusTiling out;
        out.W = W;
        out.H = H;
        for (const auto& p : placements) out.placements.push_back({p.tile, wrap(p.v + d)});
        std::sort(out.placements.begin(), out.placements.end());
        return out;
    }
};

// ---- enumeration -------------------------------------------------------------

// All exact covers by translated tiles, backtracking on the least uncovered
// cell (row-major); deterministic order.
inline std::vector<TorusTiling> enumerate_tilings(const TileSet& ts, int W, int H,
                                                  std::size_t budget = default_budget()) {
    ts.validate();
    if (W < 1 || H < 1) throw malformed_input("torus dimensions must be >= 1");
    for (const auto& t : ts.tiles) {
        std::set<Cell> mod;
        for (const auto& c : t.cells)
            if (!mod.insert({((c.x % W) + W) % W, ((c.y % H) + H) % H}).second)
                throw malformed_input("tile " + t.name + " self-overlaps modulo the torus");
    }
    std::vector<TorusTiling> out;
    std::vector<int> cov(static_cast<std::size_t>(W) * static_cast<std::size_t>(H), -1);
    std::vector<Placement> placed;
    std::size_t nodes = 0;
    auto wrap = [&](Cell c) { return Cell{((c.x % W) + W) % W, ((c.y % H) + H) % H}; };
    auto rec = [&](auto&& self) -> void {
        if (++nodes > budget) throw budget_error("tiling enumeration");
        int target = -1;
        for (std::size_t i = 0; i < cov.size(); ++i)
            if (cov[i] == -1) { target = static_cast<int>(i); break; }
        if (target == -1) {
            TorusTiling x;
            x.W = W;
            x.H = H;
            x.placements = placed;
            std::sort(x.placements.begin(), x.placements.end());
            x.cover(ts); // independent exact-cover re-verification
            out.push_back(std::move(x));
            return;
        }
        Cell tc{target % W, target / W};
        for (int ti = 0; ti < static_cast<int>(ts.tiles.size()); ++ti)
            for (const auto& anchor : ts.tiles[static_cast<std::size_t>(ti)].cells) {
                Cell v = wrap(tc - anchor);
                bool ok = true;
                for (const auto& c : ts.tiles[static_cast<std::size_t>(ti)].cells) {
                    Cell w = wrap(v + c);
                    if (cov[static_cast<std::size_t>(w.y * W + w.x)] != -1) { ok = false; break; }
                }
                if (!ok) continue;
                int id = static_cast<int>(placed.size());
                placed.push_back({ti, v});
                for (const auto& c : ts.tiles[static_cast<std::size_t>(ti)].cells) {
                    Cell w = wrap(v + c);
                    cov[static_cast<std::size_t>(w.y * W + w.x)] = id;
                }
                self(self);
                for (const auto& c : ts.tiles[static_cast<std::size_t>(ti)].cells) {
                    Cell w = wrap(v + c);
                    cov[static_cast<std::size_t>(w.y * W + w.x)] = -1;
                }
                placed.pop_back();
            }
    };
    rec(rec);
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

struct TranslationClass {
    TorusTiling representative; // lexicographically least translate
    long long size = 0;
};

inline std::vector<TranslationClass> translation_classes(const std::vector<TorusTiling>& tilings) {
    std::map<TorusTiling, std::set<TorusTiling>> classes; // canonical rep -> members
    for (const auto& x : tilings) {
        TorusTiling best = x;
        for (int dx = 0; dx < x.W; ++dx)
            for (int dy = 0; dy < x.H; ++dy) best = std::min(best, x.translated({dx, dy}));
        classes[best].insert(x);
    }
    std::vector<TranslationClass> out;
    for (const auto& [rep, members] : classes)
        out.push_back({rep, static_cast<long long>(members.size())});
    return out;
}

// ---- intersection graph ---------------------------------------------------------

struct IntersectionGraph {
    std::vector<Cell> vertices; // V_x
    std::vector<std::pair<int, int>> edges;

    std::string dot() const {
        std::string s = "graph intersection {\n";
        for (std::size_t i = 0; i < vertices.size(); ++i)
            s += "  v" + std::to_string(i) + " [label=\"(" + std::to_string(vertices[i].x) + "," +
                 std::to_string(vertices[i].y) + ")\"];\n";
        for (const auto& [a, b] : edges) s += "  v" + std::to_string(a) + " -- v" + std::to_string(b) + ";\n";
        return s + "}\n";
    }
};

inline IntersectionGraph intersection_graph(const TorusTiling& x, const TileSet& ts) {
    auto cov = x.cover(ts);
    IntersectionGraph g;
    g.vertices = x.centers();
    std::set<std::pair<int, int>> edges;
    std::vector<Cell> units{{1, 0}, {0, 1}};
    if (ts.corner_adjacency) {
        units.push_back({1, 1});
        units.push_back({1, -1});
    }
    for (int cy = 0; cy < x.H; ++cy)
        for (int cx = 0; cx < x.W; ++cx)
            for (const auto& u : units) {
                Cell w = x.wrap(Cell{cx, cy} + u);
                int a = cov[static_cast<std::size_t>(cy * x.W + cx)];
                int b = cov[static_cast<std::size_t>(w.y * x.W + w.x)];
                if (a != b) edges.insert({std::min(a, b), std::max(a, b)});
            }
    g.edges.assign(edges.begin(), edges.end());
    // connectivity is a structural guarantee for valid tilings
    if (!g.vertices.empty()) {
        std::vector<std::vector<int>> adj(g.vertices.size());
        for (const auto& [a, b] : g.edges) {
            adj[static_cast<std::size_t>(a)].push_back(b);
            adj[static_cast<std::size_t>(b)].push_back(a);
        }
        std::vector<bool> seen(g.vertices.size(), false);
        std::vector<int> frontier{0};
        seen[0] = true;
        std::size_t count = 1;
        while (!frontier.empty()) {
            int v = frontier.back();
            frontier.pop_back();
            for (int w : adj[static_cast<std::size_t>(v)])
                if (!seen[static_cast<std::size_t>(w)]) {
                    seen[static_cast<std::size_t>(w)] = true;
                    ++count;
                    frontier.push_back(w);
                }
        }
        if (count != g.vertices.size()) throw invariant_violation("intersection graph is disconnected");
    }
    return g;
}

// ---- displacements ---------------------------------------------------------------

// Realized lifted displacement vectors between adjacent placements: for a
// witnessing cell pair (c1 in T1, c2 in T2) across a unit step u, the lift is
// c1 + u - c2.
inline std::vector<Cell> realized_displacements(const TorusTiling& x, const TileSet& ts) {
    auto cov = x.cover(ts);
    std::set<Cell> out;
    std::vector<Cell> units{{1, 0}, {-1, 0}, {0, 1}, {0, -1}};
    if (ts.corner_adjacency)
        for (Cell u : {Cell{1, 1}, Cell{1, -1}, Cell{-1, 1}, Cell{-1, -1}}) units.push_back(u);
    for (std::size_t i = 0; i < x.placements.size(); ++i) {
        const auto& p = x.placements[i];
        for (const auto& c1 : ts.tiles[static_cast<std::size_t>(p.tile)].cells)
            for (const auto& u : units) {
                Cell w = x.wrap(p.v + c1 + u);
                int j = cov[static_cast<std::size_t>(w.y * x.W + w.x)];
                if (j == static_cast<int>(i)) continue;
                const auto& q = x.placements[static_cast<std::size_t>(j)];
                // which cell of q covers w?
                for (const auto& c2 : ts.tiles[static_cast<std::size_t>(q.tile)].cells)
                    if (x.wrap(q.v + c2) == w) out.insert(c1 + u - c2);
            }
    }
    return {out.begin(), out.end()};
}

struct FlcReport {
    bool finite = true; // automatic for translated polyominoes
    long long bound = 0; // norm bound: sum of the two largest tile diameters + 1
    std::vector<Cell> realized;
};

inline FlcReport flc_check(const TileSet& ts, const std::vector<TorusTiling>& tilings) {
    FlcReport rep;
    long long d1 = 0, d2 = 0;
    for (const auto& t : ts.tiles) {
        long long d = t.diameter();
        if (d >= d1) { d2 = d1; d1 = d; }
        else d2 = std::max(d2, d);
    }
    rep.bound = d1 + (ts.tiles.size() > 1 ? d2 : d1) + 1;
    std::set<Cell> all;
    for (const auto& x : tilings)
        for (const auto& d : realized_displacements(x, ts)) all.insert(d);
    rep.realized.assign(all.begin(), all.end());
    for (const auto& d : rep.realized)
        if (d.norm() > rep.bound) throw invariant_violation("displacement exceeds the FLC bound");
    return rep;
}

// ---- the recentering monoid -------------------------------------------------------

// x . phi_v = -v + x when v is a tile center of x, x otherwise. Both input and
// output are centered tilings; x is assumed valid (enumerate_tilings output).
inline TorusTiling phi_v(const TorusTiling& x, Cell v, const TileSet&) {
    if (!x.centered()) throw malformed_input("phi_v needs a centered tiling");
    Cell vw = x.wrap(v);
    for (const auto& p : x.placements)
        if (p.v == vw) return x.translated({-vw.x, -vw.y});
    return x;
}

struct MtInverseOrbit {
    std::vector<TorusTiling> orbit;    // reverse-BFS result, sorted
    std::vector<TorusTiling> expected; // {-v + x : v in V_x}, sorted
};

// Inverse orbit of x under the monoid generated by {phi_v : v realized
// displacement or center}; asserted equal to the direct centering set.
inline MtInverseOrbit mt_inverse_orbit(const TorusTiling& x, const TileSet& ts,
                                       std::size_t budget = default_budget()) {
    if (!x.centered()) throw malformed_input("mt_inverse_orbit needs a centered tiling");
    // ambient states: every centered translate of every tiling in the full
    // torus family reachable by recentering stays a translate of x, so the
    // translates of x suffice as the ambient set here.
    std::set<TorusTiling> states;
    for (int dx = 0; dx < x.W; ++dx)
        for (int dy = 0; dy < x.H; ++dy) {
            TorusTiling y = x.translated({dx, dy});
            if (y.centered()) states.insert(std::move(y));
        }
    std::set<Cell> gen_vs;
    for (const auto& y : states)
        for (const auto& v : y.centers()) gen_vs.insert(v);
    // forward edges y -> y.phi_v, then reverse BFS from x
    std::map<TorusTiling, std::vector<TorusTiling>> rev;
    for (const auto& y : states)
        for (const auto& v : gen_vs) rev[phi_v(y, v, ts)].push_back(y);
    MtInverseOrbit out;
    std::set<TorusTiling> seen{x};
    std::vector<TorusTiling> frontier{x};
    while (!frontier.empty()) {
        std::vector<TorusTiling> next;
        for (const auto& y : frontier)
            for (const auto& z : rev[y])
                if (seen.insert(z).second) {
                    next.push_back(z);
                    if (seen.size() > budget) throw budget_error("mt inverse orbit");
                }
        frontier = std::move(next);
    }
    out.orbit.assign(seen.begin(), seen.end());
    std::set<TorusTiling> expected;
    for (const auto& v : x.centers()) expected.insert(x.translated({-v.x, -v.y}));
    out.expected.assign(expected.begin(), expected.end());
    if (out.orbit != out.expected) throw invariant_violation("mt inverse orbit mismatch with direct centering");
    return out;
}

struct MtExpansiveness {
    bool all_separated = true;
    long long max_word_length = 0; // refinement depth: separating words are no longer than this
    long long states = 0;          // size of the phi-closure
    std::optional<std::pair<TorusTiling, TorusTiling>> unseparated;
};

// alpha records the tile at the origin and which nearby displacements carry
// centers. Two centered tilings are separated by a word over {phi_v} iff
// partition refinement of the phi-closure starting from alpha splits them;
// the refinement depth bounds the separating word length.
inline MtExpansiveness mt_expansiveness_check(const std::vector<TorusTiling>& tilings, const TileSet& ts,
                                              std::size_t budget = default_budget()) {
    MtExpansiveness rep;
    if (tilings.empty()) return rep;
    for (const auto& x : tilings)
        if (!x.centered()) throw malformed_input("mt_expansiveness_check needs centered tilings");

    // hashed state registry; recentering only produces translates, so the
    // closure is BFS over translate keys
    auto encode = [](const TorusTiling& x) {
        std::string key;
        key.reserve(x.placements.size() * 3);
        for (const auto& p : x.placements) {
            key.push_back(static_cast<char>(p.tile));
            key.push_back(static_cast<char>(p.v.x));
            key.push_back(static_cast<char>(p.v.y));
        }
        return key;
    };
    std::vector<TorusTiling> states;
    std::unordered_map<std::string, int> index;
    auto intern = [&](TorusTiling y) {
        auto [it, fresh] = index.emplace(encode(y), static_cast<int>(states.size()));
        if (fresh) states.push_back(std::move(y));
        return it->second;
    };
    std::set<Cell> gen_vs;
    for (const auto& x : tilings) {
        intern(x);
        for (const auto& v : x.centers()) gen_vs.insert(v);
    }
    std::vector<Cell> gens(gen_vs.begin(), gen_vs.end());
    std::vector<std::vector<int>> trans;
    for (std::size_t i = 0; i < states.size(); ++i) { // states grows during the loop
        if (states.size() > budget) throw budget_error("phi closure");
        std::vector<int> row(gens.size());
        for (std::size_t g = 0; g < gens.size(); ++g) row[g] = intern(phi_v(states[i], gens[g], ts));
        trans.push_back(std::move(row));
    }
    // phi images introduce no new center cells (they are translates of
    // existing tilings on the same torus), but any late tilings' centers must
    // already be covered by gen_vs; assert that
    for (const auto& x : states)
        for (const auto& v : x.centers())
            if (!gen_vs.count(v)) throw invariant_violation("phi closure escaped the generator set");
    rep.states = static_cast<long long>(states.size());

    // initial classes by alpha; candidate displacement cells from the tile geometry
    std::set<Cell> near;
    for (const auto& t1 : ts.tiles)
        for (const auto& t2 : ts.tiles)
            for (const auto& c1 : t1.cells)
                for (const auto& c2 : t2.cells)
                    for (Cell u : {Cell{1, 0}, Cell{-1, 0}, Cell{0, 1}, Cell{0, -1}})
                        near.insert(states.front().wrap(c1 + u - c2));
    auto alpha = [&](const TorusTiling& x) {
        int tile = -1;
        for (const auto& p : x.placements)
            if (p.v == Cell{0, 0}) tile = p.tile;
        std::set<Cell> centers;
        for (const auto& p : x.placements) centers.insert(p.v);
        std::vector<Cell> present;
        for (const auto& v : near)
            if (centers.count(v)) present.push_back(v);
        return std::make_pair(tile, present);
    };
    std::map<std::pair<int, std::vector<Cell>>, int> alpha_ids;
    std::vector<int> cls(states.size());
    for (std::size_t i = 0; i < states.size(); ++i)
        cls[i] = alpha_ids.emplace(alpha(states[i]), static_cast<int>(alpha_ids.size())).first->second;
    // refine by successor-class signatures; refinement never merges classes,
    // so stabilization is detected by the class count
    std::size_t class_count = alpha_ids.size();
    for (;;) {
        std::map<std::vector<int>, int> sig_ids;
        std::vector<int> next(states.size());
        for (std::size_t i = 0; i < states.size(); ++i) {
            std::vector<int> sig{cls[i]};
            for (std::size_t g = 0; g < gens.size(); ++g) sig.push_back(cls[static_cast<std::size_t>(trans[i][g])]);
            next[i] = sig_ids.emplace(std::move(sig), static_cast<int>(sig_ids.size())).first->second;
        }
        cls = std::move(next);
        if (sig_ids.size() == class_count) break;
        class_count = sig_ids.size();
        ++rep.max_word_length;
    }
    // separated iff no two distinct inputs share a class
    std::map<int, std::size_t> first_in_class;
    for (std::size_t i = 0; i < tilings.size(); ++i) {
        int c = cls[static_cast<std::size_t>(index.at(encode(tilings[i])))];
        auto [it, fresh] = first_in_class.emplace(c, i);
        if (!fresh && !(tilings[it->second] == tilings[i])) {
            rep.all_separated = false;
            if (!rep.unseparated) rep.unseparated = {tilings[it->second], tilings[i]};
        }
    }
    return rep;
}

// Translation of norm <= max tile radius that centers x: the inverse of the
// cell offset covering the origin.
inline Cell centering_vector(const TorusTiling& x, const TileSet& ts) {
    auto cov = x.cover(ts);
    int i = cov[0]; // placement covering cell (0,0)
    const auto& p = x.placements[static_cast<std::size_t>(i)];
    for (const auto& c : ts.tiles[static_cast<std::size_t>(p.tile)].cells)
        if (x.wrap(p.v + c) == Cell{0, 0}) {
            Cell d{-c.x, -c.y}; // -d + x is centered at the placement p
            long long rmax = 0;
            for (const auto& t : ts.tiles) rmax = std::max(rmax, t.radius());
            if (d.norm() > rmax) throw invariant_violation("centering vector exceeds the tile radius");
            if (!x.translated({-d.x, -d.y}).centered())
                throw invariant_violation("centering vector fails to center the tiling");
            return d;
        }
    throw invariant_violation("cover map inconsistent at the origin");
}

// ---- fault lines ------------------------------------------------------------------

struct FaultLine {
    char axis = 'h'; // 'h': line between rows index and index+1; 'v': between columns
    int index = 0;
    auto operator<=>(const FaultLine&) const = default;
};

// Grid lines crossed by no single placement: every unit segment on the line
// lies on a boundary between two distinct placed tiles.
inline std::vector<FaultLine> fault_lines(const TorusTiling& x, const TileSet& ts) {
    auto cov = x.cover(ts);
    std::vector<FaultLine> out;
    for (int y = 0; y < x.H; ++y) {
        bool fault = true;
        for (int cx = 0; cx < x.W && fault; ++cx)
            if (cov[static_cast<std::size_t>(y * x.W + cx)] ==
                cov[static_cast<std::size_t>(((y + 1) % x.H) * x.W + cx)])
                fault = false;
        if (fault) out.push_back({'h', y});
    }
    for (int cx = 0; cx < x.W; ++cx) {
        bool fault = true;
        for (int y = 0; y < x.H && fault; ++y)
            if (cov[static_cast<std::size_t>(y * x.W + cx)] ==
                cov[static_cast<std::size_t>(y * x.W + (cx + 1) % x.W)])
                fault = false;
        if (fault) out.push_back({'v', cx});
    }
    return out;
}

// ---- total periodicity ----------------------------------------------------------------

struct PeriodicityRow {
    int W = 0, H = 0;
    long long tilings = 0;
    long long classes = 0;
    bool fault_lines_present = false;
    long long flc_bound = 0;
};

struct TotalPeriodicityReport {
    std::vector<PeriodicityRow> rows;
    // "consistent": class counts stabilize; "growth-witness": counts strictly
    // increase with a disconnected tile (non-FLC-style freedom); "fault-line-
    // witness": counts grow and tilings slide along a fault line; "growth":
    // growth with neither explanation detected.
    std::string verdict;
};

inline TotalPeriodicityReport total_periodicity_report(const TileSet& ts,
                                                       const std::vector<std::pair<int, int>>& sizes,
                                                       std::size_t budget = default_budget()) {
    ts.validate();
    TotalPeriodicityReport rep;
    bool any_fault = false;
    for (auto [W, H] : sizes) {
        auto tilings = enumerate_tilings(ts, W, H, budget);
        PeriodicityRow row;
        row.W = W;
        row.H = H;
        row.tilings = static_cast<long long>(tilings.size());
        row.classes = static_cast<long long>(translation_classes(tilings).size());
        for (const auto& x : tilings)
            if (!fault_lines(x, ts).empty()) { row.fault_lines_present = true; break; }
        any_fault = any_fault || row.fault_lines_present;
        row.flc_bound = flc_check(ts, tilings).bound;
        rep.rows.push_back(row);
    }
    bool stabilized = rep.rows.size() >= 2, strictly_increasing = rep.rows.size() >= 2;
    for (std::size_t i = 1; i < rep.rows.size(); ++i) {
        if (rep.rows[i].classes != rep.rows[i - 1].classes) stabilized = false;
        if (rep.rows[i].classes <= rep.rows[i - 1].classes) strictly_increasing = false;
    }
    bool disconnected = false;
    for (const auto& t : ts.tiles) disconnected = disconnected || !t.connected();
    if (stabilized) rep.verdict = "consistent";
    else if (strictly_increasing && disconnected) rep.verdict = "growth-witness";
    else if (any_fault) rep.verdict = "fault-line-witness";
    else rep.verdict = "growth";
    return rep;
}

} // namespace expanse
