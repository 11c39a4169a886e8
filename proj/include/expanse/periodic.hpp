#pragma once

// Periodic-point enumeration and exact finiteness analysis for Z-SFTs, plus
// torus-window enumeration for Z^2.

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <variant>
#include <vector>

#include "core.hpp"
#include "subshift.hpp"
#include "zgraph.hpp"

namespace expanse {

// A point with finite orbit. For Z: the lex-least rotation of a primitive
// word of length p (the point is its bi-infinite repetition, stabilizer pZ).
// For Z^2: a W x H torus array whose stabilizer lattice is recorded.
struct PeriodicPoint {
    // Z form
    std::vector<int> word; // primitive, lex-least rotation
    // Z^2 form
    int W = 0, H = 0;
    std::vector<int> grid; // row-major, H rows of W, empty for Z points
    long long stabilizer_index = 0;

    bool is_z() const { return grid.empty(); }
    auto operator<=>(const PeriodicPoint&) const = default;

    int at(long long i) const { // Z access
        long long p = static_cast<long long>(word.size());
        return word[static_cast<std::size_t>(((i % p) + p) % p)];
    }
    int at2(long long x, long long y) const {
        long long xx = ((x % W) + W) % W, yy = ((y % H) + H) % H;
        return grid[static_cast<std::size_t>(yy * W + xx)];
    }
};

inline bool word_primitive(const std::vector<int>& u) {
    for (std::size_t d = 1; d < u.size(); ++d) {
        if (u.size() % d != 0) continue;
        bool periodic = true;
        for (std::size_t i = 0; i < u.size() && periodic; ++i)
            if (u[i] != u[i % d]) periodic = false;
        if (periodic) return false;
    }
    return true;
}

inline std::vector<int> lex_least_rotation(std::vector<int> u) {
    std::vector<int> best = u;
    for (std::size_t r = 1; r < u.size(); ++r) {
        std::rotate(u.begin(), u.begin() + 1, u.end());
        best = std::min(best, u);
    }
    return best;
}

// All Z periodic points with stabilizer index (= primitive period) <= bound.
inline std::vector<PeriodicPoint> enumerate_periodic_points(const SubshiftSpec& spec, long long bound,
                                                            std::size_t budget = default_budget()) {
    ZGraph graph(spec);
    std::set<std::vector<int>> reps;
    std::size_t count = 0;
    for (long long p = 1; p <= bound; ++p) {
        std::vector<int> u(static_cast<std::size_t>(p), 0);
        const int k = graph.alphabet_size();
        while (true) {
            if (++count > budget) throw budget_error("periodic point enumeration");
            if (word_primitive(u) && graph.periodic_admissible(u)) reps.insert(lex_least_rotation(u));
            // next word
            long long i = p - 1;
            while (i >= 0 && u[static_cast<std::size_t>(i)] == k - 1) u[static_cast<std::size_t>(i--)] = 0;
            if (i < 0) break;
            ++u[static_cast<std::size_t>(i)];
        }
    }
    std::vector<PeriodicPoint> out;
    for (const auto& u : reps) {
        PeriodicPoint pt;
        pt.word = u;
        pt.stabilizer_index = static_cast<long long>(u.size());
        out.push_back(std::move(pt));
    }
    return out;
}

// Z^2: all admissible torus fillings for each (W, H), exhaustive backtracking.
inline std::vector<PeriodicPoint> enumerate_torus_points(const SubshiftSpec& spec,
                                                         const std::vector<std::pair<int, int>>& lattices,
                                                         std::size_t budget = default_budget()) {
    if (spec.group.abelian_dim() != 2 || !spec.group.free_ranks().empty())
        throw malformed_input("torus enumeration requires a Z^2 subshift");
    // forbidden patterns as offset lists
    struct FPat {
        std::vector<std::array<long long, 2>> at;
        std::vector<int> sym;
    };
    std::vector<FPat> pats;
    for (const auto& p : spec.forbidden) {
        FPat f;
        for (const auto& [g, sym] : p.cells) {
            f.at.push_back({g.coords[0], g.coords[1]});
            f.sym.push_back(spec.symbol_index(sym));
        }
        pats.push_back(std::move(f));
    }
    std::vector<PeriodicPoint> out;
    std::size_t nodes = 0;
    for (auto [W, H] : lattices) {
        std::vector<int> grid(static_cast<std::size_t>(W * H), -1);
        auto violates = [&](int x, int y) {
            // any forbidden placement touching (x,y) fully assigned & matching?
            for (const auto& f : pats)
                for (std::size_t a = 0; a < f.at.size(); ++a) {
                    long long bx = x - f.at[a][0], by = y - f.at[a][1];
                    bool all = true, match = true;
                    for (std::size_t b = 0; b < f.at.size() && all && match; ++b) {
                        long long cx = (((bx + f.at[b][0]) % W) + W) % W;
                        long long cy = (((by + f.at[b][1]) % H) + H) % H;
                        int v = grid[static_cast<std::size_t>(cy * W + cx)];
                        if (v < 0) all = false;
                        else if (v != f.sym[b]) match = false;
                    }
                    if (all && match) return true;
                }
            return false;
        };
        auto rec = [&](auto&& self, int idx) -> void {
            if (++nodes > budget) throw budget_error("torus enumeration");
            if (idx == W * H) {
                PeriodicPoint pt;
                pt.W = W;
                pt.H = H;
                pt.grid = grid;
                long long stab = 0;
                for (int dy = 0; dy < H; ++dy)
                    for (int dx = 0; dx < W; ++dx) {
                        bool fixed = true;
                        for (int y = 0; y < H && fixed; ++y)
                            for (int x = 0; x < W && fixed; ++x)
                                if (grid[static_cast<std::size_t>(y * W + x)] !=
                                    grid[static_cast<std::size_t>(((y + dy) % H) * W + (x + dx) % W)])
                                    fixed = false;
                        if (fixed) ++stab;
                    }
                pt.stabilizer_index = (static_cast<long long>(W) * H) / stab; // orbit size
                out.push_back(std::move(pt));
                return;
            }
            int x = idx % W, y = idx / W;
            for (int a = 0; a < static_cast<int>(spec.alphabet.size()); ++a) {
                grid[static_cast<std::size_t>(idx)] = a;
                if (!violates(x, y)) self(self, idx + 1);
            }
            grid[static_cast<std::size_t>(idx)] = -1;
        };
        rec(rec, 0);
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

// Exact finiteness for Z-SFTs via the bi-essential transition graph: X is
// finite iff that graph is a disjoint union of simple cycles, in which case
// |X| equals the number of essential states.
struct FinitenessVerdict {
    enum class Kind { finite, infinite, unknown } kind = Kind::unknown;
    long long count = -1;                 // exact when kind == finite (Z)
    long long bound = -1;                 // certificate bound when only bounded
    std::string witness;                  // branching description when infinite
};

inline FinitenessVerdict is_finite_sft(const SubshiftSpec& spec) {
    FinitenessVerdict v;
    if (spec.group.abelian_dim() == 1 && spec.group.free_ranks().empty() && spec.group.moduli()[0] == 0) {
        ZGraph graph(spec);
        auto ess = graph.essential_states();
        if (ess.empty()) {
            v.kind = FinitenessVerdict::Kind::finite;
            v.count = 0;
            return v;
        }
        std::set<int> ess_set(ess.begin(), ess.end());
        std::map<int, int> indeg;
        for (int s : ess) {
            int outdeg = 0;
            for (int a = 0; a < graph.alphabet_size(); ++a) {
                int t = graph.step(s, a);
                if (t >= 0 && ess_set.count(t)) {
                    ++outdeg;
                    ++indeg[t];
                }
            }
            if (outdeg > 1) {
                v.kind = FinitenessVerdict::Kind::infinite;
                v.witness = "branching state with " + std::to_string(outdeg) +
                            " essential successors admits non-periodic concatenations";
                return v;
            }
        }
        for (int s : ess)
            if (indeg[s] > 1) {
                v.kind = FinitenessVerdict::Kind::infinite;
                v.witness = "merging state with multiple essential predecessors";
                return v;
            }
        v.kind = FinitenessVerdict::Kind::finite;
        v.count = static_cast<long long>(ess.size());
        return v;
    }
    v.kind = FinitenessVerdict::Kind::unknown;
    return v;
}

} // namespace expanse
