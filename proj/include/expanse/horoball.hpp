#pragma once

// Finite-radius horoball surrogates. A horoball is a Fell-topology limit of
// balls S^{r-1} g_r with |g_r|_S = r -> infinity; that limit is never
// materialized. The canonical finite stand-in is the trace on S^R of a single
// such ball with r >= 2R:
//
//     membership = { h in S^R : rho_S(g, h) < r },   |g|_S = r.
//
// The strict inequality matches the ball S^{r-1} g_r; it keeps the identity
// outside the set while the set still meets S, the two properties the
// downstream arguments use.

#include <optional>
#include <set>
#include <vector>

#include "core.hpp"
#include "group.hpp"

namespace expanse {

struct HoroballApprox {
    long long R = 0;
    long long r = 0;              // >= 2R
    GroupElement center;          // g with |g|_S = r
    std::vector<GroupElement> membership; // canonical order
};

struct no_horoball_error : std::runtime_error {
    no_horoball_error() : std::runtime_error("finite group admits no horoball") {}
};

// Direction seed: a word over the generating set whose infinite repetition is
// a geodesic ray. Defaults to repeating the canonically least non-identity
// generator.
inline std::vector<GroupElement> default_direction(const GroupSpec& spec) {
    for (const auto& g : spec.generators())
        if (!(g == spec.identity())) return {g};
    throw malformed_input("generating set has no non-identity element");
}

inline HoroballApprox horoball_approx(const GroupSpec& spec, long long R,
                                      std::vector<GroupElement> direction = {},
                                      long long r = -1,
                                      std::size_t budget = default_budget()) {
    if (spec.is_finite()) throw no_horoball_error();
    if (R < 1) throw malformed_input("horoball window radius must be >= 1");
    if (direction.empty()) direction = default_direction(spec);
    if (r < 0) r = 2 * R;
    if (r < 2 * R) throw malformed_input("horoball requires r >= 2R");

    GroupElement g = spec.identity();
    for (long long i = 0; i < r; ++i) g = spec.mul(direction[static_cast<std::size_t>(i % direction.size())], g);
    if (word_length(g, spec, budget) != r)
        throw malformed_input("direction seed is not geodesic at radius r");

    HoroballApprox h;
    h.R = R;
    h.r = r;
    h.center = g;
    for (const auto& e : ball(spec, R, budget))
        if (word_distance(g, e, spec, budget) < r) h.membership.push_back(e);

    if (h.membership.empty()) throw invariant_violation("horoball surrogate is empty");
    std::set<GroupElement> mem(h.membership.begin(), h.membership.end());
    if (mem.count(spec.identity())) throw invariant_violation("horoball surrogate contains the identity");
    bool meets_s = false;
    for (const auto& s : spec.generators())
        if (mem.count(s)) { meets_s = true; break; }
    if (!meets_s) throw invariant_violation("horoball surrogate misses the generating set");
    return h;
}

// Search the window for h~ with S^t h~ inside the membership set. A miss is
// a finite-window artifact: full horoballs contain arbitrarily large balls.
inline std::optional<GroupElement> find_ball_in_horoball(const HoroballApprox& h, const GroupSpec& spec,
                                                         long long t,
                                                         std::size_t budget = default_budget()) {
    if (t < 0) throw malformed_input("ball radius must be >= 0");
    std::set<GroupElement> mem(h.membership.begin(), h.membership.end());
    auto b = ball(spec, t, budget);
    for (const auto& c : h.membership) {
        bool ok = true;
        for (const auto& s : b)
            if (!mem.count(spec.mul(s, c))) { ok = false; break; }
        if (ok) return c;
    }
    return std::nullopt;
}

} // namespace expanse
