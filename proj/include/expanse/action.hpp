#pragma once

// Finitely generated semigroup/monoid/group actions on explicit finite state
// spaces: orbits, inverse orbits, the bounded-orbit closure test, N_k for the
// universal action, the pointwise-periodicity probe, and the finite dense
// family of an equicontinuous (here: finite) group action.

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include <json.hpp>

#include "core.hpp"

namespace expanse {

using json = nlohmann::json;

// Generators are total maps state -> state, stored as index arrays. Words are
// sequences of generator indices read left to right: x . (uv) = (x . u) . v.
struct ActionSpec {
    enum class Algebra { semigroup, monoid, group };

    std::vector<std::string> states;
    std::vector<std::string> gen_names;
    std::vector<std::vector<int>> gens;
    Algebra algebra = Algebra::semigroup;
    bool partial_sample = false; // states sample a larger space; probes report accordingly

    void validate() const {
        if (states.empty()) throw malformed_input("action needs a nonempty state space");
        if (gens.empty() || gens.size() != gen_names.size()) throw malformed_input("action needs named generators");
        const int n = static_cast<int>(states.size());
        for (const auto& g : gens) {
            if (static_cast<int>(g.size()) != n) throw malformed_input("generator map has wrong arity");
            for (int v : g)
                if (v < 0 || v >= n) throw malformed_input("generator map leaves the state space");
        }
        if (algebra == Algebra::monoid || algebra == Algebra::group) {
            bool has_id = false;
            for (const auto& g : gens) {
                bool id = true;
                for (int s = 0; s < n && id; ++s) id = (g[static_cast<std::size_t>(s)] == s);
                if (id) { has_id = true; break; }
            }
            if (algebra == Algebra::monoid && !has_id) throw malformed_input("monoid action must list the identity map");
        }
        if (algebra == Algebra::group) {
            std::set<std::vector<int>> set(gens.begin(), gens.end());
            for (const auto& g : gens) {
                std::vector<bool> hit(static_cast<std::size_t>(n), false);
                for (int v : g) hit[static_cast<std::size_t>(v)] = true;
                if (std::find(hit.begin(), hit.end(), false) != hit.end())
                    throw malformed_input("group action requires bijective generators");
                std::vector<int> inv(static_cast<std::size_t>(n));
                for (int s = 0; s < n; ++s) inv[static_cast<std::size_t>(g[static_cast<std::size_t>(s)])] = s;
                if (!set.count(inv)) throw malformed_input("group action requires inverses among the generators");
            }
        }
    }

    int state_index(const std::string& name) const {
        for (std::size_t i = 0; i < states.size(); ++i)
            if (states[i] == name) return static_cast<int>(i);
        throw malformed_input("unknown state: " + name);
    }

    int apply(int state, int gen) const { return gens[static_cast<std::size_t>(gen)][static_cast<std::size_t>(state)]; }

    int apply_word(int state, const std::vector<int>& word) const {
        for (int g : word) state = apply(state, g);
        return state;
    }

    static ActionSpec from_json(const json& j) {
        ActionSpec a;
        a.states = j.at("states").get<std::vector<std::string>>();
        for (const auto& [name, arr] : j.at("generators").items()) {
            a.gen_names.push_back(name);
            a.gens.push_back(arr.get<std::vector<int>>());
        }
        if (j.contains("algebra")) {
            std::string alg = j.at("algebra").get<std::string>();
            if (alg == "semigroup") a.algebra = Algebra::semigroup;
            else if (alg == "monoid") a.algebra = Algebra::monoid;
            else if (alg == "group") a.algebra = Algebra::group;
            else throw malformed_input("unknown algebra flag: " + alg);
        }
        if (j.contains("partial_sample")) a.partial_sample = j.at("partial_sample").get<bool>();
        a.validate();
        return a;
    }

    json to_json() const {
        json g = json::object();
        for (std::size_t i = 0; i < gens.size(); ++i) g[gen_names[i]] = gens[i];
        const char* alg = algebra == Algebra::semigroup ? "semigroup" : algebra == Algebra::monoid ? "monoid" : "group";
        return json{{"states", states}, {"generators", g}, {"algebra", alg}};
    }
};

struct OrbitReport {
    int seed = -1;
    std::vector<int> orbit; // sorted
    std::map<int, std::vector<int>> witnesses; // state -> shortlex word reaching it
    bool complete = true;

    std::size_t size() const { return orbit.size(); }
};

// BFS closure of x under the generators; shortlex witness words. The frontier
// is kept in word order so first visits carry shortlex-minimal words.
inline OrbitReport orbit(const ActionSpec& a, int x, std::size_t budget = default_budget()) {
    a.validate();
    if (x < 0 || x >= static_cast<int>(a.states.size())) throw malformed_input("orbit seed outside state space");
    OrbitReport rep;
    rep.seed = x;
    rep.witnesses[x] = {};
    std::vector<int> frontier{x};
    while (!frontier.empty() && rep.complete) {
        std::vector<int> next;
        for (int s : frontier)
            for (int g = 0; g < static_cast<int>(a.gens.size()); ++g) {
                int t = a.apply(s, g);
                if (rep.witnesses.count(t)) continue;
                auto w = rep.witnesses.at(s);
                w.push_back(g);
                rep.witnesses[t] = std::move(w);
                next.push_back(t);
                if (rep.witnesses.size() > budget) { rep.complete = false; break; }
            }
        frontier = std::move(next);
    }
    for (const auto& [s, w] : rep.witnesses) {
        rep.orbit.push_back(s);
        if (a.apply_word(x, w) != s) throw invariant_violation("orbit witness word does not reach its state");
    }
    std::sort(rep.orbit.begin(), rep.orbit.end());
    if (rep.complete) {
        std::set<int> set(rep.orbit.begin(), rep.orbit.end());
        for (int s : rep.orbit)
            for (std::size_t g = 0; g < a.gens.size(); ++g)
                if (!set.count(a.apply(s, static_cast<int>(g))))
                    throw invariant_violation("orbit not closed under generators");
    }
    return rep;
}

struct InverseOrbitReport {
    int target = -1;
    std::vector<int> inverse_orbit; // sorted
    std::map<int, std::vector<int>> witnesses; // y -> word m with y.m = target
    bool complete = true;

    std::size_t size() const { return inverse_orbit.size(); }
};

// All y with target in y.M: reverse-edge BFS over the materialized action
// graph; generators need not be injective.
inline InverseOrbitReport inverse_orbit(const ActionSpec& a, int x, std::size_t budget = default_budget()) {
    a.validate();
    if (x < 0 || x >= static_cast<int>(a.states.size())) throw malformed_input("target outside state space");
    const int n = static_cast<int>(a.states.size());
    InverseOrbitReport rep;
    rep.target = x;
    rep.witnesses[x] = {};
    std::vector<int> frontier{x};
    while (!frontier.empty() && rep.complete) {
        std::vector<int> next;
        for (int t : frontier)
            for (int g = 0; g < static_cast<int>(a.gens.size()); ++g)
                for (int y = 0; y < n; ++y) {
                    if (a.apply(y, g) != t || rep.witnesses.count(y)) continue;
                    std::vector<int> w{g};
                    const auto& tail = rep.witnesses.at(t);
                    w.insert(w.end(), tail.begin(), tail.end());
                    rep.witnesses[y] = std::move(w);
                    next.push_back(y);
                    if (rep.witnesses.size() > budget) { rep.complete = false; break; }
                }
        frontier = std::move(next);
    }
    for (const auto& [y, w] : rep.witnesses) {
        rep.inverse_orbit.push_back(y);
        if (a.apply_word(y, w) != x) throw invariant_violation("inverse-orbit witness word misses the target");
    }
    std::sort(rep.inverse_orbit.begin(), rep.inverse_orbit.end());
    return rep;
}

struct BoundedOrbitClosure {
    bool closed = false;
    std::vector<int> closure;             // x.S^{<k}, sorted, when closed
    std::vector<int> witness_word;        // violating m in S^k otherwise
};

// Bounded-orbit hypothesis test: if x.S^k is contained in x.S^{<k} then the
// whole orbit equals x.S^{<k} (verified by independent BFS).
inline BoundedOrbitClosure bounded_orbit_closure(const ActionSpec& a, int x, int k,
                                                 std::size_t budget = default_budget()) {
    a.validate();
    if (k <= 1) throw malformed_input("bounded_orbit_closure needs k > 1");
    std::set<int> layer{x}, within{x};
    for (int j = 1; j < k; ++j) {
        std::set<int> next;
        for (int s : layer)
            for (std::size_t g = 0; g < a.gens.size(); ++g) next.insert(a.apply(s, static_cast<int>(g)));
        layer = std::move(next);
        within.insert(layer.begin(), layer.end());
    }
    std::set<int> top; // x.S^k
    for (int s : layer)
        for (std::size_t g = 0; g < a.gens.size(); ++g) top.insert(a.apply(s, static_cast<int>(g)));

    BoundedOrbitClosure out;
    bool escapes = false;
    for (int s : top)
        if (!within.count(s)) { escapes = true; break; }
    if (escapes) {
        // lexicographically first violating word of length k
        std::vector<int> word;
        auto rec = [&](auto&& self, int state, int depth) -> bool {
            if (depth == k) return !within.count(state);
            for (int g = 0; g < static_cast<int>(a.gens.size()); ++g) {
                word.push_back(g);
                if (self(self, a.apply(state, g), depth + 1)) return true;
                word.pop_back();
            }
            return false;
        };
        if (!rec(rec, x, 0)) throw invariant_violation("escape detected but no violating word found");
        out.witness_word = word;
        return out;
    }
    out.closed = true;
    out.closure.assign(within.begin(), within.end());
    auto full = orbit(a, x, budget);
    if (full.orbit != out.closure) throw invariant_violation("bounded closure disagrees with BFS orbit");
    return out;
}

// ---- N_k via the universal action -----------------------------------------

struct NkResult {
    int k = 0;
    long long N = 0;
    // every word of length N -> a strictly shorter word inducing the same
    // transformation of the universal action
    std::map<std::vector<int>, std::vector<int>> table;
};

// Universal action for k generators: one copy of {0..k} per k-tuple of
// self-maps of {0..k}; generator i acts on the copy tagged (f_1..f_k) as f_i.
// Any action of k generators on a state set of size <= k+1 is a subaction.
inline ActionSpec universal_action(int k, std::size_t budget = default_budget()) {
    if (k < 1) throw malformed_input("universal action needs k >= 1");
    const int n = k + 1;
    long long maps = 1;
    for (int i = 0; i < n; ++i) maps *= n; // n^n self-maps
    long long tuples = 1;
    for (int i = 0; i < k; ++i) {
        tuples *= maps;
        if (tuples * n > static_cast<long long>(budget)) throw budget_error("universal action state space");
    }
    ActionSpec a;
    a.algebra = ActionSpec::Algebra::semigroup;
    for (long long t = 0; t < tuples; ++t)
        for (int s = 0; s < n; ++s) a.states.push_back("t" + std::to_string(t) + ":" + std::to_string(s));
    for (int i = 0; i < k; ++i) {
        std::vector<int> gen(a.states.size());
        for (long long t = 0; t < tuples; ++t) {
            long long code = t;
            for (int j = 0; j < i; ++j) code /= maps;
            code %= maps; // f_i encoded base-n, digit s = image of s
            for (int s = 0; s < n; ++s) {
                long long img = (code / [&] { long long p = 1; for (int q = 0; q < s; ++q) p *= n; return p; }()) % n;
                gen[static_cast<std::size_t>(t * n + s)] = static_cast<int>(t * n + img);
            }
        }
        a.gen_names.push_back("s" + std::to_string(i + 1));
        a.gens.push_back(std::move(gen));
    }
    a.validate();
    return a;
}

// Least N such that every length-N generator word acts on the universal
// action like some strictly shorter nonempty word, with the substitution
// table. Layer stabilization over induced transformations.
inline NkResult compute_Nk(int k, std::size_t budget = default_budget()) {
    ActionSpec uni = universal_action(k, budget);
    const int n = static_cast<int>(uni.states.size());
    using Transform = std::vector<int>;
    auto act = [&](const Transform& t, int g) {
        Transform out(static_cast<std::size_t>(n));
        for (int s = 0; s < n; ++s) out[static_cast<std::size_t>(s)] = uni.apply(t[static_cast<std::size_t>(s)], g);
        return out;
    };
    Transform id(static_cast<std::size_t>(n));
    for (int s = 0; s < n; ++s) id[static_cast<std::size_t>(s)] = s;

    std::map<Transform, std::vector<int>> seen; // transformation -> shortlex word (nonempty)
    std::vector<std::pair<std::vector<int>, Transform>> layer;
    for (int g = 0; g < k; ++g) {
        Transform t = act(id, g);
        layer.emplace_back(std::vector<int>{g}, t);
        seen.emplace(std::move(t), std::vector<int>{g});
    }
    for (long long N = 2;; ++N) {
        std::vector<std::pair<std::vector<int>, Transform>> next;
        bool all_seen = true;
        std::set<Transform> next_set;
        for (const auto& [w, t] : layer)
            for (int g = 0; g < k; ++g) {
                Transform t2 = act(t, g);
                if (!seen.count(t2)) {
                    all_seen = false;
                    if (next_set.insert(t2).second) {
                        auto w2 = w;
                        w2.push_back(g);
                        next.emplace_back(std::move(w2), std::move(t2));
                    }
                }
                if (seen.size() + next.size() > budget) throw budget_error("transformation closure for N_k");
            }
        if (all_seen) {
            NkResult out;
            out.k = k;
            out.N = N;
            // full table over S^N, each entry verified pointwise
            long long words = 1;
            for (long long i = 0; i < N; ++i) {
                words *= k;
                if (words > static_cast<long long>(budget)) throw budget_error("N_k substitution table");
            }
            std::vector<int> w(static_cast<std::size_t>(N), 0);
            for (long long c = 0; c < words; ++c) {
                long long rem = c;
                Transform t = id;
                for (long long i = 0; i < N; ++i) {
                    w[static_cast<std::size_t>(i)] = static_cast<int>(rem % k);
                    rem /= k;
                    t = act(t, w[static_cast<std::size_t>(i)]);
                }
                const auto& shorter = seen.at(t);
                for (int s = 0; s < n; ++s)
                    if (uni.apply_word(s, w) != uni.apply_word(s, shorter))
                        throw invariant_violation("N_k table entry fails pointwise verification");
                out.table[w] = shorter;
            }
            return out;
        }
        for (auto& [w, t] : next) seen.emplace(t, w);
        layer = std::move(next);
    }
}

// ---- probes -----------------------------------------------------------------

struct PeriodicityProbe {
    enum class Kind { all_finite, inconclusive } kind = Kind::all_finite;
    long long max_orbit = 0;
    int witness_state = -1;   // state whose orbit exceeded budget
    bool partial_sample = false;
};

inline PeriodicityProbe pointwise_periodicity_probe(const ActionSpec& a, std::size_t budget = default_budget()) {
    a.validate();
    PeriodicityProbe p;
    p.partial_sample = a.partial_sample;
    for (int x = 0; x < static_cast<int>(a.states.size()); ++x) {
        auto rep = orbit(a, x, budget);
        if (!rep.complete) {
            p.kind = PeriodicityProbe::Kind::inconclusive;
            p.witness_state = x;
            return p;
        }
        p.max_orbit = std::max(p.max_orbit, static_cast<long long>(rep.size()));
    }
    return p;
}

struct DenseFamily {
    std::vector<std::vector<int>> words;            // shortlex representatives, incl. the empty word
    std::vector<std::vector<int>> transforms;       // induced permutation per word
};

// With the discrete metric and eps < 1, the finite dense family is one word
// per distinct permutation induced by the acting group; closure by BFS.
inline DenseFamily finite_dense_family(const ActionSpec& a, double eps = 0.5,
                                       std::size_t budget = default_budget()) {
    a.validate();
    if (a.algebra != ActionSpec::Algebra::group) throw malformed_input("finite_dense_family needs a group action");
    const int n = static_cast<int>(a.states.size());
    DenseFamily f;
    std::vector<int> id(static_cast<std::size_t>(n));
    for (int s = 0; s < n; ++s) id[static_cast<std::size_t>(s)] = s;
    if (eps >= 1.0) { // everything is eps-close to the identity
        f.words.push_back({});
        f.transforms.push_back(std::move(id));
        return f;
    }
    std::map<std::vector<int>, std::vector<int>> seen{{id, {}}};
    std::vector<std::pair<std::vector<int>, std::vector<int>>> frontier{{{}, id}};
    while (!frontier.empty()) {
        std::vector<std::pair<std::vector<int>, std::vector<int>>> next;
        for (const auto& [w, t] : frontier)
            for (int g = 0; g < static_cast<int>(a.gens.size()); ++g) {
                std::vector<int> t2(static_cast<std::size_t>(n));
                for (int s = 0; s < n; ++s)
                    t2[static_cast<std::size_t>(s)] = a.apply(t[static_cast<std::size_t>(s)], g);
                if (seen.count(t2)) continue;
                auto w2 = w;
                w2.push_back(g);
                seen.emplace(t2, w2);
                next.emplace_back(std::move(w2), std::move(t2));
                if (seen.size() > budget) throw budget_error("dense-family closure");
            }
        frontier = std::move(next);
    }
    for (const auto& [t, w] : seen) {
        f.words.push_back(w);
        f.transforms.push_back(t);
    }
    return f;
}

// ---- worked truncations ------------------------------------------------------

// One-sided shift on {1^a 0^(L-a) : 0 <= a <= L} plus the all-ones limit
// marker: the marker and the zero word are fixed; every other state drops one
// leading 1 per step.
inline ActionSpec one_sided_monotone_truncation(int L) {
    if (L < 1) throw malformed_input("truncation length must be >= 1");
    ActionSpec a;
    a.algebra = ActionSpec::Algebra::semigroup;
    for (int ones = 0; ones <= L; ++ones) a.states.push_back("ones:" + std::to_string(ones));
    a.states.push_back("ones:inf");
    std::vector<int> shift;
    for (int ones = 0; ones <= L; ++ones) shift.push_back(std::max(ones - 1, 0));
    shift.push_back(L + 1); // the all-ones marker is fixed
    a.gen_names.push_back("shift");
    a.gens.push_back(std::move(shift));
    a.validate();
    return a;
}

// Sign-flip action of (Z/2Z)^n on two rays of n levels plus two limit points:
// generator i flips the sign at level i and fixes everything else; the limit
// points are fixed by all generators. Every orbit has size <= 2, but the
// common period grows with n.
inline ActionSpec two_ray_flip_truncation(int n) {
    if (n < 1) throw malformed_input("truncation needs n >= 1");
    ActionSpec a;
    a.algebra = ActionSpec::Algebra::group;
    for (int lvl = 1; lvl <= n; ++lvl) {
        a.states.push_back("+1/" + std::to_string(lvl));
        a.states.push_back("-1/" + std::to_string(lvl));
    }
    a.states.push_back("+0");
    a.states.push_back("-0");
    const int N = 2 * n + 2;
    for (int i = 0; i < n; ++i) {
        std::vector<int> g(static_cast<std::size_t>(N));
        for (int s = 0; s < N; ++s) g[static_cast<std::size_t>(s)] = s;
        std::swap(g[static_cast<std::size_t>(2 * i)], g[static_cast<std::size_t>(2 * i + 1)]);
        a.gen_names.push_back("flip" + std::to_string(i + 1));
        a.gens.push_back(std::move(g));
    }
    a.validate();
    return a;
}

} // namespace expanse
