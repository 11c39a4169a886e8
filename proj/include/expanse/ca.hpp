#pragma once

// Cellular automata as local rules on subshifts: sliding-block application,
// composition with neighborhood minimization, exact equality on Z via the
// transition graph, preperiodicity and nilpotency search, and the bridge to
// explicit finite actions on periodic points.

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "action.hpp"
#include "core.hpp"
#include "group.hpp"
#include "periodic.hpp"
#include "subshift.hpp"
#include "zgraph.hpp"

namespace expanse {

// table keys are symbol indices in the order of the sorted neighborhood.
struct LocalRule {
    SubshiftSpec subshift;
    std::vector<GroupElement> neighborhood;
    std::map<std::vector<int>, int> table;

    LocalRule(SubshiftSpec s, std::vector<GroupElement> nb, std::map<std::vector<int>, int> t,
              std::size_t budget = default_budget())
        : subshift(std::move(s)), neighborhood(std::move(nb)), table(std::move(t)) {
        std::sort(neighborhood.begin(), neighborhood.end());
        neighborhood.erase(std::unique(neighborhood.begin(), neighborhood.end()), neighborhood.end());
        validate(budget);
    }

    int eval(const std::vector<int>& key) const {
        auto it = table.find(key);
        if (it == table.end()) throw malformed_input("rule table missing a neighborhood pattern");
        return it->second;
    }

    void validate(std::size_t budget = default_budget()) const {
        if (neighborhood.empty()) throw malformed_input("rule needs a nonempty neighborhood");
        for (const auto& g : neighborhood) subshift.group.require_valid(g);
        const int k = static_cast<int>(subshift.alphabet.size());
        for (const auto& [key, out] : table) {
            if (key.size() != neighborhood.size()) throw malformed_input("rule key arity mismatch");
            for (int v : key)
                if (v < 0 || v >= k) throw malformed_input("rule key symbol out of range");
            if (out < 0 || out >= k) throw malformed_input("rule output symbol out of range");
        }
        // totality on locally admissible neighborhood patterns
        for (const auto& p : extend(subshift, Pattern{}, neighborhood, budget)) {
            std::vector<int> key;
            for (const auto& g : neighborhood) key.push_back(subshift.symbol_index(p.cells.at(g)));
            eval(key);
        }
        if (exact_z_rule()) check_endomorphism_z(budget);
    }

    bool exact_z_rule() const {
        return subshift.group.abelian_dim() == 1 && subshift.group.free_ranks().empty() &&
               subshift.group.moduli()[0] == 0;
    }

    static LocalRule from_json(const json& j, std::size_t budget = default_budget()) {
        SubshiftSpec spec = SubshiftSpec::from_json(j.at("sft"));
        std::vector<GroupElement> nb;
        for (const auto& c : j.at("neighborhood")) nb.push_back(spec.group.element_from_json(c));
        std::sort(nb.begin(), nb.end());
        nb.erase(std::unique(nb.begin(), nb.end()), nb.end());
        for (const auto& s : spec.alphabet)
            if (s.size() != 1) throw malformed_input("CA JSON tables require single-character symbols");
        std::map<std::vector<int>, int> table;
        for (const auto& [key, out] : j.at("table").items()) {
            if (key.size() != nb.size()) throw malformed_input("rule table key length mismatch");
            std::vector<int> k;
            for (char c : key) k.push_back(spec.symbol_index(std::string(1, c)));
            table[k] = spec.symbol_index(out.get<std::string>());
        }
        return LocalRule(std::move(spec), std::move(nb), std::move(table), budget);
    }

    json to_json() const {
        json nb = json::array();
        for (const auto& g : neighborhood) nb.push_back(subshift.group.element_to_json(g));
        json t = json::object();
        for (const auto& [key, out] : table) {
            std::string k;
            for (int v : key) k += subshift.alphabet[static_cast<std::size_t>(v)];
            t[k] = subshift.alphabet[static_cast<std::size_t>(out)];
        }
        return json{{"sft", subshift.to_json()}, {"neighborhood", nb}, {"table", t}};
    }

private:
    // Exact Z endomorphism check: the image of every globally admissible
    // window is forbidden-word free.
    void check_endomorphism_z(std::size_t budget) const {
        auto fw = z_forbidden_words(subshift);
        if (fw.words.empty()) return; // full shift: nothing to violate
        ZGraph graph(subshift);
        long long lo = z_coord(neighborhood.front()), hi = z_coord(neighborhood.back());
        long long out_len = static_cast<long long>(fw.max_len);
        long long in_len = out_len + (hi - lo);
        for (const auto& w : graph.admissible_words(static_cast<std::size_t>(in_len), budget)) {
            std::vector<int> img;
            for (long long i = 0; i < out_len; ++i) {
                std::vector<int> key;
                for (const auto& g : neighborhood)
                    key.push_back(w[static_cast<std::size_t>(i + z_coord(g) - lo)]);
                img.push_back(eval(key));
            }
            if (word_contains_forbidden(img, fw))
                throw malformed_input("local rule does not map the subshift into itself");
        }
    }
};

// ---- builders ---------------------------------------------------------------

inline LocalRule identity_rule(const SubshiftSpec& spec, std::size_t budget = default_budget()) {
    std::map<std::vector<int>, int> t;
    for (int a = 0; a < static_cast<int>(spec.alphabet.size()); ++a) t[{a}] = a;
    return LocalRule(spec, {spec.group.identity()}, std::move(t), budget);
}

inline LocalRule constant_rule(const SubshiftSpec& spec, int symbol, std::size_t budget = default_budget()) {
    std::map<std::vector<int>, int> t;
    for (int a = 0; a < static_cast<int>(spec.alphabet.size()); ++a) t[{a}] = symbol;
    return LocalRule(spec, {spec.group.identity()}, std::move(t), budget);
}

// sigma^n on a Z subshift: f(x)_i = x_{i+n}.
inline LocalRule shift_rule(const SubshiftSpec& spec, long long n, std::size_t budget = default_budget()) {
    std::map<std::vector<int>, int> t;
    for (int a = 0; a < static_cast<int>(spec.alphabet.size()); ++a) t[{a}] = a;
    return LocalRule(spec, {z_elem(n)}, std::move(t), budget);
}

// ---- application --------------------------------------------------------------

// f(p) on the eroded support {g : g*nu in supp(p) for all nu}.
inline Pattern apply(const LocalRule& f, const Pattern& p) {
    Pattern out;
    for (const auto& [g, sym] : p.cells) {
        std::vector<int> key;
        bool ok = true;
        for (const auto& nu : f.neighborhood) {
            auto it = p.cells.find(f.subshift.group.mul(g, nu));
            if (it == p.cells.end()) { ok = false; break; }
            key.push_back(f.subshift.symbol_index(it->second));
        }
        if (ok) out.cells[g] = f.subshift.alphabet[static_cast<std::size_t>(f.eval(key))];
    }
    if (out.empty()) throw malformed_input("pattern support too small for the rule neighborhood");
    return out;
}

// f applied to the periodic point with repeating word w (Z only).
inline std::vector<int> apply_cyclic(const LocalRule& f, const std::vector<int>& w) {
    const long long q = static_cast<long long>(w.size());
    std::vector<int> out(w.size());
    for (long long i = 0; i < q; ++i) {
        std::vector<int> key;
        for (const auto& nu : f.neighborhood) {
            long long j = i + z_coord(nu);
            key.push_back(w[static_cast<std::size_t>(((j % q) + q) % q)]);
        }
        out[static_cast<std::size_t>(i)] = f.eval(key);
    }
    return out;
}

// ---- composition and minimization ---------------------------------------------

namespace detail {

// Drop neighborhood coordinates the table provably ignores (greedy in
// canonical order), rebuilding keys from admissible-pattern restrictions.
inline LocalRule minimize_rule(const SubshiftSpec& spec, const std::vector<GroupElement>& support,
                               const std::map<std::vector<int>, int>& full, std::size_t budget) {
    std::vector<bool> keep(support.size(), true);
    for (std::size_t c = 0; c < support.size(); ++c) {
        if (std::count(keep.begin(), keep.end(), true) == 1) break;
        // constant within every class of keys agreeing off c (and on kept coords)?
        std::map<std::vector<int>, int> rep;
        bool droppable = true;
        for (const auto& [key, out] : full) {
            std::vector<int> rest;
            for (std::size_t i = 0; i < key.size(); ++i)
                if (keep[i] && i != c) rest.push_back(key[i]);
            auto [it, fresh] = rep.emplace(std::move(rest), out);
            if (!fresh && it->second != out) { droppable = false; break; }
        }
        if (droppable) keep[c] = false;
    }
    std::vector<GroupElement> nb;
    for (std::size_t i = 0; i < support.size(); ++i)
        if (keep[i]) nb.push_back(support[i]);
    std::map<std::vector<int>, int> table;
    for (const auto& [key, out] : full) {
        std::vector<int> k;
        for (std::size_t i = 0; i < key.size(); ++i)
            if (keep[i]) k.push_back(key[i]);
        table[k] = out; // consistent by construction
    }
    return LocalRule(spec, std::move(nb), std::move(table), budget);
}

} // namespace detail

// f after g (apply g first), neighborhood-minimized.
inline LocalRule compose(const LocalRule& f, const LocalRule& g, std::size_t budget = default_budget()) {
    if (!(f.subshift.to_json() == g.subshift.to_json())) throw malformed_input("compose requires one subshift");
    const auto& spec = f.subshift;
    std::set<GroupElement> supp_set;
    for (const auto& a : f.neighborhood)
        for (const auto& b : g.neighborhood) supp_set.insert(spec.group.mul(a, b));
    std::vector<GroupElement> supp(supp_set.begin(), supp_set.end());
    std::map<std::vector<int>, int> table;
    for (const auto& p : extend(spec, Pattern{}, supp, budget)) {
        std::vector<int> key;
        for (const auto& cell : supp) key.push_back(spec.symbol_index(p.cells.at(cell)));
        // inner layer: g(x) at each f-neighborhood coordinate
        std::vector<int> mid;
        for (const auto& a : f.neighborhood) {
            std::vector<int> gk;
            for (const auto& b : g.neighborhood) gk.push_back(spec.symbol_index(p.cells.at(spec.group.mul(a, b))));
            mid.push_back(g.eval(gk));
        }
        table[key] = f.eval(mid);
    }
    return detail::minimize_rule(spec, supp, table, budget);
}

// ---- equality -----------------------------------------------------------------

struct EqualVerdict {
    bool equal = true;
    bool exact = false;
    std::optional<Pattern> witness; // input pattern on which outputs differ at the identity
};

inline EqualVerdict rule_equal(const LocalRule& f, const LocalRule& g, std::size_t budget = default_budget()) {
    if (!(f.subshift.to_json() == g.subshift.to_json())) throw malformed_input("equal requires one subshift");
    const auto& spec = f.subshift;
    EqualVerdict v;
    auto out_of = [&](const LocalRule& r, const Pattern& p) {
        std::vector<int> key;
        for (const auto& nu : r.neighborhood) key.push_back(spec.symbol_index(p.cells.at(nu)));
        return r.eval(key);
    };
    if (f.exact_z_rule()) {
        v.exact = true;
        long long lo = std::min(z_coord(f.neighborhood.front()), z_coord(g.neighborhood.front()));
        long long hi = std::max(z_coord(f.neighborhood.back()), z_coord(g.neighborhood.back()));
        ZGraph graph(spec);
        for (const auto& w : graph.admissible_words(static_cast<std::size_t>(hi - lo + 1), budget)) {
            Pattern p;
            for (long long i = lo; i <= hi; ++i)
                p.cells[z_elem(i)] = spec.alphabet[static_cast<std::size_t>(w[static_cast<std::size_t>(i - lo)])];
            if (out_of(f, p) != out_of(g, p)) {
                v.equal = false;
                v.witness = p;
                return v;
            }
        }
        return v;
    }
    std::set<GroupElement> supp_set(f.neighborhood.begin(), f.neighborhood.end());
    supp_set.insert(g.neighborhood.begin(), g.neighborhood.end());
    std::vector<GroupElement> supp(supp_set.begin(), supp_set.end());
    for (const auto& p : extend(spec, Pattern{}, supp, budget))
        if (out_of(f, p) != out_of(g, p)) {
            v.equal = false;
            v.witness = p;
            return v;
        }
    return v;
}

// ---- preperiodicity / nilpotency ------------------------------------------------

// Memoized power ladder f^0, f^1, ... built by composing with f.
class PowerLadder {
public:
    explicit PowerLadder(const LocalRule& f, std::size_t budget = default_budget()) : budget_(budget) {
        powers_.push_back(identity_rule(f.subshift, budget));
        powers_.push_back(f);
    }
    const LocalRule& power(std::size_t n) {
        while (powers_.size() <= n) powers_.push_back(compose(powers_[1], powers_.back(), budget_));
        return powers_[n];
    }

private:
    std::size_t budget_;
    std::vector<LocalRule> powers_;
};

struct Preperiodicity {
    bool found = false;
    long long n = -1, p = -1;
    std::optional<Pattern> witness; // from the last failed equality when not found
};

// Least (n, p) lexicographic with f^n = f^{n+p} as maps, within the bounds.
inline Preperiodicity preperiodicity(const LocalRule& f, long long n_max, long long p_max,
                                     std::size_t budget = default_budget()) {
    if (n_max < 0 || p_max < 1) throw malformed_input("preperiodicity bounds must be n_max >= 0, p_max >= 1");
    PowerLadder ladder(f, budget);
    Preperiodicity out;
    for (long long n = 0; n <= n_max; ++n)
        for (long long p = 1; p <= p_max; ++p) {
            auto v = rule_equal(ladder.power(static_cast<std::size_t>(n)),
                                ladder.power(static_cast<std::size_t>(n + p)), budget);
            if (v.equal) {
                out.found = true;
                out.n = n;
                out.p = p;
                return out;
            }
            out.witness = v.witness;
        }
    return out;
}

struct WeakProbe {
    bool all_satisfy = true;
    std::map<std::vector<int>, std::pair<long long, long long>> per_point; // word -> (n, p)
    std::optional<std::vector<int>> counterexample; // point whose (n,p) exceeds the bounds
    long long max_n = 0, max_p = 0;
};

// Per-point eventual periodicity of f on periodic points: cycle detection on
// the (finite) forward orbit of each repeating word.
inline WeakProbe weak_preperiodicity_probe(const LocalRule& f, const std::vector<PeriodicPoint>& sample,
                                           long long n_max, long long p_max,
                                           std::size_t budget = default_budget()) {
    WeakProbe probe;
    for (const auto& pt : sample) {
        std::map<std::vector<int>, long long> seen;
        std::vector<int> w = pt.word;
        long long step = 0;
        while (!seen.count(w)) {
            seen[w] = step++;
            if (static_cast<std::size_t>(step) > budget) throw budget_error("weak preperiodicity orbit");
            w = apply_cyclic(f, w);
        }
        long long n = seen.at(w), p = step - seen.at(w);
        probe.per_point[pt.word] = {n, p};
        probe.max_n = std::max(probe.max_n, n);
        probe.max_p = std::max(probe.max_p, p);
        if (n > n_max || p > p_max) {
            probe.all_satisfy = false;
            if (!probe.counterexample) probe.counterexample = pt.word;
        }
    }
    return probe;
}

struct Nilpotency {
    bool nilpotent = false;
    long long n = -1;
    int symbol = -1;
};

// Least n with f^n the constant map to an admissible uniform configuration.
inline Nilpotency nilpotency(const LocalRule& f, long long n_max, std::size_t budget = default_budget()) {
    Nilpotency out;
    std::vector<int> uniform_syms;
    if (f.exact_z_rule()) {
        ZGraph graph(f.subshift);
        for (int a = 0; a < static_cast<int>(f.subshift.alphabet.size()); ++a)
            if (graph.periodic_admissible({a})) uniform_syms.push_back(a);
    } else {
        for (int a = 0; a < static_cast<int>(f.subshift.alphabet.size()); ++a) uniform_syms.push_back(a);
    }
    PowerLadder ladder(f, budget);
    for (long long n = 1; n <= n_max; ++n)
        for (int a : uniform_syms)
            if (rule_equal(ladder.power(static_cast<std::size_t>(n)), constant_rule(f.subshift, a, budget), budget)
                    .equal) {
                out.nilpotent = true;
                out.n = n;
                out.symbol = a;
                return out;
            }
    return out;
}

// ---- bridge to explicit actions ---------------------------------------------------

// Closes the sample of periodic points under the rules and returns the induced
// explicit action; states are named by their primitive repeating words.
inline ActionSpec ca_semigroup_action(const std::vector<LocalRule>& rules, const std::vector<PeriodicPoint>& sample,
                                      std::size_t budget = default_budget()) {
    if (rules.empty()) throw malformed_input("ca_semigroup_action needs at least one rule");
    auto primitive = [](std::vector<int> w) {
        for (std::size_t d = 1; d < w.size(); ++d) {
            if (w.size() % d != 0) continue;
            bool per = true;
            for (std::size_t i = 0; i < w.size() && per; ++i)
                if (w[i] != w[i % d]) per = false;
            if (per) { w.resize(d); break; }
        }
        return w;
    };
    std::set<std::vector<int>> states;
    std::vector<std::vector<int>> frontier;
    for (const auto& pt : sample)
        if (states.insert(primitive(pt.word)).second) frontier.push_back(primitive(pt.word));
    while (!frontier.empty()) {
        std::vector<std::vector<int>> next;
        for (const auto& w : frontier)
            for (const auto& r : rules) {
                auto img = primitive(apply_cyclic(r, w));
                if (states.insert(img).second) {
                    next.push_back(img);
                    if (states.size() > budget) throw budget_error("sample closure under rules");
                }
            }
        frontier = std::move(next);
    }
    std::vector<std::vector<int>> ordered(states.begin(), states.end());
    std::map<std::vector<int>, int> index;
    for (std::size_t i = 0; i < ordered.size(); ++i) index[ordered[i]] = static_cast<int>(i);
    ActionSpec a;
    a.partial_sample = true;
    for (const auto& w : ordered) {
        std::string name;
        for (int v : w) name += rules.front().subshift.alphabet[static_cast<std::size_t>(v)];
        a.states.push_back("(" + name + ")^inf");
    }
    for (std::size_t r = 0; r < rules.size(); ++r) {
        std::vector<int> gen;
        for (const auto& w : ordered) gen.push_back(index.at(primitive(apply_cyclic(rules[r], w))));
        a.gen_names.push_back("f" + std::to_string(r + 1));
        a.gens.push_back(std::move(gen));
    }
    a.validate();
    return a;
}

// Order of the transformation semigroup the generators induce on the states
// (nonempty words only).
inline long long induced_semigroup_order(const ActionSpec& a, std::size_t budget = default_budget()) {
    a.validate();
    const int n = static_cast<int>(a.states.size());
    std::set<std::vector<int>> seen;
    std::vector<std::vector<int>> frontier;
    for (const auto& g : a.gens)
        if (seen.insert(g).second) frontier.push_back(g);
    while (!frontier.empty()) {
        std::vector<std::vector<int>> next;
        for (const auto& t : frontier)
            for (const auto& g : a.gens) {
                std::vector<int> t2(static_cast<std::size_t>(n));
                for (int s = 0; s < n; ++s)
                    t2[static_cast<std::size_t>(s)] = g[static_cast<std::size_t>(t[static_cast<std::size_t>(s)])];
                if (seen.insert(t2).second) {
                    next.push_back(std::move(t2));
                    if (seen.size() > budget) throw budget_error("induced semigroup closure");
                }
            }
        frontier = std::move(next);
    }
    return static_cast<long long>(seen.size());
}

} // namespace expanse
