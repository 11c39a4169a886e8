#pragma once

// Patterns and subshifts of finite type over supported groups, with the
// shift action and the brute-force extension oracle.

#include <algorithm>
#include <map>
#include <set>
#include <string>
#include <vector>

#include <json.hpp>

#include "core.hpp"
#include "group.hpp"

namespace expanse {

// A finite partial configuration: support -> alphabet symbol. The ordered map
// keeps the canonical ordering (sorted support) for free.
struct Pattern {
    std::map<GroupElement, std::string> cells;

    bool empty() const { return cells.empty(); }
    auto operator<=>(const Pattern&) const = default;
};

struct SubshiftSpec {
    GroupSpec group;
    std::vector<std::string> alphabet;
    std::vector<Pattern> forbidden;

    SubshiftSpec(GroupSpec g, std::vector<std::string> a, std::vector<Pattern> f = {})
        : group(std::move(g)), alphabet(std::move(a)), forbidden(std::move(f)) {
        validate();
    }

    int symbol_index(const std::string& s) const {
        for (std::size_t i = 0; i < alphabet.size(); ++i)
            if (alphabet[i] == s) return static_cast<int>(i);
        throw malformed_input("symbol outside alphabet: " + s);
    }

    // Smallest w with every forbidden support inside S^w.
    long long window_radius() const {
        long long w = 0;
        for (const auto& p : forbidden)
            for (const auto& [g, sym] : p.cells) w = std::max(w, word_length(g, group));
        return w;
    }

    static SubshiftSpec from_json(const json& j) {
        GroupSpec g = GroupSpec::from_json(j.at("group"));
        std::vector<std::string> alphabet = j.at("alphabet").get<std::vector<std::string>>();
        std::vector<Pattern> forbidden;
        if (j.contains("forbidden"))
            for (const auto& jp : j.at("forbidden")) {
                Pattern p;
                for (const auto& cell : jp.at("cells"))
                    p.cells[g.element_from_json(cell.at("at"))] = cell.at("sym").get<std::string>();
                forbidden.push_back(std::move(p));
            }
        return SubshiftSpec(std::move(g), std::move(alphabet), std::move(forbidden));
    }

    json to_json() const {
        json jf = json::array();
        for (const auto& p : forbidden) {
            json cells = json::array();
            for (const auto& [g, sym] : p.cells) cells.push_back({{"at", group.element_to_json(g)}, {"sym", sym}});
            jf.push_back({{"cells", cells}});
        }
        return json{{"group", group.describe()}, {"alphabet", alphabet}, {"forbidden", jf}};
    }

private:
    void validate() const {
        if (alphabet.empty()) throw malformed_input("alphabet must be nonempty");
        std::set<std::string> syms(alphabet.begin(), alphabet.end());
        if (syms.size() != alphabet.size()) throw malformed_input("alphabet symbols must be distinct");
        for (const auto& p : forbidden) {
            if (p.cells.empty()) throw malformed_input("forbidden pattern with empty support");
            for (const auto& [g, sym] : p.cells) {
                group.require_valid(g);
                if (!syms.count(sym)) throw malformed_input("forbidden pattern uses symbol outside alphabet");
            }
        }
    }
};

inline Pattern pattern_from_json(const GroupSpec& g, const json& j) {
    Pattern p;
    for (const auto& cell : j.at("cells")) p.cells[g.element_from_json(cell.at("at"))] = cell.at("sym").get<std::string>();
    return p;
}

inline json pattern_to_json(const GroupSpec& g, const Pattern& p) {
    json cells = json::array();
    for (const auto& [at, sym] : p.cells) cells.push_back({{"at", g.element_to_json(at)}, {"sym", sym}});
    return json{{"cells", cells}};
}

// sigma^g: the cell at h moves to g*h.
inline Pattern shift(const Pattern& p, const GroupElement& g, const GroupSpec& spec) {
    spec.require_valid(g);
    Pattern out;
    for (const auto& [h, sym] : p.cells) out.cells[spec.mul(g, h)] = sym;
    return out;
}

// True iff no forbidden pattern embeds as a translate inside p.
inline bool locally_admissible(const SubshiftSpec& spec, const Pattern& p) {
    for (const auto& [g, sym] : p.cells) spec.symbol_index(sym);
    for (const auto& q : spec.forbidden) {
        const auto& anchor = q.cells.begin()->first;
        for (const auto& [s, sym_s] : p.cells) {
            // candidate translate g maps anchor to s
            GroupElement g = spec.group.mul(s, spec.group.inverse(anchor));
            bool matches = true;
            for (const auto& [t, sym_t] : q.cells) {
                auto it = p.cells.find(spec.group.mul(g, t));
                if (it == p.cells.end() || it->second != sym_t) { matches = false; break; }
            }
            if (matches) return false;
        }
    }
    return true;
}

// All locally admissible total assignments on `target` agreeing with p, in
// canonical order. The brute-force oracle behind the coding checks.
inline std::vector<Pattern> extend(const SubshiftSpec& spec, const Pattern& p,
                                   const std::vector<GroupElement>& target,
                                   std::size_t budget = default_budget()) {
    std::set<GroupElement> targ(target.begin(), target.end());
    for (const auto& [g, sym] : p.cells)
        if (!targ.count(g)) throw malformed_input("extend target must contain the pattern support");

    std::vector<GroupElement> free_cells;
    for (const auto& g : targ)
        if (!p.cells.count(g)) free_cells.push_back(g);

    std::vector<Pattern> out;
    Pattern work = p;
    std::size_t nodes = 0;
    auto rec = [&](auto&& self, std::size_t i) -> void {
        if (++nodes > budget) throw budget_error("extend search");
        if (i == free_cells.size()) {
            if (locally_admissible(spec, work)) out.push_back(work);
            return;
        }
        for (const auto& sym : spec.alphabet) {
            work.cells[free_cells[i]] = sym;
            if (locally_admissible(spec, work)) self(self, i + 1);
        }
        work.cells.erase(free_cells[i]);
    };
    if (!locally_admissible(spec, work)) return {};
    rec(rec, 0);
    return out;
}

} // namespace expanse
