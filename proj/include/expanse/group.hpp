#pragma once

// Computable backends for finitely generated groups: normal forms, word
// metrics, ball enumeration. Supported kinds: Z, Z^d, cyclic(n), free(rank)
// and finite direct products of these.

#include <algorithm>
#include <compare>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include <json.hpp>

#include "core.hpp"

namespace expanse {

using json = nlohmann::json;

// Canonical normal form. Abelian coordinates are flattened across factors
// (cyclic coordinates reduced to [0,n)); each free factor keeps one reduced
// word with letters +-(1..rank). Two elements are equal iff their normal
// forms compare equal componentwise.
struct GroupElement {
    std::vector<long long> coords;
    std::vector<std::vector<int>> words;

    auto operator<=>(const GroupElement&) const = default;
};

namespace detail {
inline void free_reduce_append(std::vector<int>& w, int letter) {
    if (!w.empty() && w.back() == -letter)
        w.pop_back();
    else
        w.push_back(letter);
}
} // namespace detail

class GroupSpec {
public:
    // moduli: one entry per abelian coordinate, 0 = infinite (Z), n>1 = cyclic(n).
    // free_ranks: one entry per free factor.
    static GroupSpec integers() { return GroupSpec({0}, {}, json{{"kind", "Z"}}); }
    static GroupSpec lattice(int d) {
        if (d < 1) throw malformed_input("Zd requires d >= 1");
        return GroupSpec(std::vector<long long>(d, 0), {}, json{{"kind", "Zd"}, {"d", d}});
    }
    static GroupSpec cyclic(long long n) {
        if (n < 1) throw malformed_input("cyclic requires n >= 1");
        return GroupSpec({n}, {}, json{{"kind", "cyclic"}, {"n", n}});
    }
    static GroupSpec free_group(int rank) {
        if (rank < 1) throw malformed_input("free requires rank >= 1");
        return GroupSpec({}, {rank}, json{{"kind", "free"}, {"rank", rank}});
    }
    static GroupSpec product(const std::vector<GroupSpec>& factors) {
        GroupSpec out({}, {}, json());
        json jf = json::array();
        for (const auto& f : factors) {
            out.moduli_.insert(out.moduli_.end(), f.moduli_.begin(), f.moduli_.end());
            out.free_ranks_.insert(out.free_ranks_.end(), f.free_ranks_.begin(), f.free_ranks_.end());
            jf.push_back(f.describe());
        }
        out.desc_ = json{{"kind", "product"}, {"factors", jf}};
        out.generators_ = out.default_generators();
        return out;
    }

    static GroupSpec from_json(const json& j) {
        if (!j.is_object() || !j.contains("kind")) throw malformed_input("group spec needs a \"kind\"");
        std::string kind = j.at("kind").get<std::string>();
        GroupSpec spec = [&]() {
            if (kind == "Z") return integers();
            if (kind == "Zd") return lattice(j.at("d").get<int>());
            if (kind == "cyclic") return cyclic(j.at("n").get<long long>());
            if (kind == "free") return free_group(j.at("rank").get<int>());
            if (kind == "product") {
                std::vector<GroupSpec> fs;
                for (const auto& f : j.at("factors")) fs.push_back(from_json(f));
                return product(fs);
            }
            throw malformed_input("unknown group kind: " + kind);
        }();
        if (j.contains("generators")) {
            std::vector<GroupElement> gens;
            for (const auto& g : j.at("generators")) gens.push_back(spec.element_from_json(g));
            spec.set_generators(gens);
        }
        return spec;
    }

    json describe() const { return desc_; }

    std::size_t abelian_dim() const { return moduli_.size(); }
    const std::vector<long long>& moduli() const { return moduli_; }
    const std::vector<int>& free_ranks() const { return free_ranks_; }

    bool is_finite() const {
        for (long long m : moduli_)
            if (m == 0) return false;
        for (int r : free_ranks_)
            if (r >= 1) return false;
        return true;
    }

    GroupElement identity() const {
        GroupElement e;
        e.coords.assign(moduli_.size(), 0);
        e.words.assign(free_ranks_.size(), {});
        return e;
    }

    bool valid(const GroupElement& g) const {
        if (g.coords.size() != moduli_.size() || g.words.size() != free_ranks_.size()) return false;
        for (std::size_t i = 0; i < moduli_.size(); ++i)
            if (moduli_[i] != 0 && (g.coords[i] < 0 || g.coords[i] >= moduli_[i])) return false;
        for (std::size_t i = 0; i < free_ranks_.size(); ++i) {
            const auto& w = g.words[i];
            for (std::size_t k = 0; k < w.size(); ++k) {
                int a = std::abs(w[k]);
                if (a < 1 || a > free_ranks_[i]) return false;
                if (k > 0 && w[k] == -w[k - 1]) return false; // not reduced
            }
        }
        return true;
    }

    void require_valid(const GroupElement& g) const {
        if (!valid(g)) throw malformed_input("element does not match group spec");
    }

    GroupElement mul(const GroupElement& a, const GroupElement& b) const {
        require_valid(a);
        require_valid(b);
        GroupElement out = identity();
        for (std::size_t i = 0; i < moduli_.size(); ++i) {
            long long v = a.coords[i] + b.coords[i];
            if (moduli_[i] != 0) v = ((v % moduli_[i]) + moduli_[i]) % moduli_[i];
            out.coords[i] = v;
        }
        for (std::size_t i = 0; i < free_ranks_.size(); ++i) {
            out.words[i] = a.words[i];
            for (int letter : b.words[i]) detail::free_reduce_append(out.words[i], letter);
        }
        return out;
    }

    GroupElement inverse(const GroupElement& a) const {
        require_valid(a);
        GroupElement out = identity();
        for (std::size_t i = 0; i < moduli_.size(); ++i) {
            long long v = -a.coords[i];
            if (moduli_[i] != 0) v = ((v % moduli_[i]) + moduli_[i]) % moduli_[i];
            out.coords[i] = v;
        }
        for (std::size_t i = 0; i < free_ranks_.size(); ++i) {
            out.words[i].assign(a.words[i].rbegin(), a.words[i].rend());
            for (int& letter : out.words[i]) letter = -letter;
        }
        return out;
    }

    // Symmetric generating set containing the identity (the standing
    // convention 1 in S, S = S^-1).
    const std::vector<GroupElement>& generators() const { return generators_; }

    bool has_default_generators() const { return default_gens_; }

    void set_generators(std::vector<GroupElement> gens) {
        std::sort(gens.begin(), gens.end());
        gens.erase(std::unique(gens.begin(), gens.end()), gens.end());
        std::set<GroupElement> set(gens.begin(), gens.end());
        if (!set.count(identity())) throw malformed_input("generating set must contain the identity");
        for (const auto& g : gens) {
            require_valid(g);
            if (!set.count(inverse(g))) throw malformed_input("generating set must be symmetric");
        }
        generators_ = std::move(gens);
        default_gens_ = (generators_ == default_generators());
        if (!default_gens_) desc_["generators"] = generators_to_json();
    }

    GroupElement element_from_json(const json& j) const {
        GroupElement e = identity();
        if (j.is_number_integer()) {
            if (moduli_.size() != 1 || !free_ranks_.empty())
                throw malformed_input("scalar element only valid for Z / cyclic");
            e.coords[0] = j.get<long long>();
        } else if (j.is_array()) {
            if (j.size() != moduli_.size() || !free_ranks_.empty())
                throw malformed_input("array element has wrong arity for this group");
            for (std::size_t i = 0; i < moduli_.size(); ++i) e.coords[i] = j[i].get<long long>();
        } else if (j.is_object()) {
            if (j.contains("coords")) {
                auto c = j.at("coords");
                if (c.size() != moduli_.size()) throw malformed_input("coords arity mismatch");
                for (std::size_t i = 0; i < moduli_.size(); ++i) e.coords[i] = c[i].get<long long>();
            }
            if (j.contains("words")) {
                auto w = j.at("words");
                if (w.size() != free_ranks_.size()) throw malformed_input("words arity mismatch");
                for (std::size_t i = 0; i < w.size(); ++i) {
                    e.words[i].clear();
                    for (const auto& letter : w[i]) detail::free_reduce_append(e.words[i], letter.get<int>());
                }
            }
        } else {
            throw malformed_input("cannot parse group element");
        }
        for (std::size_t i = 0; i < moduli_.size(); ++i)
            if (moduli_[i] != 0) e.coords[i] = ((e.coords[i] % moduli_[i]) + moduli_[i]) % moduli_[i];
        require_valid(e);
        return e;
    }

    json element_to_json(const GroupElement& e) const {
        if (free_ranks_.empty()) {
            json a = json::array();
            for (long long c : e.coords) a.push_back(c);
            return a;
        }
        json w = json::array();
        for (const auto& word : e.words) w.push_back(word);
        return json{{"coords", e.coords}, {"words", w}};
    }

private:
    GroupSpec(std::vector<long long> moduli, std::vector<int> free_ranks, json desc)
        : moduli_(std::move(moduli)), free_ranks_(std::move(free_ranks)), desc_(std::move(desc)) {
        generators_ = default_generators();
    }

    std::vector<GroupElement> default_generators() const {
        std::vector<GroupElement> gens{identity()};
        for (std::size_t i = 0; i < moduli_.size(); ++i) {
            GroupElement plus = identity();
            plus.coords[i] = 1;
            if (moduli_[i] == 1) continue; // trivial factor
            if (moduli_[i] != 0) plus.coords[i] %= moduli_[i];
            gens.push_back(plus);
            gens.push_back(inverse(plus));
        }
        for (std::size_t i = 0; i < free_ranks_.size(); ++i)
            for (int r = 1; r <= free_ranks_[i]; ++r) {
                GroupElement g = identity();
                g.words[i] = {r};
                gens.push_back(g);
                gens.push_back(inverse(g));
            }
        std::sort(gens.begin(), gens.end());
        gens.erase(std::unique(gens.begin(), gens.end()), gens.end());
        return gens;
    }

    json generators_to_json() const {
        json a = json::array();
        for (const auto& g : generators_) a.push_back(element_to_json(g));
        return a;
    }

    std::vector<long long> moduli_;
    std::vector<int> free_ranks_;
    json desc_;
    std::vector<GroupElement> generators_;
    bool default_gens_ = true;
};

// ---- word metric ----------------------------------------------------------

// |g|_S, exact. Closed form for the default generating set, Cayley-graph BFS
// otherwise (capped by budget).
inline long long word_length(const GroupElement& g, const GroupSpec& spec,
                             std::size_t budget = default_budget()) {
    spec.require_valid(g);
    if (spec.has_default_generators()) {
        long long total = 0;
        const auto& mods = spec.moduli();
        for (std::size_t i = 0; i < mods.size(); ++i) {
            long long c = g.coords[i];
            if (mods[i] == 0)
                total += std::llabs(c);
            else
                total += std::min(c, mods[i] - c);
        }
        for (const auto& w : g.words) total += static_cast<long long>(w.size());
        return total;
    }
    if (g == spec.identity()) return 0;
    std::set<GroupElement> seen{spec.identity()};
    std::vector<GroupElement> frontier{spec.identity()};
    long long depth = 0;
    while (!frontier.empty()) {
        ++depth;
        std::vector<GroupElement> next;
        for (const auto& h : frontier)
            for (const auto& s : spec.generators()) {
                GroupElement sh = spec.mul(s, h);
                if (seen.insert(sh).second) {
                    if (sh == g) return depth;
                    next.push_back(sh);
                    if (seen.size() > budget) throw budget_error("word_length BFS");
                }
            }
        frontier = std::move(next);
    }
    throw malformed_input("element not generated by the given set");
}

// Right-invariant word metric rho_S(g1, g2) = |g1 g2^-1|_S.
inline long long word_distance(const GroupElement& a, const GroupElement& b, const GroupSpec& spec,
                               std::size_t budget = default_budget()) {
    return word_length(spec.mul(a, spec.inverse(b)), spec, budget);
}

// S^n, the radius-n ball about the identity, in canonical order.
inline std::vector<GroupElement> ball(const GroupSpec& spec, long long n,
                                      std::size_t budget = default_budget()) {
    if (n < 0) throw malformed_input("ball radius must be >= 0");
    std::set<GroupElement> seen{spec.identity()};
    std::vector<GroupElement> frontier{spec.identity()};
    for (long long depth = 0; depth < n && !frontier.empty(); ++depth) {
        std::vector<GroupElement> next;
        for (const auto& h : frontier)
            for (const auto& s : spec.generators()) {
                GroupElement sh = spec.mul(s, h);
                if (seen.insert(sh).second) {
                    next.push_back(sh);
                    if (seen.size() > budget) throw budget_error("ball enumeration");
                }
            }
        frontier = std::move(next);
    }
    return {seen.begin(), seen.end()};
}

} // namespace expanse
