#pragma once

// Exact machinery for Z-SFTs: the de Bruijn-style transition graph over
// memory-m words, its bi-essential part, global admissibility of finite
// words, and cycle analysis.

#include <algorithm>
#include <map>
#include <numeric>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "core.hpp"
#include "subshift.hpp"

namespace expanse {

inline long long z_coord(const GroupElement& g) {
    if (g.coords.size() != 1 || !g.words.empty()) throw malformed_input("expected a Z group element");
    return g.coords[0];
}

inline GroupElement z_elem(long long n) {
    GroupElement g;
    g.coords = {n};
    return g;
}

// Forbidden patterns expanded to plain forbidden words (gaps filled with
// every symbol), as symbol-index strings.
struct ZForbiddenWords {
    std::vector<std::vector<int>> words;
    std::size_t max_len = 1;
};

inline ZForbiddenWords z_forbidden_words(const SubshiftSpec& spec) {
    ZForbiddenWords out;
    const int k = static_cast<int>(spec.alphabet.size());
    for (const auto& p : spec.forbidden) {
        long long lo = 0, hi = 0;
        bool first = true;
        for (const auto& [g, sym] : p.cells) {
            long long c = z_coord(g);
            lo = first ? c : std::min(lo, c);
            hi = first ? c : std::max(hi, c);
            first = false;
        }
        std::size_t len = static_cast<std::size_t>(hi - lo + 1);
        std::vector<int> word(len, -1);
        for (const auto& [g, sym] : p.cells) word[static_cast<std::size_t>(z_coord(g) - lo)] = spec.symbol_index(sym);
        // expand wildcards
        std::vector<std::vector<int>> stack{word};
        while (!stack.empty()) {
            auto w = stack.back();
            stack.pop_back();
            auto it = std::find(w.begin(), w.end(), -1);
            if (it == w.end()) {
                out.words.push_back(w);
                out.max_len = std::max(out.max_len, w.size());
            } else {
                for (int a = 0; a < k; ++a) {
                    *it = a;
                    stack.push_back(w);
                }
            }
        }
    }
    std::sort(out.words.begin(), out.words.end());
    out.words.erase(std::unique(out.words.begin(), out.words.end()), out.words.end());
    return out;
}

inline bool word_contains_forbidden(const std::vector<int>& w, const ZForbiddenWords& fw) {
    for (const auto& f : fw.words) {
        if (f.size() > w.size()) continue;
        for (std::size_t i = 0; i + f.size() <= w.size(); ++i)
            if (std::equal(f.begin(), f.end(), w.begin() + static_cast<long>(i))) return true;
    }
    return false;
}

class ZGraph {
public:
    explicit ZGraph(const SubshiftSpec& spec) : k_(static_cast<int>(spec.alphabet.size())) {
        if (spec.group.abelian_dim() != 1 || !spec.group.free_ranks().empty() || spec.group.moduli()[0] != 0)
            throw malformed_input("ZGraph requires a Z subshift");
        fw_ = z_forbidden_words(spec);
        m_ = static_cast<int>(fw_.max_len) - 1;
        // states: admissible words of length m
        std::vector<std::vector<int>> words{{}};
        for (int i = 0; i < m_; ++i) {
            std::vector<std::vector<int>> next;
            for (const auto& w : words)
                for (int a = 0; a < k_; ++a) {
                    auto w2 = w;
                    w2.push_back(a);
                    if (!word_contains_forbidden(w2, fw_)) next.push_back(std::move(w2));
                }
            words = std::move(next);
        }
        states_ = std::move(words);
        std::map<std::vector<int>, int> index;
        for (std::size_t i = 0; i < states_.size(); ++i) index[states_[i]] = static_cast<int>(i);
        succ_.assign(states_.size(), std::vector<int>(static_cast<std::size_t>(k_), -1));
        for (std::size_t i = 0; i < states_.size(); ++i)
            for (int a = 0; a < k_; ++a) {
                auto w = states_[i];
                w.push_back(a);
                if (word_contains_forbidden(w, fw_)) continue;
                std::vector<int> tail(w.begin() + (m_ > 0 ? 1 : 0), w.end());
                if (m_ == 0) tail.clear();
                auto it = index.find(tail);
                if (it != index.end()) succ_[i][static_cast<std::size_t>(a)] = it->second;
            }
        compute_essential();
    }

    int memory() const { return m_; }
    int alphabet_size() const { return k_; }
    std::size_t state_count() const { return states_.size(); }
    const std::vector<std::vector<int>>& states() const { return states_; }
    bool essential(int s) const { return essential_[static_cast<std::size_t>(s)]; }
    int step(int s, int a) const { return succ_[static_cast<std::size_t>(s)][static_cast<std::size_t>(a)]; }

    std::vector<int> essential_states() const {
        std::vector<int> out;
        for (std::size_t i = 0; i < states_.size(); ++i)
            if (essential_[i]) out.push_back(static_cast<int>(i));
        return out;
    }

    // Does any bi-infinite admissible point contain w?
    bool globally_admissible(const std::vector<int>& w) const {
        auto ess = essential_states();
        std::set<int> cur(ess.begin(), ess.end());
        for (int a : w) {
            std::set<int> next;
            for (int s : cur) {
                int t = step(s, a);
                if (t >= 0 && essential(t)) next.insert(t);
            }
            cur = std::move(next);
            if (cur.empty()) return false;
        }
        return true;
    }

    // All globally admissible words of a given length, lexicographic.
    std::vector<std::vector<int>> admissible_words(std::size_t len, std::size_t budget = default_budget()) const {
        // DP of reachable essential state-sets along prefixes.
        std::vector<std::vector<int>> out;
        std::vector<int> word;
        auto ess = essential_states();
        std::vector<std::set<int>> sets{std::set<int>(ess.begin(), ess.end())};
        auto rec = [&](auto&& self) -> void {
            if (word.size() == len) {
                out.push_back(word);
                if (out.size() > budget) throw budget_error("admissible word enumeration");
                return;
            }
            for (int a = 0; a < k_; ++a) {
                std::set<int> next;
                for (int s : sets.back()) {
                    int t = step(s, a);
                    if (t >= 0 && essential(t)) next.insert(t);
                }
                if (next.empty()) continue;
                word.push_back(a);
                sets.push_back(std::move(next));
                self(self);
                sets.pop_back();
                word.pop_back();
            }
        };
        if (!sets.back().empty() || len == 0) rec(rec);
        if (sets.back().empty() && len > 0) out.clear();
        return out;
    }

    // Bi-infinite repetition of u admissible?
    bool periodic_admissible(const std::vector<int>& u) const {
        if (u.empty()) return false;
        std::size_t need = u.size() + fw_.max_len + static_cast<std::size_t>(m_);
        std::vector<int> w;
        while (w.size() < need) w.insert(w.end(), u.begin(), u.end());
        return !word_contains_forbidden(w, fw_);
    }

private:
    void compute_essential() {
        essential_.assign(states_.size(), true);
        bool changed = true;
        while (changed) {
            changed = false;
            for (std::size_t i = 0; i < states_.size(); ++i) {
                if (!essential_[i]) continue;
                bool has_out = false;
                for (int a = 0; a < k_; ++a) {
                    int t = step(static_cast<int>(i), a);
                    if (t >= 0 && essential_[static_cast<std::size_t>(t)]) { has_out = true; break; }
                }
                bool has_in = false;
                for (std::size_t j = 0; j < states_.size() && !has_in; ++j) {
                    if (!essential_[j]) continue;
                    for (int a = 0; a < k_; ++a)
                        if (step(static_cast<int>(j), a) == static_cast<int>(i)) { has_in = true; break; }
                }
                if (!has_out || !has_in) {
                    essential_[i] = false;
                    changed = true;
                }
            }
        }
    }

    int k_;
    int m_ = 0;
    ZForbiddenWords fw_;
    std::vector<std::vector<int>> states_;
    std::vector<std::vector<int>> succ_;
    std::vector<bool> essential_;
};

} // namespace expanse
