#pragma once

// The coding relation A |- B on subshifts: two points whose restrictions to
// S^rho are admissible and agree on A must agree on B. epsilon is handled
// symbolically: with d(x,y) = 2^{-min{|g| : x_g != y_g}} and epsilon = 1/2,
// "d(shifted pair) <= epsilon" is literal agreement at a coordinate, so
// coordinate sets are plain subsets of the group and are stored already
// inverted relative to the left shift. The equivariance law test guards the
// convention.
//
// Exact mode (Z with default generators) quantifies over globally admissible
// windows via the transition graph, so both positive and negative verdicts
// are exact. Every other group gets local semantics: a "codes" verdict means
// no locally admissible counterexample on S^rho, and a refutation witness may
// fail to extend globally.

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "core.hpp"
#include "group.hpp"
#include "horoball.hpp"
#include "periodic.hpp"
#include "subshift.hpp"
#include "zgraph.hpp"

namespace expanse {

struct CodingQuery {
    SubshiftSpec subshift;
    std::vector<GroupElement> A;
    std::vector<GroupElement> B;
    long long rho = 0;

    void validate(std::size_t budget = default_budget()) const {
        if (rho < 0) throw malformed_input("workspace radius must be >= 0");
        for (const auto& g : A)
            if (word_length(g, subshift.group, budget) > rho) throw malformed_input("A exceeds the workspace ball");
        for (const auto& g : B)
            if (word_length(g, subshift.group, budget) > rho) throw malformed_input("B exceeds the workspace ball");
    }
};

struct CodingVerdict {
    enum class Result { codes, refuted_locally, codes_with_witness_set };
    Result result = Result::codes;
    bool exact = false; // true when verdicts quantify over globally admissible windows
    long long rho = 0;
    std::optional<std::pair<Pattern, Pattern>> witness;  // agree on A, differ on B
    std::optional<std::vector<GroupElement>> minimal_subset;

    bool codes() const { return result != Result::refuted_locally; }
};

inline bool exact_z_mode(const SubshiftSpec& spec) {
    return spec.group.abelian_dim() == 1 && spec.group.free_ranks().empty() && spec.group.moduli()[0] == 0 &&
           spec.group.has_default_generators();
}

namespace detail {

// Globally admissible windows x_{-rho..rho}, cached per (subshift, rho):
// the coding laws re-query the same workspace hundreds of times.
inline const std::vector<std::vector<int>>& z_window_words(const SubshiftSpec& spec, long long rho,
                                                           std::size_t budget) {
    static std::map<std::pair<std::string, long long>, std::vector<std::vector<int>>> cache;
    auto key = std::make_pair(spec.to_json().dump(), rho);
    auto it = cache.find(key);
    if (it == cache.end()) {
        ZGraph graph(spec);
        it = cache.emplace(std::move(key), graph.admissible_words(static_cast<std::size_t>(2 * rho + 1), budget))
                 .first;
    }
    return it->second;
}

inline Pattern z_window_pattern(const std::vector<int>& w, long long rho, const SubshiftSpec& spec) {
    Pattern p;
    for (long long i = 0; i <= 2 * rho; ++i)
        p.cells[z_elem(i - rho)] = spec.alphabet[static_cast<std::size_t>(w[static_cast<std::size_t>(i)])];
    return p;
}

} // namespace detail

inline CodingVerdict codes(const CodingQuery& q, std::size_t budget = default_budget()) {
    q.validate(budget);
    CodingVerdict v;
    v.rho = q.rho;

    std::set<GroupElement> aset(q.A.begin(), q.A.end());
    std::vector<GroupElement> bs;
    for (const auto& b : q.B)
        if (!aset.count(b)) bs.push_back(b);
    if (bs.empty()) { // agreement on A trivially covers B
        v.exact = true;
        return v;
    }

    if (exact_z_mode(q.subshift)) {
        v.exact = true;
        const auto& words = detail::z_window_words(q.subshift, q.rho, budget);
        std::vector<std::size_t> apos, bpos;
        for (const auto& g : q.A) apos.push_back(static_cast<std::size_t>(z_coord(g) + q.rho));
        for (const auto& g : bs) bpos.push_back(static_cast<std::size_t>(z_coord(g) + q.rho));
        std::map<std::vector<int>, std::size_t> first_by_akey; // A-projection -> first window index
        std::vector<int> akey(apos.size()), bkey(bpos.size());
        for (std::size_t i = 0; i < words.size(); ++i) {
            for (std::size_t j = 0; j < apos.size(); ++j) akey[j] = words[i][apos[j]];
            auto [it, fresh] = first_by_akey.emplace(akey, i);
            if (fresh) continue;
            const auto& prev = words[it->second];
            for (std::size_t j = 0; j < bpos.size(); ++j)
                if (prev[bpos[j]] != words[i][bpos[j]]) {
                    v.result = CodingVerdict::Result::refuted_locally;
                    v.witness = {detail::z_window_pattern(prev, q.rho, q.subshift),
                                 detail::z_window_pattern(words[i], q.rho, q.subshift)};
                    return v;
                }
        }
        return v;
    }

    // generic local mode: brute force over locally admissible total patterns
    auto target = ball(q.subshift.group, q.rho, budget);
    auto patterns = extend(q.subshift, Pattern{}, target, budget);
    std::map<std::vector<std::string>, std::size_t> first_by_akey;
    std::vector<std::string> akey(q.A.size());
    for (std::size_t i = 0; i < patterns.size(); ++i) {
        for (std::size_t j = 0; j < q.A.size(); ++j) akey[j] = patterns[i].cells.at(q.A[j]);
        auto [it, fresh] = first_by_akey.emplace(akey, i);
        if (fresh) continue;
        const auto& prev = patterns[it->second];
        for (const auto& b : bs)
            if (prev.cells.at(b) != patterns[i].cells.at(b)) {
                v.result = CodingVerdict::Result::refuted_locally;
                v.witness = {prev, patterns[i]};
                return v;
            }
    }
    return v;
}

// Greedy witness: inclusion-minimal F subseteq A with F |- B at the same
// radius (minimal, not minimum).
inline std::vector<GroupElement> minimal_coding_subset(const CodingQuery& q, std::size_t budget = default_budget()) {
    if (!codes(q, budget).codes()) throw malformed_input("minimal_coding_subset requires a coding query");
    std::vector<GroupElement> f(q.A.begin(), q.A.end());
    std::sort(f.begin(), f.end());
    f.erase(std::unique(f.begin(), f.end()), f.end());
    for (std::size_t i = 0; i < f.size();) {
        CodingQuery sub = q;
        sub.A = f;
        sub.A.erase(sub.A.begin() + static_cast<long>(i));
        if (codes(sub, budget).codes())
            f.erase(f.begin() + static_cast<long>(i));
        else
            ++i;
    }
    return f;
}

inline bool ball_codes_next(const SubshiftSpec& spec, long long r, long long rho,
                            std::size_t budget = default_budget()) {
    if (r + 1 > rho) throw malformed_input("ball_codes_next needs r+1 <= rho");
    CodingQuery q{spec, ball(spec.group, r, budget), ball(spec.group, r + 1, budget), rho};
    return codes(q, budget).codes();
}

struct ExpansiveRadius {
    std::optional<long long> r;
    long long certificate_bound = -1; // |alphabet|^{|S^r|}, saturating
    long long exact_count = -1;       // Z exact mode only
};

// Least r <= r_max with S^r |- S^{r+1}. A hit certifies finiteness of X; on Z
// the transition-graph count and the periodic-point enumeration are
// cross-checked against the certificate.
inline ExpansiveRadius expansive_radius(const SubshiftSpec& spec, long long r_max, long long rho,
                                        std::size_t budget = default_budget()) {
    if (rho < r_max + 1) throw malformed_input("expansive_radius needs rho >= r_max + 1");
    ExpansiveRadius out;
    for (long long r = 1; r <= r_max; ++r) {
        if (!ball_codes_next(spec, r, rho, budget)) continue;
        out.r = r;
        long long cells = static_cast<long long>(ball(spec.group, r, budget).size());
        long long bound = 1;
        for (long long i = 0; i < cells; ++i) {
            if (bound > (1LL << 62) / static_cast<long long>(spec.alphabet.size())) {
                bound = -1; // saturated
                break;
            }
            bound *= static_cast<long long>(spec.alphabet.size());
        }
        out.certificate_bound = bound;
        if (exact_z_mode(spec)) {
            auto fin = is_finite_sft(spec);
            if (fin.kind != FinitenessVerdict::Kind::finite)
                throw invariant_violation("coding certificate found but transition graph is not finite");
            out.exact_count = fin.count;
            auto pts = enumerate_periodic_points(spec, std::max<long long>(fin.count, 1), budget);
            long long enumerated = 0;
            for (const auto& p : pts) enumerated += p.stabilizer_index; // orbit sizes partition X
            if (enumerated != fin.count)
                throw invariant_violation("finiteness certificate disagrees with periodic-point enumeration");
            if (bound > 0 && fin.count > bound)
                throw invariant_violation("exact count exceeds the coding certificate bound");
        }
        return out;
    }
    return out;
}

struct HoroballProbe {
    bool codes = false;
    std::optional<std::pair<Pattern, Pattern>> non_coding_pair;
};

// Does the horoball surrogate code the identity coordinate? Coordinates are
// the inverted membership set (the standing convention for coordinate sets).
inline HoroballProbe horoball_coding_probe(const SubshiftSpec& spec, const HoroballApprox& h, long long rho,
                                           std::size_t budget = default_budget()) {
    if (rho < h.R) throw malformed_input("workspace must contain the horoball window");
    CodingQuery q{spec, {}, {spec.group.identity()}, rho};
    for (const auto& g : h.membership) q.A.push_back(spec.group.inverse(g));
    auto v = codes(q, budget);
    HoroballProbe out;
    out.codes = v.codes();
    out.non_coding_pair = v.witness;
    return out;
}

struct PeriodicCodingReport {
    enum class Status { collapse_forced, hypothesis_fails, vacuous } status = Status::vacuous;
    long long points = 0;       // periodic points with primitive period <= N
    long long pairs_checked = 0; // pairs agreeing on the horoball surrogate
    bool horoball_codes_window = false;
    std::vector<std::string> trace;
};

// Desk-scale replay of the pointwise-periodic argument: if every point has
// period <= N, any two points agreeing on the horoball surrogate must agree
// on the whole window S^rho.
inline PeriodicCodingReport pointwise_periodic_coding_argument(const SubshiftSpec& spec, const HoroballApprox& h,
                                                               long long N, long long rho,
                                                               std::size_t budget = default_budget()) {
    if (!exact_z_mode(spec)) throw malformed_input("periodic coding argument requires an exact Z subshift");
    PeriodicCodingReport rep;
    auto fin = is_finite_sft(spec);
    auto pts = enumerate_periodic_points(spec, N, budget);
    rep.points = static_cast<long long>(pts.size());
    long long covered = 0;
    for (const auto& p : pts) covered += p.stabilizer_index;
    if (fin.kind != FinitenessVerdict::Kind::finite || covered != fin.count) {
        rep.status = PeriodicCodingReport::Status::hypothesis_fails;
        rep.trace.push_back(fin.kind == FinitenessVerdict::Kind::finite
                                ? "points of period > N exist; collapse not forced"
                                : "non-periodic points exist (" + fin.witness + "); collapse not forced");
        return rep;
    }
    if (fin.count <= 1) {
        rep.status = PeriodicCodingReport::Status::vacuous;
        rep.horoball_codes_window = true;
        rep.trace.push_back("at most one point; every coding holds vacuously");
        return rep;
    }
    // orbits of the listed representatives = all points
    std::vector<PeriodicPoint> all;
    for (const auto& p : pts)
        for (long long s = 0; s < p.stabilizer_index; ++s) {
            PeriodicPoint q = p;
            std::rotate(q.word.begin(), q.word.begin() + static_cast<long>(s % static_cast<long long>(q.word.size())),
                        q.word.end());
            all.push_back(std::move(q));
        }
    std::vector<long long> coords; // inverted membership, the coding coordinates
    for (const auto& g : h.membership) coords.push_back(-z_coord(g));
    bool ok = true;
    for (std::size_t i = 0; i < all.size() && ok; ++i)
        for (std::size_t j = i + 1; j < all.size() && ok; ++j) {
            bool agree = true;
            for (long long c : coords)
                if (all[i].at(c) != all[j].at(c)) { agree = false; break; }
            if (!agree) continue;
            ++rep.pairs_checked;
            for (long long c = -rho; c <= rho; ++c)
                if (all[i].at(c) != all[j].at(c)) {
                    ok = false;
                    rep.trace.push_back("pair agrees on the horoball surrogate but differs at coordinate " +
                                        std::to_string(c));
                    break;
                }
        }
    rep.horoball_codes_window = ok;
    rep.status = ok ? PeriodicCodingReport::Status::collapse_forced : PeriodicCodingReport::Status::hypothesis_fails;
    rep.trace.push_back(ok ? "all pairs agreeing on the surrogate collapse on the window"
                           : "bounded periods did not force collapse at this window radius");
    return rep;
}

} // namespace expanse
