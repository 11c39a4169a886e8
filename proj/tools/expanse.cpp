// Experiment runner and report emitter for the expanse library.
//
// Exit codes: 0 pass, 1 property/expectation violation, 2 budget exceeded or
// malformed input. Reports are byte-deterministic for fixed inputs.

#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include <expanse/action.hpp>
#include <expanse/ca.hpp>
#include <expanse/coding.hpp>
#include <expanse/corpus.hpp>
#include <expanse/horoball.hpp>
#include <expanse/tiling.hpp>

using namespace expanse;

namespace {

json load_arg(const std::string& arg) {
    json j = (!arg.empty() && (arg.front() == '{' || arg.front() == '[')) ? json::parse(arg) : load_json_file(arg);
    // accept whole corpus entry files as well as bare payloads
    if (j.is_object() && j.contains("kind") && j.contains("payload")) return j.at("payload");
    return j;
}

std::vector<GroupElement> parse_elements(const GroupSpec& g, const std::string& arg) {
    json j = json::parse(arg);
    std::vector<GroupElement> out;
    for (const auto& v : j) out.push_back(g.element_from_json(v));
    return out;
}

std::pair<int, int> parse_torus(const std::string& s) {
    auto x = s.find('x');
    if (x == std::string::npos) throw malformed_input("torus must look like 6x6");
    return {std::stoi(s.substr(0, x)), std::stoi(s.substr(x + 1))};
}

void emit(const json& j, const std::string& format) {
    if (format == "json") {
        std::cout << j.dump(2) << "\n";
        return;
    }
    // text: flat key: value lines in key order
    for (const auto& [k, v] : j.items()) std::cout << k << ": " << (v.is_string() ? v.get<std::string>() : v.dump()) << "\n";
}

json verdict_to_json(const SubshiftSpec& spec, const CodingVerdict& v) {
    json j{{"codes", v.codes()}, {"exact", v.exact}, {"rho", v.rho}};
    if (v.witness) {
        j["witness"] = {pattern_to_json(spec.group, v.witness->first), pattern_to_json(spec.group, v.witness->second)};
    }
    if (v.minimal_subset) {
        json f = json::array();
        for (const auto& g : *v.minimal_subset) f.push_back(spec.group.element_to_json(g));
        j["minimal_subset"] = f;
    }
    return j;
}

json tiling_to_json(const TorusTiling& x, const TileSet& ts) {
    json pl = json::array();
    for (const auto& p : x.placements)
        pl.push_back({{"tile", ts.tiles[static_cast<std::size_t>(p.tile)].name}, {"at", {p.v.x, p.v.y}}});
    return json{{"torus", {x.W, x.H}}, {"placements", pl}};
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"expanse: coding, orbits, cellular automata and tilings at desk scale"};
    app.require_subcommand(1);
    std::string format = "json";
    app.add_option("--format", format, "output format")->check(CLI::IsMember({"json", "text", "dot"}));

    // codes
    auto* c_codes = app.add_subcommand("codes", "decide A |- B on a subshift");
    std::string codes_sft, codes_a, codes_b;
    long long codes_rho = 6;
    bool codes_minimal = false;
    c_codes->add_option("--sft", codes_sft)->required();
    c_codes->add_option("--A", codes_a)->required();
    c_codes->add_option("--B", codes_b)->required();
    c_codes->add_option("--radius", codes_rho);
    c_codes->add_flag("--minimal-subset", codes_minimal, "also compute a minimal coding subset");

    // expansive-radius
    auto* c_er = app.add_subcommand("expansive-radius", "least r with S^r |- S^{r+1}");
    std::string er_sft;
    long long er_rmax = 4, er_rho = 6;
    c_er->add_option("--sft", er_sft)->required();
    c_er->add_option("--rmax", er_rmax);
    c_er->add_option("--radius", er_rho);

    // horoball
    auto* c_h = app.add_subcommand("horoball", "finite horoball surrogate, optionally probing an SFT");
    std::string h_group = "{\"kind\":\"Z\"}", h_sft, h_dir;
    long long h_R = 3, h_r = -1, h_rho = 6, h_ball = -1;
    c_h->add_option("--group", h_group);
    c_h->add_option("--R", h_R);
    c_h->add_option("--r", h_r);
    c_h->add_option("--direction", h_dir, "JSON array of generator encodings");
    c_h->add_option("--sft", h_sft, "probe this subshift");
    c_h->add_option("--radius", h_rho);
    c_h->add_option("--ball", h_ball, "search for a radius-t ball inside the surrogate");

    // orbit / inverse-orbit / probe
    auto* c_orbit = app.add_subcommand("orbit", "forward orbit of a state");
    auto* c_inv = app.add_subcommand("inverse-orbit", "inverse orbit of a state");
    auto* c_probe = app.add_subcommand("probe", "pointwise periodicity probe over all states");
    std::string act_file, act_state;
    for (auto* c : {c_orbit, c_inv}) {
        c->add_option("--action", act_file)->required();
        c->add_option("--state", act_state)->required();
    }
    c_probe->add_option("--action", act_file)->required();

    // nk
    auto* c_nk = app.add_subcommand("nk", "N_k and substitution table for the universal action");
    int nk_k = 1;
    c_nk->add_option("--k", nk_k);

    // ca
    auto* c_ca = app.add_subcommand("ca", "cellular automaton operations");
    c_ca->require_subcommand(1);
    auto* ca_apply = c_ca->add_subcommand("apply", "apply a rule to a pattern");
    auto* ca_compose = c_ca->add_subcommand("compose", "compose two rules");
    auto* ca_pre = c_ca->add_subcommand("preperiodic", "search for f^n = f^{n+p}");
    auto* ca_nil = c_ca->add_subcommand("nilpotent", "search for a constant power");
    auto* ca_semi = c_ca->add_subcommand("semigroup", "induced action on periodic points");
    std::string ca_rule, ca_rule2, ca_pattern;
    long long ca_nmax = 6, ca_pmax = 6, ca_period = 4;
    for (auto* c : {ca_apply, ca_compose, ca_pre, ca_nil, ca_semi}) c->add_option("--rule", ca_rule)->required();
    ca_apply->add_option("--pattern", ca_pattern)->required();
    ca_compose->add_option("--rule2", ca_rule2)->required();
    ca_pre->add_option("--nmax", ca_nmax);
    ca_pre->add_option("--pmax", ca_pmax);
    ca_nil->add_option("--nmax", ca_nmax);
    ca_semi->add_option("--rule2", ca_rule2);
    ca_semi->add_option("--period", ca_period, "close the sample of periodic points up to this period");

    // tile
    auto* c_tile = app.add_subcommand("tile", "torus tiling operations");
    c_tile->require_subcommand(1);
    auto* t_enum = c_tile->add_subcommand("enum", "enumerate all tilings");
    auto* t_classes = c_tile->add_subcommand("classes", "translation classes");
    auto* t_faults = c_tile->add_subcommand("faults", "fault lines per tiling");
    auto* t_orbit = c_tile->add_subcommand("mt-orbit", "inverse orbit under the recentering monoid");
    auto* t_report = c_tile->add_subcommand("report", "total periodicity report over torus sizes");
    std::string tile_file, tile_torus = "4x4", tile_sizes = "4x4,6x6,8x8";
    long long tile_index = 0;
    for (auto* c : {t_enum, t_classes, t_faults, t_orbit, t_report}) c->add_option("--tiles", tile_file)->required();
    for (auto* c : {t_enum, t_classes, t_faults, t_orbit}) c->add_option("--torus", tile_torus);
    t_orbit->add_option("--index", tile_index, "index into the enumeration");
    t_report->add_option("--sizes", tile_sizes, "comma-separated torus sizes");

    // run / corpus
    auto* c_run = app.add_subcommand("run", "run an experiment spec");
    std::string run_file, corpus_dir = "corpus";
    c_run->add_option("spec", run_file)->required();
    c_run->add_option("--corpus", corpus_dir);
    auto* c_corpus = app.add_subcommand("corpus", "bundled example corpus");
    c_corpus->require_subcommand(1);
    auto* corpus_list = c_corpus->add_subcommand("list", "list entries");
    auto* corpus_validate = c_corpus->add_subcommand("validate", "schema-validate all entries");
    corpus_list->add_option("--dir", corpus_dir);
    corpus_validate->add_option("--dir", corpus_dir);

    // let --format appear after the subcommand too
    for (auto* sub : app.get_subcommands({})) {
        sub->fallthrough();
        for (auto* nested : sub->get_subcommands({})) nested->fallthrough();
    }

    CLI11_PARSE(app, argc, argv);

    try {
        if (*c_codes) {
            SubshiftSpec spec = SubshiftSpec::from_json(load_arg(codes_sft));
            CodingQuery q{spec, parse_elements(spec.group, codes_a), parse_elements(spec.group, codes_b), codes_rho};
            auto v = codes(q);
            if (codes_minimal && v.codes()) {
                v.minimal_subset = minimal_coding_subset(q);
                v.result = CodingVerdict::Result::codes_with_witness_set;
            }
            emit(verdict_to_json(spec, v), format);
        } else if (*c_er) {
            SubshiftSpec spec = SubshiftSpec::from_json(load_arg(er_sft));
            auto er = expansive_radius(spec, er_rmax, er_rho);
            json j{{"found", er.r.has_value()}};
            if (er.r) {
                j["expansive_radius"] = *er.r;
                j["certificate_bound"] = er.certificate_bound;
                if (er.exact_count >= 0) j["count"] = er.exact_count;
            }
            emit(j, format);
        } else if (*c_h) {
            GroupSpec g = GroupSpec::from_json(load_arg(h_group));
            std::vector<GroupElement> dir;
            if (!h_dir.empty()) dir = parse_elements(g, h_dir);
            auto h = horoball_approx(g, h_R, dir, h_r);
            json mem = json::array();
            for (const auto& m : h.membership) mem.push_back(g.element_to_json(m));
            json j{{"R", h.R}, {"r", h.r}, {"center", g.element_to_json(h.center)}, {"membership", mem}};
            if (h_ball >= 0) {
                auto b = find_ball_in_horoball(h, g, h_ball);
                j["ball_center"] = b ? g.element_to_json(*b) : json(nullptr);
            }
            if (!h_sft.empty()) {
                SubshiftSpec spec = SubshiftSpec::from_json(load_arg(h_sft));
                auto probe = horoball_coding_probe(spec, h, h_rho);
                j["codes"] = probe.codes;
                if (probe.non_coding_pair)
                    j["non_coding_pair"] = {pattern_to_json(spec.group, probe.non_coding_pair->first),
                                            pattern_to_json(spec.group, probe.non_coding_pair->second)};
            }
            emit(j, format);
        } else if (*c_orbit || *c_inv) {
            ActionSpec a = ActionSpec::from_json(load_arg(act_file));
            int s = a.state_index(act_state);
            json j;
            if (*c_orbit) {
                auto rep = orbit(a, s);
                json o = json::array();
                for (int st : rep.orbit) o.push_back(a.states[static_cast<std::size_t>(st)]);
                j = {{"state", act_state}, {"orbit", o}, {"size", rep.size()}, {"complete", rep.complete}};
            } else {
                auto rep = inverse_orbit(a, s);
                json o = json::array();
                for (int st : rep.inverse_orbit) o.push_back(a.states[static_cast<std::size_t>(st)]);
                j = {{"state", act_state}, {"inverse_orbit", o}, {"size", rep.size()}, {"complete", rep.complete}};
            }
            emit(j, format);
        } else if (*c_probe) {
            ActionSpec a = ActionSpec::from_json(load_arg(act_file));
            auto p = pointwise_periodicity_probe(a);
            json j{{"result", p.kind == PeriodicityProbe::Kind::all_finite ? "all-finite" : "inconclusive"},
                   {"max_orbit", p.max_orbit},
                   {"partial_sample", p.partial_sample}};
            if (p.witness_state >= 0) j["witness_state"] = a.states[static_cast<std::size_t>(p.witness_state)];
            emit(j, format);
        } else if (*c_nk) {
            auto nk = compute_Nk(nk_k);
            json table = json::object();
            for (const auto& [w, sub] : nk.table) {
                std::string key;
                for (int g : w) key += "s" + std::to_string(g + 1);
                std::string val;
                for (int g : sub) val += "s" + std::to_string(g + 1);
                table[key] = val;
            }
            emit(json{{"k", nk.k}, {"N", nk.N}, {"table", table}}, format);
        } else if (*c_ca) {
            LocalRule f = LocalRule::from_json(load_arg(ca_rule));
            if (*ca_apply) {
                Pattern p = pattern_from_json(f.subshift.group, load_arg(ca_pattern));
                emit(pattern_to_json(f.subshift.group, apply(f, p)), format);
            } else if (*ca_compose) {
                LocalRule g = LocalRule::from_json(load_arg(ca_rule2));
                emit(compose(f, g).to_json(), format);
            } else if (*ca_pre) {
                auto pp = preperiodicity(f, ca_nmax, ca_pmax);
                json j{{"found", pp.found}};
                if (pp.found) {
                    j["n"] = pp.n;
                    j["p"] = pp.p;
                } else if (pp.witness) {
                    j["witness"] = pattern_to_json(f.subshift.group, *pp.witness);
                }
                emit(j, format);
            } else if (*ca_nil) {
                auto nil = nilpotency(f, ca_nmax);
                json j{{"nilpotent", nil.nilpotent}};
                if (nil.nilpotent) {
                    j["n"] = nil.n;
                    j["symbol"] = f.subshift.alphabet[static_cast<std::size_t>(nil.symbol)];
                }
                emit(j, format);
            } else { // semigroup
                std::vector<LocalRule> rules{f};
                if (!ca_rule2.empty()) rules.push_back(LocalRule::from_json(load_arg(ca_rule2)));
                auto sample = enumerate_periodic_points(f.subshift, ca_period);
                auto a = ca_semigroup_action(rules, sample);
                auto probe = pointwise_periodicity_probe(a);
                json j{{"states", a.states.size()},
                       {"semigroup_order", induced_semigroup_order(a)},
                       {"max_orbit", probe.max_orbit},
                       {"partial_sample", true}};
                emit(j, format);
            }
        } else if (*c_tile) {
            TileSet ts = TileSet::from_json(load_arg(tile_file));
            if (*t_report) {
                std::vector<std::pair<int, int>> sizes;
                std::stringstream ss(tile_sizes);
                std::string tok;
                while (std::getline(ss, tok, ',')) sizes.push_back(parse_torus(tok));
                json spec{{"operation", "tiling-report"},
                          {"inputs", {{"tileset", ts.to_json()}, {"sizes", json::array()}}}};
                for (auto [w, h] : sizes) spec["inputs"]["sizes"].push_back({w, h});
                emit(run_experiment(spec, corpus_dir).report, format);
            } else {
                auto [W, H] = parse_torus(tile_torus);
                auto tilings = enumerate_tilings(ts, W, H);
                if (*t_enum) {
                    if (format == "dot") {
                        for (const auto& x : tilings) std::cout << intersection_graph(x, ts).dot();
                    } else {
                        json j = json::array();
                        for (const auto& x : tilings) j.push_back(tiling_to_json(x, ts));
                        emit(json{{"count", tilings.size()}, {"tilings", j}}, format);
                    }
                } else if (*t_classes) {
                    auto classes = translation_classes(tilings);
                    json j = json::array();
                    for (const auto& c : classes)
                        j.push_back({{"representative", tiling_to_json(c.representative, ts)}, {"size", c.size}});
                    emit(json{{"tilings", tilings.size()}, {"classes", classes.size()}, {"list", j}}, format);
                } else if (*t_faults) {
                    json j = json::array();
                    for (const auto& x : tilings) {
                        json lines = json::array();
                        for (const auto& l : fault_lines(x, ts))
                            lines.push_back({{"axis", std::string(1, l.axis)}, {"index", l.index}});
                        j.push_back(lines);
                    }
                    emit(json{{"fault_lines", j}}, format);
                } else { // mt-orbit
                    if (tile_index < 0 || tile_index >= static_cast<long long>(tilings.size()))
                        throw malformed_input("tiling index out of range");
                    auto x = tilings[static_cast<std::size_t>(tile_index)];
                    auto d = centering_vector(x, ts);
                    auto xc = x.translated({-d.x, -d.y});
                    auto mt = mt_inverse_orbit(xc, ts);
                    json o = json::array();
                    for (const auto& y : mt.orbit) o.push_back(tiling_to_json(y, ts));
                    emit(json{{"centering", {d.x, d.y}}, {"size", mt.orbit.size()}, {"orbit", o}}, format);
                }
            }
        } else if (*c_run) {
            json spec = load_json_file(run_file);
            if (spec.contains("payload")) spec = spec.at("payload"); // corpus-wrapped experiment
            auto res = run_experiment(spec, corpus_dir);
            emit(res.report, format);
            return res.exit_code;
        } else if (*c_corpus) {
            auto entries = list_corpus(corpus_dir);
            if (*corpus_list) {
                json j = json::array();
                for (const auto& e : entries) j.push_back({{"id", e.id}, {"kind", e.kind}, {"note", e.note}});
                emit(json{{"entries", j}, {"count", entries.size()}}, format);
            } else {
                json j = json::array();
                bool all_ok = true;
                for (const auto& e : entries) {
                    auto r = validate_entry(e);
                    all_ok = all_ok && r.ok;
                    j.push_back({{"id", r.id}, {"ok", r.ok}, {"message", r.message}});
                }
                emit(json{{"results", j}, {"all_ok", all_ok}}, format);
                if (!all_ok) return 1;
            }
        }
    } catch (const budget_error& ex) {
        std::cerr << "error: " << ex.what() << "\n";
        return 2;
    } catch (const malformed_input& ex) {
        std::cerr << "error: " << ex.what() << "\n";
        return 2;
    } catch (const invariant_violation& ex) {
        std::cerr << "error: " << ex.what() << "\n";
        return 1;
    } catch (const json::exception& ex) {
        std::cerr << "error: malformed JSON: " << ex.what() << "\n";
        return 2;
    }
    return 0;
}
