#pragma once

// Corpus entries (bundled worked examples) and the experiment runner the CLI
// dispatches to. A corpus entry is one JSON file {id, kind, payload, note};
// experiment specs reference entries by id or carry payloads inline.

#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "action.hpp"
#include "ca.hpp"
#include "coding.hpp"
#include "core.hpp"
#include "horoball.hpp"
#include "tiling.hpp"

namespace expanse {

struct CorpusEntry {
    std::string id;
    std::string kind; // group | sft | ca | action | tileset | experiment
    json payload;
    std::string note;

    static CorpusEntry from_json(const json& j) {
        CorpusEntry e;
        e.id = j.at("id").get<std::string>();
        e.kind = j.at("kind").get<std::string>();
        e.payload = j.at("payload");
        if (j.contains("note")) e.note = j.at("note").get<std::string>();
        return e;
    }
};

inline json load_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw malformed_input("cannot open " + path);
    json j;
    try {
        in >> j;
    } catch (const json::exception& ex) {
        throw malformed_input(path + ": " + ex.what());
    }
    return j;
}

inline std::vector<CorpusEntry> list_corpus(const std::string& dir) {
    std::vector<std::string> paths;
    for (const auto& f : std::filesystem::directory_iterator(dir))
        if (f.path().extension() == ".json") paths.push_back(f.path().string());
    std::sort(paths.begin(), paths.end());
    std::vector<CorpusEntry> out;
    for (const auto& p : paths) out.push_back(CorpusEntry::from_json(load_json_file(p)));
    return out;
}

inline CorpusEntry corpus_entry(const std::string& dir, const std::string& id) {
    return CorpusEntry::from_json(load_json_file(dir + "/" + id + ".json"));
}

// Resolve an input that is either an inline payload or a corpus id.
inline json resolve_payload(const json& v, const std::string& dir, const std::string& kind) {
    if (v.is_string()) {
        CorpusEntry e = corpus_entry(dir, v.get<std::string>());
        if (e.kind != kind) throw malformed_input("corpus entry " + e.id + " has kind " + e.kind + ", wanted " + kind);
        return e.payload;
    }
    return v;
}

struct ValidationResult {
    std::string id;
    bool ok = true;
    std::string message;
};

inline ValidationResult validate_entry(const CorpusEntry& e) {
    ValidationResult r;
    r.id = e.id;
    try {
        if (e.kind == "group") GroupSpec::from_json(e.payload);
        else if (e.kind == "sft") SubshiftSpec::from_json(e.payload);
        else if (e.kind == "ca") LocalRule::from_json(e.payload);
        else if (e.kind == "action") ActionSpec::from_json(e.payload);
        else if (e.kind == "tileset") TileSet::from_json(e.payload);
        else if (e.kind == "experiment") {
            e.payload.at("operation").get<std::string>();
            e.payload.at("inputs");
        } else
            throw malformed_input("unknown corpus kind: " + e.kind);
    } catch (const std::exception& ex) {
        r.ok = false;
        r.message = ex.what();
    }
    return r;
}

// ---- experiment runner ---------------------------------------------------------

struct ExperimentResult {
    json report;
    int exit_code = 0; // 0 pass, 1 expectation/property violation, 2 budget or malformed input
};

namespace detail {

inline bool check_expectations(const json& expect, const json& report, json& failures) {
    bool ok = true;
    for (const auto& [key, want] : expect.items()) {
        if (!report.contains(key) || report.at(key) != want) {
            ok = false;
            failures.push_back({{"key", key},
                                {"expected", want},
                                {"actual", report.contains(key) ? report.at(key) : json(nullptr)}});
        }
    }
    return ok;
}

} // namespace detail

inline ExperimentResult run_experiment(const json& spec, const std::string& corpus_dir,
                                       std::size_t budget = default_budget()) {
    ExperimentResult res;
    std::string op = spec.at("operation").get<std::string>();
    const json& in = spec.at("inputs");
    json report{{"operation", op}};
    if (spec.contains("name")) report["name"] = spec.at("name");

    if (op == "expansive-radius") {
        SubshiftSpec sft = SubshiftSpec::from_json(resolve_payload(in.at("sft"), corpus_dir, "sft"));
        auto er = expansive_radius(sft, in.at("r_max").get<long long>(), in.at("rho").get<long long>(), budget);
        report["found"] = er.r.has_value();
        if (er.r) {
            report["expansive_radius"] = *er.r;
            report["certificate_bound"] = er.certificate_bound;
            if (er.exact_count >= 0) report["count"] = er.exact_count;
        }
    } else if (op == "horoball-probe") {
        SubshiftSpec sft = SubshiftSpec::from_json(resolve_payload(in.at("sft"), corpus_dir, "sft"));
        long long R = in.at("R").get<long long>(), rho = in.at("rho").get<long long>();
        GroupElement minus = sft.group.identity(), plus = sft.group.identity();
        minus.coords[0] = -1;
        plus.coords[0] = 1;
        auto hm = horoball_approx(sft.group, R, {minus});
        auto hp = horoball_approx(sft.group, R, {plus});
        report["codes_minus"] = horoball_coding_probe(sft, hm, rho, budget).codes;
        report["codes_plus"] = horoball_coding_probe(sft, hp, rho, budget).codes;
    } else if (op == "tiling-report") {
        TileSet ts = TileSet::from_json(resolve_payload(in.at("tileset"), corpus_dir, "tileset"));
        std::vector<std::pair<int, int>> sizes;
        for (const auto& s : in.at("sizes")) sizes.emplace_back(s.at(0).get<int>(), s.at(1).get<int>());
        auto rep = total_periodicity_report(ts, sizes, budget);
        json rows = json::array();
        bool increasing = rep.rows.size() >= 2;
        for (std::size_t i = 0; i < rep.rows.size(); ++i) {
            const auto& row = rep.rows[i];
            rows.push_back({{"torus", {row.W, row.H}},
                            {"tilings", row.tilings},
                            {"classes", row.classes},
                            {"fault_lines", row.fault_lines_present},
                            {"flc_bound", row.flc_bound}});
            if (i > 0 && rep.rows[i].classes <= rep.rows[i - 1].classes) increasing = false;
        }
        report["rows"] = rows;
        report["verdict"] = rep.verdict;
        report["classes_strictly_increasing"] = increasing;
    } else if (op == "orbit-sizes") {
        ActionSpec a = ActionSpec::from_json(resolve_payload(in.at("action"), corpus_dir, "action"));
        json sizes = json::object();
        for (const auto& s : in.at("states")) {
            std::string name = s.get<std::string>();
            sizes[name] = orbit(a, a.state_index(name), budget).size();
        }
        report["orbit_sizes"] = sizes;
    } else if (op == "preperiodic") {
        LocalRule f = LocalRule::from_json(resolve_payload(in.at("ca"), corpus_dir, "ca"), budget);
        auto pp = preperiodicity(f, in.at("n_max").get<long long>(), in.at("p_max").get<long long>(), budget);
        report["found"] = pp.found;
        if (pp.found) {
            report["n"] = pp.n;
            report["p"] = pp.p;
        }
    } else {
        throw malformed_input("unknown experiment operation: " + op);
    }

    if (spec.contains("expect")) {
        json failures = json::array();
        bool ok = detail::check_expectations(spec.at("expect"), report, failures);
        report["pass"] = ok;
        if (!ok) {
            report["failures"] = failures;
            res.exit_code = 1;
        }
    } else {
        report["pass"] = true;
    }
    res.report = report;
    return res;
}

} // namespace expanse
