#pragma once

// JSON views of every artifact the pipelines emit, plus atomic file writes.
// All output is deterministic: ordered keys, no timestamps, doubles printed
// by the shortest round-trip formatter, rationals as exact "p/q" strings.
// Files are written to a temp sibling and renamed into place so readers never
// observe a partial file.

#include "polysym/audit.hpp"
#include "polysym/p4ode.hpp"
#include "polysym/repsolve.hpp"
#include "polysym/specnum.hpp"

#include <json.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <stdexcept>
#include <string>

namespace polysym {

using ordered_json = nlohmann::ordered_json;

inline constexpr int kSchemaVersion = 1;

template <class R>
ordered_json scalar_json(const R& v) {
    if constexpr (is_exact_v<R>)
        return v.str();
    else
        return v;
}

inline ordered_json to_json(const spectrum_table& t) {
    ordered_json rows = ordered_json::array();
    for (const auto& r : t.rows)
        rows.push_back({{"energy", r.energy},
                        {"multiplicity", r.multiplicity},
                        {"origin", provenance_name(r.origin)},
                        {"label", r.label}});
    return rows;
}

inline ordered_json to_json(const spectrum_comparison& c) {
    return {{"paired", c.paired},
            {"max_rel_dev", c.max_rel_dev},
            {"multiplicity_mismatches", c.multiplicity_mismatches},
            {"unmatched_a", c.unmatched_a},
            {"unmatched_b", c.unmatched_b},
            {"aligned", c.aligned},
            {"offset", c.offset},
            {"post_offset_max_dev", c.post_offset_max_dev},
            {"aligned_multiplicity_mismatches", c.aligned_multiplicity_mismatches}};
}

inline ordered_json to_json(const certificate& c, const std::string& name) {
    return {{"name", name},
            {"pass", c.pass},
            {"residual", c.residual_norm},
            {"detail", c.detail}};
}

template <class R>
ordered_json to_json(const representation_family<R>& fam) {
    ordered_json reps = ordered_json::array();
    for (const auto& rep : fam.reps) {
        ordered_json phi = ordered_json::array();
        for (const auto& v : rep.phi) phi.push_back(scalar_json(v));
        reps.push_back({{"n", rep.n},
                        {"dimension", rep.dimension()},
                        {"energy", scalar_json(rep.energy)},
                        {"energy_float", to_double(rep.energy)},
                        {"u", scalar_json(rep.u)},
                        {"phi", phi}});
    }
    return {{"branch",
             {{"q_root", scalar_json(fam.branch.q_root)},
              {"s_root", scalar_json(fam.branch.s_root)},
              {"i0", fam.branch.i0},
              {"j0", fam.branch.j0},
              {"orientation", fam.branch.orient == orientation::normal ? "normal" : "mirrored"}}},
            {"u_const", scalar_json(fam.u_const)},
            {"u_e_coeff", scalar_json(fam.u_e_coeff)},
            {"e_const", scalar_json(fam.e_const)},
            {"e_n_coeff", scalar_json(fam.e_n_coeff)},
            {"representations", reps}};
}

template <class R>
ordered_json to_json(const enumeration_result<R>& res) {
    ordered_json fams = ordered_json::array();
    for (const auto& f : res.families) fams.push_back(to_json(f));
    return {{"families", fams},
            {"duplicates_removed", res.duplicates_removed},
            {"complex_roots_skipped", res.complex_roots_skipped}};
}

inline ordered_json to_json(const audit_item& it) {
    ordered_json j = {{"id", it.id},
                      {"classification", audit_class_name(it.verdict)},
                      {"engine", it.engine},
                      {"printed", it.printed}};
    if (it.verdict == audit_class::uniform_scale) j["scale"] = it.scale;
    if (it.verdict == audit_class::constant_offset) j["offset"] = it.offset;
    if (!it.note.empty()) j["note"] = it.note;
    return j;
}

inline ordered_json to_json(const audit_report& rep) {
    ordered_json items = ordered_json::array();
    for (const auto& it : rep.items) items.push_back(to_json(it));
    return {{"schema", kSchemaVersion},
            {"kind", "audit"},
            {"model", rep.model},
            {"params", rep.params_echo},
            {"discrepancies", rep.discrepancies()},
            {"items", items}};
}

inline ordered_json to_json(const p4_trajectory& t) {
    ordered_json poles = ordered_json::array();
    for (const auto& p : t.poles)
        poles.push_back({{"z_approach", p.z_approach},
                         {"z_estimate", p.z_estimate},
                         {"z_resume", p.z_resume},
                         {"residue", p.residue},
                         {"resumed", p.resumed}});
    return {{"alpha", t.alpha},
            {"beta", t.beta},
            {"samples", t.samples.size()},
            {"z_first", t.samples.empty() ? 0.0 : t.samples.front().z},
            {"z_last", t.samples.empty() ? 0.0 : t.samples.back().z},
            {"poles", poles},
            {"max_residual", t.max_residual},
            {"completed", t.completed},
            {"restarts", t.restarts}};
}

// ---------------------------------------------------------------------------
// Atomic writes.
// ---------------------------------------------------------------------------

inline void write_text_atomic(const std::filesystem::path& path, const std::string& text) {
    namespace fs = std::filesystem;
    if (path.has_parent_path()) fs::create_directories(path.parent_path());
    fs::path tmp = path;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw std::runtime_error("cannot open " + tmp.string() + " for writing");
        out << text;
        if (!out.flush()) throw std::runtime_error("write failed for " + tmp.string());
    }
    fs::rename(tmp, path);
}

inline void write_json_atomic(const std::filesystem::path& path, const ordered_json& j) {
    write_text_atomic(path, j.dump(2) + "\n");
}

inline std::string csv_of_spectrum(const spectrum_table& t) {
    std::string s = "energy,multiplicity,origin,label\n";
    char buf[64];
    for (const auto& r : t.rows) {
        std::snprintf(buf, sizeof buf, "%.17g,%d,", r.energy, r.multiplicity);
        s += buf;
        s += provenance_name(r.origin);
        s += ',';
        s += r.label;
        s += '\n';
    }
    return s;
}

inline std::string csv_of_trajectory(const p4_trajectory& t) {
    std::string s = "z,f,fp,residual\n";
    char buf[160];
    for (const auto& p : t.samples) {
        std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g,%.3g\n", p.z, p.f, p.fp, p.residual);
        s += buf;
    }
    return s;
}

inline std::string csv_of_potential(const std::vector<double>& xs, const std::vector<double>& vs) {
    std::string s = "x,v\n";
    char buf[96];
    for (std::size_t i = 0; i < xs.size(); ++i) {
        std::snprintf(buf, sizeof buf, "%.17g,%.17g\n", xs[i], vs[i]);
        s += buf;
    }
    return s;
}

}  // namespace polysym
