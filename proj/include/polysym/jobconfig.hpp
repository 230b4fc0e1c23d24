#pragma once

// Job configuration files: INI-style `key = value` lines grouped under
// `[section]` headers, with `#` or `;` comments.  Parsing is strict -- an
// unknown section or key, or an unparsable value, raises config_error with a
// line-numbered message so typos surface immediately instead of silently
// running a default job.

#include "polysym/models/caged.hpp"
#include "polysym/models/painleve.hpp"

#include <cctype>
#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>
#include <string>

namespace polysym {

struct config_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct job_config {
    // [job]
    std::string model = "caged";  // caged | painleve | toy
    std::string mode = "exact";   // exact | float
    std::string out_dir = "out";
    int nmax = 24;
    double emax = 0.0;  // 0 = no energy cutoff
    double tol = 1e-9;

    // [caged]
    models::caged_params caged{};

    // [painleve]
    models::painleve_params painleve{};

    // [p4]
    std::string p4_branch = "minus_two_z_over_three";  // named rational branch
    bool p4_ic_from_branch = true;
    double p4_alpha = 0.0, p4_beta = -2.0 / 9.0;
    double p4_z0 = 0.5, p4_f0 = 0.0, p4_fp0 = 0.0;
    double p4_z_end = 4.0;
    bool p4_continue_past_poles = false;

    // [grid]
    double grid_xmin = 0.0;   // ignored for symmetric potentials (derived)
    double grid_xmax = 12.0;
    int grid_points = 3000;
    int levels = 8;
};

namespace confdetail {

inline std::string trim(const std::string& s) {
    std::size_t a = 0, b = s.size();
    while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
    while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
    return s.substr(a, b - a);
}

[[noreturn]] inline void fail(int line, const std::string& msg) {
    throw config_error("config line " + std::to_string(line) + ": " + msg);
}

inline int to_int(const std::string& v, int line) {
    try {
        std::size_t pos = 0;
        int r = std::stoi(v, &pos);
        if (pos != v.size()) fail(line, "trailing characters in integer '" + v + "'");
        return r;
    } catch (const config_error&) {
        throw;
    } catch (...) {
        fail(line, "expected integer, got '" + v + "'");
    }
}

inline double to_num(const std::string& v, int line) {
    // Accept p/q, decimal, and scientific forms.
    try {
        if (v.find('/') != std::string::npos) return to_double(parse_rational(v));
        std::size_t pos = 0;
        double r = std::stod(v, &pos);
        if (pos != v.size()) fail(line, "trailing characters in number '" + v + "'");
        return r;
    } catch (const config_error&) {
        throw;
    } catch (...) {
        fail(line, "expected number, got '" + v + "'");
    }
}

inline Rational to_rat(const std::string& v, int line) {
    try {
        return parse_rational(v);
    } catch (...) {
        fail(line, "expected rational number, got '" + v + "'");
    }
}

inline bool to_bool(const std::string& v, int line) {
    if (v == "true" || v == "1" || v == "yes") return true;
    if (v == "false" || v == "0" || v == "no") return false;
    fail(line, "expected boolean, got '" + v + "'");
}

inline int to_sign(const std::string& v, int line) {
    int s = to_int(v, line);
    if (s != 1 && s != -1) fail(line, "expected +1 or -1, got '" + v + "'");
    return s;
}

}  // namespace confdetail

inline job_config parse_config_text(const std::string& text) {
    using namespace confdetail;
    job_config cfg;
    std::istringstream in(text);
    std::string raw, section = "job";
    int line = 0;
    while (std::getline(in, raw)) {
        ++line;
        std::string s = raw;
        if (auto h = s.find_first_of("#;"); h != std::string::npos) s = s.substr(0, h);
        s = trim(s);
        if (s.empty()) continue;
        if (s.front() == '[') {
            if (s.back() != ']') fail(line, "unterminated section header '" + s + "'");
            section = trim(s.substr(1, s.size() - 2));
            if (section != "job" && section != "caged" && section != "painleve" &&
                section != "p4" && section != "grid")
                fail(line, "unknown section [" + section + "]");
            continue;
        }
        auto eq = s.find('=');
        if (eq == std::string::npos) fail(line, "expected 'key = value', got '" + s + "'");
        std::string key = trim(s.substr(0, eq));
        std::string val = trim(s.substr(eq + 1));
        if (key.empty() || val.empty()) fail(line, "empty key or value");

        if (section == "job") {
            if (key == "model") {
                if (val != "caged" && val != "painleve" && val != "toy")
                    fail(line, "model must be caged, painleve, or toy");
                cfg.model = val;
            } else if (key == "mode") {
                if (val != "exact" && val != "float") fail(line, "mode must be exact or float");
                cfg.mode = val;
            } else if (key == "out") {
                cfg.out_dir = val;
            } else if (key == "nmax") {
                cfg.nmax = to_int(val, line);
                if (cfg.nmax < 0) fail(line, "nmax must be >= 0");
            } else if (key == "emax") {
                cfg.emax = to_num(val, line);
            } else if (key == "tol") {
                cfg.tol = to_num(val, line);
                if (cfg.tol <= 0) fail(line, "tol must be positive");
            } else {
                fail(line, "unknown key '" + key + "' in [job]");
            }
        } else if (section == "caged") {
            if (key == "kx") cfg.caged.kx = to_int(val, line);
            else if (key == "ky") cfg.caged.ky = to_int(val, line);
            else if (key == "omega") cfg.caged.omega = to_rat(val, line);
            else if (key == "l1") cfg.caged.l1 = to_rat(val, line);
            else if (key == "l2") cfg.caged.l2 = to_rat(val, line);
            else if (key == "hbar") cfg.caged.hbar = to_rat(val, line);
            else fail(line, "unknown key '" + key + "' in [caged]");
        } else if (section == "painleve") {
            if (key == "omega1") cfg.painleve.omega1 = to_rat(val, line);
            else if (key == "omega2") cfg.painleve.omega2 = to_rat(val, line);
            else if (key == "m") cfg.painleve.m = to_int(val, line);
            else if (key == "n") cfg.painleve.n = to_int(val, line);
            else if (key == "alpha1") cfg.painleve.alpha1 = to_rat(val, line);
            else if (key == "beta1") cfg.painleve.beta1 = to_rat(val, line);
            else if (key == "alpha2") cfg.painleve.alpha2 = to_rat(val, line);
            else if (key == "beta2") cfg.painleve.beta2 = to_rat(val, line);
            else if (key == "eps1") cfg.painleve.eps1 = to_sign(val, line);
            else if (key == "eps2") cfg.painleve.eps2 = to_sign(val, line);
            else if (key == "hbar") cfg.painleve.hbar = to_rat(val, line);
            else fail(line, "unknown key '" + key + "' in [painleve]");
        } else if (section == "p4") {
            if (key == "branch") cfg.p4_branch = val;
            else if (key == "ic_from_branch") cfg.p4_ic_from_branch = to_bool(val, line);
            else if (key == "alpha") cfg.p4_alpha = to_num(val, line);
            else if (key == "beta") cfg.p4_beta = to_num(val, line);
            else if (key == "z0") cfg.p4_z0 = to_num(val, line);
            else if (key == "f0") cfg.p4_f0 = to_num(val, line);
            else if (key == "fp0") cfg.p4_fp0 = to_num(val, line);
            else if (key == "z_end") cfg.p4_z_end = to_num(val, line);
            else if (key == "continue_past_poles") cfg.p4_continue_past_poles = to_bool(val, line);
            else fail(line, "unknown key '" + key + "' in [p4]");
        } else {  // grid
            if (key == "xmin") cfg.grid_xmin = to_num(val, line);
            else if (key == "xmax") cfg.grid_xmax = to_num(val, line);
            else if (key == "points") {
                cfg.grid_points = to_int(val, line);
                if (cfg.grid_points < 8) fail(line, "points must be >= 8");
            } else if (key == "levels") {
                cfg.levels = to_int(val, line);
                if (cfg.levels < 1) fail(line, "levels must be >= 1");
            } else {
                fail(line, "unknown key '" + key + "' in [grid]");
            }
        }
    }

    // Cross-field validation beyond per-line checks.
    try {
        if (cfg.model == "caged") models::validate(cfg.caged);
        if (cfg.model == "painleve") models::validate(cfg.painleve);
    } catch (const std::exception& e) {
        throw config_error(std::string("invalid ") + cfg.model + " parameters: " + e.what());
    }
    return cfg;
}

inline job_config parse_config_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw config_error("cannot open config file '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_config_text(ss.str());
}

}  // namespace polysym
