#pragma once

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "capwhitham/errors.hpp"
#include "capwhitham/format.hpp"
#include "capwhitham/symbreak.hpp"
#include "capwhitham/wave_solver.hpp"

namespace capwhitham::io {

struct RunConfig {
    double tol_root = 1e-10;
    double tol_w = 1e-14;
    double tol_newton = 1e-12;
    double tol_J = 1e-10;
    double tol_orthogonality = 1e-12;
    double tol_lindep = 1e-13;
    int grid = 200;
    int K = 64;
    int jobs = 1;
    std::string w_method = "newton";
    double amplitude_cap = 0.3;
    std::string out;                   // empty: primary format to stdout
    std::vector<std::string> formats;  // empty: command default

    void validate() const {
        for (auto [name, v] : {std::pair{"tol-root", tol_root}, {"tol-w", tol_w}, {"tol-newton", tol_newton}, {"tol-J", tol_J},
                               {"tol-orthogonality", tol_orthogonality}, {"tol-lindep", tol_lindep},
                               {"amplitude-cap", amplitude_cap}})
            if (!(v > 0) || !std::isfinite(v))
                throw DomainError("configuration values must be positive", {{"key", name}, {"value", fmt_num(v)}}, "config");
        if (jobs < 1) throw DomainError("jobs must be at least 1", {{"jobs", std::to_string(jobs)}}, "config");
        if (grid < 16) throw DomainError("grid must be at least 16", {{"grid", std::to_string(grid)}}, "config");
        if (K < 1) throw DomainError("K must be positive", {{"K", std::to_string(K)}}, "config");
        if (w_method != "newton" && w_method != "picard")
            throw DomainError("w-method must be newton or picard", {{"w-method", w_method}}, "config");
        for (const auto& f : formats)
            if (f != "csv" && f != "json" && f != "svg")
                throw DomainError("unknown output format", {{"format", f}}, "config");
    }

    RootOptions root_options() const {
        RootOptions r;
        r.grid_size = grid;
        r.tol = tol_root;
        return r;
    }

    WaveOptions wave_options() const {
        WaveOptions o;
        o.w.method = w_method == "picard" ? WMethod::picard : WMethod::newton;
        o.w.tol = tol_w;
        o.w.amplitude_cap = amplitude_cap;
        o.newton_tol = tol_newton;
        o.tol_J = tol_J;
        o.tol_orthogonality = tol_orthogonality;
        o.tol_lindep = tol_lindep;
        return o;
    }
};

namespace detail {

inline std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return "";
    return s.substr(b, s.find_last_not_of(" \t\r") - b + 1);
}

template <class T>
T parse_value(const std::string& key, const std::string& text) {
    T v{};
    const auto [p, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
    if (ec != std::errc{} || p != text.data() + text.size())
        throw DomainError("cannot parse configuration value", {{"key", key}, {"value", text}}, "config");
    return v;
}

inline std::vector<std::string> split_list(const std::string& s) {
    std::vector<std::string> out;
    std::stringstream ss(s);
    for (std::string item; std::getline(ss, item, ',');)
        if (!trim(item).empty()) out.push_back(trim(item));
    return out;
}

} // namespace detail

/// Applies one key=value setting; keys are the long flag names without dashes.
inline void apply_setting(RunConfig& cfg, const std::string& key, const std::string& value) {
    using detail::parse_value;
    if (key == "tol-root") cfg.tol_root = parse_value<double>(key, value);
    else if (key == "tol-w") cfg.tol_w = parse_value<double>(key, value);
    else if (key == "tol-newton") cfg.tol_newton = parse_value<double>(key, value);
    else if (key == "tol-J") cfg.tol_J = parse_value<double>(key, value);
    else if (key == "tol-orthogonality") cfg.tol_orthogonality = parse_value<double>(key, value);
    else if (key == "tol-lindep") cfg.tol_lindep = parse_value<double>(key, value);
    else if (key == "grid") cfg.grid = parse_value<int>(key, value);
    else if (key == "K") cfg.K = parse_value<int>(key, value);
    else if (key == "jobs") cfg.jobs = parse_value<int>(key, value);
    else if (key == "w-method") cfg.w_method = value;
    else if (key == "amplitude-cap") cfg.amplitude_cap = parse_value<double>(key, value);
    else if (key == "out") cfg.out = value;
    else if (key == "format") cfg.formats = detail::split_list(value);
    else throw DomainError("unknown configuration key", {{"key", key}}, "config");
}

/// Flat "key = value" text; '#' starts a comment.
inline RunConfig parse_config(std::istream& in, RunConfig cfg = {}) {
    std::string line;
    for (int n = 1; std::getline(in, line); ++n) {
        if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        line = detail::trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw DomainError("configuration line is not key=value", {{"line", std::to_string(n)}}, "config");
        apply_setting(cfg, detail::trim(line.substr(0, eq)), detail::trim(line.substr(eq + 1)));
    }
    return cfg;
}

inline RunConfig load_config(const std::string& path, RunConfig cfg = {}) {
    std::ifstream f(path);
    if (!f) throw DomainError("cannot open configuration file", {{"path", path}}, "config");
    return parse_config(f, std::move(cfg));
}

} // namespace capwhitham::io
