#include <CLI11.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "capwhitham/capwhitham.hpp"

using namespace capwhitham;
using io::Json;

namespace {

// Flags as parsed; unset optionals fall back to the config file, then to defaults.
struct Flags {
    std::string config;
    std::optional<std::string> out;
    std::vector<std::string> formats;
    std::optional<int> jobs, grid, K;
    std::optional<double> tol_root, tol_w, tol_newton, tol_J, tol_orth, tol_lindep, amplitude_cap;
    std::optional<std::string> w_method;

    int k1 = 0, k2 = 0;
    std::optional<double> T;
    std::string T_grid;
    int kmax = 0;
    bool roots = false;
    double r1 = 0, r2 = 0, theta1 = 0, theta2 = 0;
    int samples = 1024;
};

io::RunConfig resolve(const Flags& f) {
    io::RunConfig cfg;
    std::string path = f.config;
    if (path.empty())
        if (const char* env = std::getenv("CAPWHITHAM_CONFIG")) path = env;
    if (!path.empty()) cfg = io::load_config(path, cfg);
    if (f.out) cfg.out = *f.out;
    if (!f.formats.empty()) cfg.formats = f.formats;
    if (f.jobs) cfg.jobs = *f.jobs;
    if (f.grid) cfg.grid = *f.grid;
    if (f.K) cfg.K = *f.K;
    if (f.tol_root) cfg.tol_root = *f.tol_root;
    if (f.tol_w) cfg.tol_w = *f.tol_w;
    if (f.tol_newton) cfg.tol_newton = *f.tol_newton;
    if (f.tol_J) cfg.tol_J = *f.tol_J;
    if (f.tol_orth) cfg.tol_orthogonality = *f.tol_orth;
    if (f.tol_lindep) cfg.tol_lindep = *f.tol_lindep;
    if (f.amplitude_cap) cfg.amplitude_cap = *f.amplitude_cap;
    if (f.w_method) cfg.w_method = *f.w_method;
    cfg.validate();
    return cfg;
}

using Outputs = std::map<std::string, std::string>;  // format -> document

// Without --out the first requested (or default) format goes to stdout; with --out
// every requested format, or every available one, is written as <out>/<stem>.<ext>.
void emit(const io::RunConfig& cfg, const std::string& stem, const Outputs& docs, const std::string& primary) {
    auto need = [&](const std::string& fmt) -> const std::string& {
        const auto it = docs.find(fmt);
        if (it == docs.end()) throw DomainError("format not available for this command", {{"format", fmt}, {"command", stem}}, "format");
        return it->second;
    };
    if (cfg.out.empty()) {
        std::cout << need(cfg.formats.empty() ? primary : cfg.formats.front());
        return;
    }
    std::filesystem::create_directories(cfg.out);
    std::vector<std::string> fmts = cfg.formats;
    if (fmts.empty())
        for (const auto& [fmt, doc] : docs) fmts.push_back(fmt);
    for (const auto& fmt : fmts) {
        const std::string& doc = need(fmt);
        const auto path = std::filesystem::path(cfg.out) / (stem + "." + fmt);
        std::ofstream f(path, std::ios::binary);
        f << doc;
        if (!f) throw ResourceError("cannot write output file", {{"path", path.string()}});
    }
}

struct ResolvedPair {
    WaveNumberPair pair;
    Json warnings = Json::array();
};

ResolvedPair resolve_pair(int k1, int k2) {
    const PairReduction red = reduce_pair(k1, k2);
    ResolvedPair rp{red.pair};
    if (auto w = io::reduction_warning(k1, k2, red)) {
        std::cerr << Json{{"warning", *w}}.dump() << '\n';
        rp.warnings.push_back(*w);
    }
    return rp;
}

Json header(const std::string& command, const ResolvedPair& rp) {
    return Json{{"command", command}, {"pair", io::pair_json(rp.pair)}, {"warnings", rp.warnings}};
}

std::vector<double> tension_list(const Flags& f) {
    if (f.T && !f.T_grid.empty()) throw DomainError("give either --T or --T-grid", {}, "usage");
    if (f.T) return {*f.T};
    if (f.T_grid.empty()) throw DomainError("--T or --T-grid is required", {}, "usage");
    // start:stop:n (inclusive, uniform) or a comma-separated list
    const auto parts = io::detail::split_list(f.T_grid);
    std::vector<double> out;
    if (f.T_grid.find(':') != std::string::npos) {
        std::vector<std::string> fields;
        std::stringstream ss(f.T_grid);
        for (std::string s; std::getline(ss, s, ':');) fields.push_back(io::detail::trim(s));
        if (fields.size() != 3) throw DomainError("T-grid must be start:stop:n", {{"T-grid", f.T_grid}}, "usage");
        const double a = io::detail::parse_value<double>("T-grid", fields[0]);
        const double b = io::detail::parse_value<double>("T-grid", fields[1]);
        const int n = io::detail::parse_value<int>("T-grid", fields[2]);
        if (n < 1) throw DomainError("T-grid needs at least one point", {{"T-grid", f.T_grid}}, "usage");
        for (int i = 0; i < n; ++i) out.push_back(n == 1 ? a : a + (b - a) * i / (n - 1));
    } else {
        for (const auto& p : parts) out.push_back(io::detail::parse_value<double>("T-grid", p));
    }
    return out;
}

int cmd_bifurcate(const Flags& f, const io::RunConfig& cfg) {
    const ResolvedPair rp = resolve_pair(f.k1, f.k2);
    std::vector<BifurcationPoint> pts;
    for (double T : tension_list(f)) pts.push_back(double_bifurcation(rp.pair, SurfaceTension::weak_regime(T)));
    Json doc = header("bifurcate", rp);
    doc["points"] = Json::array();
    for (const auto& p : pts) doc["points"].push_back(io::bifurcation_json(p));
    emit(cfg, "bifurcate", {{"json", io::dump(doc)}, {"csv", io::bifurcation_csv(pts)}}, "json");
    return 0;
}

int cmd_phi_eval(const Flags& f, const io::RunConfig& cfg) {
    const ResolvedPair rp = resolve_pair(f.k1, f.k2);
    Json doc = header("phi eval", rp);
    doc["samples"] = Json::array();
    std::vector<io::PhiCurvePoint> pts;
    for (double T : tension_list(f)) {
        const PhiSample s = phi_eval(rp.pair, SurfaceTension::weak_regime(T));
        const double norm = phi_normalized(rp.pair, SurfaceTension(T));
        pts.push_back({T, s.value, norm});
        doc["samples"].push_back(Json{{"T", io::number(T)},
                                      {"phi", io::number(s.value)},
                                      {"phi_normalized", io::number(norm)},
                                      {"c0", io::number(s.bifurcation.c0)},
                                      {"kappa0", io::number(s.bifurcation.kappa0)}});
    }
    emit(cfg, "phi_eval", {{"json", io::dump(doc)}, {"csv", io::phi_curve_csv(pts)}}, "json");
    return 0;
}

int cmd_phi_root(const Flags& f, const io::RunConfig& cfg) {
    const ResolvedPair rp = resolve_pair(f.k1, f.k2);
    const RootOptions opt = cfg.root_options();
    const auto roots = phi_root(rp.pair, opt);
    Json doc = header("phi root", rp);
    doc["grid"] = opt.grid_size;
    doc["tol"] = opt.tol;
    doc["roots"] = Json::array();
    for (const auto& r : roots) doc["roots"].push_back(io::root_json(r));
    emit(cfg, "phi_root", {{"json", io::dump(doc)}, {"csv", io::roots_csv(roots)}}, "json");
    return 0;
}

int cmd_phi_limits(const Flags& f, const io::RunConfig& cfg) {
    const ResolvedPair rp = resolve_pair(f.k1, f.k2);
    const PhiLimits lim = phi_limits(rp.pair);
    Json doc = header("phi limits", rp);
    doc["limits"] = io::limits_json(lim);
    io::CsvWriter csv({"endpoint", "limit", "sign"});
    csv.row({to_string(Endpoint::low), io::CsvWriter::cell(lim.low), io::sign_label(lim.low)});
    csv.row({to_string(Endpoint::high), io::CsvWriter::cell(lim.high), io::sign_label(lim.high)});
    emit(cfg, "phi_limits", {{"json", io::dump(doc)}, {"csv", csv.str()}}, "json");
    return 0;
}

int cmd_phi_curve(const Flags& f, const io::RunConfig& cfg) {
    const ResolvedPair rp = resolve_pair(f.k1, f.k2);
    std::vector<io::PhiCurvePoint> pts;
    for (double T : phi_grid(cfg.grid)) pts.push_back({T, phi_eval(rp.pair, SurfaceTension(T)).value, phi_normalized(rp.pair, SurfaceTension(T))});
    const auto roots = phi_root(rp.pair, cfg.root_options());

    io::PlotSpec plot;
    plot.kind = io::PlotKind::line;
    plot.title = "phi(T; " + std::to_string(rp.pair.k1()) + "," + std::to_string(rp.pair.k2()) + ")";
    plot.x_label = "T";
    plot.y_label = "sign(phi) log10(1 + |phi|)";
    plot.y_scale = io::AxisScale::signed_log;
    plot.y_markers.push_back({0.0, "0"});
    for (const auto& r : roots) plot.x_markers.push_back({r.T0, "T0 = " + fmt_num(r.T0)});
    for (const auto& p : pts) plot.points.emplace_back(p.T, p.phi);

    Json doc = header("phi curve", rp);
    doc["grid"] = cfg.grid;
    doc["points"] = Json::array();
    for (const auto& p : pts)
        doc["points"].push_back(Json{{"T", io::number(p.T)}, {"phi", io::number(p.phi)}, {"phi_normalized", io::number(p.normalized)}});
    doc["roots"] = Json::array();
    for (const auto& r : roots) doc["roots"].push_back(io::root_json(r));
    emit(cfg, "phi_curve", {{"json", io::dump(doc)}, {"csv", io::phi_curve_csv(pts)}, {"svg", io::render_svg(plot)}}, "csv");
    return 0;
}

int cmd_pairs(const Flags& f, const io::RunConfig& cfg) {
    ScanOptions opt;
    opt.run_roots = f.roots;
    opt.roots = cfg.root_options();
    opt.jobs = cfg.jobs;
    const auto verdicts = pair_scan(f.kmax, opt);

    io::PlotSpec plot;
    plot.kind = io::PlotKind::scatter;
    plot.title = "pairs with a symmetry breaking point, k_max = " + std::to_string(f.kmax);
    plot.x_label = "k1";
    plot.y_label = "k2";
    plot.x_range = {0.0, f.kmax + 1.0};
    plot.y_range = {0.0, f.kmax + 1.0};
    std::size_t errored = 0;
    Json doc{{"command", "pairs"}, {"kmax", f.kmax}, {"run_roots", f.roots}, {"grid", cfg.grid}, {"verdicts", Json::array()}};
    for (const auto& v : verdicts) {
        if (v.status == PairStatus::admits) plot.points.emplace_back(v.k1, v.k2);
        if (v.error) ++errored;
        doc["verdicts"].push_back(io::verdict_json(v));
    }
    emit(cfg, "pairs", {{"csv", io::verdict_csv(verdicts)}, {"json", io::dump(doc)}, {"svg", io::render_svg(plot)}}, "csv");
    if (errored == verdicts.size())
        throw ConvergenceError("every pair failed to classify", {{"pairs", std::to_string(verdicts.size())}}, "all_pairs_failed");
    return 0;
}

int cmd_wave(const Flags& f, const io::RunConfig& cfg) {
    const ResolvedPair rp = resolve_pair(f.k1, f.k2);
    const ModalParameters params = ModalParameters::make(rp.pair, f.r1, f.r2, f.theta1, f.theta2);
    double T_init;
    if (f.T) {
        T_init = *f.T;
    } else {
        const auto roots = phi_root(rp.pair, cfg.root_options());
        if (roots.empty()) throw DomainError("no root of phi to start from; pass --T", {}, "usage");
        T_init = roots.front().T0;
    }
    SurfaceTension::weak_regime(T_init);

    auto write = [&](const WaveProfile& prof, const SolveReport& rep) {
        Json doc = header("wave", rp);
        doc["T_init"] = io::number(T_init);
        doc["asymmetry_test"] = asymmetry_test(rp.pair, params);
        doc["report"] = io::report_json(prof, rep);
        io::PlotSpec plot;
        plot.title = "u(x), mode " + rep.mode;
        plot.x_label = "x";
        plot.y_label = "u";
        plot.y_markers.push_back({0.0, ""});
        for (auto [x, u] : prof.samples(f.samples)) plot.points.emplace_back(x, u);
        emit(cfg, "wave", {{"json", io::dump(doc)}, {"csv", io::profile_csv(prof, f.samples)}, {"svg", io::render_svg(plot)}}, "json");
    };
    try {
        const WaveSolution sol = solve_wave(rp.pair, params, T_init, cfg.K, cfg.wave_options());
        write(sol.profile, sol.report);
    } catch (const WaveConvergenceError& e) {
        write(e.partial().profile, e.partial().report);
        throw;
    }
    return 0;
}

int cmd_expand(const Flags& f, const io::RunConfig& cfg) {
    const ResolvedPair rp = resolve_pair(f.k1, f.k2);
    const PhiExpansion e = expand_symbolic(rp.pair);
    Json doc = io::expansion_json(e);
    if (!rp.warnings.empty()) doc["warnings"] = rp.warnings;
    io::CsvWriter csv({"coeff", "factors"});
    for (const auto& m : doc["monomials"]) {
        std::string fs;
        for (const auto& x : m["factors"]) fs += (fs.empty() ? "" : " ") + std::to_string(x.get<int>());
        csv.row({std::to_string(m["coeff"].get<std::int64_t>()), fs});
    }
    emit(cfg, "expand", {{"json", io::dump(doc)}, {"csv", csv.str()}}, "json");
    return 0;
}

void report_error(const std::string& code, const std::string& message, const ErrorContext& ctx = {}) {
    std::cerr << io::error_envelope(code, message, ctx).dump() << '\n';
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Symmetry breaking for the capillary-gravity Whitham equation"};
    app.fallthrough();
    app.require_subcommand(1);
    Flags f;

    app.add_option("--config", f.config, "flat key=value configuration file (or $CAPWHITHAM_CONFIG)");
    app.add_option("--out", f.out, "output directory; default writes the primary format to stdout");
    app.add_option("--format", f.formats, "csv, json or svg; comma-separated")->delimiter(',');
    app.add_option("--jobs", f.jobs, "worker threads for pairs");
    app.add_option("--grid", f.grid, "T grid size for roots and curves");
    app.add_option("--K", f.K, "Fourier truncation order");
    app.add_option("--tol-root", f.tol_root);
    app.add_option("--tol-w", f.tol_w);
    app.add_option("--tol-newton", f.tol_newton);
    app.add_option("--tol-J", f.tol_J);
    app.add_option("--tol-orthogonality", f.tol_orth);
    app.add_option("--tol-lindep", f.tol_lindep);
    app.add_option("--amplitude-cap", f.amplitude_cap);
    app.add_option("--w-method", f.w_method, "newton or picard");

    auto add_pair = [&](CLI::App* sub) {
        sub->add_option("--k1", f.k1)->required();
        sub->add_option("--k2", f.k2)->required();
    };

    auto* bif = app.add_subcommand("bifurcate", "double bifurcation points");
    add_pair(bif);
    bif->add_option("--T", f.T);
    bif->add_option("--T-grid", f.T_grid, "start:stop:n or a comma list");

    auto* phi = app.add_subcommand("phi", "the symmetry breaking coefficient phi(T)");
    phi->fallthrough();
    phi->require_subcommand(1);
    auto* phi_eval_cmd = phi->add_subcommand("eval");
    add_pair(phi_eval_cmd);
    phi_eval_cmd->add_option("--T", f.T);
    phi_eval_cmd->add_option("--T-grid", f.T_grid);
    auto* phi_root_cmd = phi->add_subcommand("root");
    add_pair(phi_root_cmd);
    auto* phi_limits_cmd = phi->add_subcommand("limits");
    add_pair(phi_limits_cmd);
    auto* phi_curve_cmd = phi->add_subcommand("curve");
    add_pair(phi_curve_cmd);
    for (auto* s : {phi_eval_cmd, phi_root_cmd, phi_limits_cmd, phi_curve_cmd}) s->fallthrough();

    auto* pairs = app.add_subcommand("pairs", "scan wavenumber pairs");
    pairs->add_option("--kmax", f.kmax)->required();
    pairs->add_flag("--roots", f.roots, "also locate roots of phi");

    auto* wave = app.add_subcommand("wave", "solve for a small-amplitude wave");
    add_pair(wave);
    wave->add_option("--r1", f.r1);
    wave->add_option("--r2", f.r2);
    wave->add_option("--theta1", f.theta1);
    wave->add_option("--theta2", f.theta2);
    wave->add_option("--T", f.T, "initial T; default is the first root of phi");
    wave->add_option("--samples", f.samples, "profile samples")->check(CLI::PositiveNumber);

    auto* expand = app.add_subcommand("expand", "exact monomial expansion of phi");
    add_pair(expand);

    for (auto* s : {bif, pairs, wave, expand}) s->fallthrough();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        report_error("usage", e.what());
        return 2;
    }

    try {
        const io::RunConfig cfg = resolve(f);
        if (*bif) return cmd_bifurcate(f, cfg);
        if (*phi_eval_cmd) return cmd_phi_eval(f, cfg);
        if (*phi_root_cmd) return cmd_phi_root(f, cfg);
        if (*phi_limits_cmd) return cmd_phi_limits(f, cfg);
        if (*phi_curve_cmd) return cmd_phi_curve(f, cfg);
        if (*pairs) return cmd_pairs(f, cfg);
        if (*wave) return cmd_wave(f, cfg);
        if (*expand) return cmd_expand(f, cfg);
    } catch (const Error& e) {
        std::cerr << io::error_envelope(e).dump() << '\n';
        return e.exit_code();
    } catch (const std::exception& e) {
        report_error("internal", e.what());
        return 1;
    }
    return 0;
}
