#pragma once

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <optional>
#include <string>
#include <vector>

#include "capwhitham/coefficients.hpp"
#include "capwhitham/errors.hpp"
#include "capwhitham/symbreak.hpp"
#include "capwhitham/wave_solver.hpp"

namespace capwhitham::io {

// Keys keep insertion order so that documents read top-down.
using Json = nlohmann::ordered_json;

inline Json number(double x) { return std::isfinite(x) ? Json(x) : Json(nullptr); }
inline Json number(const std::optional<double>& x) { return x ? number(*x) : Json(nullptr); }

inline Json pair_json(const WaveNumberPair& p) { return Json{{"k1", p.k1()}, {"k2", p.k2()}}; }

inline Json context_json(const ErrorContext& ctx) {
    Json o = Json::object();
    for (const auto& [k, v] : ctx) o[k] = v;
    return o;
}

inline Json error_envelope(const std::string& code, const std::string& message, const ErrorContext& ctx = {}) {
    return Json{{"code", code}, {"message", message}, {"context", context_json(ctx)}};
}
inline Json error_envelope(const Error& e) { return error_envelope(e.code(), e.what(), e.context()); }

/// Warning emitted when (k1,k2) is not coprime and gets divided by its gcd.
inline std::optional<Json> reduction_warning(int k1, int k2, const PairReduction& red) {
    if (red.divisor == 1) return std::nullopt;
    return error_envelope("pair_reduced", "wavenumber pair reduced by its gcd",
                          {{"k1", std::to_string(k1)},
                           {"k2", std::to_string(k2)},
                           {"reduced_k1", std::to_string(red.pair.k1())},
                           {"reduced_k2", std::to_string(red.pair.k2())},
                           {"divisor", std::to_string(red.divisor)}});
}

inline Json expansion_json(const PhiExpansion& e) {
    std::vector<Monomial> monos = e.monomials;
    for (auto& m : monos) std::sort(m.factors.begin(), m.factors.end());
    std::sort(monos.begin(), monos.end(), [](const Monomial& a, const Monomial& b) { return a.factors < b.factors; });
    Json list = Json::array();
    for (const auto& m : monos) list.push_back(Json{{"coeff", m.coeff}, {"factors", m.factors}});
    return Json{{"pair", pair_json(e.pair)},
                {"prefactor_exponent", e.prefactor_exponent},
                {"monomials", list},
                {"N", e.term_count()},
                {"M", e.factor_count()}};
}

inline Json bifurcation_json(const BifurcationPoint& b) {
    return Json{{"T", number(b.T)}, {"c0", number(b.c0)}, {"kappa0", number(b.kappa0)}, {"residual", number(b.residual)}};
}

inline Json root_json(const PhiRoot& r) {
    return Json{{"T0", number(r.T0)}, {"lo", number(r.lo)}, {"hi", number(r.hi)}, {"slope", number(r.slope)}};
}

inline const char* sign_label(double x) { return x > 0 ? "+" : (x < 0 ? "-" : "0"); }

inline Json limits_json(const PhiLimits& l) {
    return Json{{"low", number(l.low)},
                {"high", number(l.high)},
                {"signs", Json::array({sign_label(l.low), sign_label(l.high)})},
                {"differ", (l.low < 0 && l.high > 0) || (l.low > 0 && l.high < 0)}};
}

inline Json verdict_json(const PairVerdict& v) {
    Json roots = Json::array();
    for (const auto& r : v.roots) roots.push_back(root_json(r));
    Json o{{"k1", v.k1},
           {"k2", v.k2},
           {"status", to_string(v.status)},
           {"limit_low", number(v.limit_low)},
           {"limit_high", number(v.limit_high)},
           {"n_roots", v.roots.size()},
           {"T0_first", v.roots.empty() ? Json(nullptr) : number(v.roots.front().T0)},
           {"roots", roots}};
    o["error"] = v.error ? Json(*v.error) : Json(nullptr);
    return o;
}

inline Json report_json(const WaveProfile& prof, const SolveReport& rep) {
    Json eq = Json::array();
    for (double g : rep.equations) eq.push_back(number(g));
    return Json{{"pair", pair_json(prof.pair)},
                {"r1", number(prof.params.r1)},
                {"r2", number(prof.params.r2)},
                {"theta1", number(prof.params.theta1)},
                {"theta2", number(prof.params.theta2)},
                {"K", prof.K},
                {"c", number(rep.c)},
                {"kappa", number(rep.kappa)},
                {"T", number(rep.T)},
                {"period", number(rep.kappa > 0 ? std::numbers::pi / rep.kappa : NAN)},
                {"asymmetric", rep.asymmetric},
                {"mode", rep.mode},
                {"converged", rep.converged},
                {"iterations_w", rep.iterations_w},
                {"iterations_newton", rep.iterations_newton},
                {"residuals",
                 {{"J_inf", number(rep.residual_J_inf)},
                  {"orthogonality", number(rep.residual_orthogonality)},
                  {"lindep", number(rep.residual_lindep)}}},
                {"projections",
                 {{"cos1", number(rep.projections[0])},
                  {"cos2", number(rep.projections[1])},
                  {"sin1", number(rep.projections[2])},
                  {"sin2", number(rep.projections[3])}}},
                {"equations", eq},
                {"message", rep.message}};
}

/// Pretty-printed with a trailing newline; output is byte-stable for equal input.
inline std::string dump(const Json& j) { return j.dump(2) + "\n"; }

} // namespace capwhitham::io
