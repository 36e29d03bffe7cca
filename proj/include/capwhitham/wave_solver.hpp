#pragma once

#include <Eigen/Dense>

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <functional>
#include <numbers>
#include <optional>
#include <string>
#include <vector>

#include "capwhitham/coefficients.hpp"
#include "capwhitham/errors.hpp"
#include "capwhitham/fourier.hpp"
#include "capwhitham/symbol.hpp"

namespace capwhitham {

// Modal arithmetic runs in extended precision: the sine projection that drives T
// is O(r^3) and gets divided by r^(k1+k2-1).
using wave_real = long double;
using WaveSeries = TrigSeries<wave_real>;

struct ModalParameters {
    double r1 = 0, r2 = 0;
    double theta1 = 0, theta2 = 0;  // reduced to [0, 2pi/k1) and [0, 2pi/k2)

    static ModalParameters make(const WaveNumberPair& pair, double r1, double r2, double theta1, double theta2) {
        for (double x : {r1, r2, theta1, theta2})
            if (!std::isfinite(x)) throw DomainError("modal parameters must be finite");
        if (r1 < 0 || r2 < 0)
            throw DomainError("amplitudes must be nonnegative", {{"r1", fmt_num(r1)}, {"r2", fmt_num(r2)}});
        return {r1, r2, reduce(theta1, pair.k1()), reduce(theta2, pair.k2())};
    }

    static double reduce(double theta, int k) {
        const double period = 2 * std::numbers::pi / k;
        double t = std::fmod(theta, period);
        if (t < 0) t += period;
        if (t >= period) t = 0;
        return t;
    }
};

struct WaveProfile {
    WaveNumberPair pair;
    ModalParameters params;
    int K;
    double c = 0, kappa = 0, T = 0;
    WaveSeries u;  // modes 0..K of u = v + w

    std::complex<double> mode(int k) const {
        const auto z = u[k];
        return {static_cast<double>(z.real()), static_cast<double>(z.imag())};
    }
    double evaluate(double x) const { return static_cast<double>(u.evaluate(x)); }

    WaveSeries v() const {
        WaveSeries s(K);
        add_cosine<wave_real>(s, pair.k1(), params.r1, params.theta1);
        add_cosine<wave_real>(s, pair.k2(), params.r2, params.theta2);
        return s;
    }
    WaveSeries w() const {
        WaveSeries s = u;
        s -= v();
        return s;
    }

    /// Uniform samples x_j = 2 pi j / n, j = 0..n-1.
    std::vector<std::pair<double, double>> samples(int n = 1024) const {
        std::vector<std::pair<double, double>> out;
        out.reserve(static_cast<std::size_t>(n));
        for (int j = 0; j < n; ++j) {
            const double x = 2 * std::numbers::pi * j / n;
            out.emplace_back(x, evaluate(x));
        }
        return out;
    }
};

inline WaveProfile synthesize_v(const WaveNumberPair& pair, const ModalParameters& params, int K) {
    if (K < 2 * pair.k2())
        throw DomainError("truncation order must satisfy K >= 2 k2",
                          {{"K", std::to_string(K)}, {"k2", std::to_string(pair.k2())}}, "truncation");
    WaveProfile p{pair, params, K, 0, 0, 0, WaveSeries(K)};
    p.u = p.v();
    return p;
}

inline constexpr double asymmetry_tol = 1e-12;

/// v is asymmetric iff r1 r2 != 0 and theta1 - theta2 is not in (pi/(k1k2)) Z.
inline bool asymmetry_test(const WaveNumberPair& pair, const ModalParameters& params) {
    if (params.r1 == 0 || params.r2 == 0) return false;
    const double p = std::numbers::pi / (pair.k1() * pair.k2());
    double rem = std::fmod(params.theta1 - params.theta2, p);
    if (rem < 0) rem += p;
    return std::min(rem, p - rem) > asymmetry_tol;
}

enum class WMethod { newton, picard };

struct WOptions {
    WMethod method = WMethod::newton;
    double tol = 1e-14;
    int max_iter = 200;
    int growth_limit = 10;
    double amplitude_cap = 0.3;
};

struct WSolve {
    WaveProfile profile;
    int iterations = 0;
    std::vector<double> history;  // sup-norm bound of each update
};

namespace detail {

inline std::vector<wave_real> multipliers(const WaveNumberPair& pair, double c, double kappa, double T, int K) {
    const MultiplierContext ctx(pair, c, kappa, T);
    std::vector<wave_real> ell(static_cast<std::size_t>(K) + 1);
    for (int k = 0; k <= K; ++k) ell[static_cast<std::size_t>(k)] = multiplier(ctx, k);
    return ell;
}

// Coefficient k of u^2 for a series of degree K.
inline std::complex<wave_real> square_mode(const WaveSeries& u, int k) {
    const int K = u.degree();
    std::complex<wave_real> s{};
    for (int j = std::max(-K, k - K); j <= std::min(K, k + K); ++j) s += u[j] * u[k - j];
    return s;
}

inline std::string history_string(const std::vector<double>& h) {
    std::string s;
    const std::size_t from = h.size() > 12 ? h.size() - 12 : 0;
    for (std::size_t i = from; i < h.size(); ++i) s += (s.empty() ? "" : " ") + fmt_num(h[i]);
    return s;
}

inline bool growing(const std::vector<double>& h, int limit) {
    if (static_cast<int>(h.size()) < limit + 1) return false;
    for (std::size_t i = h.size() - static_cast<std::size_t>(limit); i < h.size(); ++i)
        if (!(h[i] > h[i - 1])) return false;
    return true;
}

} // namespace detail

/// Fixed point w = L P_W (v+w)^2 on modes 0..K, by Newton (default) or Picard.
inline WSolve solve_w(const WaveProfile& vprof, double c, double kappa, double T, const WOptions& opt = {},
                      const WaveSeries* warm = nullptr) {
    const WaveNumberPair& pair = vprof.pair;
    const int K = vprof.K;
    if (vprof.params.r1 + vprof.params.r2 > opt.amplitude_cap)
        throw DomainError("amplitude above the configured cap",
                          {{"r1+r2", fmt_num(vprof.params.r1 + vprof.params.r2)}, {"cap", fmt_num(opt.amplitude_cap)}});
    const auto ell = detail::multipliers(pair, c, kappa, T, K);
    const WaveSeries v = vprof.v();
    WaveSeries w(K);
    if (warm)
        for (int k = 0; k <= std::min(K, warm->degree()); ++k)
            if (!pair.is_kernel(k)) w.mode(k) = (*warm)[k];
    w.mode(0) = {w[0].real(), 0};

    // Unknowns: Re w_k (k in W), Im w_k (k in W, k >= 1).
    std::vector<std::pair<int, int>> unknowns;
    for (int k = 0; k <= K; ++k) {
        if (pair.is_kernel(k)) continue;
        unknowns.emplace_back(k, 0);
        if (k > 0) unknowns.emplace_back(k, 1);
    }
    const int n = static_cast<int>(unknowns.size());
    using Mat = Eigen::Matrix<wave_real, Eigen::Dynamic, Eigen::Dynamic>;
    using Vec = Eigen::Matrix<wave_real, Eigen::Dynamic, 1>;

    WSolve out{vprof, 0, {}};
    out.profile.c = c;
    out.profile.kappa = kappa;
    out.profile.T = T;
    for (int it = 1; it <= opt.max_iter; ++it) {
        WaveSeries u = v;
        u += w;
        WaveSeries next_w(K);
        for (int k = 0; k <= K; ++k)
            if (!pair.is_kernel(k)) next_w.mode(k) = ell[static_cast<std::size_t>(k)] * detail::square_mode(u, k);
        next_w.mode(0) = {next_w[0].real(), 0};

        WaveSeries delta(K);
        if (opt.method == WMethod::picard) {
            delta = next_w;
            delta -= w;
        } else {
            Vec F(n);
            Mat J(n, n);
            for (int i = 0; i < n; ++i) {
                const auto [k, part] = unknowns[static_cast<std::size_t>(i)];
                const auto f = w[k] - next_w[k];
                F(i) = part == 0 ? f.real() : f.imag();
            }
            for (int j = 0; j < n; ++j) {
                const auto [m, pm] = unknowns[static_cast<std::size_t>(j)];
                const std::complex<wave_real> d = pm == 0 ? std::complex<wave_real>(1, 0) : std::complex<wave_real>(0, 1);
                for (int i = 0; i < n; ++i) {
                    const auto [k, pk] = unknowns[static_cast<std::size_t>(i)];
                    const std::complex<wave_real> ud = m == 0 ? u[k] * d : u[k - m] * d + u[k + m] * std::conj(d);
                    const std::complex<wave_real> col = -2 * ell[static_cast<std::size_t>(k)] * ud;
                    J(i, j) = (pk == 0 ? col.real() : col.imag()) + (i == j ? 1 : 0);
                }
            }
            const Vec step = J.partialPivLu().solve(-F);
            for (int i = 0; i < n; ++i) {
                const auto [k, part] = unknowns[static_cast<std::size_t>(i)];
                if (part == 0)
                    delta.mode(k) += std::complex<wave_real>(step(i), 0);
                else
                    delta.mode(k) += std::complex<wave_real>(0, step(i));
            }
        }
        w += delta;
        const double size = static_cast<double>(delta.abs_sum());
        out.history.push_back(size);
        out.iterations = it;
        if (!std::isfinite(size))
            throw ConvergenceError("w iteration produced non-finite values",
                                   {{"history", detail::history_string(out.history)}}, "divergence");
        if (size <= opt.tol) {
            out.profile.u = v;
            out.profile.u += w;
            return out;
        }
        if (detail::growing(out.history, opt.growth_limit))
            throw ConvergenceError("w iteration is not contracting",
                                   {{"history", detail::history_string(out.history)},
                                    {"method", opt.method == WMethod::newton ? "newton" : "picard"}},
                                   "divergence");
    }
    throw ConvergenceError("w iteration limit reached",
                           {{"iterations", std::to_string(opt.max_iter)}, {"history", detail::history_string(out.history)}});
}

/// J(u) = (M_{T,kappa} - c) u + u^2 on all modes 0..2K.
inline WaveSeries steady_residual(const WaveSeries& u, double c, double kappa, double T) {
    WaveSeries J = product(u, u);
    const wave_real offset = static_cast<wave_real>(c) - 1;
    for (int k = 0; k <= u.degree(); ++k) {
        const wave_real lin = static_cast<wave_real>(symbol_excess(T, kappa * k)) - offset;
        J.mode(k) += lin * u[k];
    }
    return J;
}

struct KernelProjections {
    wave_real cos1 = 0, cos2 = 0, sin1 = 0, sin2 = 0;
};

/// <J(u), cos/sin(k_i(x + theta_i))> with <f,g> = (1/2pi) int f g.
inline KernelProjections inner_products(const WaveProfile& prof) {
    const int k1 = prof.pair.k1(), k2 = prof.pair.k2();
    const wave_real offset = static_cast<wave_real>(prof.c) - 1;
    auto lin = [&](int k) { return static_cast<wave_real>(symbol_excess(prof.T, prof.kappa * k)) - offset; };
    // The linear part of J at k_i is (m - c) r_i/2 e^{i k_i theta_i}; it has no sine component.
    const auto s1 = detail::square_mode(prof.u, k1) * std::polar<wave_real>(1, -static_cast<wave_real>(k1) * prof.params.theta1);
    const auto s2 = detail::square_mode(prof.u, k2) * std::polar<wave_real>(1, -static_cast<wave_real>(k2) * prof.params.theta2);
    KernelProjections p;
    p.cos1 = lin(k1) * static_cast<wave_real>(prof.params.r1) / 2 + s1.real();
    p.cos2 = lin(k2) * static_cast<wave_real>(prof.params.r2) / 2 + s2.real();
    p.sin1 = -s1.imag();
    p.sin2 = -s2.imag();
    return p;
}

struct SolveReport {
    bool converged = false;
    std::string mode;  // asymmetric | symmetric-bimodal | symmetric-unimodal | trivial
    bool asymmetric = false;
    int iterations_w = 0;
    int iterations_newton = 0;
    double residual_J_inf = 0;
    double residual_orthogonality = 0;
    double residual_lindep = 0;
    double c = 0, kappa = 0, T = 0;
    std::vector<double> equations;  // final scaled equations G
    std::array<double, 4> projections{};  // cos1, cos2, sin1, sin2
    std::string message;
};

struct WaveSolution {
    WaveProfile profile;
    SolveReport report;
};

class WaveConvergenceError : public ConvergenceError {
public:
    WaveConvergenceError(const std::string& message, WaveSolution partial, ErrorContext ctx = {})
        : ConvergenceError(message, std::move(ctx)), partial_(std::move(partial)) {}
    const WaveSolution& partial() const noexcept { return partial_; }

private:
    WaveSolution partial_;
};

struct WaveOptions {
    WOptions w{};
    double newton_tol = 1e-12;
    int newton_max = 50;
    double fd_rel = 1e-7;
    double step_tol = 1e-12;
    double tol_J = 1e-10;
    double tol_orthogonality = 1e-12;
    double tol_lindep = 1e-13;
};

/// Fills the residual fields and decides convergence from them.
inline void fill_residuals(const WaveProfile& prof, const WaveOptions& opt, SolveReport& rep) {
    const WaveSeries J = steady_residual(prof.u, prof.c, prof.kappa, prof.T);
    rep.residual_J_inf = static_cast<double>(J.truncated(prof.K).abs_sum());
    rep.residual_orthogonality = static_cast<double>(inner(J, prof.u.derivative()));
    const KernelProjections p = inner_products(prof);
    rep.projections = {static_cast<double>(p.cos1), static_cast<double>(p.cos2), static_cast<double>(p.sin1),
                       static_cast<double>(p.sin2)};
    rep.residual_lindep = static_cast<double>(prof.pair.k1() * static_cast<wave_real>(prof.params.r1) * p.sin1 +
                                              prof.pair.k2() * static_cast<wave_real>(prof.params.r2) * p.sin2);
    rep.c = prof.c;
    rep.kappa = prof.kappa;
    rep.T = prof.T;
    rep.converged = rep.converged && rep.residual_J_inf <= opt.tol_J &&
                    std::abs(rep.residual_orthogonality) <= opt.tol_orthogonality &&
                    std::abs(rep.residual_lindep) <= opt.tol_lindep;
}

namespace detail {

struct OuterState {
    std::vector<wave_real> g;
    WSolve w;
};

using OuterEval = std::function<std::optional<OuterState>(const std::vector<double>&, const WaveSeries*)>;

struct OuterResult {
    std::vector<double> x;
    OuterState state;
    int iterations = 0;
    int w_iterations = 0;
    bool converged = false;
    std::string message;
};

inline wave_real inf_norm(const std::vector<wave_real>& g) {
    wave_real m = 0;
    for (auto v : g) m = std::max(m, std::abs(v));
    return m;
}

// Damped Newton with forward-difference Jacobian. Stops on |G| <= tol or on a
// relative step below step_tol (the rounding floor of G).
inline OuterResult newton_outer(std::vector<double> x, const OuterEval& eval, const WaveOptions& opt,
                                const std::function<bool(const std::vector<double>&)>& admissible) {
    const int n = static_cast<int>(x.size());
    auto st = eval(x, nullptr);
    if (!st) throw ConvergenceError("initial w solve failed", {{"stage", "newton start"}});
    OuterResult res{x, std::move(*st), 0, 0, false, ""};
    res.w_iterations += res.state.w.iterations;
    using Mat = Eigen::Matrix<wave_real, Eigen::Dynamic, Eigen::Dynamic>;
    using Vec = Eigen::Matrix<wave_real, Eigen::Dynamic, 1>;
    for (int it = 0; it < opt.newton_max; ++it) {
        const wave_real gnorm = inf_norm(res.state.g);
        if (gnorm <= opt.newton_tol) {
            res.converged = true;
            res.message = "residual below tolerance";
            return res;
        }
        Mat J(n, n);
        for (int j = 0; j < n; ++j) {
            const double h = opt.fd_rel * std::max(std::abs(res.x[static_cast<std::size_t>(j)]), 1e-3);
            std::vector<double> xp = res.x;
            xp[static_cast<std::size_t>(j)] += h;
            auto sp = eval(xp, &res.state.w.profile.u);
            double hh = h;
            if (!sp) {
                xp[static_cast<std::size_t>(j)] = res.x[static_cast<std::size_t>(j)] - h;
                sp = eval(xp, &res.state.w.profile.u);
                hh = -h;
            }
            if (!sp) throw ConvergenceError("finite-difference evaluation failed", {{"column", std::to_string(j)}});
            res.w_iterations += sp->w.iterations;
            for (int i = 0; i < n; ++i)
                J(i, j) = (sp->g[static_cast<std::size_t>(i)] - res.state.g[static_cast<std::size_t>(i)]) / hh;
        }
        Vec g(n);
        for (int i = 0; i < n; ++i) g(i) = res.state.g[static_cast<std::size_t>(i)];
        const auto lu = J.fullPivLu();
        if (!lu.isInvertible()) throw ConvergenceError("singular Newton Jacobian", {{"iteration", std::to_string(it)}});
        const Vec d = lu.solve(-g);

        double rel = 0;
        for (int i = 0; i < n; ++i)
            rel = std::max(rel, static_cast<double>(std::abs(d(i))) / std::max(std::abs(res.x[static_cast<std::size_t>(i)]), 1e-300));
        double lambda = 1, used = 0;
        bool accepted = false;
        for (int ls = 0; ls < 12 && !accepted; ++ls, lambda /= 2) {
            std::vector<double> xt = res.x;
            for (int i = 0; i < n; ++i) xt[static_cast<std::size_t>(i)] += static_cast<double>(lambda * d(i));
            if (!admissible(xt)) continue;
            auto s2 = eval(xt, &res.state.w.profile.u);
            if (!s2) continue;
            res.w_iterations += s2->w.iterations;
            if (inf_norm(s2->g) < gnorm) {
                res.x = xt;
                res.state = std::move(*s2);
                used = lambda;
                accepted = true;
            }
        }
        if (!accepted) {
            if (rel <= 100 * opt.step_tol) {
                res.converged = true;
                res.message = "step at rounding floor";
                return res;
            }
            throw ConvergenceError("Newton line search failed",
                                   {{"iteration", std::to_string(it)}, {"residual", fmt_num(static_cast<double>(gnorm))}});
        }
        res.iterations = it + 1;
        if (rel * used <= opt.step_tol) {
            res.converged = true;
            res.message = "relative step below tolerance";
            return res;
        }
    }
    res.message = "Newton stagnation";
    return res;
}

} // namespace detail

inline WaveSolution symmetric_solve(const WaveNumberPair& pair, const ModalParameters& params, double T, int K,
                                    const WaveOptions& opt = {});

/// Newton on (c, kappa, T) for the scaled kernel equations (g1, g2, g3).
inline WaveSolution solve_wave(const WaveNumberPair& pair, const ModalParameters& params, double T_init, int K,
                               const WaveOptions& opt = {}) {
    const WaveProfile v = synthesize_v(pair, params, K);
    if (params.r1 + params.r2 > opt.w.amplitude_cap)
        throw DomainError("amplitude above the configured cap",
                          {{"r1+r2", fmt_num(params.r1 + params.r2)}, {"cap", fmt_num(opt.w.amplitude_cap)}});
    if (!asymmetry_test(pair, params)) return symmetric_solve(pair, params, T_init, K, opt);
    const int k1 = pair.k1(), k2 = pair.k2();
    const wave_real sine = std::sin(static_cast<wave_real>(k1 * k2) *
                                    (static_cast<wave_real>(params.theta1) - static_cast<wave_real>(params.theta2)));
    if (std::abs(sine) < 1e-10)
        throw DomainError("sine factor too small for the asymmetric equations; use the symmetric mode",
                          {{"sin", fmt_num(static_cast<double>(sine))}}, "degenerate_direction");
    const BifurcationPoint bp = double_bifurcation(pair, SurfaceTension::weak_regime(T_init));
    const wave_real r1 = params.r1, r2 = params.r2;
    const wave_real scale = std::pow(r1, k2 - 1) * std::pow(r2, k1) * sine;

    detail::OuterEval eval = [&](const std::vector<double>& x, const WaveSeries* warm) -> std::optional<detail::OuterState> {
        try {
            WSolve ws = solve_w(v, x[0], x[1], x[2], opt.w, warm);
            const KernelProjections p = inner_products(ws.profile);
            return detail::OuterState{{p.cos1 / r1, p.cos2 / r2, p.sin1 / scale}, std::move(ws)};
        } catch (const Error&) {
            return std::nullopt;
        }
    };
    auto admissible = [](const std::vector<double>& x) {
        return x[0] > 0 && x[1] > 0 && x[2] > 0 && x[2] < one_third;
    };
    std::optional<detail::OuterResult> res;
    try {
        res = detail::newton_outer({bp.c0, bp.kappa0, T_init}, eval, opt, admissible);
    } catch (const ConvergenceError& e) {
        SolveReport rep;
        rep.mode = "asymmetric";
        rep.asymmetric = true;
        rep.message = e.what();
        WaveProfile prof = v;
        prof.c = bp.c0;
        prof.kappa = bp.kappa0;
        prof.T = T_init;
        throw WaveConvergenceError(std::string("asymmetric solve failed: ") + e.what(), {prof, rep}, e.context());
    }
    SolveReport rep;
    rep.mode = "asymmetric";
    rep.asymmetric = true;
    rep.converged = res->converged;
    rep.iterations_newton = res->iterations;
    rep.iterations_w = res->w_iterations;
    rep.message = res->message;
    for (auto g : res->state.g) rep.equations.push_back(static_cast<double>(g));
    fill_residuals(res->state.w.profile, opt, rep);
    WaveSolution sol{res->state.w.profile, rep};
    if (!rep.converged)
        throw WaveConvergenceError("asymmetric solve did not converge: " + res->message, sol,
                                   {{"residual_J_inf", fmt_num(rep.residual_J_inf)},
                                    {"residual_lindep", fmt_num(rep.residual_lindep)}});
    return sol;
}

/// Symmetric data: Newton on (c, kappa) at fixed T, or on c alone for a unimodal v.
inline WaveSolution symmetric_solve(const WaveNumberPair& pair, const ModalParameters& params, double T, int K,
                                    const WaveOptions& opt) {
    const WaveProfile v = synthesize_v(pair, params, K);
    if (asymmetry_test(pair, params))
        throw DomainError("symmetric solve called with asymmetric modal data", {}, "asymmetric_input");
    const BifurcationPoint bp = double_bifurcation(pair, SurfaceTension::weak_regime(T));
    SolveReport rep;
    rep.asymmetric = false;
    if (params.r1 == 0 && params.r2 == 0) {
        WaveProfile prof = v;
        prof.c = bp.c0;
        prof.kappa = bp.kappa0;
        prof.T = T;
        rep.mode = "trivial";
        rep.converged = true;
        rep.message = "zero amplitude";
        fill_residuals(prof, opt, rep);
        return {prof, rep};
    }
    const wave_real r1 = params.r1, r2 = params.r2;
    const bool bimodal = params.r1 > 0 && params.r2 > 0;
    rep.mode = bimodal ? "symmetric-bimodal" : "symmetric-unimodal";
    detail::OuterEval eval = [&](const std::vector<double>& x, const WaveSeries* warm) -> std::optional<detail::OuterState> {
        try {
            const double kappa = bimodal ? x[1] : bp.kappa0;
            WSolve ws = solve_w(v, x[0], kappa, T, opt.w, warm);
            const KernelProjections p = inner_products(ws.profile);
            if (bimodal) return detail::OuterState{{p.cos1 / r1, p.cos2 / r2}, std::move(ws)};
            return detail::OuterState{{r1 > 0 ? p.cos1 / r1 : p.cos2 / r2}, std::move(ws)};
        } catch (const Error&) {
            return std::nullopt;
        }
    };
    auto admissible = [](const std::vector<double>& x) {
        for (double v : x)
            if (!(v > 0)) return false;
        return true;
    };
    std::vector<double> x0 = bimodal ? std::vector<double>{bp.c0, bp.kappa0} : std::vector<double>{bp.c0};
    std::optional<detail::OuterResult> res;
    try {
        res = detail::newton_outer(x0, eval, opt, admissible);
    } catch (const ConvergenceError& e) {
        rep.message = e.what();
        WaveProfile prof = v;
        prof.c = bp.c0;
        prof.kappa = bp.kappa0;
        prof.T = T;
        throw WaveConvergenceError(std::string("symmetric solve failed: ") + e.what(), {prof, rep}, e.context());
    }
    rep.converged = res->converged;
    rep.iterations_newton = res->iterations;
    rep.iterations_w = res->w_iterations;
    rep.message = res->message;
    for (auto g : res->state.g) rep.equations.push_back(static_cast<double>(g));
    fill_residuals(res->state.w.profile, opt, rep);
    WaveSolution sol{res->state.w.profile, rep};
    if (!rep.converged)
        throw WaveConvergenceError("symmetric solve did not converge: " + res->message, sol,
                                   {{"residual_J_inf", fmt_num(rep.residual_J_inf)}});
    return sol;
}

} // namespace capwhitham
