#pragma once

#include <array>
#include <cmath>
#include <numeric>
#include <string>

#include "capwhitham/errors.hpp"
#include "capwhitham/format.hpp"
#include "capwhitham/roots.hpp"

namespace capwhitham {

inline constexpr double one_third = 1.0 / 3.0;

class SurfaceTension {
public:
    explicit SurfaceTension(double value) : value_(value) {
        if (!(std::isfinite(value) && value > 0.0))
            throw DomainError("surface tension must be positive and finite", {{"T", fmt_num(value)}});
    }
    double value() const noexcept { return value_; }
    bool weak() const noexcept { return value_ < one_third; }

    /// Same as the constructor but additionally requires 0 < T < 1/3.
    static SurfaceTension weak_regime(double value) {
        SurfaceTension t(value);
        if (!t.weak())
            throw DomainError("surface tension outside the weak regime (0,1/3)", {{"T", fmt_num(value)}});
        return t;
    }

private:
    double value_;
};

class WaveNumberPair {
public:
    WaveNumberPair(int k1, int k2) : k1_(k1), k2_(k2) {
        if (k1 < 1 || k2 <= k1)
            throw DomainError("wave numbers must satisfy 1 <= k1 < k2",
                              {{"k1", std::to_string(k1)}, {"k2", std::to_string(k2)}});
        if (std::gcd(k1, k2) != 1)
            throw DomainError("wave numbers must be coprime",
                              {{"k1", std::to_string(k1)}, {"k2", std::to_string(k2)}});
    }
    int k1() const noexcept { return k1_; }
    int k2() const noexcept { return k2_; }
    bool is_kernel(int k) const noexcept {
        const int a = k < 0 ? -k : k;
        return a == k1_ || a == k2_;
    }
    friend bool operator==(const WaveNumberPair&, const WaveNumberPair&) = default;

private:
    int k1_, k2_;
};

struct PairReduction {
    WaveNumberPair pair;
    int divisor;  // gcd removed from the input
};

/// Divides out gcd(k1,k2); validation errors keep the original inputs in context.
inline PairReduction reduce_pair(int k1, int k2) {
    if (k1 < 1 || k2 <= k1)
        throw DomainError("wave numbers must satisfy 1 <= k1 < k2",
                          {{"k1", std::to_string(k1)}, {"k2", std::to_string(k2)}});
    const int g = std::gcd(k1, k2);
    return {WaveNumberPair(k1 / g, k2 / g), g};
}

namespace detail {

// Maclaurin coefficients of tanh(x)/x in powers of x^2, from the x^4 term on.
inline constexpr std::array<double, 14> tanhc_tail = {
    0.1333333333333333333333,   -0.05396825396825396825397,  0.02186948853615520282187,
    -0.008863235529902196568863, 0.003592128036572481016925, -0.001455834387051318268249,
    0.0005900274409455859813781, -0.0002391291142435524814857, 0.00009691537956929450325596,
    -0.00003927832388331683405337, 0.00001591890506932896474074, -0.000006451689215655430763191,
    0.000002614771151290754554264, -0.000001059726832010465435091};

inline constexpr double series_limit = 0.25;

// R(y) and R'(y) where tanh(x)/x = 1 - y/3 + y^2 R(y), y = x^2.
inline void tanhc_tail_eval(double y, double& r, double& dr) {
    r = 0.0;
    dr = 0.0;
    for (std::size_t j = tanhc_tail.size(); j-- > 0;) {
        dr = dr * y + r;
        r = r * y + tanhc_tail[j];
    }
}

inline void check_xi(double xi) {
    if (!std::isfinite(xi)) throw DomainError("xi must be finite", {{"xi", fmt_num(xi)}});
}

inline void check_tension(double T) {
    if (!(std::isfinite(T) && T >= 0.0))
        throw DomainError("surface tension must be nonnegative and finite", {{"T", fmt_num(T)}});
}

} // namespace detail

/// tanh(x)/x with the removable singularity handled by series.
inline double tanhc(double x) {
    const double a = std::abs(x);
    if (a < 1e-2) {
        const double y = a * a;
        return 1.0 + y * (-1.0 / 3.0 + y * (2.0 / 15.0 - y * 17.0 / 315.0));
    }
    return std::tanh(a) / a;
}

/// m_T(xi) = sqrt((1 + T xi^2) tanh(xi)/xi).
inline double eval_symbol(double T, double xi) {
    detail::check_tension(T);
    detail::check_xi(xi);
    const double a = std::abs(xi);
    return std::hypot(1.0, std::sqrt(T) * a) * std::sqrt(tanhc(a));
}

inline double eval_symbol(SurfaceTension T, double xi) { return eval_symbol(T.value(), xi); }

/// m_T(xi) - 1 without cancellation for small |xi|.
inline double symbol_excess(double T, double xi) {
    detail::check_tension(T);
    detail::check_xi(xi);
    const double a = std::abs(xi);
    if (a > detail::series_limit) return eval_symbol(T, a) - 1.0;
    const double y = a * a;
    double r, dr;
    detail::tanhc_tail_eval(y, r, dr);
    const double q = y * (T - one_third) + y * y * (r - T / 3.0) + T * y * y * y * r;
    return q / (1.0 + std::sqrt(1.0 + q));
}

/// Closed-form derivative d/dxi m_T(xi), xi > 0.
inline double eval_symbol_deriv(double T, double xi) {
    detail::check_tension(T);
    detail::check_xi(xi);
    if (!(xi > 0.0)) throw DomainError("symbol derivative requires xi > 0", {{"xi", fmt_num(xi)}});
    const double m = eval_symbol(T, xi);
    double fprime;
    if (xi <= detail::series_limit) {
        const double y = xi * xi;
        double r, dr;
        detail::tanhc_tail_eval(y, r, dr);
        const double dq = (T - one_third) + 2.0 * y * (r - T / 3.0) + y * y * dr + 3.0 * T * y * y * r +
                          T * y * y * y * dr;
        fprime = 2.0 * xi * dq;
    } else {
        const double g = std::tanh(xi) / xi;
        const double ch = std::cosh(xi);
        const double sech2 = std::isfinite(ch) ? 1.0 / (ch * ch) : 0.0;
        const double gp = (sech2 - g) / xi;
        fprime = 2.0 * T * xi * g + (1.0 + T * xi * xi) * gp;
    }
    return fprime / (2.0 * m);
}

inline double eval_symbol_deriv(SurfaceTension T, double xi) { return eval_symbol_deriv(T.value(), xi); }

/// The unique minimiser xi_T of m_T for 0 < T < 1/3.
inline double turning_point(SurfaceTension T) {
    if (!T.weak())
        throw DomainError("turning point exists only for 0 < T < 1/3", {{"T", fmt_num(T.value())}});
    const double t = T.value();
    auto d = [t](double xi) { return eval_symbol_deriv(t, xi); };
    double prev = std::ldexp(1.0, -20);
    double dprev = d(prev);
    for (int j = -19; j <= 40; ++j) {
        const double cur = std::ldexp(1.0, j);
        const double dcur = d(cur);
        if (dprev < 0.0 && dcur >= 0.0) {
            if (dcur == 0.0) return cur;
            return bracket_root(d, prev, cur, 1e-14, 200, "turning point").x;
        }
        prev = cur;
        dprev = dcur;
    }
    throw ConvergenceError("no sign change of the symbol derivative on the scan 2^-20..2^40",
                           {{"T", fmt_num(t)}});
}

struct BifurcationPoint {
    double T;
    double c0;
    double kappa0;
    double speed_deficit;  // 1 - c0, computed without cancellation
    double residual;       // |m_T(k1 kappa0) - m_T(k2 kappa0)|
};

inline constexpr double bifurcation_residual_tol = 1e-13;

/// Solves m_T(k1 kappa) = m_T(k2 kappa) = c0 on (xi_T/k2, xi_T/k1).
inline BifurcationPoint double_bifurcation(const WaveNumberPair& pair, SurfaceTension T) {
    const double xi_t = turning_point(T);
    const double t = T.value();
    const int k1 = pair.k1();
    const int k2 = pair.k2();
    auto f = [&](double kappa) { return symbol_excess(t, k1 * kappa) - symbol_excess(t, k2 * kappa); };
    const double lo = xi_t / k2;
    const double hi = xi_t / k1;
    RootResult root;
    try {
        root = bracket_root(f, lo, hi, 1e-14 * std::max(1.0, hi), 300, "double bifurcation");
    } catch (const ConvergenceError& e) {
        ErrorContext ctx = e.context();
        ctx.emplace_back("T", fmt_num(t));
        ctx.emplace_back("k1", std::to_string(k1));
        ctx.emplace_back("k2", std::to_string(k2));
        throw ConvergenceError(e.what(), ctx);
    }
    const double kappa = root.x;
    const double e1 = symbol_excess(t, k1 * kappa);
    BifurcationPoint bp{t, 1.0 + e1, kappa, -e1, std::abs(f(kappa))};
    const ErrorContext diag{{"T", fmt_num(t)},
                            {"k1", std::to_string(k1)},
                            {"k2", std::to_string(k2)},
                            {"kappa0", fmt_num(kappa)},
                            {"bracket_lo", fmt_num(lo)},
                            {"bracket_hi", fmt_num(hi)},
                            {"residual", fmt_num(bp.residual)}};
    if (bp.residual > bifurcation_residual_tol)
        throw ConvergenceError("double bifurcation residual above tolerance", diag);
    if (!(eval_symbol_deriv(t, k1 * kappa) < 0.0 && eval_symbol_deriv(t, k2 * kappa) > 0.0))
        throw ConvergenceError("double bifurcation derivative sign check failed", diag);
    if (!(bp.c0 > 0.0 && bp.c0 < 1.0 && bp.speed_deficit > 0.0))
        throw ConvergenceError("double bifurcation speed outside (0,1)", diag);
    return bp;
}

} // namespace capwhitham
