#pragma once

#include <boost/math/tools/toms748_solve.hpp>

#include <cmath>
#include <cstdint>
#include <limits>
#include <string>

#include "capwhitham/errors.hpp"
#include "capwhitham/format.hpp"

namespace capwhitham {

struct RootResult {
    double x;
    double fx;
    double lo, hi;
    int iterations;
};

/// Stops once the bracket is narrower than abs_tol + 4 ulp(x).
struct BracketTolerance {
    double abs_tol;
    bool operator()(double a, double b) const {
        const double scale = std::max(std::abs(a), std::abs(b));
        return std::abs(b - a) <= abs_tol + 4.0 * std::numeric_limits<double>::epsilon() * scale;
    }
};

/// Bracketing root of f on [a,b]; f(a) and f(b) must differ in sign.
template <class F>
RootResult bracket_root(F&& f, double a, double b, double abs_tol = 1e-14, int max_iter = 200,
                        const std::string& what = "root") {
    double fa = f(a);
    double fb = f(b);
    if (!std::isfinite(fa) || !std::isfinite(fb) || (fa > 0) == (fb > 0)) {
        if (fa == 0.0) return {a, fa, a, a, 0};
        if (fb == 0.0) return {b, fb, b, b, 0};
        throw ConvergenceError(what + ": bracket does not straddle a sign change",
                               {{"lo", fmt_num(a)},
                                {"hi", fmt_num(b)},
                                {"f_lo", fmt_num(fa)},
                                {"f_hi", fmt_num(fb)}});
    }
    std::uintmax_t iters = static_cast<std::uintmax_t>(max_iter);
    auto bracket = boost::math::tools::toms748_solve(f, a, b, fa, fb, BracketTolerance{abs_tol}, iters);
    const double lo = bracket.first;
    const double hi = bracket.second;
    const double flo = f(lo);
    const double fhi = f(hi);
    const bool take_lo = std::abs(flo) <= std::abs(fhi);
    RootResult r{take_lo ? lo : hi, take_lo ? flo : fhi, lo, hi, static_cast<int>(iters)};
    if (static_cast<int>(iters) >= max_iter && !BracketTolerance{abs_tol}(lo, hi)) {
        throw ConvergenceError(what + ": iteration limit reached",
                               {{"lo", fmt_num(lo)}, {"hi", fmt_num(hi)}});
    }
    return r;
}

} // namespace capwhitham
