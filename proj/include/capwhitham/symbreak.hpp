#pragma once

#include <algorithm>
#include <atomic>
#include <cmath>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include "capwhitham/coefficients.hpp"
#include "capwhitham/errors.hpp"
#include "capwhitham/symbol.hpp"

namespace capwhitham {

struct PhiSample {
    double T;
    double value;
    BifurcationPoint bifurcation;
    bool k1_is_one;  // computable, but outside the symmetry-breaking setting
};

/// phi(T;k1,k2) = u2_{(k2-1,0),(0,k1)} at the double bifurcation point.
inline PhiSample phi_eval(const WaveNumberPair& pair, SurfaceTension T) {
    const BifurcationPoint bp = double_bifurcation(pair, SurfaceTension::weak_regime(T.value()));
    auto engine = numeric_engine(MultiplierContext::at(pair, bp));
    const auto [alpha, beta] = phi_indices(pair);
    const double value = engine.u2(alpha, beta);
    if (!std::isfinite(value))
        throw DomainError("phi is not finite", {{"T", fmt_num(T.value())}, {"value", fmt_num(value)}});
    return {T.value(), value, bp, pair.k1() == 1};
}

/// phi(T) / ell(k2+1)^M, the quantity whose endpoint limits phi_limits returns.
inline double phi_normalized(const WaveNumberPair& pair, SurfaceTension T) {
    const PhiSample s = phi_eval(pair, T);
    const double l = multiplier(MultiplierContext::at(pair, s.bifurcation), pair.k2() + 1);
    return s.value / std::pow(l, pair.k1() + pair.k2() - 3);
}

struct PhiLimits {
    double low;   // T -> 0
    double high;  // T -> 1/3
};

inline double phi_limit(const WaveNumberPair& pair, Endpoint e) {
    auto engine = limit_engine(pair, e);
    const auto [alpha, beta] = phi_indices(pair);
    const double v = engine.u2(alpha, beta);
    if (!std::isfinite(v))
        throw DomainError("normalized phi limit overflowed", {{"endpoint", to_string(e)}});
    return v;
}

inline PhiLimits phi_limits(const WaveNumberPair& pair) {
    return {phi_limit(pair, Endpoint::low), phi_limit(pair, Endpoint::high)};
}

struct RootOptions {
    int grid_size = 200;
    double delta = 1e-4;
    double tol = 1e-10;
    double slope_step = 1e-5;
};

struct PhiRoot {
    double T0;
    double lo, hi;  // refined bracket with a verified sign change
    double slope;   // central difference of phi at T0
};

/// Grid on (delta, 1/3 - delta), quadratically clustered toward both ends.
inline std::vector<double> phi_grid(int n, double delta = 1e-4) {
    if (n < 2) throw DomainError("grid needs at least two points", {{"grid", std::to_string(n)}});
    std::vector<double> t(static_cast<std::size_t>(n));
    const double width = one_third - 2.0 * delta;
    for (int i = 0; i < n; ++i) {
        const double s = static_cast<double>(i) / (n - 1);
        const double u = s <= 0.5 ? 2.0 * s * s : 1.0 - 2.0 * (1.0 - s) * (1.0 - s);
        t[static_cast<std::size_t>(i)] = delta + width * u;
    }
    return t;
}

inline std::vector<PhiRoot> phi_root(const WaveNumberPair& pair, const RootOptions& opt = {}) {
    if (opt.grid_size < 16) throw DomainError("grid_size must be at least 16", {{"grid", std::to_string(opt.grid_size)}});
    auto phi = [&](double T) { return phi_eval(pair, SurfaceTension(T)).value; };
    const auto grid = phi_grid(opt.grid_size, opt.delta);
    std::vector<double> vals(grid.size());
    for (std::size_t i = 0; i < grid.size(); ++i) vals[i] = phi(grid[i]);

    std::vector<PhiRoot> roots;
    for (std::size_t i = 0; i + 1 < grid.size(); ++i) {
        const double a = grid[i], b = grid[i + 1];
        const double fa = vals[i], fb = vals[i + 1];
        if (!((fa < 0 && fb > 0) || (fa > 0 && fb < 0))) continue;
        const RootResult r = bracket_root(phi, a, b, opt.tol, 200, "phi root");
        const double h = opt.slope_step;
        const double slope = (phi(r.x + h) - phi(r.x - h)) / (2.0 * h);
        roots.push_back({r.x, r.lo, r.hi, slope});
    }
    return roots;
}

enum class ExclusionStatus { excluded_divisor, excluded_difference, passes };

inline ExclusionStatus exclusion_check(int k1, int k2) {
    if (k1 < 1 || k2 <= k1)
        throw DomainError("exclusion check requires 1 <= k1 < k2",
                          {{"k1", std::to_string(k1)}, {"k2", std::to_string(k2)}});
    if (k2 % k1 == 0) return ExclusionStatus::excluded_divisor;
    if (k1 % (k2 - k1) == 0) return ExclusionStatus::excluded_difference;
    return ExclusionStatus::passes;
}

enum class PairStatus { excluded_divisor, excluded_difference, admits, undecided };

inline const char* to_string(PairStatus s) {
    switch (s) {
    case PairStatus::excluded_divisor: return "excluded-divisor";
    case PairStatus::excluded_difference: return "excluded-difference";
    case PairStatus::admits: return "admits";
    case PairStatus::undecided: return "undecided";
    }
    return "?";
}

struct PairVerdict {
    int k1, k2;
    PairStatus status;
    std::optional<double> limit_low, limit_high;
    std::vector<PhiRoot> roots;
    std::optional<std::string> error;
};

struct ScanOptions {
    bool run_roots = false;
    RootOptions roots{};
    int jobs = 1;
};

inline PairVerdict classify_pair(int k1, int k2, const ScanOptions& opt = {}) {
    PairVerdict v{k1, k2, PairStatus::undecided, std::nullopt, std::nullopt, {}, std::nullopt};
    switch (exclusion_check(k1, k2)) {
    case ExclusionStatus::excluded_divisor: v.status = PairStatus::excluded_divisor; return v;
    case ExclusionStatus::excluded_difference: v.status = PairStatus::excluded_difference; return v;
    case ExclusionStatus::passes: break;
    }
    try {
        const WaveNumberPair pair = reduce_pair(k1, k2).pair;
        const PhiLimits lim = phi_limits(pair);
        v.limit_low = lim.low;
        v.limit_high = lim.high;
        const bool differ = (lim.low < 0 && lim.high > 0) || (lim.low > 0 && lim.high < 0);
        if (opt.run_roots) v.roots = phi_root(pair, opt.roots);
        v.status = (differ || !v.roots.empty()) ? PairStatus::admits : PairStatus::undecided;
    } catch (const Error& e) {
        v.status = PairStatus::undecided;
        v.error = e.code() + ": " + e.what();
    }
    return v;
}

/// All 1 <= k1 < k2 <= k_max, classified in parallel; output order is (k1,k2).
inline std::vector<PairVerdict> pair_scan(int k_max, const ScanOptions& opt = {}) {
    if (k_max < 3) throw DomainError("k_max must be at least 3", {{"kmax", std::to_string(k_max)}});
    std::vector<std::pair<int, int>> work;
    for (int k1 = 1; k1 <= k_max; ++k1)
        for (int k2 = k1 + 1; k2 <= k_max; ++k2) work.emplace_back(k1, k2);
    std::vector<std::optional<PairVerdict>> out(work.size());
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t i; (i = next.fetch_add(1)) < work.size();)
            out[i] = classify_pair(work[i].first, work[i].second, opt);
    };
    const int jobs = std::max(1, std::min<int>(opt.jobs, static_cast<int>(work.size())));
    std::vector<std::thread> threads;
    for (int j = 1; j < jobs; ++j) threads.emplace_back(worker);
    worker();
    for (auto& t : threads) t.join();
    std::vector<PairVerdict> result;
    result.reserve(out.size());
    for (auto& v : out) result.push_back(std::move(*v));
    return result;
}

} // namespace capwhitham
