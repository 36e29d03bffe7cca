#include <gtest/gtest.h>

#include <cmath>
#include <vector>

#include "capwhitham/symbreak.hpp"

using namespace capwhitham;

namespace ref {
// tests/oracles/phi25_oracle.py
constexpr double phi25_005 = -145880.08704168833812;
constexpr double phi25_01 = -46712.939669676389654;
constexpr double phi25_02 = 2460843.0758175710379;
constexpr double phi25_03 = 79010597871.405969753;
constexpr double phi25_1em4 = -92530122.681533483528;
constexpr double phi25_high = 8.1361298343658989712e+30;  // T = 1/3 - 1e-4
constexpr double T0_25 = 0.12147441822803752218;
}  // namespace ref

namespace {
int sign(double x) { return (x > 0) - (x < 0); }
}  // namespace

TEST(PhiEval, MatchesExtendedPrecisionOracle) {
    const WaveNumberPair p(2, 5);
    const std::vector<std::pair<double, double>> cases = {
        {0.05, ref::phi25_005}, {0.1, ref::phi25_01}, {0.2, ref::phi25_02}, {0.3, ref::phi25_03}, {1e-4, ref::phi25_1em4}};
    for (auto [T, want] : cases) {
        const PhiSample s = phi_eval(p, SurfaceTension(T));
        EXPECT_NEAR(s.value / want, 1.0, 1e-9) << T;
        EXPECT_EQ(s.bifurcation.T, T);
        EXPECT_FALSE(s.k1_is_one);
    }
    const PhiSample hi = phi_eval(p, SurfaceTension(1.0 / 3.0 - 1e-4));
    EXPECT_NEAR(hi.value / ref::phi25_high, 1.0, 1e-7);
}

TEST(PhiEval, SmallNearPublishedRoot) {
    const WaveNumberPair p(2, 5);
    const double at = phi_eval(p, SurfaceTension(0.1215)).value;
    const double scale = std::abs(phi_eval(p, SurfaceTension(0.2)).value);
    EXPECT_LT(std::abs(at), 1e-3 * scale);
}

TEST(PhiEval, RejectsStrongTension) {
    EXPECT_THROW(phi_eval(WaveNumberPair(2, 5), SurfaceTension(0.4)), DomainError);
}

TEST(PhiEval, UnitFirstWavenumberIsPositive) {
    for (int k2 = 2; k2 <= 9; ++k2) {
        const WaveNumberPair p(1, k2);
        for (double T : phi_grid(64)) {
            const PhiSample s = phi_eval(p, SurfaceTension(T));
            EXPECT_TRUE(s.k1_is_one);
            EXPECT_GT(s.value, 0.0) << k2 << " " << T;
        }
    }
}

TEST(PhiEval, ConsecutivePairsHaveSignOfParityOfM) {
    for (int k2 = 3; k2 <= 9; ++k2) {
        const WaveNumberPair p(k2 - 1, k2);
        const int m = 2 * k2 - 4;
        const int want = (m % 2 == 0) ? 1 : -1;
        for (double T : phi_grid(64)) EXPECT_EQ(sign(phi_eval(p, SurfaceTension(T)).value), want) << k2 << " " << T;
    }
}

TEST(PhiLimits, Pair25SignsAndFiniteTension) {
    const WaveNumberPair p(2, 5);
    const PhiLimits lim = phi_limits(p);
    EXPECT_LT(lim.low, 0.0);
    EXPECT_GT(lim.high, 0.0);
    EXPECT_NEAR(phi_normalized(p, SurfaceTension(1e-6)) / lim.low, 1.0, 0.02);
    EXPECT_NEAR(phi_normalized(p, SurfaceTension(1.0 / 3.0 - 1e-6)) / lim.high, 1.0, 0.02);
}

TEST(PhiLimits, Pair13HasSignForcedByNormaliser) {
    // phi > 0 and ell(4)^1 < 0, so both normalized limits are negative.
    const PhiLimits lim = phi_limits(WaveNumberPair(1, 3));
    EXPECT_LT(lim.low, 0.0);
    EXPECT_LT(lim.high, 0.0);
}

TEST(PhiLimits, NormalizedValuesApproachLimits) {
    for (auto [k1, k2] : std::vector<std::pair<int, int>>{{2, 5}, {3, 7}}) {
        const WaveNumberPair p(k1, k2);
        const PhiLimits lim = phi_limits(p);
        double prev_lo = INFINITY, prev_hi = INFINITY;
        for (double d : {1e-3, 1e-4, 1e-5}) {
            const double lo = std::abs(phi_normalized(p, SurfaceTension(d)) - lim.low);
            const double hi = std::abs(phi_normalized(p, SurfaceTension(1.0 / 3.0 - d)) - lim.high);
            // The T -> 0 approach is exponentially fast and reaches rounding level early.
            EXPECT_TRUE(lo < prev_lo || lo <= 1e-12 * std::abs(lim.low)) << lo;
            EXPECT_LT(hi, prev_hi);
            prev_lo = lo;
            prev_hi = hi;
        }
    }
}

TEST(PhiRoot, Pair25HasSingleRoot) {
    const auto roots = phi_root(WaveNumberPair(2, 5));
    ASSERT_EQ(roots.size(), 1u);
    EXPECT_NEAR(roots[0].T0, ref::T0_25, 1e-9);
    EXPECT_LE(std::abs(roots[0].T0 - 0.1215), 0.003);
    EXPECT_LE(roots[0].lo, roots[0].T0);
    EXPECT_GE(roots[0].hi, roots[0].T0);
    EXPECT_LE(roots[0].hi - roots[0].lo, 1e-9);
    EXPECT_GT(roots[0].slope, 0.0);
}

TEST(PhiRoot, ExcludedPairsHaveNoRoots) {
    EXPECT_TRUE(phi_root(WaveNumberPair(1, 4)).empty());
    EXPECT_TRUE(phi_root(WaveNumberPair(4, 5)).empty());
    EXPECT_THROW(phi_root(WaveNumberPair(2, 5), RootOptions{8}), DomainError);
}

TEST(PhiRoot, SignConstantBetweenRoots) {
    for (auto [k1, k2] : std::vector<std::pair<int, int>>{{2, 5}, {3, 7}, {3, 8}, {2, 7}}) {
        const WaveNumberPair p(k1, k2);
        const auto roots = phi_root(p);
        std::vector<double> cuts{1e-4};
        for (const auto& r : roots) cuts.push_back(r.T0);
        cuts.push_back(1.0 / 3.0 - 1e-4);
        for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
            const double a = cuts[i], b = cuts[i + 1];
            const int s = sign(phi_eval(p, SurfaceTension(0.5 * (a + b))).value);
            for (int j = 1; j < 8; ++j) {
                const double t = a + (b - a) * j / 8.0;
                EXPECT_EQ(sign(phi_eval(p, SurfaceTension(t)).value), s) << k1 << "," << k2 << " T=" << t;
            }
        }
    }
}

TEST(PhiGrid, ClusteredAndMonotone) {
    const auto g = phi_grid(200);
    ASSERT_EQ(g.size(), 200u);
    EXPECT_DOUBLE_EQ(g.front(), 1e-4);
    EXPECT_NEAR(g.back(), 1.0 / 3.0 - 1e-4, 1e-15);
    for (std::size_t i = 1; i < g.size(); ++i) EXPECT_GT(g[i], g[i - 1]);
    EXPECT_LT(g[1] - g[0], g[100] - g[99]);
    EXPECT_LT(g[199] - g[198], g[100] - g[99]);
}

TEST(Exclusion, Examples) {
    EXPECT_EQ(exclusion_check(3, 6), ExclusionStatus::excluded_divisor);
    EXPECT_EQ(exclusion_check(2, 3), ExclusionStatus::excluded_difference);
    EXPECT_EQ(exclusion_check(2, 5), ExclusionStatus::passes);
    EXPECT_EQ(exclusion_check(1, 7), ExclusionStatus::excluded_divisor);
    EXPECT_EQ(exclusion_check(4, 6), ExclusionStatus::excluded_difference);
    EXPECT_EQ(exclusion_check(4, 10), ExclusionStatus::passes);
}

TEST(Exclusion, NoVerifiedSignChangeOnFineGrid) {
    for (int k2 = 2; k2 <= 8; ++k2)
        for (int k1 = 1; k1 < k2; ++k1) {
            if (exclusion_check(k1, k2) == ExclusionStatus::passes) continue;
            const WaveNumberPair p = reduce_pair(k1, k2).pair;
            const auto roots = phi_root(p, RootOptions{512});
            EXPECT_TRUE(roots.empty()) << k1 << "," << k2;
        }
}

TEST(PairScan, SmallestAdmittingPair) {
    const auto v = pair_scan(5);
    EXPECT_EQ(v.size(), 10u);
    int admits = 0;
    for (const auto& x : v) {
        if (x.status == PairStatus::admits) {
            ++admits;
            EXPECT_EQ(x.k1, 2);
            EXPECT_EQ(x.k2, 5);
        }
        if (x.status == PairStatus::excluded_divisor || x.status == PairStatus::excluded_difference) {
            EXPECT_FALSE(x.limit_low.has_value());
            EXPECT_TRUE(x.roots.empty());
        }
        if (x.k1 == 1) EXPECT_NE(x.status, PairStatus::admits);
    }
    EXPECT_EQ(admits, 1);
}

TEST(PairScan, DeterministicAcrossJobCounts) {
    ScanOptions a, b;
    a.jobs = 1;
    b.jobs = 4;
    const auto x = pair_scan(9, a);
    const auto y = pair_scan(9, b);
    ASSERT_EQ(x.size(), y.size());
    for (std::size_t i = 0; i < x.size(); ++i) {
        EXPECT_EQ(x[i].k1, y[i].k1);
        EXPECT_EQ(x[i].k2, y[i].k2);
        EXPECT_EQ(x[i].status, y[i].status);
        EXPECT_EQ(x[i].limit_low, y[i].limit_low);
        EXPECT_EQ(x[i].limit_high, y[i].limit_high);
    }
}

TEST(PairScan, RootsUpgradeOnlyWithVerifiedSignChange) {
    ScanOptions opt;
    opt.run_roots = true;
    opt.jobs = 4;
    for (const auto& v : pair_scan(8, opt)) {
        if (v.status != PairStatus::admits) continue;
        const bool differ = sign(*v.limit_low) != sign(*v.limit_high);
        EXPECT_TRUE(differ || !v.roots.empty());
        for (const auto& r : v.roots) {
            const WaveNumberPair p = reduce_pair(v.k1, v.k2).pair;
            const double flo = phi_eval(p, SurfaceTension(r.lo)).value;
            const double fhi = phi_eval(p, SurfaceTension(r.hi)).value;
            EXPECT_LE(flo * fhi, 0.0);
        }
    }
}
