// Locates the sign change of phi(T;2,5) and prints the bifurcation data there.
#include <cstdio>

#include "capwhitham/symbreak.hpp"

using namespace capwhitham;

int main() {
    const WaveNumberPair pair(2, 5);
    const PhiLimits lim = phi_limits(pair);
    std::printf("normalized limits: T->0 %.6g, T->1/3 %.6g\n", lim.low, lim.high);

    for (const PhiRoot& r : phi_root(pair)) {
        const BifurcationPoint bp = double_bifurcation(pair, SurfaceTension(r.T0));
        std::printf("root T0 = %.12f  bracket [%.12f, %.12f]  slope %.6g\n", r.T0, r.lo, r.hi, r.slope);
        std::printf("  c0 = %.12f  kappa0 = %.12f  period = %.12f\n", bp.c0, bp.kappa0, 3.141592653589793 / bp.kappa0);
    }
    for (double T : {0.05, 0.1, 0.1215, 0.15, 0.2, 0.3})
        std::printf("phi(%.4f) = % .6e\n", T, phi_eval(pair, SurfaceTension(T)).value);
}
