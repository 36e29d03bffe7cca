// Solves for asymmetric (2,5) waves at shrinking amplitude and prints how
// (c, kappa, T) approach the symmetry breaking point.
#include <cstdio>
#include <numbers>

#include "capwhitham/symbreak.hpp"
#include "capwhitham/wave_solver.hpp"

using namespace capwhitham;

int main() {
    const WaveNumberPair pair(2, 5);
    const double T0 = phi_root(pair).at(0).T0;
    const BifurcationPoint b0 = double_bifurcation(pair, SurfaceTension(T0));
    std::printf("T0 = %.12f  c0 = %.12f  kappa0 = %.12f\n", T0, b0.c0, b0.kappa0);
    std::printf("%10s %14s %14s %14s %10s %10s\n", "r", "c-c0", "kappa-kappa0", "T-T0", "J_inf", "lindep");
    for (double r = 2e-3; r > 2e-4; r /= 2) {
        const auto params = ModalParameters::make(pair, r, r, std::numbers::pi / 20, 0);
        const WaveSolution s = solve_wave(pair, params, T0, 64);
        std::printf("%10.3g %14.6e %14.6e %14.6e %10.2e %10.2e\n", r, s.report.c - b0.c0, s.report.kappa - b0.kappa0,
                    s.report.T - T0, s.report.residual_J_inf, s.report.residual_lindep);
    }
}
