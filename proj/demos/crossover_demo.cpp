// Coherent-state ensemble under increasing environment coupling: quantum orbits never cross,
// decohered ones oscillate classically and cross.

#include <cstdio>
#include <numbers>

#include "mesodyn/trajectories.hpp"

using namespace mesodyn;

int main() {
    PhysParams p;
    p.amplitude_a = 3.0;
    const auto scn = Scenario::coherent(p);

    std::printf("%8s %10s %14s %14s\n", "b", "crossings", "first at t", "lambda(t1)");
    char first_txt[32];
    for (double b : {0.0, 0.1, 1.0, 5.0}) {
        EnsembleSpec spec;
        spec.coupling = b == 0.0 ? CouplingLaw{PureQuantum{}} : CouplingLaw{ExponentialRelaxation{b}};
        spec.integrator = default_integrator(scn, 0.0, 3.0 * 2.0 * std::numbers::pi, 10);
        const auto records = run_ensemble(scn, spec);
        const auto crossings = detect_crossings(records);
        double first = -1.0;
        for (const auto& c : crossings)
            if (first < 0.0 || c.t_after < first) first = c.t_after;
        if (first < 0.0) std::snprintf(first_txt, sizeof first_txt, "none");
        else std::snprintf(first_txt, sizeof first_txt, "%.4f", first);
        std::printf("%8g %10zu %14s %14.6f\n", b, crossings.size(), first_txt, records.front().lambdas.back());
    }
}
