#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "dunklhit/rootsys.hpp"

namespace dunklhit {

struct SimConfig {
    long paths = 100000;
    double dt_base = 1e-3;
    // Adaptive step min(dt_base, scale·d²) with d the distance to the boundary.
    double dt_boundary_scale = 0.01;
    double absorption_eps = 1e-4;
    std::uint64_t seed = 1;
    // Zero means the last grid time.
    double horizon = 0.0;
};

struct SurvivalEstimate {
    std::vector<double> t_grid;
    std::vector<double> probabilities;
    std::vector<double> std_errors;
    long paths = 0;
    // Steps folded back across walls the process cannot hit (k' >= 1/2).
    long reflections = 0;
};

// b(x) = Σ_{α∈R₊} k'(α) α/⟨α,x⟩
std::vector<double> drift(const RootSystem& rs, const Multiplicity& kprime, std::span<const double> x);

SurvivalEstimate simulate_survival(const RootSystem& rs, const Multiplicity& kprime, std::span<const double> x0,
                                   std::span<const double> t_grid, const SimConfig& cfg);

}  // namespace dunklhit
