#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "dunklhit/jack.hpp"
#include "dunklhit/mhg.hpp"
#include "dunklhit/rootsys.hpp"

namespace dunklhit {

// k are the multiplicities of the reference process (l = k − 1/2 >= 0); the process
// whose tail is returned has multiplicities k' = 1 − k.
struct SurvivalQuery {
    RootSystem rs;
    Multiplicity k;
    std::vector<double> x;
    double t = 1.0;
};

struct Estimate {
    double value = 0.0;
    double error = 0.0;
};

struct NormalizationConstants {
    Estimate c_k;
    Estimate g0;
    Estimate C_k;
};

struct NormalizationBudget {
    enum class Method { ClosedForm, MonteCarlo };
    Method method = Method::ClosedForm;
    long samples = 1L << 22;
    std::uint64_t seed = 1;
};

// ∫_{R^m} e^{−|y|²/2} ω_k(y)² dy by the Selberg / Macdonald–Mehta products.
double macdonald_mehta(const RootSystem& rs, const Multiplicity& k);
NormalizationConstants normalization_constants(const RootSystem& rs, const Multiplicity& k, const NormalizationBudget& budget = {});

struct SeriesPolicy {
    double cap = 40.0;       // largest admissible series argument component
    int max_weight = 0;      // 0 selects a weight from the argument size
    double tolerance = 1e-16;
};

struct SurvivalResult {
    double value = 0.0;
    double raw = 0.0;
    bool clamped = false;
    HyperResult series;
};

SurvivalResult survival_B(const SurvivalQuery& q, const SeriesPolicy& policy = {});
SurvivalResult survival_D(const SurvivalQuery& q, const SeriesPolicy& policy = {});

struct ExtrapolatedSurvival {
    double value = 0.0;
    double extrapolation_error = 0.0;
    std::vector<double> b_schedule;
    std::vector<double> ratios;  // ₂F₁(z(x))/₂F₁(1/2) per schedule point
};

ExtrapolatedSurvival survival_A(const SurvivalQuery& q, std::vector<double> b_schedule = {64, 128, 256, 512});

// Shared per-(α, m) Jack contexts.
const JackContext& shared_jack_context(double alpha, int m);

// m + |R₊| + 2 Σ_{α∈R₊, l(α)>=0} l(α) with per-orbit indices (l.k0 short, l.k1 long).
double mixed_eigenvalue(const RootSystem& rs, const Multiplicity& l);

struct MixedSum {
    double value = 0.0;
    double scale = 0.0;  // Σ |summand|
};

MixedSum mixed_sum_S(std::span<const double> x);

// D^W(x,y) for B (|W|·₀F₁(k0+(m−1)k1+1/2; x²/2, y²/2)) and A (|W|·₀F₀(x, y)).
double bessel_DW(const RootSystem& rs, const Multiplicity& k, std::span<const double> x, std::span<const double> y, int max_weight = 60);

// Relative difference of both sides of 𝒥_k^x f = E_1^y f, f = e^{−|y|²/2} D^W(x,y), by central differences.
double theorem1_residual(const RootSystem& rs, const Multiplicity& k, std::span<const double> x, std::span<const double> y, double h);

}  // namespace dunklhit
