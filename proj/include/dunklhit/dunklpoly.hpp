#pragma once

#include <cstdint>

#include "dunklhit/multipoly.hpp"
#include "dunklhit/partition.hpp"
#include "dunklhit/rootsys.hpp"

namespace dunklhit {

using ExactMultiplicity = BasicMultiplicity<mpq_class>;

MultiPoly dunkl_derivative(const MultiPoly& p, int i, const RootSystem& rs, const ExactMultiplicity& k);
MultiPoly dunkl_laplacian(const MultiPoly& p, const RootSystem& rs, const ExactMultiplicity& k);
// e^{−Δ_k/2} p for homogeneous p.
MultiPoly hermitize(const MultiPoly& p, const RootSystem& rs, const ExactMultiplicity& k);
// Σ_{w∈W} p∘w
MultiPoly w_symmetrize(const MultiPoly& p, const RootSystem& rs);

// p(y)·e^{−|y|²/2}, stored by its polynomial part.
struct GaussianPoly {
    MultiPoly poly;
};

GaussianPoly dunkl_derivative(const GaussianPoly& f, int i, const RootSystem& rs, const ExactMultiplicity& k);

// Polynomial (−1)^{deg} e^{|y|²/2} φ(T_1,…,T_m)(e^{−|y|²/2}).
MultiPoly rodriguez_eval(const MultiPoly& phi, const RootSystem& rs, const ExactMultiplicity& k);

// C_τ^{(α)} as an exact polynomial in m variables.
MultiPoly jack_C_polynomial(const Partition& tau, const mpq_class& alpha, int m);

struct IntegratorConfig {
    enum class Kind { MonteCarlo, PolarQuadrature };
    Kind kind = Kind::MonteCarlo;
    long samples = 1L << 20;
    std::uint64_t seed = 1;
    // When positive, the sample count doubles until the standard error meets it.
    double target_std_error = 0.0;
    long max_samples = 1L << 26;
};

struct IntegralEstimate {
    double value = 0.0;
    double std_error = 0.0;
    long samples = 0;
};

// ∫_C e^{−|y|²/2} q(y) Π_{α∈R₊}⟨α,y⟩ dy
IntegralEstimate chamber_integral(const MultiPoly& q, const RootSystem& rs, const IntegratorConfig& cfg);

// (−1)^{|τ|} ∫_C φ^W(T)(e^{−|y|²/2}) Π⟨α,y⟩ dy with φ^W = |W|^{-1} Σ_w φ∘w.
IntegralEstimate ctau_W(const MultiPoly& phi, const RootSystem& rs, const ExactMultiplicity& k, const IntegratorConfig& cfg);

}  // namespace dunklhit
