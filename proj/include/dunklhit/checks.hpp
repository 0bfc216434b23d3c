#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "dunklhit/dunklpoly.hpp"

namespace dunklhit {

struct CheckItem {
    std::string name;
    double residual = 0.0;
    double threshold = 0.0;
    bool passed = false;
};

struct CheckReport {
    std::string suite;
    std::vector<CheckItem> items;
    bool passed() const;
    // First failing item, or nullptr.
    const CheckItem* first_failure() const;
};

// Truncated W-invariant Hermite data for B-type: terms |κ| ≤ weight of
// D^W(x,y) = Σ_κ A_κ(x) B_κ(y), A_κ = |W| C_κ(x²/2), B_κ = C_κ(y²/2)/((c)_κ |κ|! C_κ(1)).
struct HermiteTerms {
    std::vector<MultiPoly> a, b, ha, hb;  // ha, hb: e^{−Δ_k/2} applied
    std::vector<int> degree;
};

HermiteTerms b_hermite_terms(int m, const ExactMultiplicity& k, int weight);

// |e^{−|y|²/2}D^W(x,y) − Σ H^W_κ(x)B_κ(y)| / |e^{−|y|²/2}D^W(x,y)|
double generating_series_residual(int m, const ExactMultiplicity& k, std::span<const double> x, std::span<const double> y, int weight);
// Relative truncation residual of the Mehler-type bilinear identity.
double mehler_residual(int m, const ExactMultiplicity& k, std::span<const double> x, std::span<const double> y, double r, int weight);

std::vector<std::string_view> suite_names();
// Throws ConfigError for unknown suite names.
CheckReport run_suite(std::string_view suite, std::uint64_t seed);

}  // namespace dunklhit
