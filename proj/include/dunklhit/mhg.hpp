#pragma once

#include <span>
#include <vector>

#include "dunklhit/jack.hpp"

namespace dunklhit {

struct SeriesSpec {
    std::vector<double> upper;
    std::vector<double> lower;
    double jack_alpha = 1.0;
    int max_weight = 30;
    // Stop once two consecutive weight-level sums fall below tolerance·|partial sum|.
    double tolerance = 1e-17;
    int divergence_start = 8;
};

struct HyperResult {
    double value = 0.0;
    double tail_estimate = 0.0;
    long terms_used = 0;
    int weight_reached = 0;
    bool converged = false;
};

// Σ_κ Π(a)_κ/Π(b)_κ · C_κ(x)/|κ|!
HyperResult hyper(const SeriesSpec& spec, std::span<const double> x, const JackContext& ctx);
HyperResult hyper(const SeriesSpec& spec, std::span<const double> x);

// Two-argument form Σ_κ Π(a)_κ/Π(b)_κ · C_κ(x) C_κ(y) / (|κ|! C_κ(1)).
HyperResult hyper2(const SeriesSpec& spec, std::span<const double> x, std::span<const double> y, const JackContext& ctx);

// |e^{−Σx} 1F1(a;b;x) − 1F1(b−a;b;−x)| / max(|lhs|,|rhs|), both truncated at weight p_max.
double kummer_residual(double a, double b, std::span<const double> x, const JackContext& ctx, int p_max);

}  // namespace dunklhit
