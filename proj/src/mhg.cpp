#include "dunklhit/mhg.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "dunklhit/errors.hpp"

namespace dunklhit {

namespace {

void check_spec(const SeriesSpec& spec, const JackContext& ctx)
{
    if (spec.max_weight < 1) throw ValidationError("series truncation P_max must be >= 1");
    if (spec.upper.size() > 2 || spec.lower.size() > 2) throw ValidationError("series orders p, q must be at most 2");
    if (spec.jack_alpha != ctx.jack_alpha()) throw ValidationError("series jack_alpha differs from JackContext");
    const double alpha = spec.jack_alpha;
    for (double b : spec.lower)
        for (int i = 0; i < ctx.nvars(); ++i)
            for (int j = 0; (i + 1) * (j + 1) <= spec.max_weight; ++j) {
                const double v = b - i / alpha + j;
                if (std::abs(v) <= 1e-12 * std::max(1.0, std::abs(b))) {
                    std::ostringstream os;
                    os << "lower parameter " << b << " has a vanishing generalized Pochhammer symbol (pole)";
                    throw PoleError(os.str());
                }
            }
}

bool needs_divergence_guard(const SeriesSpec& spec, double max_abs)
{
    const auto p = spec.upper.size();
    const auto q = spec.lower.size();
    if (max_abs == 0.0) return false;
    return p > q + 1 || (p == q + 1 && max_abs >= 1.0);
}

// log|Π_cells α/(α(a+1)+l) · Π(a_u − i/α + j)/Π(b_l − i/α + j)| and its sign.
std::pair<double, int> log_cell_product(const Partition& kappa, const SeriesSpec& spec)
{
    const double alpha = spec.jack_alpha;
    const Partition conj = kappa.conjugate();
    double s = 0.0;
    int sign = 1;
    for (int i = 0; i < kappa.length(); ++i)
        for (int j = 0; j < kappa[i]; ++j) {
            const int arm = kappa[i] - j - 1;
            const int leg = conj[j] - i - 1;
            s += std::log(alpha) - std::log(alpha * (arm + 1) + leg);
            const double shift = -i / alpha + j;
            for (double a : spec.upper) {
                const double v = a + shift;
                if (v == 0.0) return {-INFINITY, 0};
                if (v < 0) sign = -sign;
                s += std::log(std::abs(v));
            }
            for (double b : spec.lower) {
                const double v = b + shift;
                if (v < 0) sign = -sign;
                s -= std::log(std::abs(v));
            }
        }
    return {s, sign};
}

double max_abs(std::span<const double> x)
{
    double s = 0.0;
    for (double v : x) s = std::max(s, std::abs(v));
    return s;
}

template <class LevelTerm>
HyperResult run_series(const SeriesSpec& spec, int m, bool guard, LevelTerm&& term)
{
    HyperResult r;
    double partial = 0.0;
    double prev_level = 0.0;
    int small_streak = 0;
    int growth_streak = 0;
    for (int n = 0; n <= spec.max_weight; ++n) {
        double level = 0.0;
        for (const auto& kappa : partitions_of(n, m)) {
            level += term(kappa);
            ++r.terms_used;
        }
        partial += level;
        r.weight_reached = n;
        r.tail_estimate = std::abs(level);
        if (!std::isfinite(partial)) throw DivergenceError("hypergeometric partial sum is not finite");
        if (guard && n > spec.divergence_start && std::abs(level) > std::abs(prev_level) && prev_level != 0.0) {
            if (++growth_streak >= 3) throw DivergenceError("weight-level sums grow for 3 consecutive levels (series diverges)");
        } else {
            growth_streak = 0;
        }
        prev_level = level;
        if (n >= 1 && std::abs(level) <= spec.tolerance * std::abs(partial)) {
            if (++small_streak >= 2) {
                r.converged = true;
                break;
            }
        } else {
            small_streak = 0;
        }
    }
    r.value = partial;
    return r;
}

}  // namespace

HyperResult hyper(const SeriesSpec& spec, std::span<const double> x, const JackContext& ctx)
{
    check_spec(spec, ctx);
    const int m = ctx.nvars();
    if (static_cast<int>(x.size()) != m) throw ValidationError("hyper: argument length must equal variable count");
    const double scale = max_abs(x);
    if (spec.upper.size() == 2 && spec.lower.size() == 1 && scale >= 1.0)
        throw ValidationError("2F1 requires max|x_i| < 1");
    if (scale == 0.0) return HyperResult{1.0, 0.0, 1, 0, true};

    std::vector<double> xs(x.begin(), x.end());
    for (double& v : xs) v /= scale;
    MonomialCache mono(xs);
    const double log_scale = std::log(scale);
    return run_series(spec, m, needs_divergence_guard(spec, scale), [&](const Partition& kappa) {
        const auto [lc, sign] = log_cell_product(kappa, spec);
        if (sign == 0) return 0.0;
        return sign * std::exp(lc + kappa.weight() * log_scale) * ctx.p_value(kappa, mono);
    });
}

HyperResult hyper(const SeriesSpec& spec, std::span<const double> x)
{
    const JackContext ctx(spec.jack_alpha, static_cast<int>(x.size()));
    return hyper(spec, x, ctx);
}

HyperResult hyper2(const SeriesSpec& spec, std::span<const double> x, std::span<const double> y, const JackContext& ctx)
{
    check_spec(spec, ctx);
    const int m = ctx.nvars();
    if (static_cast<int>(x.size()) != m || static_cast<int>(y.size()) != m)
        throw ValidationError("hyper2: argument lengths must equal variable count");
    const double sx = max_abs(x);
    const double sy = max_abs(y);
    if (sx == 0.0 || sy == 0.0) return HyperResult{1.0, 0.0, 1, 0, true};

    std::vector<double> xs(x.begin(), x.end()), ys(y.begin(), y.end());
    for (double& v : xs) v /= sx;
    for (double& v : ys) v /= sy;
    MonomialCache mx(xs), my(ys);
    const double log_scale = std::log(sx) + std::log(sy);
    return run_series(spec, m, needs_divergence_guard(spec, sx * sy), [&](const Partition& kappa) {
        const auto [lc, sign] = log_cell_product(kappa, spec);
        if (sign == 0) return 0.0;
        const double lp1 = log_jack_p_at_one(kappa, spec.jack_alpha, m);
        return sign * std::exp(lc + kappa.weight() * log_scale - lp1) * ctx.p_value(kappa, mx) * ctx.p_value(kappa, my);
    });
}

double kummer_residual(double a, double b, std::span<const double> x, const JackContext& ctx, int p_max)
{
    SeriesSpec lhs_spec{{a}, {b}, ctx.jack_alpha(), p_max, 0.0};
    SeriesSpec rhs_spec{{b - a}, {b}, ctx.jack_alpha(), p_max, 0.0};
    std::vector<double> neg(x.begin(), x.end());
    double sum = 0.0;
    for (double& v : neg) {
        sum += v;
        v = -v;
    }
    const double lhs = std::exp(-sum) * hyper(lhs_spec, x, ctx).value;
    const double rhs = hyper(rhs_spec, neg, ctx).value;
    const double scale = std::max(std::abs(lhs), std::abs(rhs));
    return scale == 0.0 ? 0.0 : std::abs(lhs - rhs) / scale;
}

}  // namespace dunklhit
