#include "dunklhit/hitting.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <numbers>
#include <random>

#include "dunklhit/errors.hpp"
#include "dunklhit/parallel.hpp"

namespace dunklhit {

namespace {

double log_mm_B(int m, double k0, double k1)
{
    double s = (m / 2.0 + m * k0 + m * (m - 1) * k1) * std::numbers::ln2;
    for (int j = 0; j < m; ++j)
        s += std::lgamma(k0 + 0.5 + j * k1) + std::lgamma(1.0 + (j + 1) * k1) - std::lgamma(1.0 + k1);
    return s;
}

double log_mm_A(int m, double k)
{
    double s = 0.5 * m * std::log(2 * std::numbers::pi);
    for (int j = 1; j <= m; ++j) s += std::lgamma(1.0 + j * k) - std::lgamma(1.0 + k);
    return s;
}

double log_mm(const RootSystem& rs, const Multiplicity& k)
{
    switch (rs.family()) {
    case Family::A: return log_mm_A(rs.rank(), k.k1);
    case Family::B: return log_mm_B(rs.rank(), k.k0, rs.rank() > 1 ? k.k1 : 0.0);
    case Family::D: return log_mm_B(rs.rank(), 0.0, k.k1);
    }
    return 0.0;
}

// log of the 2-power relating Π⟨α,x̃⟩^{2l} to the z = x̃²/2 form.
double log_two_power(const RootSystem& rs, const Multiplicity& k)
{
    const int m = rs.rank();
    const double l0 = k.k0 - 0.5, l1 = k.k1 - 0.5;
    switch (rs.family()) {
    case Family::B: return (m * l0 + (m > 1 ? m * (m - 1) * l1 : 0.0)) * std::numbers::ln2;
    case Family::D: return m * (m - 1) * l1 * std::numbers::ln2;
    case Family::A: return 0.0;
    }
    return 0.0;
}

Multiplicity half_multiplicity() { return {0.5, 0.5}; }

NormalizationConstants monte_carlo_constants(const RootSystem& rs, const Multiplicity& k, const NormalizationBudget& b)
{
    const int m = rs.rank();
    constexpr long chunk = 1L << 14;
    const long chunks = std::max(1L, (b.samples + chunk - 1) / chunk);
    std::vector<double> s1(chunks), q1(chunks), s2(chunks), q2(chunks);
    parallel_for(static_cast<std::size_t>(chunks), [&](std::size_t c) {
        auto gen = stream_engine(b.seed, c);
        std::normal_distribution<double> normal;
        std::vector<double> y(m);
        for (long i = 0; i < chunk; ++i) {
            for (double& v : y) v = normal(gen);
            const auto z = rs.fold(y);
            double w = 1.0, v = 1.0;
            for (const auto& a : rs.positive_roots()) {
                const double d = std::abs(a.dot(z));
                w *= std::pow(d, 2 * k[a.orbit]);
                v *= d;
            }
            s1[c] += w;
            q1[c] += w * w;
            s2[c] += v;
            q2[c] += v * v;
        }
    });
    double a = 0, aa = 0, g = 0, gg = 0;
    for (long c = 0; c < chunks; ++c) {
        a += s1[c];
        aa += q1[c];
        g += s2[c];
        gg += q2[c];
    }
    const double n = static_cast<double>(chunks * chunk);
    const double norm = std::pow(2 * std::numbers::pi, m / 2.0);
    auto est = [&](double s, double ss) {
        const double mean = s / n;
        return Estimate{norm * mean, norm * std::sqrt(std::max(0.0, ss / n - mean * mean) / n)};
    };
    NormalizationConstants out;
    out.c_k = est(a, aa);
    out.g0 = est(g, gg);
    return out;
}

int auto_weight(double trace, const SeriesPolicy& p)
{
    if (p.max_weight > 0) return p.max_weight;
    return std::clamp(static_cast<int>(std::ceil(trace + 12.0 * std::sqrt(trace + 1.0) + 30.0)), 30, 400);
}

// Level at which the scalar ₂F₁ terms at the largest argument have dropped 1e−18 below their peak.
int a_type_weight(double e, double b, double c, double zmax)
{
    double lt = 0.0, peak = 0.0;
    int n = 0;
    while (lt > peak - 18.0 * std::numbers::ln10 && n < 2000) {
        lt += std::log((e + n) * (b + n) / ((c + n) * (n + 1.0)) * zmax);
        peak = std::max(peak, lt);
        ++n;
    }
    return std::clamp(static_cast<int>(1.15 * n) + 20, 60, 1000);
}

void check_point(const SurvivalQuery& q)
{
    if (static_cast<int>(q.x.size()) != q.rs.rank()) throw ValidationError("x must have m coordinates");
    if (!q.rs.in_chamber(q.x)) throw BoundaryError("x must lie strictly inside the Weyl chamber");
    if (!(q.t > 0.0) || !std::isfinite(q.t)) throw ValidationError("t must be positive and finite");
}

void check_unit_interval(double k, const char* name, bool open_below)
{
    if (!(k >= 0.5 && k <= 1.0) || (open_below && k == 0.5))
        throw ValidationError(std::string(name) + (open_below ? " must lie in (1/2,1]" : " must lie in [1/2,1]"));
}

SurvivalResult finish(double log_prefactor, const HyperResult& series)
{
    SurvivalResult r;
    r.series = series;
    r.raw = std::exp(log_prefactor) * series.value;
    constexpr double tol = 1e-10;
    if (!std::isfinite(r.raw) || r.raw < -tol || r.raw > 1.0 + tol)
        throw RangeError("closed-form survival value " + std::to_string(r.raw) + " lies outside [0,1]");
    r.value = std::clamp(r.raw, 0.0, 1.0);
    r.clamped = r.value != r.raw;
    return r;
}

}  // namespace

double macdonald_mehta(const RootSystem& rs, const Multiplicity& k)
{
    return std::exp(log_mm(rs, k));
}

NormalizationConstants normalization_constants(const RootSystem& rs, const Multiplicity& k, const NormalizationBudget& budget)
{
    validate_multiplicity(k);
    if (rs.rank() > 4) throw ValidationError("normalization constants require m <= 4");
    NormalizationConstants out;
    if (budget.method == NormalizationBudget::Method::ClosedForm) {
        const double eps = 1e-14;
        out.c_k = {std::exp(log_mm(rs, k)), 0.0};
        out.g0 = {std::exp(log_mm(rs, half_multiplicity())), 0.0};
        out.c_k.error = eps * out.c_k.value;
        out.g0.error = eps * out.g0.value;
    } else {
        if (budget.samples < 1) throw ConfigError("normalization sample budget must be >= 1");
        out = monte_carlo_constants(rs, k, budget);
    }
    const double C = out.g0.value / out.c_k.value * std::exp(log_two_power(rs, k));
    const double rel = std::hypot(out.g0.error / out.g0.value, out.c_k.error / out.c_k.value);
    out.C_k = {C, C * rel};
    return out;
}

const JackContext& shared_jack_context(double alpha, int m)
{
    static std::mutex mutex;
    static std::map<std::pair<double, int>, std::unique_ptr<JackContext>> contexts;
    std::scoped_lock lock(mutex);
    auto& slot = contexts[{alpha, m}];
    if (!slot) slot = std::make_unique<JackContext>(alpha, m);
    return *slot;
}

SurvivalResult survival_B(const SurvivalQuery& q, const SeriesPolicy& policy)
{
    if (q.rs.family() != Family::B) throw ValidationError("survival_B requires a B-type root system");
    const int m = q.rs.rank();
    check_unit_interval(q.k.k0, "k0", m == 1);
    if (m > 1) {
        check_unit_interval(q.k.k1, "k1", false);
        if (q.k.k0 == 0.5 && q.k.k1 == 0.5) throw NoHittingError("(k0,k1) = (1/2,1/2): all indices vanish and T0 is infinite");
    }
    check_point(q);
    const double l0 = q.k.k0 - 0.5, l1 = q.k.k1 - 0.5;
    std::vector<double> z(m);
    double trace = 0.0;
    for (int i = 0; i < m; ++i) {
        z[i] = q.x[i] * q.x[i] / (2 * q.t);
        trace += z[i];
        if (z[i] > policy.cap) throw ConvergenceError("series argument x^2/2t exceeds the configured cap; use the simulator");
    }
    const auto consts = normalization_constants(q.rs, q.k);
    double logp = std::log(consts.C_k.value) - trace;
    for (int i = 0; i < m; ++i) logp += l0 * std::log(z[i]);
    if (m > 1) logp += 2 * l1 * std::log(vandermonde(z));

    const double alpha = m > 1 ? 1.0 / q.k.k1 : 1.0;
    const SeriesSpec spec{{(m + 1) / 2.0}, {q.k.k0 + (m - 1) * (m > 1 ? q.k.k1 : 0.0) + 0.5}, alpha, auto_weight(trace, policy), policy.tolerance};
    const auto series = hyper(spec, z, shared_jack_context(alpha, m));
    if (!series.converged) throw ConvergenceError("1F1 series did not converge within the truncation weight");
    return finish(logp, series);
}

SurvivalResult survival_D(const SurvivalQuery& q, const SeriesPolicy& policy)
{
    if (q.rs.family() != Family::D) throw ValidationError("survival_D requires a D-type root system");
    check_unit_interval(q.k.k1, "k1", true);
    check_point(q);
    const int m = q.rs.rank();
    const double l1 = q.k.k1 - 0.5;
    std::vector<double> z(m);
    double trace = 0.0;
    for (int i = 0; i < m; ++i) {
        z[i] = q.x[i] * q.x[i] / (2 * q.t);
        trace += z[i];
        if (z[i] > policy.cap) throw ConvergenceError("series argument x^2/2t exceeds the configured cap; use the simulator");
    }
    const auto consts = normalization_constants(q.rs, q.k);
    const double logp = std::log(consts.C_k.value) - trace + 2 * l1 * std::log(vandermonde(z));
    const double alpha = 1.0 / q.k.k1;
    const SeriesSpec spec{{m / 2.0}, {(m - 1) * q.k.k1 + 0.5}, alpha, auto_weight(trace, policy), policy.tolerance};
    const auto series = hyper(spec, z, shared_jack_context(alpha, m));
    if (!series.converged) throw ConvergenceError("1F1 series did not converge within the truncation weight");
    return finish(logp, series);
}

ExtrapolatedSurvival survival_A(const SurvivalQuery& q, std::vector<double> b_schedule)
{
    if (q.rs.family() != Family::A) throw ValidationError("survival_A requires an A-type root system");
    const int m = q.rs.rank();
    if (m < 2) throw NoHittingError("A-type with m = 1 has no roots; T0 is infinite");
    check_unit_interval(q.k.k1, "k1", true);
    check_point(q);
    if (b_schedule.size() < 4) throw ConfigError("b_schedule needs at least 4 points");
    for (std::size_t i = 1; i < b_schedule.size(); ++i)
        if (!(b_schedule[i] > b_schedule[i - 1])) throw ConfigError("b_schedule must be increasing");

    std::vector<double> xt(m);
    for (int i = 0; i < m; ++i) xt[i] = q.x[i] / std::sqrt(q.t);

    const double alpha = 1.0 / q.k.k1;
    const JackContext& ctx = shared_jack_context(alpha, m);
    const double e = (m + 1) / 2.0;
    ExtrapolatedSurvival out;
    out.b_schedule = b_schedule;
    for (double b : b_schedule) {
        std::vector<double> z(m), half(m, 0.5);
        for (int i = 0; i < m; ++i) {
            z[i] = 0.5 * (1.0 - xt[i] / std::sqrt(b));
            if (!(z[i] > 0.0 && z[i] < 0.95)) throw ValidationError("b_schedule too small: 2F1 argument leaves (0, 0.95)");
        }
        const double c = b / 2 + q.k.k1 * (m - 1) / 2.0 + (m + 3) / 4.0;
        const int weight = a_type_weight(e, b, c, *std::ranges::max_element(z));
        const SeriesSpec spec{{e, b}, {c}, alpha, weight, 1e-17};
        const auto num = hyper(spec, z, ctx);
        const auto den = hyper(spec, half, ctx);
        if (!num.converged || !den.converged) throw ConvergenceError("2F1 series did not converge within the truncation weight");
        out.ratios.push_back(num.value / den.value);
    }

    const auto n = static_cast<Eigen::Index>(b_schedule.size());
    auto fit = [&](Eigen::Index first, Eigen::Index count) {
        Eigen::MatrixXd X(count, 3);
        Eigen::VectorXd r(count);
        for (Eigen::Index i = 0; i < count; ++i) {
            const double s = 1.0 / std::sqrt(b_schedule[first + i]);
            X(i, 0) = 1.0;
            X(i, 1) = s;
            X(i, 2) = s * s;
            r(i) = out.ratios[first + i];
        }
        const Eigen::VectorXd c = X.colPivHouseholderQr().solve(r);
        const double ssr = (X * c - r).squaredNorm();
        const double se = count > 3 ? std::sqrt(ssr / static_cast<double>(count - 3) * (X.transpose() * X).inverse()(0, 0)) : 0.0;
        return std::pair{c(0), se};
    };
    const auto [ratio0, se] = fit(0, n);
    const double first = fit(0, 3).first;
    const double last = fit(n - 3, 3).first;
    const double floor = 1e-13 * std::abs(ratio0);
    if (std::abs(first - last) > 10.0 * std::max(se, floor) && std::abs(first - last) > 1e-8 * std::abs(ratio0))
        throw ExtrapolationUnstable("successive b-extrapolants differ by more than 10x the fit error");

    const auto consts = normalization_constants(q.rs, q.k);
    double r2 = 0.0;
    for (double v : xt) r2 += v * v;
    const double pref = consts.g0.value / consts.c_k.value * std::pow(vandermonde(xt), 2 * (q.k.k1 - 0.5)) * std::exp(-r2 / 2);
    out.value = pref * ratio0;
    out.extrapolation_error = pref * se;
    return out;
}

double mixed_eigenvalue(const RootSystem& rs, const Multiplicity& l)
{
    if (rs.orbit_count() < 2) throw ValidationError("mixed index requires two root orbits (B-type, m >= 2)");
    if (l.k0 < -0.5 || l.k1 < -0.5) throw ValidationError("index values must be >= -1/2");
    double s = rs.rank() + static_cast<double>(rs.positive_roots().size());
    for (const auto& a : rs.positive_roots())
        if (l[a.orbit] >= 0) s += 2 * l[a.orbit];
    return s;
}

MixedSum mixed_sum_S(std::span<const double> x)
{
    const auto m = x.size();
    const auto rs = RootSystem::build(Family::B, static_cast<int>(m));
    double norm = 0.0;
    for (double v : x) norm = std::max(norm, std::abs(v));
    if (!rs.in_chamber(x) || rs.distance_to_boundary(x) < 1e-6 * norm)
        throw BoundaryError("mixed_sum_S requires x strictly inside the B chamber, away from its walls");
    MixedSum s;
    auto add = [&](double v) {
        s.value += v;
        s.scale += std::abs(v);
    };
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t k = 0; k < m; ++k) {
            if (k > i) add((1.0 / (x[i] - x[k]) + 1.0 / (x[i] + x[k])) / x[i]);
            if (k < i) add((-1.0 / (x[k] - x[i]) + 1.0 / (x[k] + x[i])) / x[i]);
        }
    return s;
}

double bessel_DW(const RootSystem& rs, const Multiplicity& k, std::span<const double> x, std::span<const double> y, int max_weight)
{
    const int m = rs.rank();
    const double W = static_cast<double>(rs.weyl_order());
    const double alpha = m > 1 ? 1.0 / k.k1 : 1.0;
    const JackContext& ctx = shared_jack_context(alpha, m);
    switch (rs.family()) {
    case Family::B: {
        std::vector<double> X(m), Y(m);
        for (int i = 0; i < m; ++i) {
            X[i] = x[i] * x[i] / 2;
            Y[i] = y[i] * y[i] / 2;
        }
        const SeriesSpec spec{{}, {k.k0 + (m - 1) * (m > 1 ? k.k1 : 0.0) + 0.5}, alpha, max_weight, 0.0};
        return W * hyper2(spec, X, Y, ctx).value;
    }
    case Family::A: {
        const SeriesSpec spec{{}, {}, alpha, max_weight, 0.0};
        return W * hyper2(spec, x, y, ctx).value;
    }
    case Family::D: break;
    }
    throw ValidationError("bessel_DW is implemented for A and B types");
}

double theorem1_residual(const RootSystem& rs, const Multiplicity& k, std::span<const double> x, std::span<const double> y, double h)
{
    if (!(h >= 1e-5 && h <= 1e-3)) throw ValidationError("finite-difference step h must lie in [1e-5, 1e-3]");
    if (!rs.in_chamber(x) || !rs.in_chamber(y)) {
        bool zero_y = std::ranges::all_of(y, [](double v) { return v == 0.0; });
        if (!rs.in_chamber(x) || !zero_y) throw BoundaryError("theorem1_residual requires x, y strictly inside the chamber");
    }
    const int m = rs.rank();
    auto f = [&](std::span<const double> xx, std::span<const double> yy) {
        double r2 = 0.0;
        for (double v : yy) r2 += v * v;
        return std::exp(-r2 / 2) * bessel_DW(rs, k, xx, yy, 40);
    };
    const std::vector<double> xv(x.begin(), x.end()), yv(y.begin(), y.end());
    const double f0 = f(xv, yv);
    std::vector<double> grad_x(m), lap_x(m), grad_y(m);
    for (int i = 0; i < m; ++i) {
        auto xp = xv, xm = xv, yp = yv, ym = yv;
        xp[i] += h;
        xm[i] -= h;
        yp[i] += h;
        ym[i] -= h;
        const double fxp = f(xp, yv), fxm = f(xm, yv);
        grad_x[i] = (fxp - fxm) / (2 * h);
        lap_x[i] = (fxp - 2 * f0 + fxm) / (h * h);
        grad_y[i] = (f(xv, yp) - f(xv, ym)) / (2 * h);
    }
    // 𝒥 f = −Σ∂²f − 2Σ_α k(α)⟨α,∇f⟩/⟨α,x⟩ + ⟨x,∇f⟩
    double lhs = 0.0, rhs = 0.0;
    for (int i = 0; i < m; ++i) {
        lhs += -lap_x[i] + xv[i] * grad_x[i];
        rhs += yv[i] * grad_y[i];
    }
    for (const auto& a : rs.positive_roots()) {
        double dir = 0.0;
        for (int i = 0; i < m; ++i) dir += a.v[i] * grad_x[i];
        lhs -= 2 * k[a.orbit] * dir / a.dot(xv);
    }
    const double scale = std::max(std::abs(lhs), std::abs(rhs));
    return scale == 0.0 ? 0.0 : std::abs(lhs - rhs) / scale;
}

}  // namespace dunklhit
