#include "dunklhit/dunklpoly.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/special_functions/gamma.hpp>
#include <cmath>
#include <numbers>
#include <random>
#include <functional>
#include <algorithm>

#include "dunklhit/errors.hpp"
#include "dunklhit/jack.hpp"
#include "dunklhit/parallel.hpp"

namespace dunklhit {

MultiPoly dunkl_derivative(const MultiPoly& p, int i, const RootSystem& rs, const ExactMultiplicity& k)
{
    MultiPoly r = p.derivative(i);
    if (p.is_zero()) return r;
    for (const auto& a : rs.positive_roots()) {
        if (a.v[i] == 0) continue;
        const mpq_class& ka = k[a.orbit];
        if (ka == 0) continue;
        const MultiPoly diff = p - p.compose(RootSystem::reflection(a));
        if (diff.is_zero()) continue;
        r += diff.divide_linear(a.v) * (ka * a.v[i]);
    }
    return r;
}

MultiPoly dunkl_laplacian(const MultiPoly& p, const RootSystem& rs, const ExactMultiplicity& k)
{
    MultiPoly r(p.nvars());
    for (int i = 0; i < rs.rank(); ++i) r += dunkl_derivative(dunkl_derivative(p, i, rs, k), i, rs, k);
    return r;
}

MultiPoly hermitize(const MultiPoly& p, const RootSystem& rs, const ExactMultiplicity& k)
{
    if (!p.is_homogeneous()) throw NonHomogeneousError("hermitize requires a homogeneous polynomial");
    MultiPoly result = p;
    MultiPoly power = p;
    mpq_class coef = 1;
    for (int j = 1; 2 * j <= std::max(p.degree(), 0); ++j) {
        power = dunkl_laplacian(power, rs, k);
        coef /= -2 * j;
        result += power * coef;
    }
    return result;
}

MultiPoly w_symmetrize(const MultiPoly& p, const RootSystem& rs)
{
    MultiPoly r(p.nvars());
    for (const auto& w : rs.weyl_group()) r += p.compose(w);
    return r;
}

GaussianPoly dunkl_derivative(const GaussianPoly& f, int i, const RootSystem& rs, const ExactMultiplicity& k)
{
    // T_i(pG) = G·(T_i p − y_i p) since G is W-invariant and ∂_i G = −y_i G.
    return {dunkl_derivative(f.poly, i, rs, k) - MultiPoly::variable(f.poly.nvars(), i) * f.poly};
}

MultiPoly rodriguez_eval(const MultiPoly& phi, const RootSystem& rs, const ExactMultiplicity& k)
{
    if (!phi.is_homogeneous()) throw NonHomogeneousError("rodriguez_eval requires a homogeneous polynomial");
    const int m = rs.rank();
    std::map<MultiPoly::Exponent, MultiPoly> applied;
    applied.emplace(MultiPoly::Exponent(m, 0), MultiPoly::constant(m, 1));
    std::function<const MultiPoly&(const MultiPoly::Exponent&)> apply = [&](const MultiPoly::Exponent& e) -> const MultiPoly& {
        if (const auto it = applied.find(e); it != applied.end()) return it->second;
        int i = 0;
        while (e[i] == 0) ++i;
        auto prev = e;
        --prev[i];
        GaussianPoly g{apply(prev)};
        return applied.emplace(e, dunkl_derivative(g, i, rs, k).poly).first->second;
    };
    MultiPoly r(m);
    for (const auto& [e, c] : phi.terms()) r += apply(e) * c;
    if (phi.degree() % 2 != 0) r *= -1;
    return r;
}

MultiPoly jack_C_polynomial(const Partition& tau, const mpq_class& alpha, int m)
{
    MultiPoly r(m);
    if (tau.length() > m) return r;
    const auto e = jack_p_expansion(tau, alpha, m);
    const mpq_class factor = jack_c_factor(tau, alpha);
    for (std::size_t t = 0; t < e.monomials.size(); ++t) {
        const Partition mu = unpack(e.monomials[t]);
        std::vector<int> ex(m, 0);
        for (int i = 0; i < mu.length(); ++i) ex[i] = mu[i];
        std::ranges::sort(ex);
        do {
            r.add_term(ex, factor * e.coeffs[t]);
        } while (std::ranges::next_permutation(ex).found);
    }
    return r;
}

namespace {

// Angular sector of the chamber for m = 2.
std::pair<double, double> sector(const RootSystem& rs)
{
    constexpr double pi = std::numbers::pi;
    switch (rs.family()) {
    case Family::A: return {-3 * pi / 4, pi / 4};
    case Family::B: return {0.0, pi / 4};
    case Family::D: return {-pi / 4, pi / 4};
    }
    return {0, 0};
}

IntegralEstimate polar_quadrature(const MultiPoly& q, const RootSystem& rs)
{
    if (rs.rank() != 2) throw ValidationError("polar quadrature integrator requires m = 2");
    MultiPoly w = MultiPoly::constant(2, 1);
    for (const auto& a : rs.positive_roots()) w = w * MultiPoly::linear(a.v);
    const MultiPoly f = q * w;
    const auto [lo, hi] = sector(rs);
    IntegralEstimate est;
    for (const auto& [e, c] : f.terms()) {
        const int n = e[0] + e[1] + 1;
        // ∫_0^∞ r^n e^{−r²/2} dr
        const double radial = std::pow(2.0, (n - 1) / 2.0) * boost::math::tgamma((n + 1) / 2.0);
        double err = 0.0;
        const double angular = boost::math::quadrature::gauss_kronrod<double, 61>::integrate(
            [&](double th) { return std::pow(std::cos(th), e[0]) * std::pow(std::sin(th), e[1]); }, lo, hi, 10, 1e-15, &err);
        est.value += c.get_d() * radial * angular;
        est.std_error += std::abs(c.get_d() * radial) * err;
    }
    return est;
}

IntegralEstimate monte_carlo(const MultiPoly& q, const RootSystem& rs, const IntegratorConfig& cfg)
{
    const int m = rs.rank();
    const CompiledPoly f(q);
    const double norm = std::pow(2 * std::numbers::pi, m / 2.0) / static_cast<double>(rs.weyl_order());
    constexpr long chunk = 1L << 14;

    long samples = cfg.samples;
    for (;;) {
        const long chunks = (samples + chunk - 1) / chunk;
        std::vector<double> sum(chunks), sum2(chunks);
        parallel_for(static_cast<std::size_t>(chunks), [&](std::size_t c) {
            auto gen = stream_engine(cfg.seed, c);
            std::normal_distribution<double> normal;
            std::vector<double> y(m);
            double s = 0, s2 = 0;
            for (long i = 0; i < chunk; ++i) {
                for (double& v : y) v = normal(gen);
                const auto z = rs.fold(y);
                double w = 1.0;
                for (const auto& a : rs.positive_roots()) w *= a.dot(z);
                const double v = f(z) * w;
                s += v;
                s2 += v * v;
            }
            sum[c] = s;
            sum2[c] = s2;
        });
        double s = 0, s2 = 0;
        for (long c = 0; c < chunks; ++c) {
            s += sum[c];
            s2 += sum2[c];
        }
        const double n = static_cast<double>(chunks * chunk);
        const double mean = s / n;
        const double var = std::max(0.0, s2 / n - mean * mean);
        IntegralEstimate est{norm * mean, norm * std::sqrt(var / n), chunks * chunk};
        if (cfg.target_std_error <= 0.0 || est.std_error <= cfg.target_std_error) return est;
        if (2 * samples > cfg.max_samples)
            throw IntegrationBudgetExceeded("chamber integral: target standard error not reached within max_samples");
        samples *= 2;
    }
}

}  // namespace

IntegralEstimate chamber_integral(const MultiPoly& q, const RootSystem& rs, const IntegratorConfig& cfg)
{
    if (rs.rank() > 4) throw ValidationError("chamber integration requires m <= 4");
    if (q.is_zero()) return {};
    if (cfg.kind == IntegratorConfig::Kind::PolarQuadrature) return polar_quadrature(q, rs);
    if (cfg.samples < 1) throw ConfigError("integrator sample count must be >= 1");
    return monte_carlo(q, rs, cfg);
}

IntegralEstimate ctau_W(const MultiPoly& phi, const RootSystem& rs, const ExactMultiplicity& k, const IntegratorConfig& cfg)
{
    if (rs.rank() > 3) throw ValidationError("ctau_W requires m <= 3");
    MultiPoly sym = w_symmetrize(phi, rs);
    sym *= mpq_class(1, static_cast<unsigned long>(rs.weyl_order()));
    if (sym.is_zero()) return {0.0, 0.0, 0};
    return chamber_integral(rodriguez_eval(sym, rs, k), rs, cfg);
}

}  // namespace dunklhit
