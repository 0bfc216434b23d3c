#include "dunklhit/checks.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <functional>
#include <random>

#include "dunklhit/brownian.hpp"
#include "dunklhit/errors.hpp"
#include "dunklhit/hitting.hpp"
#include "dunklhit/mhg.hpp"

namespace dunklhit {

bool CheckReport::passed() const
{
    return std::ranges::all_of(items, &CheckItem::passed);
}

const CheckItem* CheckReport::first_failure() const
{
    auto it = std::ranges::find_if(items, [](const CheckItem& c) { return !c.passed; });
    return it == items.end() ? nullptr : &*it;
}

HermiteTerms b_hermite_terms(int m, const ExactMultiplicity& k, int weight)
{
    const auto rs = RootSystem::build(Family::B, m);
    const mpq_class k1 = m > 1 ? k.k1 : mpq_class(1);
    const mpq_class alpha = 1 / k1;
    const mpq_class c = k.k0 + (m - 1) * (m > 1 ? k.k1 : mpq_class(0)) + mpq_class(1, 2);
    const std::vector<mpq_class> ones(m, mpq_class(1));
    HermiteTerms out;
    mpq_class fact = 1;
    for (int n = 0; n <= weight; ++n) {
        if (n > 0) fact *= n;
        for (const auto& kappa : partitions_of(n, m)) {
            const auto C = jack_C_polynomial(kappa, alpha, m);
            const auto sq = C.half_squares();
            const mpq_class norm = gen_pochhammer(c, kappa, k1) * fact * C.evaluate(std::span<const mpq_class>(ones));
            out.a.push_back(sq * mpq_class(static_cast<long>(rs.weyl_order())));
            out.b.push_back(sq * mpq_class(1 / norm));
            out.ha.push_back(hermitize(out.a.back(), rs, k));
            out.hb.push_back(hermitize(out.b.back(), rs, k));
            out.degree.push_back(2 * n);
        }
    }
    return out;
}

namespace {

Multiplicity to_double(const ExactMultiplicity& k) { return {k.k0.get_d(), k.k1.get_d()}; }

double norm2(std::span<const double> v)
{
    double s = 0.0;
    for (double a : v) s += a * a;
    return s;
}

}  // namespace

double generating_series_residual(int m, const ExactMultiplicity& k, std::span<const double> x, std::span<const double> y, int weight)
{
    const auto rs = RootSystem::build(Family::B, m);
    const double lhs = std::exp(-norm2(y) / 2) * bessel_DW(rs, to_double(k), x, y);
    const auto terms = b_hermite_terms(m, k, weight);
    double rhs = 0.0;
    for (std::size_t i = 0; i < terms.ha.size(); ++i) rhs += terms.ha[i].evaluate(x) * terms.b[i].evaluate(y);
    return std::abs(lhs - rhs) / std::abs(lhs);
}

double mehler_residual(int m, const ExactMultiplicity& k, std::span<const double> x, std::span<const double> y, double r, int weight)
{
    const auto rs = RootSystem::build(Family::B, m);
    const auto kd = to_double(k);
    const double gamma = rs.gamma_sum(kd);
    const double s = 1.0 - r * r;
    std::vector<double> ys(y.begin(), y.end());
    for (double& v : ys) v *= r / s;
    const double lhs = std::pow(s, -gamma - m / 2.0) * std::exp(-r * r * (norm2(x) + norm2(y)) / (2 * s)) * bessel_DW(rs, kd, x, ys);
    const auto terms = b_hermite_terms(m, k, weight);
    double rhs = 0.0;
    for (std::size_t i = 0; i < terms.ha.size(); ++i)
        rhs += terms.ha[i].evaluate(x) * terms.hb[i].evaluate(y) * std::pow(r, terms.degree[i]);
    return std::abs(lhs - rhs) / std::abs(lhs);
}

namespace {

std::vector<double> random_chamber_point(const RootSystem& rs, std::mt19937_64& gen, double scale, double min_gap)
{
    std::normal_distribution<double> n(0.0, scale);
    std::vector<double> x(rs.rank());
    do {
        for (double& v : x) v = n(gen);
        x = rs.fold(x);
    } while (rs.distance_to_boundary(x) < min_gap);
    return x;
}

void add(CheckReport& r, std::string name, double residual, double threshold)
{
    r.items.push_back({std::move(name), residual, threshold, residual <= threshold});
}

CheckReport kummer_suite(std::uint64_t seed)
{
    CheckReport r{"kummer", {}};
    std::mt19937_64 gen(seed);
    std::uniform_real_distribution<double> ua(-1.0, 3.0), ub(1.0, 4.0), ux(-1.0, 1.0), ual(0.5, 2.0);
    for (int i = 0; i < 50; ++i) {
        const int m = 1 + i % 2;
        const double alpha = ual(gen), a = ua(gen), b = ub(gen);
        std::vector<double> x(m);
        for (double& v : x) v = ux(gen);
        const JackContext ctx(alpha, m);
        add(r, "draw " + std::to_string(i) + " m=" + std::to_string(m), kummer_residual(a, b, x, ctx, 30), 1e-8);
    }
    return r;
}

CheckReport theorem1_suite(std::uint64_t seed)
{
    CheckReport r{"theorem1", {}};
    const auto b2 = RootSystem::build(Family::B, 2);
    const Multiplicity k{0.75, 0.75};
    std::mt19937_64 gen(seed);
    for (int i = 0; i < 10; ++i) {
        const auto x = random_chamber_point(b2, gen, 1.0, 0.15);
        const auto y = random_chamber_point(b2, gen, 1.0, 0.05);
        const std::string tag = "pair " + std::to_string(i);
        add(r, tag + " residual h=1e-4", theorem1_residual(b2, k, x, y, 1e-4), 1e-6);
        // observed order log2(r(h)/r(h/2)) at h = 1e-3; below that roundoff takes over
        const double coarse = theorem1_residual(b2, k, x, y, 1e-3);
        const double fine = theorem1_residual(b2, k, x, y, 5e-4);
        add(r, tag + " |order - 2|", std::abs(std::log2(coarse / fine) - 2.0), 0.5);
    }
    return r;
}

CheckReport mehler_suite(std::uint64_t)
{
    CheckReport r{"mehler", {}};
    struct Case {
        int m;
        ExactMultiplicity k;
        std::vector<double> x, y;
    };
    const std::vector<Case> cases{
        {1, {mpq_class(3, 4), 0}, {0.8}, {0.6}},
        {2, {mpq_class(3, 4), mpq_class(3, 4)}, {0.9, 0.4}, {0.7, 0.2}},
    };
    for (const auto& c : cases) {
        const std::string tag = "B" + std::to_string(c.m);
        for (const auto& [name, fn] : std::vector<std::pair<std::string, std::function<double(int)>>>{
                 {"generating", [&](int w) { return generating_series_residual(c.m, c.k, c.x, c.y, w); }},
                 {"mehler r=0.4", [&](int w) { return mehler_residual(c.m, c.k, c.x, c.y, 0.4, w); }}}) {
            double prev = 0.0;
            for (int w : {4, 6, 8}) {
                const double res = fn(w);
                add(r, tag + " " + name + " weight " + std::to_string(w), res, w == 4 ? 1.0 : prev);
                prev = res;
            }
        }
    }
    return r;
}

CheckReport pfdet_suite(std::uint64_t seed)
{
    CheckReport r{"pfdet", {}};
    std::mt19937_64 gen(seed);
    std::uniform_real_distribution<double> u(-2.0, 2.0);
    for (int n : {2, 4, 6, 8})
        for (int rep = 0; rep < 5; ++rep) {
            SkewMatrix a(n), lam(n);
            Eigen::MatrixXd d(n, n);
            std::vector<double> l(n);
            double prod = 1.0;
            for (double& v : l) prod *= (v = u(gen));
            for (int i = 0; i < n; ++i)
                for (int j = i + 1; j < n; ++j) {
                    a.set(i, j, u(gen));
                    lam.set(i, j, l[i] * l[j]);
                }
            for (int i = 0; i < n; ++i)
                for (int j = 0; j < n; ++j) d(i, j) = a(i, j);
            const double pf = pfaffian(a), det = d.determinant();
            const std::string tag = "n=" + std::to_string(n) + " #" + std::to_string(rep);
            add(r, tag + " Pf^2 = det", std::abs(pf * pf - det) / std::abs(det), 1e-10);
            add(r, tag + " Pf[l_i l_j] = prod l_i", std::abs(pfaffian(lam) - prod) / std::abs(prod), 1e-10);
        }
    return r;
}

CheckReport mixed_s_suite(std::uint64_t seed)
{
    CheckReport r{"mixed-s", {}};
    std::mt19937_64 gen(seed);
    for (int m : {2, 3}) {
        const auto rs = RootSystem::build(Family::B, m);
        for (int i = 0; i < 20; ++i) {
            const auto x = random_chamber_point(rs, gen, 2.0, 0.05);
            const auto s = mixed_sum_S(x);
            add(r, "B" + std::to_string(m) + " point " + std::to_string(i), std::abs(s.value) / s.scale, 1e-12);
        }
        const double expect = m + static_cast<double>(rs.positive_roots().size());
        add(r, "B" + std::to_string(m) + " eigenvalue at l = 0", std::abs(mixed_eigenvalue(rs, {0, 0}) - expect), 0.0);
    }
    return r;
}

MultiPoly random_homogeneous(int m, int d, std::mt19937_64& gen)
{
    std::uniform_int_distribution<int> coef(-3, 3);
    MultiPoly p(m);
    std::vector<int> e(m, 0);
    std::function<void(int, int)> rec = [&](int i, int left) {
        if (i == m - 1) {
            e[i] = left;
            p.add_term(e, coef(gen));
            return;
        }
        for (int v = 0; v <= left; ++v) {
            e[i] = v;
            rec(i + 1, left - v);
        }
    };
    rec(0, d);
    if (p.is_zero()) {
        std::vector<int> lead(m, 0);
        lead[0] = d;
        p.add_term(lead, 1);
    }
    return p;
}

CheckReport spectral_suite(std::uint64_t seed)
{
    CheckReport r{"spectral", {}};
    std::mt19937_64 gen(seed);
    const std::vector<mpq_class> ks{mpq_class(1, 2), mpq_class(3, 4), mpq_class(1)};
    for (Family f : {Family::A, Family::B, Family::D})
        for (int m = 1; m <= 3; ++m) {
            if (f == Family::D && m < 2) continue;
            const auto rs = RootSystem::build(f, m);
            for (const auto& k : ks)
                for (int d = 0; d <= 6; ++d) {
                    const ExactMultiplicity km{k, k};
                    const auto p = random_homogeneous(m, d, gen);
                    const auto h = hermitize(p, rs, km);
                    const auto spec = dunkl_laplacian(h, rs, km) - h.euler() + h * mpq_class(d);
                    const std::string tag = rs.label() + " k=" + k.get_str() + " deg " + std::to_string(d);
                    add(r, tag + " spectral", spec.is_zero() ? 0.0 : 1.0, 0.0);
                    add(r, tag + " rodriguez", rodriguez_eval(p, rs, km) == h ? 0.0 : 1.0, 0.0);
                }
        }
    return r;
}

}  // namespace

std::vector<std::string_view> suite_names()
{
    return {"kummer", "theorem1", "mehler", "pfdet", "mixed-s", "spectral"};
}

CheckReport run_suite(std::string_view suite, std::uint64_t seed)
{
    if (suite == "kummer") return kummer_suite(seed);
    if (suite == "theorem1") return theorem1_suite(seed);
    if (suite == "mehler") return mehler_suite(seed);
    if (suite == "pfdet") return pfdet_suite(seed);
    if (suite == "mixed-s") return mixed_s_suite(seed);
    if (suite == "spectral") return spectral_suite(seed);
    throw ConfigError("unknown check suite '" + std::string(suite) + "'");
}

}  // namespace dunklhit
