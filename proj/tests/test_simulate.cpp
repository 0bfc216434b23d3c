#include <doctest.h>

#include <boost/math/special_functions/erf.hpp>
#include <boost/math/special_functions/gamma.hpp>
#include <cmath>
#include <random>

#include "dunklhit/errors.hpp"
#include "dunklhit/simulate.hpp"

using namespace dunklhit;

TEST_CASE("drift examples and equivariance")
{
    auto b1 = RootSystem::build(Family::B, 1);
    CHECK(drift(b1, {0.3, 0}, std::vector{2.0})[0] == doctest::Approx(0.15));
    auto b3 = RootSystem::build(Family::B, 3);
    for (double v : drift(b3, {0, 0}, std::vector{3.0, 2.0, 1.0})) CHECK(v == 0.0);
    auto a2 = RootSystem::build(Family::A, 2);
    const auto d = drift(a2, {0, 0.4}, std::vector{1.0, 0.0});
    CHECK(d[0] == doctest::Approx(0.4));
    CHECK(d[1] == doctest::Approx(-0.4));
    CHECK_THROWS_AS(drift(b3, {0.1, 0.1}, std::vector{3.0, 3.0, 1.0}), BoundaryError);

    // drift(wx) = w·drift(x) on the whole complement of the walls
    std::mt19937_64 gen(8);
    std::normal_distribution<double> n(0, 1);
    for (Family f : {Family::A, Family::B, Family::D})
        for (int m = 2; m <= 3; ++m) {
            auto rs = RootSystem::build(f, m);
            const Multiplicity k{0.37, 0.81};
            for (int rep = 0; rep < 5; ++rep) {
                std::vector<double> x(m);
                for (double& v : x) v = n(gen);
                const auto y = rs.fold(x);
                const auto by = drift(rs, k, y);
                for (const auto& w : rs.weyl_group()) {
                    const auto wy = w.apply(y);
                    // generic drift at a non-chamber point: direct sum
                    std::vector<double> bw(m, 0.0);
                    for (const auto& a : rs.positive_roots()) {
                        const double c = k[a.orbit] / a.dot(wy);
                        for (int i = 0; i < m; ++i) bw[i] += c * a.v[i];
                    }
                    const auto expect = w.apply(by);
                    for (int i = 0; i < m; ++i) CHECK(bw[i] == doctest::Approx(expect[i]).epsilon(1e-14).scale(1.0));
                }
            }
        }
}

TEST_CASE("B1 simulator matches the incomplete-gamma oracle")
{
    auto b1 = RootSystem::build(Family::B, 1);
    SimConfig cfg;
    cfg.paths = 100000;
    cfg.seed = 7;
    const std::vector t{0.5, 1.0};
    const auto est = simulate_survival(b1, {0.25, 0}, std::vector{1.0}, t, cfg);
    for (std::size_t i = 0; i < t.size(); ++i) {
        const double exact = boost::math::gamma_p(0.25, 1.0 / (2 * t[i]));
        CHECK(std::abs(est.probabilities[i] - exact) < 3 * est.std_errors[i]);
    }
}

TEST_CASE("step refinement changes the B1 estimate within the combined band")
{
    auto b1 = RootSystem::build(Family::B, 1);
    SimConfig a;
    a.paths = 50000;
    a.seed = 3;
    SimConfig b = a;
    b.dt_base /= 2;
    b.absorption_eps /= 2;
    const std::vector t{1.0};
    const auto ea = simulate_survival(b1, {0.25, 0}, std::vector{1.0}, t, a);
    const auto eb = simulate_survival(b1, {0.25, 0}, std::vector{1.0}, t, b);
    CHECK(std::abs(ea.probabilities[0] - eb.probabilities[0]) < 3 * std::hypot(ea.std_errors[0], eb.std_errors[0]));
}

TEST_CASE("large multiplicity never hits; determinism; monotonicity")
{
    auto b2 = RootSystem::build(Family::B, 2);
    SimConfig cfg;
    cfg.paths = 10000;
    const std::vector t{0.25, 0.5, 1.0};
    const auto est = simulate_survival(b2, {2.0, 2.0}, std::vector{2.0, 1.0}, t, cfg);
    for (double p : est.probabilities) CHECK(p == 1.0);

    cfg.paths = 4000;
    const auto a = simulate_survival(b2, {0.25, 0.25}, std::vector{2.0, 1.0}, t, cfg);
    const auto b = simulate_survival(b2, {0.25, 0.25}, std::vector{2.0, 1.0}, t, cfg);
    CHECK(a.probabilities == b.probabilities);
    CHECK(a.probabilities[0] >= a.probabilities[1]);
    CHECK(a.probabilities[1] >= a.probabilities[2]);
    for (std::size_t i = 0; i < t.size(); ++i)
        CHECK(a.std_errors[i] == doctest::Approx(std::sqrt(a.probabilities[i] * (1 - a.probabilities[i]) / cfg.paths)));
}

TEST_CASE("Brownian D2 matches the reflection-principle product")
{
    auto d2 = RootSystem::build(Family::D, 2);
    SimConfig cfg;
    cfg.paths = 40000;
    const std::vector t{0.5};
    const auto est = simulate_survival(d2, {0, 0}, std::vector{2.0, 1.0}, t, cfg);
    const double s = std::sqrt(2 * t[0]);
    const double exact = std::erf(1.0 / std::sqrt(2.0) / s) * std::erf(3.0 / std::sqrt(2.0) / s);
    CHECK(std::abs(est.probabilities[0] - exact) < 3 * est.std_errors[0]);
}

TEST_CASE("simulate_survival rejects bad configuration")
{
    auto b1 = RootSystem::build(Family::B, 1);
    SimConfig cfg;
    cfg.paths = 10;
    CHECK_THROWS_AS(simulate_survival(b1, {0.25, 0}, std::vector{1.0}, std::vector{1.0, 0.5}, cfg), ConfigError);
    CHECK_THROWS_AS(simulate_survival(b1, {0.25, 0}, std::vector{-1.0}, std::vector{1.0}, cfg), BoundaryError);
}
