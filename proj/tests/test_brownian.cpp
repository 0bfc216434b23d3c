#include <doctest.h>

#include <Eigen/Dense>
#include <cmath>
#include <random>

#include "dunklhit/brownian.hpp"
#include "dunklhit/errors.hpp"
#include "dunklhit/simulate.hpp"

using namespace dunklhit;

TEST_CASE("gamma function")
{
    CHECK(gamma_func(0.0) == 0.0);
    CHECK(std::abs(gamma_func(8.0) - 1.0) <= 1e-12);
    CHECK(gamma_func(1.0) == doctest::Approx(0.6826894921370859).epsilon(1e-15));
    for (double a : {-2.5, -0.3, 0.1, 0.7, 1.9, 3.4}) {
        CHECK(gamma_func(-a) == -gamma_func(a));
        CHECK(gamma_series(a) == doctest::Approx(gamma_func(a)).epsilon(1e-13));
    }
}

TEST_CASE("Pfaffian")
{
    SkewMatrix two(2);
    two.set(0, 1, 3.5);
    CHECK(pfaffian(two) == 3.5);
    CHECK_THROWS_AS(pfaffian(SkewMatrix(3)), OddDimension);
    CHECK(pfaffian(SkewMatrix(0)) == 1.0);

    std::mt19937_64 gen(5);
    std::uniform_real_distribution<double> u(-2, 2);
    for (int n : {2, 4, 6, 8})
        for (int rep = 0; rep < 10; ++rep) {
            SkewMatrix a(n);
            Eigen::MatrixXd d(n, n);
            for (int i = 0; i < n; ++i)
                for (int j = i + 1; j < n; ++j) a.set(i, j, u(gen));
            for (int i = 0; i < n; ++i)
                for (int j = 0; j < n; ++j) d(i, j) = a(i, j);
            const double pf = pfaffian(a);
            const double det = d.determinant();
            CHECK(std::abs(pf * pf - det) <= 1e-10 * std::abs(det));

            // Pf[λ_iλ_j] = Π λ_i
            std::vector<double> lam(n);
            double prod = 1;
            for (double& l : lam) prod *= (l = u(gen));
            SkewMatrix r(n);
            for (int i = 0; i < n; ++i)
                for (int j = i + 1; j < n; ++j) r.set(i, j, lam[i] * lam[j]);
            CHECK(std::abs(pfaffian(r) - prod) <= 1e-10 * std::abs(prod));
        }
    SkewMatrix lam(4);
    for (int i = 0; i < 4; ++i)
        for (int j = i + 1; j < 4; ++j) lam.set(i, j, (i + 1.0) * (j + 1.0));
    CHECK(pfaffian(lam) == doctest::Approx(24.0).epsilon(1e-14));
}

TEST_CASE("pair survival and Pfaffian survivals")
{
    // t → 0 limits
    CHECK(b2_pair_survival(2, 1, 1e-6) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(survival_bm_pf(Family::B, std::vector{2.0, 1.0}, 1e-6) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(survival_bm_pf(Family::D, std::vector{4.0, 3.0, 2.0, 1.0}, 1e-6) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(survival_bm_pf(Family::B, std::vector{2.0, 1.0}, 1e-6, PfConvention::Printed) == doctest::Approx(1.0).epsilon(1e-12));
    // D2 factorizes under the rotation to x1 ± x2
    const double d2 = survival_bm_pf(Family::D, std::vector{2.0, 1.0}, 0.5);
    CHECK(d2 == doctest::Approx(std::erf(1.0 / std::sqrt(2.0)) * std::erf(3.0 / std::sqrt(2.0))).epsilon(1e-14));
    CHECK_THROWS_AS(survival_bm_pf(Family::D, std::vector{3.0, 2.0, 1.0}, 1.0), OddRank);
    CHECK_THROWS_AS(survival_bm_pf(Family::B, std::vector{1.0, 2.0}, 1.0), BoundaryError);

    // B2 pair survival against the plain Brownian simulator
    SimConfig cfg;
    cfg.paths = 40000;
    cfg.seed = 3;
    const std::vector t{0.5};
    const auto est = simulate_survival(RootSystem::build(Family::B, 2), {0, 0}, std::vector{2.0, 1.0}, t, cfg);
    CHECK(std::abs(est.probabilities[0] - b2_pair_survival(2, 1, 0.5)) <= 3 * est.std_errors[0]);
}

TEST_CASE("determinant formulas")
{
    // m = 1: C·(x²/2t)^{1/2}₁F₁(1/2,3/2,−x²/2t) ∝ erf(x/√(2t))
    const auto cal1 = calibrate_det(Family::B, 1);
    for (double x : {0.3, 1.0, 2.5})
        for (double t : {0.2, 1.0, 3.0})
            CHECK(survival_bm_det(std::vector{x}, t, cal1) == doctest::Approx(std::erf(x / std::sqrt(2 * t))).epsilon(1e-12));
    // scale invariance
    const auto cal = calibrate_det(Family::B, 2);
    CHECK(survival_bm_det(std::vector{2.0, 1.0}, 0.5, cal) == doctest::Approx(survival_bm_det(std::vector{4.0, 2.0}, 2.0, cal)).epsilon(1e-12));
    CHECK(survival_bm_det(cal.x_ref, cal.t_ref, cal) == doctest::Approx(survival_bm_pf(Family::B, cal.x_ref, cal.t_ref)).epsilon(1e-14));
    CHECK_THROWS_AS(bm_det_raw(Family::B, std::vector{1.0, 3.0}, 1.0), BoundaryError);
}
