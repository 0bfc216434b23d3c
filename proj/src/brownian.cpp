#include "dunklhit/brownian.hpp"

#include <Eigen/Dense>
#include <boost/math/special_functions/erf.hpp>
#include <boost/math/special_functions/hypergeometric_1F1.hpp>
#include <boost/math/special_functions/owens_t.hpp>
#include <cmath>
#include <numbers>

#include "dunklhit/errors.hpp"
#include "dunklhit/hitting.hpp"

namespace dunklhit {

double gamma_func(double a)
{
    return std::erf(a / std::numbers::sqrt2);
}

double gamma_series(double a)
{
    return std::sqrt(2.0 / std::numbers::pi) * a * boost::math::hypergeometric_1F1(0.5, 1.5, -a * a / 2);
}

SkewMatrix::SkewMatrix(int n) : n_(n), a_(static_cast<std::size_t>(n) * n, 0.0)
{
    if (n < 0) throw ValidationError("matrix dimension must be nonnegative");
}

void SkewMatrix::set(int i, int j, double v)
{
    if (i == j) {
        if (v != 0.0) throw ValidationError("skew matrix diagonal must vanish");
        return;
    }
    a_[static_cast<std::size_t>(i * n_ + j)] = v;
    a_[static_cast<std::size_t>(j * n_ + i)] = -v;
}

double pfaffian(SkewMatrix m)
{
    const int n = m.size();
    if (n % 2) throw OddDimension("Pfaffian requires an even dimension");
    Eigen::MatrixXd a(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) a(i, j) = m(i, j);
    double pf = 1.0;
    for (int k = 0; k + 1 < n; k += 2) {
        Eigen::Index p;
        a.col(k).tail(n - k - 1).cwiseAbs().maxCoeff(&p);
        p += k + 1;
        if (p != k + 1) {
            a.row(k + 1).swap(a.row(p));
            a.col(k + 1).swap(a.col(p));
            pf = -pf;
        }
        if (a(k + 1, k) == 0.0) return 0.0;
        pf *= a(k, k + 1);
        if (k + 2 < n) {
            const Eigen::VectorXd tau = a.row(k).tail(n - k - 2).transpose() / a(k, k + 1);
            const Eigen::VectorXd col = a.col(k + 1).tail(n - k - 2);
            a.bottomRightCorner(n - k - 2, n - k - 2) += tau * col.transpose() - col * tau.transpose();
        }
    }
    return pf;
}

namespace {

// P(X < h, Y < k) for standard normals with correlation ρ, |ρ| < 1.
double bivariate_normal_cdf(double h, double k, double rho)
{
    const double s = std::sqrt(1.0 - rho * rho);
    auto owen = [&](double u, double v) {
        if (u == 0.0) return v == rho * u ? 0.0 : std::copysign(0.25, v - rho * u);
        return boost::math::owens_t(u, (v - rho * u) / (u * s));
    };
    auto Phi = [](double z) { return 0.5 * std::erfc(-z / std::numbers::sqrt2); };
    const double beta = (h * k > 0.0 || (h * k == 0.0 && h + k >= 0.0)) ? 0.0 : 0.5;
    return 0.5 * Phi(h) + 0.5 * Phi(k) - owen(h, k) - owen(k, h) - beta;
}

void check_interior(Family f, std::span<const double> x, double t)
{
    const auto rs = RootSystem::build(f, static_cast<int>(x.size()));
    if (!rs.in_chamber(x)) throw BoundaryError("x must lie strictly inside the Weyl chamber");
    if (!(t > 0.0) || !std::isfinite(t)) throw ValidationError("t must be positive and finite");
}

}  // namespace

double b2_pair_survival(double a, double b, double t)
{
    // Image sum over W(B2): Σ_w det(w)·P(w x + B_t ∈ C), each term a bivariate orthant probability.
    static const auto b2 = RootSystem::build(Family::B, 2);
    const double st = std::sqrt(t);
    const std::vector<double> x{a, b};
    double p = 0.0;
    for (const auto& w : b2.weyl_group()) {
        const auto y = w.apply(x);
        const double u = (y[0] - y[1]) / (std::numbers::sqrt2 * st);
        const double v = y[1] / st;
        p += w.determinant() * bivariate_normal_cdf(u, v, -1.0 / std::numbers::sqrt2);
    }
    return p;
}

double survival_bm_pf(Family f, std::span<const double> x, double t, PfConvention conv)
{
    if (f == Family::A) throw ValidationError("Pfaffian formulas exist for B and D types only");
    const int m = static_cast<int>(x.size());
    if (m % 2) throw OddRank("Pfaffian formulas hold for even m only");
    check_interior(f, x, t);
    SkewMatrix a(m);
    const double s2 = std::sqrt(2 * t);
    for (int i = 0; i < m; ++i)
        for (int j = i + 1; j < m; ++j) {
            double v;
            if (f == Family::D)
                v = gamma_func((x[i] - x[j]) / s2) * gamma_func((x[i] + x[j]) / s2);
            else if (conv == PfConvention::Printed)
                v = gamma_func((x[i] - x[j]) / s2) * gamma_func(x[j] / std::sqrt(t));
            else
                v = b2_pair_survival(x[i], x[j], t);
            a.set(i, j, v);
        }
    return pfaffian(std::move(a));
}

double bm_det_raw(Family f, std::span<const double> x, double t)
{
    if (f == Family::A) throw ValidationError("determinant formulas exist for B and D types only");
    check_interior(f, x, t);
    const int m = static_cast<int>(x.size());
    Eigen::MatrixXd a(m, m);
    for (int i = 0; i < m; ++i) {
        const double z = x[i] * x[i] / (2 * t);
        for (int j = 1; j <= m; ++j) {
            if (f == Family::B)
                a(i, j - 1) = std::pow(z, m - j + 0.5) * boost::math::hypergeometric_1F1(m / 2.0, m - j + 1.5, -z);
            else
                a(i, j - 1) = std::pow(z, m - j) * boost::math::hypergeometric_1F1((m - 1) / 2.0, m - j + 0.5, -z);
        }
    }
    return a.partialPivLu().determinant();
}

DetCalibration calibrate_det(Family f, int m, PfConvention conv)
{
    DetCalibration cal;
    cal.family = f;
    cal.m = m;
    for (int i = m; i >= 1; --i) cal.x_ref.push_back(i);
    const double det = bm_det_raw(f, cal.x_ref, cal.t_ref);
    if (!(std::abs(det) >= 1e-12)) throw SingularCalibration("reference determinant below 1e-12");
    double target;
    if (m % 2 == 0) {
        target = survival_bm_pf(f, cal.x_ref, cal.t_ref, conv);
    } else {
        const auto rs = RootSystem::build(f, m);
        const SurvivalQuery q{rs, {1.0, 1.0}, cal.x_ref, cal.t_ref};
        target = f == Family::B ? survival_B(q).raw : survival_D(q).raw;
    }
    cal.constant = target / det;
    return cal;
}

double survival_bm_det(std::span<const double> x, double t, const DetCalibration& cal)
{
    if (static_cast<int>(x.size()) != cal.m) throw ValidationError("x length does not match the calibration rank");
    return cal.constant * bm_det_raw(cal.family, x, t);
}

}  // namespace dunklhit
