#pragma once

#include <span>
#include <vector>

#include "dunklhit/rootsys.hpp"

namespace dunklhit {

// γ(a) = √(2/π) ∫₀^a e^{−z²/2} dz = erf(a/√2)
double gamma_func(double a);
// Same function through √(2/π)·a·₁F₁(1/2; 3/2; −a²/2).
double gamma_series(double a);

class SkewMatrix {
public:
    explicit SkewMatrix(int n);
    int size() const { return n_; }
    double operator()(int i, int j) const { return a_[static_cast<std::size_t>(i * n_ + j)]; }
    // Sets a_ij and a_ji = −a_ij.
    void set(int i, int j, double v);

private:
    int n_;
    std::vector<double> a_;
};

// Parlett–Reid tridiagonalization with pivoting.
double pfaffian(SkewMatrix m);

// Entry convention for B-type Pfaffians.
enum class PfConvention {
    PairSurvival,  // exact two-particle survival in the B2 chamber
    Printed,       // γ((x_i−x_j)/√(2t))·γ(x_j/√t)
};

// Exact P_{(a,b)}(T₀ > t) for planar Brownian motion in {y1 > y2 > 0}.
double b2_pair_survival(double a, double b, double t);

double survival_bm_pf(Family f, std::span<const double> x, double t, PfConvention conv = PfConvention::PairSurvival);

// Determinant formula without its constant.
double bm_det_raw(Family f, std::span<const double> x, double t);

struct DetCalibration {
    Family family = Family::B;
    int m = 0;
    std::vector<double> x_ref;
    double t_ref = 1.0;
    double constant = 0.0;
};

// Matches the determinant formula to the Pfaffian (even m) or to the k ≡ 1 closed form (odd m)
// at x_ref = (m, …, 1), t_ref = 1.
DetCalibration calibrate_det(Family f, int m, PfConvention conv = PfConvention::PairSurvival);
double survival_bm_det(std::span<const double> x, double t, const DetCalibration& cal);

}  // namespace dunklhit
