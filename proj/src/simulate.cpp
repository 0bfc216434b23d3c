#include "dunklhit/simulate.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <random>

#include "dunklhit/errors.hpp"
#include "dunklhit/parallel.hpp"

namespace dunklhit {

namespace {

struct Wall {
    std::vector<double> normal;  // unit normal
    bool absorbing = false;
    double nu = 0.0;  // Bessel index k' − 1/2 of the wall-normal coordinate
};

class Stepper {
public:
    Stepper(const RootSystem& rs, const Multiplicity& kp) : rs_(rs), m_(rs.rank())
    {
        for (const auto& a : rs.positive_roots()) {
            const double k = kp[a.orbit];
            if (k == 0.0) continue;
            roots_.emplace_back(a.v.begin(), a.v.end());
            weights_.push_back(k);
        }
        for (const auto& a : rs.simple_roots()) {
            Wall w;
            const double n = std::sqrt(static_cast<double>(a.norm2));
            for (int c : a.v) w.normal.push_back(c / n);
            w.absorbing = kp[a.orbit] < 0.5;
            w.nu = kp[a.orbit] - 0.5;
            walls_.push_back(std::move(w));
        }
    }

    void drift(const std::vector<double>& x, std::vector<double>& b) const
    {
        std::fill(b.begin(), b.end(), 0.0);
        for (std::size_t r = 0; r < roots_.size(); ++r) {
            double s = 0.0;
            for (int i = 0; i < m_; ++i) s += roots_[r][i] * x[i];
            const double c = weights_[r] / s;
            for (int i = 0; i < m_; ++i) b[i] += c * roots_[r][i];
        }
    }

    double wall_distance(const Wall& w, const std::vector<double>& x) const
    {
        double s = 0.0;
        for (int i = 0; i < m_; ++i) s += w.normal[i] * x[i];
        return s;
    }

    double boundary_distance(const std::vector<double>& x) const
    {
        double d = std::numeric_limits<double>::infinity();
        for (const auto& w : walls_) d = std::min(d, wall_distance(w, x));
        return d;
    }

    // Absorption time, or +inf when the path survives to the horizon.
    double run(std::vector<double> x, double horizon, const SimConfig& cfg, std::mt19937_64& gen, long& reflections) const
    {
        std::normal_distribution<double> normal;
        std::vector<double> b(m_), next(m_);
        double t = 0.0;
        while (t < horizon) {
            const double d = boundary_distance(x);
            const double dt = std::max(std::min({cfg.dt_base, cfg.dt_boundary_scale * d * d, horizon - t}), 1e-14);
            const double sq = std::sqrt(dt);
            drift(x, b);
            for (int i = 0; i < m_; ++i) next[i] = x[i] + b[i] * dt + sq * normal(gen);
            t += dt;
            bool outside = false;
            for (const auto& w : walls_) {
                const double dw = wall_distance(w, next);
                if (w.absorbing && dw < cfg.absorption_eps) {
                    if (dw <= 0.0) return t;
                    // Inside the ε-shell the normal coordinate is a Bessel process of index ν < 0,
                    // whose hitting time from d is d²/(2G) with G ~ Gamma(|ν|).
                    std::gamma_distribution<double> g(-w.nu, 1.0);
                    return t + dw * dw / (2.0 * g(gen));
                }
                if (dw <= 0.0) outside = true;
            }
            if (outside) {
                next = rs_.fold(next);
                ++reflections;
            }
            x.swap(next);
        }
        return std::numeric_limits<double>::infinity();
    }

private:
    const RootSystem& rs_;
    int m_;
    std::vector<std::vector<double>> roots_;
    std::vector<double> weights_;
    std::vector<Wall> walls_;
};

}  // namespace

std::vector<double> drift(const RootSystem& rs, const Multiplicity& kprime, std::span<const double> x)
{
    if (static_cast<int>(x.size()) != rs.rank()) throw ValidationError("drift: x must have m coordinates");
    for (const auto& a : rs.positive_roots())
        if (a.dot(x) <= 0.0) throw BoundaryError("drift requires x strictly inside the chamber (<alpha,x> > 0)");
    std::vector<double> b(x.size(), 0.0);
    for (const auto& a : rs.positive_roots()) {
        const double c = kprime[a.orbit] / a.dot(x);
        for (std::size_t i = 0; i < x.size(); ++i) b[i] += c * a.v[i];
    }
    return b;
}

SurvivalEstimate simulate_survival(const RootSystem& rs, const Multiplicity& kprime, std::span<const double> x0,
                                   std::span<const double> t_grid, const SimConfig& cfg)
{
    validate_multiplicity(kprime);
    if (static_cast<int>(x0.size()) != rs.rank()) throw ValidationError("x0 must have m coordinates");
    if (!rs.in_chamber(x0)) throw BoundaryError("x0 must lie strictly inside the Weyl chamber");
    if (t_grid.empty()) throw ConfigError("t_grid must be nonempty");
    for (std::size_t i = 0; i < t_grid.size(); ++i)
        if (!(t_grid[i] > 0.0) || (i > 0 && t_grid[i] <= t_grid[i - 1]))
            throw ConfigError("t_grid must be positive and strictly increasing");
    if (cfg.paths < 1) throw ConfigError("paths must be >= 1");
    if (!(cfg.dt_base > 0.0) || !(cfg.absorption_eps > 0.0) || !(cfg.dt_boundary_scale > 0.0))
        throw ConfigError("dt_base, dt_boundary_scale and absorption_eps must be > 0");
    const double horizon = cfg.horizon > 0.0 ? cfg.horizon : t_grid.back();
    if (horizon < t_grid.back()) throw ConfigError("horizon must cover the last grid time");

    const Stepper stepper(rs, kprime);
    const std::vector<double> start(x0.begin(), x0.end());
    std::vector<double> hit(cfg.paths);
    constexpr long block = 256;
    const long blocks = (cfg.paths + block - 1) / block;
    std::atomic<long> reflections{0};
    parallel_for(static_cast<std::size_t>(blocks), [&](std::size_t bi) {
        long local = 0;
        const long lo = static_cast<long>(bi) * block;
        const long hi = std::min(cfg.paths, lo + block);
        for (long p = lo; p < hi; ++p) {
            auto gen = stream_engine(cfg.seed, static_cast<std::uint64_t>(p));
            hit[p] = stepper.run(start, horizon, cfg, gen, local);
        }
        reflections += local;
    });

    SurvivalEstimate est;
    est.t_grid.assign(t_grid.begin(), t_grid.end());
    est.paths = cfg.paths;
    est.reflections = reflections;
    const double n = static_cast<double>(cfg.paths);
    for (double t : t_grid) {
        const auto alive = std::count_if(hit.begin(), hit.end(), [t](double h) { return h > t; });
        const double p = static_cast<double>(alive) / n;
        est.probabilities.push_back(p);
        est.std_errors.push_back(std::sqrt(p * (1.0 - p) / n));
    }
    return est;
}

}  // namespace dunklhit
