#include "dunklhit/jack.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <mutex>

#include "dunklhit/errors.hpp"

namespace dunklhit {

namespace {

template <class T>
T rho(const Partition& p, const T& two_over_alpha)
{
    T s = 0;
    for (int i = 0; i < p.length(); ++i) {
        s += T(p[i]) * T(p[i] - 1);
        s -= two_over_alpha * T(i) * T(p[i]);
    }
    return s;
}

std::uint64_t raised_key(const Partition& mu, int i, int j, int t)
{
    std::vector<int> parts = mu.parts();
    parts[i] += t;
    parts[j] -= t;
    std::ranges::sort(parts, std::greater<>());
    return pack(Partition(std::move(parts)));
}

}  // namespace

template <class T>
JackExpansion<T> jack_p_expansion(const Partition& kappa, const T& alpha, int m)
{
    JackExpansion<T> out;
    if (kappa.length() > m) return out;
    const int n = kappa.weight();
    const T two_over_alpha = T(2) / alpha;
    const T rho_kappa = rho(kappa, two_over_alpha);

    std::unordered_map<std::uint64_t, T> value;
    for (const auto& mu : partitions_of(n, m)) {
        if (!dominated_by(mu, kappa)) continue;
        const std::uint64_t key = pack(mu);
        T c;
        if (mu == kappa) {
            c = 1;
        } else {
            T s = 0;
            for (int i = 0; i < mu.length(); ++i)
                for (int j = i + 1; j < mu.length(); ++j)
                    for (int t = 1; t <= mu[j]; ++t) {
                        const auto it = value.find(raised_key(mu, i, j, t));
                        if (it != value.end()) s += T(mu[i] - mu[j] + 2 * t) * it->second;
                    }
            c = s * two_over_alpha / (rho_kappa - rho(mu, two_over_alpha));
        }
        if (c == 0) continue;
        value.emplace(key, c);
        out.monomials.push_back(key);
        out.coeffs.push_back(c);
    }
    return out;
}

template JackExpansion<double> jack_p_expansion(const Partition&, const double&, int);
template JackExpansion<mpq_class> jack_p_expansion(const Partition&, const mpq_class&, int);

double log_jack_c_factor(const Partition& kappa, double alpha)
{
    const int n = kappa.weight();
    double s = n * std::log(alpha) + std::lgamma(n + 1.0);
    const Partition conj = kappa.conjugate();
    for (int i = 0; i < kappa.length(); ++i)
        for (int j = 0; j < kappa[i]; ++j) {
            const int arm = kappa[i] - j - 1;
            const int leg = conj[j] - i - 1;
            s -= std::log(alpha * (arm + 1) + leg);
        }
    return s;
}

mpq_class jack_c_factor(const Partition& kappa, const mpq_class& alpha)
{
    mpq_class f = 1;
    const Partition conj = kappa.conjugate();
    int cell = 0;
    for (int i = 0; i < kappa.length(); ++i)
        for (int j = 0; j < kappa[i]; ++j) {
            const int arm = kappa[i] - j - 1;
            const int leg = conj[j] - i - 1;
            f *= alpha * (++cell) / (alpha * (arm + 1) + leg);
        }
    return f;
}

double log_jack_p_at_one(const Partition& kappa, double alpha, int m)
{
    if (kappa.length() > m) return -std::numeric_limits<double>::infinity();
    double s = 0.0;
    const Partition conj = kappa.conjugate();
    for (int i = 0; i < kappa.length(); ++i)
        for (int j = 0; j < kappa[i]; ++j) {
            const int arm = kappa[i] - j - 1;
            const int leg = conj[j] - i - 1;
            s += std::log(m - i + alpha * j) - std::log(alpha * arm + leg + 1);
        }
    return s;
}

MonomialCache::MonomialCache(std::span<const double> x) : x_(x.begin(), x.end()), powers_(x.size()) {}

double MonomialCache::power(int i, int e)
{
    auto& p = powers_[i];
    if (p.empty()) p.push_back(1.0);
    while (static_cast<int>(p.size()) <= e) p.push_back(p.back() * x_[i]);
    return p[e];
}

double MonomialCache::operator()(std::uint64_t mu_key)
{
    if (const auto it = values_.find(mu_key); it != values_.end()) return it->second;
    const Partition mu = unpack(mu_key);
    const int m = nvars();
    double s = 0.0;
    if (mu.length() <= m) {
        std::vector<int> e(m, 0);
        for (int i = 0; i < mu.length(); ++i) e[i] = mu[i];
        std::ranges::sort(e);
        do {
            double term = 1.0;
            for (int i = 0; i < m; ++i) term *= power(i, e[i]);
            s += term;
        } while (std::ranges::next_permutation(e).found);
    }
    values_.emplace(mu_key, s);
    return s;
}

JackContext::JackContext(double jack_alpha, int m) : alpha_(jack_alpha), m_(m)
{
    if (!(jack_alpha > 0) || !std::isfinite(jack_alpha)) throw ValidationError("jack_alpha must be > 0");
    if (m < 1 || m > kMaxPackedLength) throw ValidationError("JackContext supports 1 to 5 variables");
}

std::shared_ptr<const JackExpansion<double>> JackContext::expansion(const Partition& kappa) const
{
    const std::uint64_t key = pack(kappa);
    {
        std::shared_lock lock(mutex_);
        if (const auto it = cache_.find(key); it != cache_.end()) return it->second;
    }
    auto fresh = std::make_shared<const JackExpansion<double>>(jack_p_expansion(kappa, alpha_, m_));
    std::unique_lock lock(mutex_);
    return cache_.try_emplace(key, std::move(fresh)).first->second;
}

double JackContext::p_value(const Partition& kappa, MonomialCache& mono) const
{
    const auto e = expansion(kappa);
    double s = 0.0;
    for (std::size_t i = 0; i < e->monomials.size(); ++i) s += e->coeffs[i] * mono(e->monomials[i]);
    return s;
}

double jack_C(const Partition& tau, std::span<const double> x, const JackContext& ctx)
{
    if (static_cast<int>(x.size()) != ctx.nvars()) throw ValidationError("jack_C: argument length must equal context variable count");
    if (tau.length() > ctx.nvars()) return 0.0;
    MonomialCache mono(x);
    return std::exp(log_jack_c_factor(tau, ctx.jack_alpha())) * ctx.p_value(tau, mono);
}

double jack_C_at_one(const Partition& tau, int m, const JackContext& ctx)
{
    if (tau.length() > m) return 0.0;
    return std::exp(log_jack_c_factor(tau, ctx.jack_alpha()) + log_jack_p_at_one(tau, ctx.jack_alpha(), m));
}

}  // namespace dunklhit
