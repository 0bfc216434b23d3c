#pragma once

#include <cstdint>
#include <memory>
#include <shared_mutex>
#include <span>
#include <unordered_map>
#include <vector>

#include <gmpxx.h>

#include "dunklhit/partition.hpp"

namespace dunklhit {

// P_κ = Σ coeffs[i] · m_{unpack(monomials[i])}, leading coefficient 1.
template <class T>
struct JackExpansion {
    std::vector<std::uint64_t> monomials;
    std::vector<T> coeffs;
};

// Monomial-basis recursion of the Laplace–Beltrami eigenproblem, restricted to m variables.
template <class T>
JackExpansion<T> jack_p_expansion(const Partition& kappa, const T& alpha, int m);

extern template JackExpansion<double> jack_p_expansion(const Partition&, const double&, int);
extern template JackExpansion<mpq_class> jack_p_expansion(const Partition&, const mpq_class&, int);

// C_κ = factor · P_κ with factor = α^n n! / Π_s (α(a(s)+1) + l(s)).
double log_jack_c_factor(const Partition& kappa, double alpha);
mpq_class jack_c_factor(const Partition& kappa, const mpq_class& alpha);

// log P_κ(1,…,1) with m ones; -inf when length(κ) > m.
double log_jack_p_at_one(const Partition& kappa, double alpha, int m);

// Memoized m_μ(x) for one fixed x.
class MonomialCache {
public:
    explicit MonomialCache(std::span<const double> x);
    double operator()(std::uint64_t mu_key);
    int nvars() const { return static_cast<int>(x_.size()); }

private:
    double power(int i, int e);

    std::vector<double> x_;
    std::vector<std::vector<double>> powers_;
    std::unordered_map<std::uint64_t, double> values_;
};

class JackContext {
public:
    JackContext(double jack_alpha, int m);

    double jack_alpha() const { return alpha_; }
    int nvars() const { return m_; }

    std::shared_ptr<const JackExpansion<double>> expansion(const Partition& kappa) const;
    double p_value(const Partition& kappa, MonomialCache& mono) const;

private:
    double alpha_;
    int m_;
    mutable std::shared_mutex mutex_;
    mutable std::unordered_map<std::uint64_t, std::shared_ptr<const JackExpansion<double>>> cache_;
};

// Zero when length(τ) exceeds the number of variables.
double jack_C(const Partition& tau, std::span<const double> x, const JackContext& ctx);
double jack_C_at_one(const Partition& tau, int m, const JackContext& ctx);

}  // namespace dunklhit
