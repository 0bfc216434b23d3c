#pragma once

#include <map>
#include <span>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "dunklhit/rootsys.hpp"

namespace dunklhit {

// Exact multivariate polynomial with rational coefficients; zero coefficients are never stored.
class MultiPoly {
public:
    using Exponent = std::vector<int>;
    using Terms = std::map<Exponent, mpq_class>;

    MultiPoly() = default;
    explicit MultiPoly(int nvars) : m_(nvars) {}

    static MultiPoly constant(int nvars, const mpq_class& c);
    static MultiPoly variable(int nvars, int i);
    static MultiPoly monomial(Exponent e, const mpq_class& c);
    static MultiPoly linear(const std::vector<int>& coeffs);

    int nvars() const { return m_; }
    const Terms& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    int degree() const;
    bool is_homogeneous() const;

    void add_term(const Exponent& e, const mpq_class& c);

    MultiPoly& operator+=(const MultiPoly& o);
    MultiPoly& operator-=(const MultiPoly& o);
    MultiPoly& operator*=(const mpq_class& c);
    friend MultiPoly operator+(MultiPoly a, const MultiPoly& b) { return a += b; }
    friend MultiPoly operator-(MultiPoly a, const MultiPoly& b) { return a -= b; }
    friend MultiPoly operator*(MultiPoly a, const mpq_class& c) { return a *= c; }
    friend MultiPoly operator*(const MultiPoly& a, const MultiPoly& b);
    bool operator==(const MultiPoly& o) const { return m_ == o.m_ && terms_ == o.terms_; }

    MultiPoly derivative(int i) const;
    // p(w x)
    MultiPoly compose(const SignedPermutation& w) const;
    // Exact quotient by ⟨a,x⟩; throws InternalError on a nonzero remainder.
    MultiPoly divide_linear(const std::vector<int>& a) const;
    // Euler operator ⟨x,∇⟩.
    MultiPoly euler() const;
    // p(x_1²/2, …, x_m²/2)
    MultiPoly half_squares() const;

    double evaluate(std::span<const double> x) const;
    mpq_class evaluate(std::span<const mpq_class> x) const;
    std::string str() const;

private:
    int m_ = 0;
    Terms terms_;
};

// Double-precision copy for fast repeated evaluation.
class CompiledPoly {
public:
    CompiledPoly() = default;
    explicit CompiledPoly(const MultiPoly& p);
    double operator()(std::span<const double> x) const;

private:
    int m_ = 0;
    int max_exp_ = 0;
    std::vector<int> exps_;
    std::vector<double> coeffs_;
};

}  // namespace dunklhit
