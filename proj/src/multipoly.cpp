#include "dunklhit/multipoly.hpp"

#include <algorithm>
#include <sstream>

#include "dunklhit/errors.hpp"

namespace dunklhit {

MultiPoly MultiPoly::constant(int nvars, const mpq_class& c)
{
    MultiPoly p(nvars);
    p.add_term(Exponent(nvars, 0), c);
    return p;
}

MultiPoly MultiPoly::variable(int nvars, int i)
{
    MultiPoly p(nvars);
    Exponent e(nvars, 0);
    e[i] = 1;
    p.add_term(e, 1);
    return p;
}

MultiPoly MultiPoly::monomial(Exponent e, const mpq_class& c)
{
    MultiPoly p(static_cast<int>(e.size()));
    p.add_term(e, c);
    return p;
}

MultiPoly MultiPoly::linear(const std::vector<int>& coeffs)
{
    const int m = static_cast<int>(coeffs.size());
    MultiPoly p(m);
    for (int i = 0; i < m; ++i)
        if (coeffs[i] != 0) {
            Exponent e(m, 0);
            e[i] = 1;
            p.add_term(e, coeffs[i]);
        }
    return p;
}

int MultiPoly::degree() const
{
    int d = -1;
    for (const auto& [e, c] : terms_) {
        int s = 0;
        for (int v : e) s += v;
        d = std::max(d, s);
    }
    return d;
}

bool MultiPoly::is_homogeneous() const
{
    const int d = degree();
    for (const auto& [e, c] : terms_) {
        int s = 0;
        for (int v : e) s += v;
        if (s != d) return false;
    }
    return true;
}

void MultiPoly::add_term(const Exponent& e, const mpq_class& c)
{
    if (static_cast<int>(e.size()) != m_) throw InternalError("exponent length differs from variable count");
    if (c == 0) return;
    auto [it, inserted] = terms_.try_emplace(e, c);
    if (!inserted) {
        it->second += c;
        if (it->second == 0) terms_.erase(it);
    }
}

MultiPoly& MultiPoly::operator+=(const MultiPoly& o)
{
    if (m_ == 0 && terms_.empty()) m_ = o.m_;
    for (const auto& [e, c] : o.terms_) add_term(e, c);
    return *this;
}

MultiPoly& MultiPoly::operator-=(const MultiPoly& o)
{
    if (m_ == 0 && terms_.empty()) m_ = o.m_;
    for (const auto& [e, c] : o.terms_) add_term(e, -c);
    return *this;
}

MultiPoly& MultiPoly::operator*=(const mpq_class& c)
{
    if (c == 0) {
        terms_.clear();
        return *this;
    }
    for (auto& [e, v] : terms_) v *= c;
    return *this;
}

MultiPoly operator*(const MultiPoly& a, const MultiPoly& b)
{
    MultiPoly r(std::max(a.m_, b.m_));
    for (const auto& [ea, ca] : a.terms_)
        for (const auto& [eb, cb] : b.terms_) {
            MultiPoly::Exponent e = ea;
            for (std::size_t i = 0; i < e.size(); ++i) e[i] += eb[i];
            r.add_term(e, ca * cb);
        }
    return r;
}

MultiPoly MultiPoly::derivative(int i) const
{
    MultiPoly r(m_);
    for (const auto& [e, c] : terms_) {
        if (e[i] == 0) continue;
        Exponent f = e;
        --f[i];
        r.add_term(f, c * e[i]);
    }
    return r;
}

MultiPoly MultiPoly::compose(const SignedPermutation& w) const
{
    MultiPoly r(m_);
    for (const auto& [e, c] : terms_) {
        Exponent f(m_, 0);
        int sign = 1;
        for (int i = 0; i < m_; ++i) {
            f[w.perm[i]] += e[i];
            if (w.sign[i] < 0 && e[i] % 2 != 0) sign = -sign;
        }
        r.add_term(f, sign * c);
    }
    return r;
}

MultiPoly MultiPoly::divide_linear(const std::vector<int>& a) const
{
    int v = -1;
    for (int i = 0; i < m_; ++i)
        if (a[i] != 0) {
            v = i;
            break;
        }
    if (v < 0) throw InternalError("division by the zero linear form");
    MultiPoly rest = *this;
    MultiPoly q(m_);
    while (!rest.is_zero()) {
        auto lead = rest.terms_.begin();
        for (auto it = rest.terms_.begin(); it != rest.terms_.end(); ++it)
            if (it->first[v] > lead->first[v]) lead = it;
        if (lead->first[v] == 0) throw InternalError("exact division by linear form left a remainder");
        Exponent e = lead->first;
        --e[v];
        const mpq_class c = lead->second / a[v];
        q.add_term(e, c);
        for (int j = 0; j < m_; ++j) {
            if (a[j] == 0) continue;
            Exponent f = e;
            ++f[j];
            rest.add_term(f, -c * a[j]);
        }
    }
    return q;
}

MultiPoly MultiPoly::euler() const
{
    MultiPoly r(m_);
    for (const auto& [e, c] : terms_) {
        int s = 0;
        for (int v : e) s += v;
        r.add_term(e, c * s);
    }
    return r;
}

MultiPoly MultiPoly::half_squares() const
{
    MultiPoly r(m_);
    for (const auto& [e, c] : terms_) {
        Exponent f = e;
        int s = 0;
        for (int& v : f) {
            s += v;
            v *= 2;
        }
        mpq_class scale = 1;
        mpz_class denom = 1;
        denom <<= s;
        scale /= denom;
        r.add_term(f, c * scale);
    }
    return r;
}

double MultiPoly::evaluate(std::span<const double> x) const
{
    return CompiledPoly(*this)(x);
}

mpq_class MultiPoly::evaluate(std::span<const mpq_class> x) const
{
    mpq_class s = 0;
    for (const auto& [e, c] : terms_) {
        mpq_class t = c;
        for (int i = 0; i < m_; ++i)
            for (int k = 0; k < e[i]; ++k) t *= x[i];
        s += t;
    }
    return s;
}

std::string MultiPoly::str() const
{
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [e, c] : terms_) {
        if (!first) os << " + ";
        first = false;
        os << c.get_str();
        for (int i = 0; i < m_; ++i)
            if (e[i] > 0) os << "*x" << (i + 1) << (e[i] > 1 ? "^" + std::to_string(e[i]) : "");
    }
    return os.str();
}

CompiledPoly::CompiledPoly(const MultiPoly& p) : m_(p.nvars())
{
    for (const auto& [e, c] : p.terms()) {
        for (int v : e) {
            exps_.push_back(v);
            max_exp_ = std::max(max_exp_, v);
        }
        coeffs_.push_back(c.get_d());
    }
}

double CompiledPoly::operator()(std::span<const double> x) const
{
    std::vector<double> pw(static_cast<std::size_t>(m_) * (max_exp_ + 1));
    for (int i = 0; i < m_; ++i) {
        pw[i * (max_exp_ + 1)] = 1.0;
        for (int k = 1; k <= max_exp_; ++k) pw[i * (max_exp_ + 1) + k] = pw[i * (max_exp_ + 1) + k - 1] * x[i];
    }
    double s = 0.0;
    for (std::size_t t = 0; t < coeffs_.size(); ++t) {
        double v = coeffs_[t];
        for (int i = 0; i < m_; ++i) v *= pw[i * (max_exp_ + 1) + exps_[t * m_ + i]];
        s += v;
    }
    return s;
}

}  // namespace dunklhit
