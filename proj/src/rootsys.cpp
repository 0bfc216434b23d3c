#include "dunklhit/rootsys.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numeric>

#include "dunklhit/errors.hpp"

namespace dunklhit {

std::string to_string(Family f)
{
    switch (f) {
    case Family::A: return "A";
    case Family::B: return "B";
    case Family::D: return "D";
    }
    return "?";
}

Family parse_family(const std::string& s)
{
    if (s == "A") return Family::A;
    if (s == "B") return Family::B;
    if (s == "D") return Family::D;
    throw ValidationError("family must be one of A, B, D (got '" + s + "')");
}

double Root::dot(std::span<const double> x) const
{
    double s = 0.0;
    for (std::size_t i = 0; i < v.size(); ++i)
        if (v[i] != 0) s += v[i] * x[i];
    return s;
}

std::vector<double> SignedPermutation::apply(std::span<const double> x) const
{
    std::vector<double> y(perm.size());
    for (std::size_t i = 0; i < perm.size(); ++i) y[i] = sign[i] * x[perm[i]];
    return y;
}

int SignedPermutation::determinant() const
{
    int d = 1;
    for (int s : sign) d *= s;
    std::vector<bool> seen(perm.size(), false);
    for (std::size_t i = 0; i < perm.size(); ++i) {
        if (seen[i]) continue;
        std::size_t len = 0;
        for (std::size_t j = i; !seen[j]; j = perm[j]) {
            seen[j] = true;
            ++len;
        }
        if (len % 2 == 0) d = -d;
    }
    return d;
}

namespace {

Root make_root(int m, int i, int si, int j, int sj, Orbit o)
{
    Root r;
    r.v.assign(m, 0);
    r.v[i] = si;
    if (j >= 0) r.v[j] = sj;
    r.orbit = o;
    r.norm2 = j >= 0 ? 2 : 1;
    return r;
}

std::uint64_t factorial(int n)
{
    std::uint64_t f = 1;
    for (int i = 2; i <= n; ++i) f *= static_cast<std::uint64_t>(i);
    return f;
}

}  // namespace

RootSystem::RootSystem(Family f, int m) : family_(f), m_(m) {}

RootSystem RootSystem::build(Family family, int m)
{
    if (m < 1) throw ValidationError("rank m must be >= 1");
    if (family == Family::D && m < 2) throw ValidationError("D-type requires m >= 2");
    if (m > 20) throw ValidationError("rank m must be <= 20");

    RootSystem rs(family, m);
    if (family == Family::B)
        for (int i = 0; i < m; ++i) rs.positive_.push_back(make_root(m, i, 1, -1, 0, Orbit::Short));
    for (int i = 0; i < m; ++i)
        for (int j = i + 1; j < m; ++j) {
            rs.positive_.push_back(make_root(m, i, 1, j, -1, Orbit::Long));
            if (family != Family::A) rs.positive_.push_back(make_root(m, i, 1, j, 1, Orbit::Long));
        }

    for (int i = 0; i + 1 < m; ++i) rs.simple_.push_back(make_root(m, i, 1, i + 1, -1, Orbit::Long));
    if (family == Family::B) rs.simple_.push_back(make_root(m, m - 1, 1, -1, 0, Orbit::Short));
    if (family == Family::D) rs.simple_.push_back(make_root(m, m - 2, 1, m - 1, 1, Orbit::Long));

    switch (family) {
    case Family::A: rs.weyl_order_ = factorial(m); break;
    case Family::B: rs.weyl_order_ = factorial(m) << m; break;
    case Family::D: rs.weyl_order_ = factorial(m) << (m - 1); break;
    }

    if (m <= 4) {
        std::vector<int> perm(m);
        std::iota(perm.begin(), perm.end(), 0);
        do {
            const int nsigns = family == Family::A ? 1 : (1 << m);
            for (int mask = 0; mask < nsigns; ++mask) {
                if (family == Family::D && std::popcount(static_cast<unsigned>(mask)) % 2 != 0) continue;
                SignedPermutation w{perm, std::vector<int>(m, 1)};
                for (int i = 0; i < m; ++i)
                    if (mask & (1 << i)) w.sign[i] = -1;
                rs.group_.push_back(std::move(w));
            }
        } while (std::next_permutation(perm.begin(), perm.end()));
    }
    return rs;
}

std::vector<Root> RootSystem::all_roots() const
{
    std::vector<Root> r = positive_;
    for (const auto& a : positive_) {
        Root n = a;
        for (int& c : n.v) c = -c;
        r.push_back(std::move(n));
    }
    return r;
}

int RootSystem::orbit_count() const
{
    return family_ == Family::B && m_ >= 2 ? 2 : 1;
}

const std::vector<SignedPermutation>& RootSystem::weyl_group() const
{
    if (group_.empty()) throw ValidationError("explicit Weyl group requires m <= 4");
    return group_;
}

SignedPermutation RootSystem::reflection(const Root& a)
{
    // σ_α x = x − 2⟨α,x⟩/|α|² α ; for these roots the matrix is a signed permutation.
    const int m = static_cast<int>(a.v.size());
    SignedPermutation w{std::vector<int>(m), std::vector<int>(m, 1)};
    std::iota(w.perm.begin(), w.perm.end(), 0);
    for (int i = 0; i < m; ++i) {
        int nonzero = 0;
        for (int j = 0; j < m; ++j) {
            const int entry = (i == j ? 1 : 0) * a.norm2 - 2 * a.v[i] * a.v[j];
            if (entry == 0) continue;
            if (entry % a.norm2 != 0 || std::abs(entry / a.norm2) != 1 || ++nonzero > 1)
                throw InternalError("reflection is not a signed permutation");
            w.perm[i] = j;
            w.sign[i] = entry / a.norm2;
        }
    }
    return w;
}

bool RootSystem::in_chamber(std::span<const double> x) const
{
    if (static_cast<int>(x.size()) != m_) return false;
    return std::ranges::all_of(simple_, [&](const Root& a) { return a.dot(x) > 0.0; });
}

std::vector<double> RootSystem::wall_distances(std::span<const double> x) const
{
    std::vector<double> d;
    d.reserve(simple_.size());
    for (const auto& a : simple_) d.push_back(a.dot(x) / std::sqrt(static_cast<double>(a.norm2)));
    return d;
}

double RootSystem::distance_to_boundary(std::span<const double> x) const
{
    const auto d = wall_distances(x);
    return std::max(0.0, *std::ranges::min_element(d));
}

std::vector<double> RootSystem::fold(std::span<const double> x) const
{
    std::vector<double> y(x.begin(), x.end());
    switch (family_) {
    case Family::A:
        std::ranges::sort(y, std::greater<>());
        break;
    case Family::B:
        for (double& v : y) v = std::abs(v);
        std::ranges::sort(y, std::greater<>());
        break;
    case Family::D: {
        bool negative = false;
        for (double v : y)
            if (v < 0) negative = !negative;
        for (double& v : y) v = std::abs(v);
        std::ranges::sort(y, std::greater<>());
        if (negative) y.back() = -y.back();
        break;
    }
    }
    return y;
}

double RootSystem::weight_omega(const Multiplicity& k, std::span<const double> x) const
{
    double w = 1.0;
    for (const auto& a : positive_) {
        const double kk = k[a.orbit];
        if (kk == 0.0) continue;
        const double s = a.dot(x);
        if (s <= 0.0 && std::floor(kk) != kk)
            throw DomainError("weight_omega: <alpha,x> <= 0 with non-integer multiplicity (x must be interior)");
        w *= std::pow(s, kk);
    }
    return w;
}

std::string RootSystem::label() const
{
    return to_string(family_) + std::to_string(m_);
}

double vandermonde(std::span<const double> x)
{
    double v = 1.0;
    for (std::size_t i = 0; i < x.size(); ++i)
        for (std::size_t j = i + 1; j < x.size(); ++j) v *= x[i] - x[j];
    return v;
}

void validate_multiplicity(const Multiplicity& k)
{
    if (!std::isfinite(k.k0) || !std::isfinite(k.k1) || k.k0 < 0 || k.k1 < 0)
        throw ValidationError("multiplicities must be finite and >= 0");
}

}  // namespace dunklhit
