#include "dunklhit/partition.hpp"

#include <algorithm>
#include <functional>
#include <sstream>

#include "dunklhit/errors.hpp"

namespace dunklhit {

Partition::Partition(std::vector<int> parts) : parts_(std::move(parts))
{
    while (!parts_.empty() && parts_.back() == 0) parts_.pop_back();
    for (std::size_t i = 0; i < parts_.size(); ++i) {
        if (parts_[i] < 0) throw ValidationError("partition parts must be nonnegative");
        if (i > 0 && parts_[i] > parts_[i - 1]) throw ValidationError("partition parts must be weakly decreasing");
    }
}

int Partition::weight() const
{
    int w = 0;
    for (int p : parts_) w += p;
    return w;
}

Partition Partition::conjugate() const
{
    std::vector<int> c(parts_.empty() ? 0 : parts_[0], 0);
    for (int p : parts_)
        for (int j = 0; j < p; ++j) ++c[j];
    return Partition(std::move(c));
}

std::string Partition::str() const
{
    std::ostringstream os;
    os << '(';
    for (std::size_t i = 0; i < parts_.size(); ++i) os << (i ? "," : "") << parts_[i];
    os << ')';
    return os.str();
}

std::vector<Partition> partitions_of(int n, int max_length)
{
    std::vector<Partition> out;
    if (n < 0) return out;
    if (n == 0) {
        out.emplace_back();
        return out;
    }
    std::vector<int> cur;
    std::function<void(int, int)> rec = [&](int remaining, int max_part) {
        if (remaining == 0) {
            out.emplace_back(cur);
            return;
        }
        if (static_cast<int>(cur.size()) == max_length) return;
        for (int p = std::min(remaining, max_part); p >= 1; --p) {
            cur.push_back(p);
            rec(remaining - p, p);
            cur.pop_back();
        }
    };
    rec(n, n);
    return out;
}

std::vector<Partition> enumerate_partitions(int max_weight, int max_length)
{
    std::vector<Partition> out;
    for (int n = 0; n <= max_weight; ++n) {
        auto level = partitions_of(n, max_length);
        out.insert(out.end(), level.begin(), level.end());
    }
    return out;
}

bool dominated_by(const Partition& mu, const Partition& kappa)
{
    if (mu.weight() != kappa.weight()) return false;
    int a = 0, b = 0;
    const int len = std::max(mu.length(), kappa.length());
    for (int i = 0; i < len; ++i) {
        a += mu[i];
        b += kappa[i];
        if (a > b) return false;
    }
    return true;
}

std::uint64_t pack(const Partition& p)
{
    if (p.length() > kMaxPackedLength || p[0] > kMaxPackedPart)
        throw ValidationError("partition too large for packed Jack storage (at most 5 parts below 4096)");
    std::uint64_t key = 0;
    for (int i = 0; i < p.length(); ++i) key |= static_cast<std::uint64_t>(p[i]) << (12 * (kMaxPackedLength - 1 - i));
    return key;
}

Partition unpack(std::uint64_t key)
{
    std::vector<int> parts(kMaxPackedLength);
    for (int i = 0; i < kMaxPackedLength; ++i)
        parts[i] = static_cast<int>((key >> (12 * (kMaxPackedLength - 1 - i))) & 0xfffu);
    return Partition(std::move(parts));
}

double gen_pochhammer(double a, const Partition& tau, double k1)
{
    double r = 1.0;
    for (int i = 0; i < tau.length(); ++i) {
        const double base = a - k1 * i;
        for (int j = 0; j < tau[i]; ++j) r *= base + j;
    }
    return r;
}

mpq_class gen_pochhammer(const mpq_class& a, const Partition& tau, const mpq_class& k1)
{
    mpq_class r = 1;
    for (int i = 0; i < tau.length(); ++i) {
        const mpq_class base = a - k1 * i;
        for (int j = 0; j < tau[i]; ++j) r *= base + j;
    }
    return r;
}

}  // namespace dunklhit
