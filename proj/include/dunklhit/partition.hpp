#pragma once

#include <compare>
#include <cstdint>
#include <string>
#include <vector>

#include <gmpxx.h>

namespace dunklhit {

// Weakly decreasing positive parts; trailing zeros are stripped on construction.
class Partition {
public:
    Partition() = default;
    explicit Partition(std::vector<int> parts);
    Partition(std::initializer_list<int> parts) : Partition(std::vector<int>(parts)) {}

    const std::vector<int>& parts() const { return parts_; }
    int weight() const;
    int length() const { return static_cast<int>(parts_.size()); }
    bool empty() const { return parts_.empty(); }
    int operator[](std::size_t i) const { return i < parts_.size() ? parts_[i] : 0; }
    Partition conjugate() const;
    std::string str() const;

    auto operator<=>(const Partition&) const = default;

private:
    std::vector<int> parts_;
};

// Partitions of n with at most max_length parts, in reverse-lexicographic order.
std::vector<Partition> partitions_of(int n, int max_length);
// All partitions of weight <= max_weight ordered by (weight, reverse-lex).
std::vector<Partition> enumerate_partitions(int max_weight, int max_length);

bool dominated_by(const Partition& mu, const Partition& kappa);

// Packed key: up to 5 parts of at most 12 bits each.
inline constexpr int kMaxPackedLength = 5;
inline constexpr int kMaxPackedPart = 4095;
std::uint64_t pack(const Partition& p);
Partition unpack(std::uint64_t key);

// (a)_τ = Π_i (a − k1(i−1))_{τ_i}
double gen_pochhammer(double a, const Partition& tau, double k1);
mpq_class gen_pochhammer(const mpq_class& a, const Partition& tau, const mpq_class& k1);

}  // namespace dunklhit
