#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace dunklhit {

enum class Family { A, B, D };

std::string to_string(Family f);
Family parse_family(const std::string& s);

// Short roots (B-type e_i) carry k0; every other root carries k1.
enum class Orbit { Short = 0, Long = 1 };

template <class T>
struct BasicMultiplicity {
    T k0{};
    T k1{};
    const T& operator[](Orbit o) const { return o == Orbit::Short ? k0 : k1; }
};

using Multiplicity = BasicMultiplicity<double>;

struct Root {
    std::vector<int> v;
    Orbit orbit = Orbit::Long;
    int norm2 = 2;

    double dot(std::span<const double> x) const;
};

// (w x)_i = sign[i] * x[perm[i]]
struct SignedPermutation {
    std::vector<int> perm;
    std::vector<int> sign;

    std::vector<double> apply(std::span<const double> x) const;
    int determinant() const;
    bool operator==(const SignedPermutation&) const = default;
};

class RootSystem {
public:
    static RootSystem build(Family family, int m);

    Family family() const { return family_; }
    int rank() const { return m_; }
    const std::vector<Root>& positive_roots() const { return positive_; }
    const std::vector<Root>& simple_roots() const { return simple_; }
    std::vector<Root> all_roots() const;
    std::uint64_t weyl_order() const { return weyl_order_; }
    int orbit_count() const;
    bool reducible() const { return family_ == Family::D && m_ == 2; }

    // Explicit group elements; rank at most 4.
    const std::vector<SignedPermutation>& weyl_group() const;
    static SignedPermutation reflection(const Root& a);

    bool in_chamber(std::span<const double> x) const;
    double distance_to_boundary(std::span<const double> x) const;
    // ⟨α,x⟩/|α| for each simple root, in simple_roots() order.
    std::vector<double> wall_distances(std::span<const double> x) const;
    // Representative of the W-orbit of x in the closed chamber.
    std::vector<double> fold(std::span<const double> x) const;

    template <class T>
    T gamma_sum(const BasicMultiplicity<T>& k) const
    {
        T s{};
        for (const auto& a : positive_) s += k[a.orbit];
        return s;
    }

    double weight_omega(const Multiplicity& k, std::span<const double> x) const;
    std::string label() const;

private:
    RootSystem(Family f, int m);

    Family family_;
    int m_;
    std::vector<Root> positive_;
    std::vector<Root> simple_;
    std::uint64_t weyl_order_ = 1;
    std::vector<SignedPermutation> group_;
};

double vandermonde(std::span<const double> x);
void validate_multiplicity(const Multiplicity& k);

}  // namespace dunklhit
