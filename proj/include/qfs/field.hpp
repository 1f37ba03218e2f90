#pragma once

// K = Q(sqrt(-p)) for an odd prime p: discriminant, Minkowski bound and the
// splitting of 2 and of small odd primes.

#include <array>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "qfs/arith.hpp"

namespace qfs {

enum class Splitting { Ramified, Inert, Split };

inline const char* to_string(Splitting s) {
    switch (s) {
        case Splitting::Ramified: return "ramified";
        case Splitting::Inert: return "inert";
        case Splitting::Split: return "split";
    }
    return "?";
}

struct QuadField {
    u64 p = 0;
    unsigned residue_class = 0;  // p mod 8
    i64 discriminant = 0;        // -p or -4p
    double minkowski_bound = 0;  // (4/pi) sqrt p or (2/pi) sqrt p
    Splitting two_splitting = Splitting::Ramified;

    // 4 when p ≡ 1 (mod 4), else 2: the bound is (numerator/pi) * sqrt(p).
    unsigned minkowski_numerator() const { return p % 4 == 1 ? 4u : 2u; }
};

inline QuadField make_field(u64 p) {
    if (p < 3 || p > kArithLimit || !is_prime(p))
        throw std::domain_error("make_field: p must be an odd prime, got " + std::to_string(p));
    QuadField k;
    k.p = p;
    k.residue_class = static_cast<unsigned>(p % 8);
    const bool one_mod_four = p % 4 == 1;
    k.discriminant = one_mod_four ? -4 * static_cast<i64>(p) : -static_cast<i64>(p);
    k.minkowski_bound = k.minkowski_numerator() / std::numbers::pi * std::sqrt(static_cast<double>(p));
    if (one_mod_four)
        k.two_splitting = Splitting::Ramified;
    else if (k.residue_class == 3)
        k.two_splitting = Splitting::Inert;
    else
        k.two_splitting = Splitting::Split;
    return k;
}

namespace detail {

// Consecutive continued-fraction convergents of pi: lower < pi < upper.
struct PiBracket {
    i128 lo_num, lo_den, hi_num, hi_den;
};
inline constexpr std::array<PiBracket, 3> kPiBrackets{{
    {333, 106, 355, 113},
    {833719, 265381, 1146408, 364913},
    {80143857, 25510582, 245850922, 78256779},
}};

}  // namespace detail

/// q < minkowski_bound(K), decided exactly.  Far from the bound the double
/// value settles it; within one unit of it, q*pi < k*sqrt(p) is squared into
/// q^2 pi^2 < k^2 p and tested against rational brackets of pi.
inline bool below_minkowski(const QuadField& k, u64 q) {
    const double qd = static_cast<double>(q);
    if (qd + 1.0 < k.minkowski_bound) return true;
    if (qd > k.minkowski_bound + 1.0) return false;
    const i128 kk = k.minkowski_numerator();
    const i128 rhs = kk * kk * static_cast<i128>(k.p);
    const i128 q2 = static_cast<i128>(q) * q;
    for (const auto& br : detail::kPiBrackets) {
        // q^2 hi^2 < k^2 p  =>  q^2 pi^2 < k^2 p
        if (q2 * br.hi_num * br.hi_num < rhs * br.hi_den * br.hi_den) return true;
        // q^2 lo^2 >= k^2 p  =>  q^2 pi^2 > k^2 p
        if (q2 * br.lo_num * br.lo_num >= rhs * br.lo_den * br.lo_den) return false;
    }
    const long double pi = std::numbers::pi_v<long double>;
    return static_cast<long double>(q2) * pi * pi < static_cast<long double>(rhs);
}

/// Odd primes q < limit with (-p | q) = +1, ascending.
inline std::vector<u64> split_odd_primes(const QuadField& k, double limit) {
    std::vector<u64> out;
    for (u64 q = 3; static_cast<double>(q) < limit; q += 2) {
        if (!is_prime(q)) continue;
        if (jacobi(-static_cast<i64>(k.p), static_cast<i64>(q)) == 1) out.push_back(q);
    }
    return out;
}

/// split_odd_primes below the Minkowski bound, using the exact comparison.
inline std::vector<u64> split_odd_primes_below_minkowski(const QuadField& k) {
    std::vector<u64> out;
    for (u64 q = 3; below_minkowski(k, q); q += 2) {
        if (!is_prime(q)) continue;
        if (jacobi(-static_cast<i64>(k.p), static_cast<i64>(q)) == 1) out.push_back(q);
    }
    return out;
}

}  // namespace qfs
