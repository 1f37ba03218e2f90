#pragma once

// Exact 64-bit integer arithmetic: primality, factorization, the length
// functions Omega / omega and the Jacobi symbol.
//
// Every entry point accepts integers up to 2^62.  Products are formed in
// 128-bit intermediates so no operation can overflow inside that range.

#include <algorithm>
#include <array>
#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace qfs {

using u64 = std::uint64_t;
using i64 = std::int64_t;
using u128 = unsigned __int128;
using i128 = __int128;

inline constexpr u64 kArithLimit = u64{1} << 62;

struct PrimePower {
    u64 prime = 0;
    unsigned exponent = 0;

    friend bool operator==(const PrimePower&, const PrimePower&) = default;
};

/// An integer together with its standard decomposition p_1^a_1 ... p_r^a_r,
/// primes strictly ascending.  n == 1 has no factors.
struct FactoredInteger {
    u64 n = 1;
    std::vector<PrimePower> factors;

    unsigned big_omega() const {
        unsigned total = 0;
        for (const auto& f : factors) total += f.exponent;
        return total;
    }
    unsigned small_omega() const { return static_cast<unsigned>(factors.size()); }

    u64 product() const {
        u128 acc = 1;
        for (const auto& f : factors)
            for (unsigned i = 0; i < f.exponent; ++i) acc *= f.prime;
        return static_cast<u64>(acc);
    }

    friend bool operator==(const FactoredInteger&, const FactoredInteger&) = default;
};

namespace detail {

inline void check_range(u64 n, const char* what) {
    if (n == 0 || n > kArithLimit)
        throw std::domain_error(std::string(what) + ": argument must lie in [1, 2^62], got " +
                                std::to_string(n));
}

inline u64 mul_mod(u64 a, u64 b, u64 m) {
    return static_cast<u64>(static_cast<u128>(a) * b % m);
}

inline u64 pow_mod(u64 base, u64 exp, u64 m) {
    u64 result = 1 % m;
    base %= m;
    while (exp) {
        if (exp & 1) result = mul_mod(result, base, m);
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    return result;
}

// Strong probable-prime test to base a; n odd, n > 2.
inline bool sprp(u64 n, u64 a) {
    a %= n;
    if (a == 0) return true;
    u64 d = n - 1;
    unsigned s = 0;
    while ((d & 1) == 0) {
        d >>= 1;
        ++s;
    }
    u64 x = pow_mod(a, d, n);
    if (x == 1 || x == n - 1) return true;
    for (unsigned i = 1; i < s; ++i) {
        x = mul_mod(x, x, n);
        if (x == n - 1) return true;
        if (x == 1) return false;
    }
    return false;
}

inline constexpr u64 kTrialBound = u64{1} << 16;

// Primes below 2^16, built once.
inline const std::vector<std::uint32_t>& small_primes() {
    static const std::vector<std::uint32_t> table = [] {
        std::vector<bool> composite(kTrialBound, false);
        std::vector<std::uint32_t> out;
        for (u64 i = 2; i < kTrialBound; ++i) {
            if (composite[i]) continue;
            out.push_back(static_cast<std::uint32_t>(i));
            for (u64 j = i * i; j < kTrialBound; j += i) composite[j] = true;
        }
        return out;
    }();
    return table;
}

inline bool is_prime_unchecked(u64 n) {
    if (n < 2) return false;
    static constexpr std::array<u64, 12> kSmall{2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37};
    for (u64 p : kSmall) {
        if (n == p) return true;
        if (n % p == 0) return false;
    }
    if (n < 41 * 41) return true;
    // Jim Sinclair's base set; deterministic for every n < 2^64.
    static constexpr std::array<u64, 7> kBases{2, 325, 9375, 28178, 450775, 9780504, 1795265022};
    for (u64 a : kBases)
        if (!sprp(n, a)) return false;
    return true;
}

// Brent's cycle-finding variant of Pollard rho.  n is odd, composite and has
// no prime factor below 2^16.  The polynomial constant c is stepped through
// 1, 2, 3, ... whenever a run collapses to the trivial divisor n, so the
// result is a deterministic function of n.
inline u64 rho_brent(u64 n) {
    constexpr u64 kBatch = 128;
    for (u64 c = 1;; ++c) {
        auto step = [&](u64 v) { return (mul_mod(v, v, n) + c) % n; };
        u64 y = 2, x = 2, ys = 2, q = 1, g = 1;
        for (u64 r = 1; g == 1; r <<= 1) {
            x = y;
            for (u64 i = 0; i < r; ++i) y = step(y);
            for (u64 k = 0; k < r && g == 1; k += kBatch) {
                ys = y;
                const u64 lim = std::min(kBatch, r - k);
                for (u64 i = 0; i < lim; ++i) {
                    y = step(y);
                    q = mul_mod(q, x > y ? x - y : y - x, n);
                }
                g = std::gcd(q, n);
            }
        }
        if (g == n) {
            // Batch overshot; replay one step at a time from the saved point.
            do {
                ys = step(ys);
                g = std::gcd(x > ys ? x - ys : ys - x, n);
            } while (g == 1);
        }
        if (g != n) return g;
    }
}

inline void split_large(u64 n, std::vector<u64>& out) {
    if (n == 1) return;
    if (is_prime_unchecked(n)) {
        out.push_back(n);
        return;
    }
    const u64 d = rho_brent(n);
    split_large(d, out);
    split_large(n / d, out);
}

}  // namespace detail

/// Deterministic primality for 1 <= n <= 2^62.
inline bool is_prime(u64 n) {
    detail::check_range(n, "is_prime");
    return detail::is_prime_unchecked(n);
}

/// Standard decomposition of n.  Trial division by the primes below 2^16,
/// then Brent-rho on whatever cofactor remains.
inline FactoredInteger factor(u64 n) {
    detail::check_range(n, "factor");
    FactoredInteger result;
    result.n = n;
    u64 m = n;
    const auto& primes = detail::small_primes();
    std::size_t idx = 0;
    for (; idx < primes.size(); ++idx) {
        const u64 p = primes[idx];
        if (p * p > m) break;
        if (m % p == 0) {
            unsigned e = 0;
            do {
                m /= p;
                ++e;
            } while (m % p == 0);
            result.factors.push_back({p, e});
        }
        // A cofactor that is already prime ends the scan early.
        if (idx == 24 && m > 1 && detail::is_prime_unchecked(m)) break;
    }
    if (m == 1) return result;
    if (idx == primes.size() && !detail::is_prime_unchecked(m)) {
        std::vector<u64> rest;
        detail::split_large(m, rest);
        std::sort(rest.begin(), rest.end());
        for (u64 p : rest) {
            if (!result.factors.empty() && result.factors.back().prime == p)
                ++result.factors.back().exponent;
            else
                result.factors.push_back({p, 1});
        }
        return result;
    }
    result.factors.push_back({m, 1});
    return result;
}

inline unsigned big_omega(u64 n) { return factor(n).big_omega(); }
inline unsigned small_omega(u64 n) { return factor(n).small_omega(); }

/// Jacobi symbol (a | m) for odd m >= 1.
inline int jacobi(i64 a, i64 m) {
    if (m <= 0 || (m & 1) == 0)
        throw std::domain_error("jacobi: modulus must be odd and positive, got " + std::to_string(m));
    u64 n = static_cast<u64>(m);
    i64 r = a % m;
    if (r < 0) r += m;
    u64 x = static_cast<u64>(r);
    int sign = 1;
    while (x != 0) {
        while ((x & 1) == 0) {
            x >>= 1;
            const u64 k = n & 7;
            if (k == 3 || k == 5) sign = -sign;
        }
        std::swap(x, n);
        if ((x & 3) == 3 && (n & 3) == 3) sign = -sign;
        x %= n;
    }
    return n == 1 ? sign : 0;
}

inline bool is_square(u64 n, u64* root = nullptr) {
    u64 r = static_cast<u64>(__builtin_sqrtl(static_cast<long double>(n)));
    while (r * r > n) --r;
    while ((r + 1) * (r + 1) <= n) ++r;
    if (root) *root = r;
    return r * r == n;
}

/// floor(sqrt(n)) without floating-point rounding surprises.
inline u64 isqrt(u64 n) {
    u64 r = 0;
    is_square(n, &r);
    return r;
}

}  // namespace qfs
