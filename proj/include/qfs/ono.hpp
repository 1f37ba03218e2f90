#pragma once

// Ono invariant of Q(sqrt(-p)) for primes p ≡ 7 (mod 8):
//   d = max { Omega(((2n+1)^2 + p) / 4) : 0 <= n <= (p-7)/4 }

#include <optional>
#include <stdexcept>
#include <string>

#include "qfs/arith.hpp"
#include "qfs/quadform.hpp"

namespace qfs {

struct OnoResult {
    u64 p = 0;
    unsigned d = 0;
    u64 argmax_n = 0;  // smallest n attaining d
    i64 h = 0;         // class number of Q(sqrt(-p))
    bool truncated = false;  // enumeration stopped once d reached h
};

struct OnoOptions {
    // Stop enumerating as soon as d >= h.  argmax_n is then the first n that
    // reached h rather than the overall maximiser.
    bool stop_at_class_number = false;
};

// Largest p for which ((2n+1)^2 + p)/4 stays below 2^62.
inline constexpr u64 kOnoPrimeLimit = u64{1} << 31;

inline OnoResult ono_invariant(u64 p, OnoOptions opts = {}) {
    if (p % 8 != 7)
        throw std::domain_error("ono_invariant: p must be 7 mod 8, got " + std::to_string(p));
    if (p > kOnoPrimeLimit || !is_prime(p))
        throw std::domain_error("ono_invariant: p must be a prime below 2^31, got " + std::to_string(p));
    OnoResult r;
    r.p = p;
    r.h = class_number(-static_cast<i64>(p));
    const u64 last = (p - 7) / 4;
    for (u64 n = 0; n <= last; ++n) {
        const u64 odd = 2 * n + 1;
        const unsigned len = big_omega((odd * odd + p) / 4);
        if (len > r.d) {
            r.d = len;
            r.argmax_n = n;
        }
        if (opts.stop_at_class_number && static_cast<i64>(r.d) >= r.h) {
            r.truncated = n < last;
            break;
        }
    }
    return r;
}

/// Sasaki's inequality d <= h for Q(sqrt(-p)).
inline bool sasaki_check(u64 p) {
    const OnoResult r = ono_invariant(p, {.stop_at_class_number = false});
    return static_cast<i64>(r.d) <= r.h;
}

}  // namespace qfs
