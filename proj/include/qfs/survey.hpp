#pragma once

// Survivor search: odd primes p such that p + x^2 has at most two distinct
// prime factors for every odd x with x^2 < p.  Each survivor is annotated
// with its class group, its Ono invariant (p ≡ 7 mod 8) and the structural
// checks that apply to its residue class mod 8.

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <exception>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include "qfs/arith.hpp"
#include "qfs/field.hpp"
#include "qfs/ono.hpp"
#include "qfs/quadform.hpp"

namespace qfs {

struct WitnessEntry {
    u64 x = 0;
    u64 value = 0;  // p + x^2
    FactoredInteger factorization;
    unsigned omega = 0;

    friend bool operator==(const WitnessEntry&, const WitnessEntry&) = default;
};

struct SurvivorRecord {
    u64 p = 0;
    unsigned residue_class = 0;
    std::vector<WitnessEntry> witnesses;  // every odd x with x^2 < p, ascending
    i64 h = 0;
    std::vector<i64> invariant_factors;
    std::optional<unsigned> ono_d;  // present iff p ≡ 7 (mod 8)
    std::map<std::string, bool> case_checks;
    // p ≡ 7 (mod 8) and not one of the fourteen known values.
    bool unexpected = false;

    friend bool operator==(const SurvivorRecord&, const SurvivorRecord&) = default;
};

struct PredicateResult {
    std::optional<SurvivorRecord> record;
    std::optional<WitnessEntry> first_failure;
};

/// The fourteen known survivors with p ≡ 7 (mod 8).
inline const std::vector<u64>& known_7mod8_survivors() {
    static const std::vector<u64> list{7, 23, 31, 47, 79, 103, 127, 151, 223, 463, 487, 823, 1087, 1423};
    return list;
}

// Survivor lists per residue class mod 8 (index = p mod 8).
inline const std::vector<u64>& known_survivors(unsigned residue) {
    static const std::vector<u64> r1{17, 73, 97, 193};
    static const std::vector<u64> r3{3, 11, 19, 43, 67, 163};
    static const std::vector<u64> r5{5, 13, 37};
    static const std::vector<u64> none;
    switch (residue) {
        case 1: return r1;
        case 3: return r3;
        case 5: return r5;
        case 7: return known_7mod8_survivors();
        default: return none;
    }
}

namespace detail {

inline void require_residue(const SurvivorRecord& rec, unsigned want, const char* what) {
    if (rec.residue_class != want)
        throw std::domain_error(std::string(what) + ": record has p ≡ " + std::to_string(rec.residue_class) +
                                " (mod 8), expected " + std::to_string(want));
}

inline void require_odd_prime(u64 p, const char* what) {
    if (p < 3 || p > kArithLimit || !is_prime(p))
        throw std::domain_error(std::string(what) + ": p must be an odd prime, got " + std::to_string(p));
}

inline bool is_twice_prime(const FactoredInteger& f) {
    return f.factors.size() == 2 && f.factors[0] == PrimePower{2, 1} && f.factors[1].exponent == 1;
}

inline bool is_twice_prime_or_prime_square(const FactoredInteger& f) {
    return f.factors.size() == 2 && f.factors[0] == PrimePower{2, 1} &&
           (f.factors[1].exponent == 1 || f.factors[1].exponent == 2);
}

}  // namespace detail

/// Smallest odd x with x^2 < p and p + x^2 = 8 t^2.
inline std::optional<std::pair<u64, u64>> witness_8t2(u64 p) {
    if (p % 8 != 7) throw std::domain_error("witness_8t2: p must be 7 mod 8, got " + std::to_string(p));
    for (u64 x = 1; x * x < p; x += 2) {
        const u64 v = p + x * x;
        u64 t = 0;
        if (v % 8 == 0 && is_square(v / 8, &t)) return std::pair{x, t};
    }
    return std::nullopt;
}

/// Smallest odd x with x^2 < p and p + x^2 = 2 y^2.
inline std::optional<std::pair<u64, u64>> witness_2y2(u64 p) {
    if (p % 8 != 1) throw std::domain_error("witness_2y2: p must be 1 mod 8, got " + std::to_string(p));
    for (u64 x = 1; x * x < p; x += 2) {
        const u64 v = p + x * x;
        u64 y = 0;
        if (v % 2 == 0 && is_square(v / 2, &y)) return std::pair{x, y};
    }
    return std::nullopt;
}

// Named sub-checks per residue class.  The check_case_* functions return
// their conjunction.
inline std::map<std::string, bool> case_subchecks(const SurvivorRecord& rec) {
    std::map<std::string, bool> out;
    const auto all_values = [&](auto pred) {
        return std::all_of(rec.witnesses.begin(), rec.witnesses.end(),
                           [&](const WitnessEntry& w) { return pred(w.factorization); });
    };
    switch (rec.residue_class) {
        case 5:
            out["values_twice_prime"] = all_values(detail::is_twice_prime);
            out["class_number_2"] = rec.h == 2;
            break;
        case 1:
            out["values_twice_prime_or_square"] = all_values(detail::is_twice_prime_or_prime_square);
            out["group_cyclic_4"] = rec.h == 4 && rec.invariant_factors == std::vector<i64>{4};
            out["witness_2y2"] = witness_2y2(rec.p).has_value();
            break;
        case 3:
            out["no_split_below_minkowski"] = split_odd_primes_below_minkowski(make_field(rec.p)).empty();
            out["class_number_1"] = rec.h == 1;
            break;
        case 7:
            out["ono_equals_h"] = rec.ono_d.has_value() && static_cast<i64>(*rec.ono_d) == rec.h;
            out["witness_8t2"] = witness_8t2(rec.p).has_value();
            break;
        default:
            break;
    }
    return out;
}

namespace detail {
inline bool all_true(const std::map<std::string, bool>& m) {
    return std::all_of(m.begin(), m.end(), [](const auto& kv) { return kv.second; });
}
}  // namespace detail

/// Every witness value is 2q (q prime) and h = 2.
inline bool check_case_5mod8(const SurvivorRecord& rec) {
    detail::require_residue(rec, 5, "check_case_5mod8");
    return detail::all_true(case_subchecks(rec));
}

/// Witness values are 2q or 2q^2, the class group is Z/4 and p + x^2 = 2y^2
/// has a solution.
inline bool check_case_1mod8(const SurvivorRecord& rec) {
    detail::require_residue(rec, 1, "check_case_1mod8");
    return detail::all_true(case_subchecks(rec));
}

/// No odd prime below the Minkowski bound splits, and h = 1.
inline bool check_case_3mod8(const SurvivorRecord& rec) {
    detail::require_residue(rec, 3, "check_case_3mod8");
    return detail::all_true(case_subchecks(rec));
}

/// d = h and p + x^2 = 8t^2 has a solution.
inline bool check_case_7mod8(const SurvivorRecord& rec) {
    detail::require_residue(rec, 7, "check_case_7mod8");
    return detail::all_true(case_subchecks(rec));
}

/// Residue-matched case check.
inline bool check_case(const SurvivorRecord& rec) {
    switch (rec.residue_class) {
        case 1: return check_case_1mod8(rec);
        case 3: return check_case_3mod8(rec);
        case 5: return check_case_5mod8(rec);
        case 7: return check_case_7mod8(rec);
        default: throw std::domain_error("check_case: bad residue class");
    }
}

/// Runs the predicate, stopping at the first odd x with omega(p + x^2) > 2.
/// Survivors come back fully populated.
inline PredicateResult evaluate_predicate(u64 p) {
    detail::require_odd_prime(p, "survivor_predicate");
    PredicateResult out;
    std::vector<WitnessEntry> witnesses;
    for (u64 x = 1; x * x < p; x += 2) {
        WitnessEntry w;
        w.x = x;
        w.value = p + x * x;
        w.factorization = factor(w.value);
        w.omega = w.factorization.small_omega();
        if (w.omega > 2) {
            out.first_failure = std::move(w);
            return out;
        }
        witnesses.push_back(std::move(w));
    }
    SurvivorRecord rec;
    rec.p = p;
    rec.residue_class = static_cast<unsigned>(p % 8);
    rec.witnesses = std::move(witnesses);
    const ClassGroup g = class_group(make_field(p).discriminant);
    rec.h = g.class_number;
    rec.invariant_factors = g.invariant_factors;
    if (rec.residue_class == 7) {
        // Beyond kOnoPrimeLimit the Ono values leave the 62-bit range; ono_d
        // stays empty and the d = h check reports false.
        if (p <= kOnoPrimeLimit) rec.ono_d = ono_invariant(p).d;
        const auto& known = known_7mod8_survivors();
        rec.unexpected = !std::binary_search(known.begin(), known.end(), p);
    }
    rec.case_checks = case_subchecks(rec);
    out.record = std::move(rec);
    return out;
}

inline std::optional<SurvivorRecord> survivor_predicate(u64 p) { return evaluate_predicate(p).record; }

struct SearchOptions {
    unsigned jobs = 1;
    u64 block_size = u64{1} << 16;
};

inline constexpr u64 kSearchLimit = u64{1} << 40;

namespace detail {

// Primes in [lo, hi] by a segmented sieve with the given base primes.
inline void sieve_block(u64 lo, u64 hi, const std::vector<u64>& base, std::vector<u64>& out) {
    std::vector<char> composite(hi - lo + 1, 0);
    for (u64 q : base) {
        if (q * q > hi) break;
        u64 start = std::max(q * q, (lo + q - 1) / q * q);
        for (u64 m = start; m <= hi; m += q) composite[m - lo] = 1;
    }
    for (u64 n = std::max<u64>(lo, 2); n <= hi; ++n)
        if (!composite[n - lo]) out.push_back(n);
}

inline std::vector<u64> base_primes(u64 limit) {
    std::vector<char> composite(limit + 1, 0);
    std::vector<u64> out;
    for (u64 i = 2; i <= limit; ++i) {
        if (composite[i]) continue;
        out.push_back(i);
        for (u64 j = i * i; j <= limit; j += i) composite[j] = 1;
    }
    return out;
}

}  // namespace detail

/// All survivors in [lo, hi], ascending.  The range is cut into fixed blocks
/// handed to `jobs` workers; results are merged in block order, so the output
/// does not depend on the job count.
inline std::vector<SurvivorRecord> search_range(u64 lo, u64 hi, SearchOptions opts = {}) {
    if (hi < lo) throw std::domain_error("search_range: hi < lo");
    if (lo < 2 || hi > kSearchLimit) throw std::domain_error("search_range: range must lie in [2, 2^40]");
    if (opts.block_size == 0) throw std::domain_error("search_range: block size must be positive");
    const unsigned jobs = std::max(1u, opts.jobs);
    const std::vector<u64> base = detail::base_primes(isqrt(hi) + 1);
    const u64 span = hi - lo + 1;
    const u64 nblocks = (span + opts.block_size - 1) / opts.block_size;
    std::vector<std::vector<SurvivorRecord>> per_block(nblocks);
    std::atomic<u64> next{0};
    std::vector<std::exception_ptr> errors(nblocks);

    auto worker = [&] {
        std::vector<u64> primes;
        for (u64 b = next.fetch_add(1); b < nblocks; b = next.fetch_add(1)) try {
            const u64 blo = lo + b * opts.block_size;
            const u64 bhi = std::min(hi, blo + opts.block_size - 1);
            primes.clear();
            detail::sieve_block(blo, bhi, base, primes);
            for (u64 p : primes) {
                if (p == 2) continue;
                if (auto rec = survivor_predicate(p)) per_block[b].push_back(std::move(*rec));
            }
        } catch (...) {
            errors[b] = std::current_exception();
        }
    };

    if (jobs == 1 || nblocks == 1) {
        worker();
    } else {
        std::vector<std::jthread> pool;
        const unsigned n = static_cast<unsigned>(std::min<u64>(jobs, nblocks));
        pool.reserve(n);
        for (unsigned i = 0; i < n; ++i) pool.emplace_back(worker);
    }

    for (const auto& e : errors)
        if (e) std::rethrow_exception(e);

    std::vector<SurvivorRecord> out;
    for (auto& blk : per_block)
        for (auto& r : blk) out.push_back(std::move(r));
    return out;
}

/// Smallest a with a + b = n, a <= b and Omega(ab) even.
inline std::pair<u64, u64> even_length_partition(u64 n) {
    if (n <= 3) throw std::domain_error("even_length_partition: n must exceed 3");
    if (n > kArithLimit) throw std::domain_error("even_length_partition: n out of range");
    for (u64 a = 1; a <= n / 2; ++a) {
        const u64 b = n - a;
        if ((big_omega(a) + big_omega(b)) % 2 == 0) return {a, b};
    }
    throw std::runtime_error("even_length_partition: no partition found for n = " + std::to_string(n));
}

}  // namespace qfs
