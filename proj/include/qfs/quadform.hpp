#pragma once

// Positive definite binary quadratic forms a x^2 + b x y + c y^2 of negative
// discriminant D = b^2 - 4ac.  Class groups are computed by enumerating
// reduced forms and composing them with the classical Gauss algorithm, which
// is plenty for the small class numbers that occur here.

#include <algorithm>
#include <cstdint>
#include <map>
#include <numeric>
#include <ostream>
#include <stdexcept>
#include <string>
#include <tuple>
#include <vector>

#include "qfs/arith.hpp"

namespace qfs {

struct QuadraticForm {
    i64 a = 1;
    i64 b = 0;
    i64 c = 1;

    i64 discriminant() const {
        return static_cast<i64>(static_cast<i128>(b) * b - static_cast<i128>(4) * a * c);
    }
    bool is_positive_definite() const { return a > 0 && c > 0 && discriminant() < 0; }
    bool is_primitive() const { return std::gcd(std::gcd(a, b), c) == 1; }
    bool is_reduced() const {
        const i64 ab = b < 0 ? -b : b;
        if (!(ab <= a && a <= c)) return false;
        if ((ab == a || a == c) && b < 0) return false;
        return true;
    }

    friend bool operator==(const QuadraticForm&, const QuadraticForm&) = default;
    friend auto operator<=>(const QuadraticForm& l, const QuadraticForm& r) {
        return std::tie(l.a, l.b, l.c) <=> std::tie(r.a, r.b, r.c);
    }
    friend std::ostream& operator<<(std::ostream& os, const QuadraticForm& f) {
        return os << '(' << f.a << ',' << f.b << ',' << f.c << ')';
    }
};

struct ClassGroup {
    i64 discriminant = 0;
    std::vector<QuadraticForm> reduced_forms;
    std::vector<i64> orders;  // orders[i] is the order of reduced_forms[i]
    i64 class_number = 0;
    std::vector<i64> invariant_factors;  // d_1 | d_2 | ..., product == class_number

    bool is_cyclic() const { return invariant_factors.size() == 1; }

    /// "4", "2x2", "1" for the trivial group.
    std::string structure() const {
        std::string out;
        for (std::size_t i = 0; i < invariant_factors.size(); ++i) {
            if (i) out += 'x';
            out += std::to_string(invariant_factors[i]);
        }
        return out;
    }
};

namespace detail {

inline i64 disc_abs_bound() { return static_cast<i64>(kArithLimit); }

inline void check_discriminant(i64 d, const char* what) {
    if (d >= 0) throw std::domain_error(std::string(what) + ": discriminant must be negative");
    if (d < -disc_abs_bound())
        throw std::domain_error(std::string(what) + ": discriminant out of range");
    const i64 r = ((d % 4) + 4) % 4;
    if (r != 0 && r != 1)
        throw std::domain_error(std::string(what) + ": discriminant must be 0 or 1 mod 4, got " +
                                std::to_string(d));
}

inline i64 floor_div(i128 num, i128 den) {
    i128 q = num / den;
    if ((num % den != 0) && ((num < 0) != (den < 0))) --q;
    return static_cast<i64>(q);
}

// Moves b into (-a, a] by the substitution x -> x + k y.
inline void normalize(i64& a, i64& b, i64& c) {
    if (-a < b && b <= a) return;
    const i64 k = floor_div(static_cast<i128>(a) - b, static_cast<i128>(2) * a);
    const i128 nc = static_cast<i128>(a) * k * k + static_cast<i128>(b) * k + c;
    b = static_cast<i64>(b + static_cast<i128>(2) * a * k);
    c = static_cast<i64>(nc);
}

// Extended gcd for non-negative inputs: returns g and sets u, v with u*x + v*y = g.
inline i64 xgcd(i64 x, i64 y, i64& u, i64& v) {
    i64 u0 = 1, v0 = 0, u1 = 0, v1 = 1;
    while (y != 0) {
        const i64 q = x / y;
        std::tie(x, y) = std::make_tuple(y, x - q * y);
        std::tie(u0, u1) = std::make_tuple(u1, u0 - q * u1);
        std::tie(v0, v1) = std::make_tuple(v1, v0 - q * v1);
    }
    u = u0;
    v = v0;
    return x;
}

inline i64 mod_floor(i128 x, i64 m) {
    i128 r = x % m;
    if (r < 0) r += m;
    return static_cast<i64>(r);
}

}  // namespace detail

/// Unique reduced representative of the class of f: |b| <= a <= c, and
/// b >= 0 whenever |b| == a or a == c.
inline QuadraticForm reduce(QuadraticForm f) {
    if (!f.is_positive_definite())
        throw std::domain_error("reduce: form is not positive definite");
    i64 a = f.a, b = f.b, c = f.c;
    detail::normalize(a, b, c);
    while (a > c) {
        std::swap(a, c);
        b = -b;
        detail::normalize(a, b, c);
    }
    if (a == c && b < 0) b = -b;
    return {a, b, c};
}

/// The identity of the class group: (1, 0, -D/4) or (1, 1, (1-D)/4).
inline QuadraticForm principal_form(i64 d) {
    detail::check_discriminant(d, "principal_form");
    if (d % 4 == 0) return {1, 0, -d / 4};
    return {1, 1, (1 - d) / 4};
}

/// All primitive reduced forms of discriminant d, sorted by (a, b).
inline std::vector<QuadraticForm> reduced_forms(i64 d) {
    detail::check_discriminant(d, "reduced_forms");
    std::vector<QuadraticForm> out;
    const i64 parity = d & 1;  // b ≡ D (mod 2)
    const i128 nd = -static_cast<i128>(d);
    for (i64 a = 1; static_cast<i128>(3) * a * a <= nd; ++a) {
        const i64 four_a = 4 * a;
        i64 b = -a + 1;
        if (((b % 2) + 2) % 2 != parity) ++b;
        for (; b <= a; b += 2) {
            const i128 num = static_cast<i128>(b) * b - d;
            if (num % four_a != 0) continue;
            const i64 c = static_cast<i64>(num / four_a);
            if (c < a) continue;
            if (b < 0 && a == c) continue;
            const QuadraticForm f{a, b, c};
            if (!f.is_primitive()) continue;
            out.push_back(f);
        }
    }
    std::sort(out.begin(), out.end(),
              [](const QuadraticForm& l, const QuadraticForm& r) {
                  return std::tie(l.a, l.b) < std::tie(r.a, r.b);
              });
    return out;
}

inline i64 class_number(i64 d) { return static_cast<i64>(reduced_forms(d).size()); }

/// D ≡ 1 (mod 4) squarefree, or D = 4m with m ≡ 2, 3 (mod 4) squarefree.
inline bool is_fundamental(i64 d) {
    detail::check_discriminant(d, "is_fundamental");
    auto squarefree = [](u64 n) {
        for (const auto& f : factor(n).factors)
            if (f.exponent > 1) return false;
        return true;
    };
    const u64 nd = static_cast<u64>(-d);
    if (((d % 4) + 4) % 4 == 1) return squarefree(nd);
    const i64 m = d / 4;
    const i64 mr = ((m % 4) + 4) % 4;
    if (mr != 2 && mr != 3) return false;
    return squarefree(static_cast<u64>(-m));
}

/// Gauss composition of two classes of the same discriminant, reduced.
inline QuadraticForm compose(const QuadraticForm& f, const QuadraticForm& g) {
    if (!f.is_positive_definite() || !g.is_positive_definite())
        throw std::domain_error("compose: forms must be positive definite");
    const i64 d = f.discriminant();
    if (g.discriminant() != d)
        throw std::domain_error("compose: discriminant mismatch (" + std::to_string(d) + " vs " +
                                std::to_string(g.discriminant()) + ")");
    QuadraticForm f1 = f, f2 = g;
    if (f1.a > f2.a) std::swap(f1, f2);
    const i64 s = (f1.b + f2.b) / 2;
    const i64 n = f2.b - s;

    i64 y1 = 0, dd = f1.a;
    if (f2.a % f1.a != 0) {
        i64 u = 0, v = 0;
        dd = detail::xgcd(f2.a, f1.a, u, v);
        y1 = u;
    }
    i64 x2 = 0, y2 = -1, d1 = dd;
    if (s % dd != 0) {
        // s may be negative; xgcd works on magnitudes.
        i64 u = 0, v = 0;
        d1 = detail::xgcd(s < 0 ? -s : s, dd, u, v);
        x2 = s < 0 ? -u : u;
        y2 = -v;
    }
    const i64 v1 = f1.a / d1;
    const i64 v2 = f2.a / d1;
    const i64 r = detail::mod_floor(static_cast<i128>(y1) * y2 * n - static_cast<i128>(x2) * f2.c, v1);
    const i128 b3 = static_cast<i128>(f2.b) + static_cast<i128>(2) * v2 * r;
    const i128 a3 = static_cast<i128>(v1) * v2;
    const i128 c3 = (b3 * b3 - d) / (4 * a3);
    return reduce({static_cast<i64>(a3), static_cast<i64>(b3), static_cast<i64>(c3)});
}

inline QuadraticForm inverse(const QuadraticForm& f) { return reduce({f.a, -f.b, f.c}); }

/// Order of the class of f in the form class group of its discriminant.
inline i64 form_order(const QuadraticForm& f) {
    const QuadraticForm base = reduce(f);
    if (!base.is_primitive()) throw std::domain_error("form_order: form is not primitive");
    const QuadraticForm one = principal_form(base.discriminant());
    QuadraticForm acc = base;
    i64 order = 1;
    while (acc != one) {
        acc = compose(acc, base);
        ++order;
    }
    return order;
}

namespace detail {

// Invariant factors of a finite abelian group from the order of every
// element.  For each prime l | h, the number of elements whose order divides
// l^k is l^(sum_i min(k, e_i)), which pins down the exponents e_i of the
// l-primary part.
inline std::vector<i64> invariant_factors_from_orders(const std::vector<i64>& orders) {
    const i64 h = static_cast<i64>(orders.size());
    if (h == 1) return {1};
    std::vector<std::vector<unsigned>> primary;  // per prime, exponents descending
    std::vector<i64> primes;
    for (const auto& pf : factor(static_cast<u64>(h)).factors) {
        const i64 l = static_cast<i64>(pf.prime);
        std::vector<unsigned> sums{0};
        i64 lk = 1;
        for (unsigned k = 1; k <= pf.exponent; ++k) {
            lk *= l;
            i64 count = 0;
            for (i64 o : orders)
                if (lk % o == 0) ++count;
            unsigned s = 0;
            while (count > 1) {
                count /= l;
                ++s;
            }
            sums.push_back(s);
        }
        // number of cyclic factors with exponent >= k is sums[k] - sums[k-1]
        std::vector<unsigned> exps;
        for (unsigned k = pf.exponent; k >= 1; --k) {
            const unsigned ge_k = sums[k] - sums[k - 1];
            const unsigned ge_k1 = k < pf.exponent ? sums[k + 1] - sums[k] : 0;
            for (unsigned i = 0; i < ge_k - ge_k1; ++i) exps.push_back(k);
        }
        primes.push_back(l);
        primary.push_back(exps);
    }
    std::size_t rank = 0;
    for (const auto& e : primary) rank = std::max(rank, e.size());
    std::vector<i64> out(rank, 1);
    // Largest invariant factor takes the largest exponent of every prime.
    for (std::size_t j = 0; j < primes.size(); ++j) {
        const auto& exps = primary[j];
        for (std::size_t i = 0; i < exps.size(); ++i) {
            i64 pw = 1;
            for (unsigned t = 0; t < exps[i]; ++t) pw *= primes[j];
            out[rank - 1 - i] *= pw;
        }
    }
    return out;
}

}  // namespace detail

/// Reduced forms, class number and invariant-factor decomposition of the
/// form class group of discriminant d.
inline ClassGroup class_group(i64 d) {
    ClassGroup g;
    g.discriminant = d;
    g.reduced_forms = reduced_forms(d);
    g.class_number = static_cast<i64>(g.reduced_forms.size());
    g.orders.reserve(g.reduced_forms.size());
    for (const auto& f : g.reduced_forms) g.orders.push_back(form_order(f));
    g.invariant_factors = detail::invariant_factors_from_orders(g.orders);
    return g;
}

}  // namespace qfs
