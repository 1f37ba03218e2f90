#pragma once

// Brute-force reference implementations used only by the tests.  None of
// these share code with the library paths they check.

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <optional>
#include <set>
#include <tuple>
#include <utility>
#include <vector>

namespace oracle {

using i64 = std::int64_t;
using u64 = std::uint64_t;

inline bool is_prime(u64 n) {
    if (n < 2) return false;
    for (u64 d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

inline std::vector<std::pair<u64, unsigned>> factor(u64 n) {
    std::vector<std::pair<u64, unsigned>> out;
    for (u64 d = 2; d * d <= n; ++d) {
        unsigned e = 0;
        while (n % d == 0) {
            n /= d;
            ++e;
        }
        if (e) out.emplace_back(d, e);
    }
    if (n > 1) out.emplace_back(n, 1);
    return out;
}

inline unsigned big_omega(u64 n) {
    unsigned t = 0;
    for (auto [p, e] : factor(n)) t += e;
    return t;
}

inline unsigned small_omega(u64 n) { return static_cast<unsigned>(factor(n).size()); }

// Legendre symbol by listing squares mod an odd prime q.
inline int legendre(i64 a, i64 q) {
    const i64 r = ((a % q) + q) % q;
    if (r == 0) return 0;
    for (i64 x = 1; x < q; ++x)
        if (x * x % q == r) return 1;
    return -1;
}

struct Form {
    i64 a, b, c;
    friend bool operator==(const Form&, const Form&) = default;
    friend auto operator<=>(const Form&, const Form&) = default;
};

inline bool reduced(const Form& f) {
    const i64 ab = f.b < 0 ? -f.b : f.b;
    return ab <= f.a && f.a <= f.c && !((ab == f.a || f.a == f.c) && f.b < 0);
}

// Reduced primitive forms by direct enumeration of triples (a, b, c) with
// b^2 - 4ac = D.  c is looped over, not solved for.
inline std::vector<Form> reduced_forms_by_triples(i64 d) {
    std::vector<Form> out;
    const i64 nd = -d;
    for (i64 a = 1; 3 * a * a <= nd; ++a)
        for (i64 c = a; 4 * a * c <= nd + a * a; ++c)
            for (i64 b = -a; b <= a; ++b) {
                if (b * b - 4 * a * c != d) continue;
                const Form f{a, b, c};
                if (!reduced(f)) continue;
                if (std::gcd(std::gcd(a, b < 0 ? -b : b), c) != 1) continue;
                out.push_back(f);
            }
    std::sort(out.begin(), out.end());
    return out;
}

// f(px + qy, rx + sy) for an integral matrix [[p, q], [r, s]].
inline Form transform(const Form& f, i64 p, i64 q, i64 r, i64 s) {
    return {f.a * p * p + f.b * p * r + f.c * r * r, 2 * f.a * p * q + f.b * (p * s + q * r) + 2 * f.c * r * s,
            f.a * q * q + f.b * q * s + f.c * s * s};
}

// Every image of f under SL2(Z) matrices with entries in [-bound, bound].
inline std::vector<Form> small_orbit(const Form& f, i64 bound) {
    std::vector<Form> out;
    for (i64 p = -bound; p <= bound; ++p)
        for (i64 q = -bound; q <= bound; ++q)
            for (i64 r = -bound; r <= bound; ++r)
                for (i64 s = -bound; s <= bound; ++s)
                    if (p * s - q * r == 1) out.push_back(transform(f, p, q, r, s));
    return out;
}

// Reduced representative found by searching a small SL2(Z) neighbourhood.
inline std::optional<Form> reduce_by_search(const Form& f, i64 bound = 4) {
    for (const Form& g : small_orbit(f, bound))
        if (reduced(g)) return g;
    return std::nullopt;
}

// Dirichlet composition: find an equivalent g' of g with
// gcd(a1, a2, (b1+b2)/2) = 1, then search B directly for the united form.
inline std::optional<Form> compose_dirichlet(const Form& f, const Form& g) {
    const i64 d = f.b * f.b - 4 * f.a * f.c;
    for (const Form& g2 : small_orbit(g, 3)) {
        if (g2.a <= 0) continue;
        const i64 e = (f.b + g2.b) / 2;
        if (std::gcd(std::gcd(f.a, g2.a), e < 0 ? -e : e) != 1) continue;
        const i64 a3 = f.a * g2.a;
        for (i64 bb = -a3; bb <= a3; ++bb) {
            if (((bb - f.b) % (2 * f.a)) != 0 || ((bb - g2.b) % (2 * g2.a)) != 0) continue;
            if ((bb * bb - d) % (4 * a3) != 0) continue;
            const Form h{a3, bb, (bb * bb - d) / (4 * a3)};
            // Reduce by plain repeated search; the composite is small.
            Form cur = h;
            for (int iter = 0; iter < 64 && !reduced(cur); ++iter) {
                // normalize b into (-a, a]
                while (cur.b > cur.a) cur = transform(cur, 1, -1, 0, 1);
                while (cur.b <= -cur.a) cur = transform(cur, 1, 1, 0, 1);
                if (cur.a > cur.c) cur = transform(cur, 0, -1, 1, 0);
                else if (cur.a == cur.c && cur.b < 0) cur.b = -cur.b;
            }
            if (reduced(cur)) return cur;
        }
    }
    return std::nullopt;
}

inline Form principal(i64 d) { return d % 4 == 0 ? Form{1, 0, -d / 4} : Form{1, 1, (1 - d) / 4}; }

inline i64 order_by_powers(const Form& f) {
    const i64 d = f.b * f.b - 4 * f.a * f.c;
    const Form one = principal(d);
    Form acc = f;
    i64 k = 1;
    while (!(acc == one)) {
        acc = *compose_dirichlet(acc, f);
        ++k;
    }
    return k;
}

// Fundamental discriminant test straight from the definition.
inline bool fundamental(i64 d) {
    auto squarefree = [](u64 n) {
        for (u64 q = 2; q * q <= n; ++q)
            if (n % (q * q) == 0) return false;
        return true;
    };
    const i64 r = ((d % 4) + 4) % 4;
    if (r == 1) return squarefree(static_cast<u64>(-d));
    if (r != 0) return false;
    const i64 m = d / 4;
    const i64 mr = ((m % 4) + 4) % 4;
    return (mr == 2 || mr == 3) && squarefree(static_cast<u64>(-m));
}

}  // namespace oracle
