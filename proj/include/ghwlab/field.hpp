#pragma once

#include <cstdint>
#include <memory>
#include <numeric>
#include <vector>

#include "ghwlab/errors.hpp"

namespace ghwlab {

// Elements of F_{p^m} are stored as their index c0 + c1*p + ... + c_{m-1}*p^{m-1}
// in the polynomial basis {1, x, ..., x^{m-1}}. Index 0 is the zero element.
using felem = std::uint32_t;

inline constexpr long long kDefaultFieldGuard = 1'000'000;

namespace detail {

inline bool is_prime(long long n) {
    if (n < 2) return false;
    for (long long d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

inline long long ipow_checked(long long base, int exp, long long limit) {
    long long r = 1;
    for (int i = 0; i < exp; ++i) {
        if (r > limit / base) return limit + 1;
        r *= base;
    }
    return r;
}

inline long long mod_inverse(long long a, long long p) {
    long long t = 0, nt = 1, r = p, nr = a % p;
    while (nr != 0) {
        long long quot = r / nr;
        t -= quot * nt;
        std::swap(t, nt);
        r -= quot * nr;
        std::swap(r, nr);
    }
    return ((t % p) + p) % p;
}

// Dense polynomials over Z_p, coefficients ascending, no trailing zeros.
using Poly = std::vector<long long>;

inline void poly_trim(Poly& a) {
    while (!a.empty() && a.back() == 0) a.pop_back();
}

inline Poly poly_mod(Poly a, const Poly& f, long long p) {
    // f is monic.
    const int df = static_cast<int>(f.size()) - 1;
    poly_trim(a);
    while (static_cast<int>(a.size()) - 1 >= df) {
        long long lead = a.back() % p;
        int shift = static_cast<int>(a.size()) - 1 - df;
        if (lead != 0) {
            for (int j = 0; j <= df; ++j) {
                a[j + shift] = ((a[j + shift] - lead * f[j]) % p + p) % p;
            }
        }
        a.pop_back();
        poly_trim(a);
    }
    return a;
}

inline Poly poly_mulmod(const Poly& a, const Poly& b, const Poly& f, long long p) {
    if (a.empty() || b.empty()) return {};
    Poly c(a.size() + b.size() - 1, 0);
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i] == 0) continue;
        for (std::size_t j = 0; j < b.size(); ++j) {
            c[i + j] = (c[i + j] + a[i] * b[j]) % p;
        }
    }
    return poly_mod(std::move(c), f, p);
}

inline Poly poly_powmod(Poly base, long long e, const Poly& f, long long p) {
    Poly result{1};
    base = poly_mod(std::move(base), f, p);
    while (e > 0) {
        if (e & 1) result = poly_mulmod(result, base, f, p);
        base = poly_mulmod(base, base, f, p);
        e >>= 1;
    }
    return result;
}

inline Poly poly_gcd(Poly a, Poly b, long long p) {
    poly_trim(a);
    poly_trim(b);
    while (!b.empty()) {
        // Reduce a mod b after making b monic.
        long long inv = mod_inverse(b.back(), p);
        Poly bm = b;
        for (auto& c : bm) c = c * inv % p;
        Poly r = poly_mod(a, bm, p);
        a = std::move(b);
        b = std::move(r);
    }
    return a;
}

inline std::vector<long long> prime_factors(long long n) {
    std::vector<long long> fs;
    for (long long d = 2; d * d <= n; ++d) {
        if (n % d == 0) {
            fs.push_back(d);
            while (n % d == 0) n /= d;
        }
    }
    if (n > 1) fs.push_back(n);
    return fs;
}

// Degree-m monic f over Z_p, given as full coefficient vector (size m+1).
inline bool poly_irreducible(const Poly& f, long long p) {
    const int m = static_cast<int>(f.size()) - 1;
    if (m == 1) return true;
    if (m <= 3) {
        // Degrees 2 and 3 are reducible exactly when they have a root.
        for (long long a = 0; a < p; ++a) {
            long long v = 0, pw = 1;
            for (int j = 0; j <= m; ++j) {
                v = (v + f[j] * pw) % p;
                pw = pw * a % p;
            }
            if (v == 0) return false;
        }
        return true;
    }
    // Rabin test: x^{p^m} = x (mod f) and gcd(x^{p^{m/l}} - x, f) = 1 for
    // every prime l | m. Frobenius powers are taken iteratively.
    Poly x{0, 1};
    std::vector<Poly> frob(m + 1);  // frob[i] = x^{p^i} mod f
    frob[0] = x;
    for (int i = 1; i <= m; ++i) frob[i] = poly_powmod(frob[i - 1], p, f, p);
    if (frob[m] != poly_mod(x, f, p)) return false;
    for (long long l : prime_factors(m)) {
        Poly g = frob[m / l];
        // g - x
        if (g.size() < 2) g.resize(2, 0);
        g[1] = ((g[1] - 1) % p + p) % p;
        poly_trim(g);
        Poly d = poly_gcd(f, g, p);
        if (static_cast<int>(d.size()) - 1 != 0) return false;
    }
    return true;
}

}  // namespace detail

// Immutable description of F_{p^m} with cached exp/log/trace tables.
// Construction is deterministic: the modulus is the lexicographically smallest
// monic irreducible of degree m (coefficient tuple (c0,...,c_{m-1}) compared
// low-degree-first), and alpha is the smallest-index element of order q-1.
struct FieldCtx {
    long long p = 0;
    int m = 0;
    long long q = 0;
    std::vector<int> modulus;            // size m+1, ascending coefficients, monic
    felem alpha = 0;
    std::vector<felem> exp_table;        // size q-1: i -> alpha^i
    std::vector<felem> log_table;        // size q: element -> i (log of 0 is invalid)
    std::vector<int> trace_table;        // size q: element -> Tr in [0, p)
    std::vector<int> trace_basis;        // size m: Tr(x^j)
    std::vector<int> trace_of_exp;       // size q-1: Tr(alpha^i)
    std::vector<long long> p_pow;        // p^0 .. p^m

    static constexpr felem kNoLog = 0xFFFFFFFFu;

    felem zero() const { return 0; }
    felem one() const { return 1; }

    // Embeds an integer c as the constant-polynomial element (c mod p).
    felem scalar(long long c) const {
        long long v = ((c % p) + p) % p;
        return static_cast<felem>(v);
    }

    felem basis_element(int j) const { return static_cast<felem>(p_pow[j]); }

    std::vector<int> coeffs(felem a) const {
        std::vector<int> c(m);
        long long v = a;
        for (int j = 0; j < m; ++j) {
            c[j] = static_cast<int>(v % p);
            v /= p;
        }
        return c;
    }

    felem from_coeffs(const std::vector<int>& c) const {
        long long v = 0;
        for (int j = m - 1; j >= 0; --j) v = v * p + (((c[j] % p) + p) % p);
        return static_cast<felem>(v);
    }

    felem add(felem a, felem b) const {
        long long r = 0, va = a, vb = b;
        for (int j = 0; j < m; ++j) {
            long long s = (va % p + vb % p) % p;
            r += s * p_pow[j];
            va /= p;
            vb /= p;
        }
        return static_cast<felem>(r);
    }

    felem neg(felem a) const {
        long long r = 0, va = a;
        for (int j = 0; j < m; ++j) {
            long long s = (p - va % p) % p;
            r += s * p_pow[j];
            va /= p;
        }
        return static_cast<felem>(r);
    }

    felem sub(felem a, felem b) const { return add(a, neg(b)); }

    felem mul(felem a, felem b) const {
        if (a == 0 || b == 0) return 0;
        long long s = static_cast<long long>(log_table[a]) + log_table[b];
        if (s >= q - 1) s -= q - 1;
        return exp_table[s];
    }

    felem inv(felem a) const {
        if (a == 0) throw ZeroHasNoLog();
        long long l = log_table[a];
        return exp_table[l == 0 ? 0 : q - 1 - l];
    }

    // pow(a, 0) = 1 by convention, including a = 0.
    felem pow(felem a, long long e) const {
        if (e == 0) return 1;
        if (a == 0) {
            if (e < 0) throw ZeroHasNoLog();
            return 0;
        }
        long long l = log_table[a];
        long long ord = q - 1;
        long long le = ((static_cast<__int128>(l) * (e % ord)) % ord + ord) % ord;
        return exp_table[le];
    }

    int trace(felem a) const { return trace_table[a]; }

    long long dlog(felem a) const {
        if (a == 0) throw ZeroHasNoLog();
        return log_table[a];
    }

    // Trace recomputed from its definition sum_{i<m} a^{p^i}; used by tests to
    // cross-check the table route.
    int trace_by_frobenius(felem a) const {
        felem s = 0;
        felem t = a;
        for (int i = 0; i < m; ++i) {
            s = add(s, t);
            t = pow(t, p);
        }
        // s must be a constant polynomial.
        if (s >= static_cast<felem>(p)) throw MathCheckError("trace is not in the prime field");
        return static_cast<int>(s);
    }
};

inline std::shared_ptr<const FieldCtx> build_field(long long p, int m,
                                                   long long size_guard = kDefaultFieldGuard) {
    if (p < 3 || p % 2 == 0 || !detail::is_prime(p)) throw NotOddPrime(p);
    if (m < 1) throw PreconditionError("m must be >= 1");
    long long q = detail::ipow_checked(p, m, size_guard);
    if (q > size_guard) throw SizeGuardExceeded(q, size_guard);

    auto ctx = std::make_shared<FieldCtx>();
    FieldCtx& F = *ctx;
    F.p = p;
    F.m = m;
    F.q = q;
    F.p_pow.resize(m + 1);
    F.p_pow[0] = 1;
    for (int j = 1; j <= m; ++j) F.p_pow[j] = F.p_pow[j - 1] * p;

    // Lexicographically smallest monic irreducible of degree m. Candidates are
    // ordered by the tuple (c0,...,c_{m-1}) with c0 most significant.
    detail::Poly f;
    {
        for (long long t = 0; t < q; ++t) {
            detail::Poly cand(m + 1, 0);
            cand[m] = 1;
            long long v = t;
            for (int j = 0; j < m; ++j) {  // digit (m-1-j) of t is c_j
                cand[m - 1 - j] = v % p;
                v /= p;
            }
            if (detail::poly_irreducible(cand, p)) {
                f = std::move(cand);
                break;
            }
        }
        F.modulus.assign(f.begin(), f.end());
    }

    auto poly_to_rank = [&](const detail::Poly& a) {
        long long r = 0;
        for (std::size_t j = 0; j < a.size(); ++j) r += a[j] * F.p_pow[j];
        return static_cast<felem>(r);
    };
    auto rank_to_poly = [&](felem a) {
        detail::Poly c(m);
        long long v = a;
        for (int j = 0; j < m; ++j) {
            c[j] = v % p;
            v /= p;
        }
        detail::poly_trim(c);
        return c;
    };

    // alpha: smallest-index element of multiplicative order exactly q-1.
    const auto factors = detail::prime_factors(q - 1);
    detail::Poly alpha_poly;
    for (long long a = 1; a < q; ++a) {
        detail::Poly cand = rank_to_poly(static_cast<felem>(a));
        bool primitive = true;
        for (long long l : factors) {
            if (detail::poly_powmod(cand, (q - 1) / l, f, p) == detail::Poly{1}) {
                primitive = false;
                break;
            }
        }
        if (primitive) {
            F.alpha = static_cast<felem>(a);
            alpha_poly = std::move(cand);
            break;
        }
    }
    if (F.alpha == 0) throw MathCheckError("no primitive element found");

    F.exp_table.resize(q - 1);
    F.log_table.assign(q, FieldCtx::kNoLog);
    detail::Poly cur{1};
    for (long long i = 0; i < q - 1; ++i) {
        felem r = poly_to_rank(cur);
        F.exp_table[i] = r;
        if (F.log_table[r] != FieldCtx::kNoLog)
            throw MathCheckError("alpha does not have order q-1");
        F.log_table[r] = static_cast<felem>(i);
        cur = detail::poly_mulmod(cur, alpha_poly, f, p);
    }
    if (cur != detail::Poly{1}) throw MathCheckError("exp table did not close");

    // Trace of the basis monomials via Frobenius powers: Tr(x^j) is the
    // constant polynomial sum_i (x^{p^i})^j mod f.
    {
        std::vector<detail::Poly> frob(m);
        frob[0] = detail::poly_mod(detail::Poly{0, 1}, f, p);
        for (int i = 1; i < m; ++i) frob[i] = detail::poly_powmod(frob[i - 1], p, f, p);
        std::vector<detail::Poly> g(m, detail::Poly{1});
        F.trace_basis.resize(m);
        for (int j = 0; j < m; ++j) {
            detail::Poly s;
            for (int i = 0; i < m; ++i) {
                if (g[i].size() > s.size()) s.resize(g[i].size(), 0);
                for (std::size_t t = 0; t < g[i].size(); ++t) s[t] = (s[t] + g[i][t]) % p;
            }
            detail::poly_trim(s);
            if (s.size() > 1) throw MathCheckError("trace of basis element is not scalar");
            F.trace_basis[j] = s.empty() ? 0 : static_cast<int>(s[0]);
            if (j + 1 < m)
                for (int i = 0; i < m; ++i) g[i] = detail::poly_mulmod(g[i], frob[i], f, p);
        }
    }

    F.trace_table.resize(q);
    for (long long a = 0; a < q; ++a) {
        long long v = a, t = 0;
        for (int j = 0; j < m; ++j) {
            t += (v % p) * F.trace_basis[j];
            v /= p;
        }
        F.trace_table[a] = static_cast<int>(t % p);
    }
    F.trace_of_exp.resize(q - 1);
    for (long long i = 0; i < q - 1; ++i) F.trace_of_exp[i] = F.trace_table[F.exp_table[i]];

    return ctx;
}

}  // namespace ghwlab
