#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <memory>
#include <numeric>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "ghwlab/errors.hpp"
#include "ghwlab/field.hpp"
#include "ghwlab/rational.hpp"

namespace ghwlab {

// Parameters of the cyclotomic setup for a divisor N of q-1:
//   n1 = (q-1)/N,  N1 = gcd(N, (q-1)/(p-1)),  N2 = lcm(N, (q-1)/(p-1)),
//   n2 = N2/N,  theta = alpha^N.
// ord_ok records whether m is the least positive integer with
// p^m = 1 (mod n1), the standing assumption for families A and B.
struct CyclotomyParams {
    std::shared_ptr<const FieldCtx> ctx;
    long long N = 0;
    long long n1 = 0;
    long long N1 = 0;
    long long N2 = 0;
    long long n2 = 0;
    felem theta = 0;
    bool ord_ok = false;
};

inline CyclotomyParams cyclotomy_params(std::shared_ptr<const FieldCtx> ctx, long long N) {
    const FieldCtx& F = *ctx;
    if (N < 1 || (F.q - 1) % N != 0) throw NDoesNotDivide(N, F.q - 1);
    CyclotomyParams P;
    P.ctx = std::move(ctx);
    P.N = N;
    P.n1 = (F.q - 1) / N;
    long long s = (F.q - 1) / (F.p - 1);
    P.N1 = std::gcd(N, s);
    P.N2 = N / P.N1 * s;  // lcm(N, s)
    P.n2 = P.N2 / N;
    P.theta = F.exp_table[N % (F.q - 1)];
    // Least j with p^j = 1 (mod n1); must equal m. For n1 = 1 the least j is 1.
    if (P.n1 == 1) {
        P.ord_ok = (F.m == 1);
    } else {
        long long pw = F.p % P.n1;
        int j = 1;
        while (pw != 1 && j < F.m) {
            pw = pw * F.p % P.n1;
            ++j;
        }
        P.ord_ok = (pw == 1 && j == F.m);
    }
    return P;
}

// Index of the cyclotomic class C_i^{(e,q)} = alpha^i <alpha^e> containing x.
inline long long class_index(const FieldCtx& F, felem x, long long e) {
    return F.dlog(x) % e;
}

inline long long class_index(const CyclotomyParams& P, felem x, long long e) {
    return class_index(*P.ctx, x, e);
}

// Exact element of Z[zeta_p], stored as the canonical length-p coefficient
// vector with c[0] = 0 (normalized using 1 + zeta + ... + zeta^{p-1} = 0).
// Two values are equal iff their canonical vectors are equal.
class CyclotomicInt {
public:
    explicit CyclotomicInt(long long p) : c_(static_cast<std::size_t>(p), 0) {}

    static CyclotomicInt from_counts(std::vector<long long> counts) {
        CyclotomicInt z(static_cast<long long>(counts.size()));
        z.c_ = std::move(counts);
        z.canonicalize();
        return z;
    }

    static CyclotomicInt from_integer(long long p, long long k) {
        CyclotomicInt z(p);
        z.c_[0] = k;
        z.canonicalize();
        return z;
    }

    long long p() const { return static_cast<long long>(c_.size()); }
    const std::vector<long long>& coeffs() const { return c_; }

    CyclotomicInt& operator+=(const CyclotomicInt& o) {
        for (std::size_t t = 0; t < c_.size(); ++t) c_[t] += o.c_[t];
        return *this;
    }
    CyclotomicInt& operator-=(const CyclotomicInt& o) {
        for (std::size_t t = 0; t < c_.size(); ++t) c_[t] -= o.c_[t];
        return *this;
    }
    friend CyclotomicInt operator+(CyclotomicInt a, const CyclotomicInt& b) { return a += b; }
    friend CyclotomicInt operator-(CyclotomicInt a, const CyclotomicInt& b) { return a -= b; }
    CyclotomicInt operator-() const {
        CyclotomicInt z(p());
        for (std::size_t t = 0; t < c_.size(); ++t) z.c_[t] = -c_[t];
        return z;
    }

    friend CyclotomicInt operator*(const CyclotomicInt& a, const CyclotomicInt& b) {
        const long long p = a.p();
        std::vector<__int128> acc(static_cast<std::size_t>(p), 0);
        for (long long s = 0; s < p; ++s) {
            if (a.c_[s] == 0) continue;
            for (long long t = 0; t < p; ++t) {
                if (b.c_[t] == 0) continue;
                long long u = s + t;
                if (u >= p) u -= p;
                acc[u] += static_cast<__int128>(a.c_[s]) * b.c_[t];
            }
        }
        __int128 a0 = acc[0];
        CyclotomicInt z(p);
        for (long long t = 0; t < p; ++t) {
            __int128 v = acc[t] - a0;
            if (v > INT64_MAX || v < INT64_MIN) throw ArithmeticOverflow("cyclotomic product");
            z.c_[t] = static_cast<long long>(v);
        }
        return z;
    }

    friend bool operator==(const CyclotomicInt& a, const CyclotomicInt& b) {
        return a.c_ == b.c_;
    }
    friend bool operator!=(const CyclotomicInt& a, const CyclotomicInt& b) { return !(a == b); }

    bool is_zero() const {
        return std::all_of(c_.begin(), c_.end(), [](long long v) { return v == 0; });
    }

    // The value lies in Q exactly when the tail coefficients are all equal,
    // in which case it equals -c[1] (an ordinary integer).
    std::optional<Rational> rational_value() const {
        for (std::size_t t = 2; t < c_.size(); ++t)
            if (c_[t] != c_[1]) return std::nullopt;
        return Rational(-c_[1]);
    }

    std::pair<double, double> eval_complex() const {
        const double tau = 2.0 * 3.14159265358979323846 / static_cast<double>(p());
        double re = 0, im = 0;
        for (std::size_t t = 1; t < c_.size(); ++t) {
            re += static_cast<double>(c_[t]) * std::cos(tau * static_cast<double>(t));
            im += static_cast<double>(c_[t]) * std::sin(tau * static_cast<double>(t));
        }
        return {re, im};
    }

private:
    void canonicalize() {
        long long a0 = c_[0];
        if (a0 == 0) return;
        for (auto& v : c_) v -= a0;
    }

    std::vector<long long> c_;
};

inline std::optional<Rational> period_rational_value(const CyclotomicInt& c) {
    return c.rational_value();
}

// Gauss period eta_i^{(e,q)} together with its raw trace-count vector
// (raw[t] = #{x in C_i : Tr(x) = t}).
struct GaussPeriod {
    long long order = 0;
    long long index = 0;
    std::vector<long long> trace_counts;
    CyclotomicInt value;
    std::optional<Rational> rational;
};

inline GaussPeriod gauss_period(const FieldCtx& F, long long e, long long i) {
    if (e < 1 || (F.q - 1) % e != 0) throw NDoesNotDivide(e, F.q - 1);
    if (i < 0 || i >= e) throw PreconditionError("class index out of range");
    std::vector<long long> counts(static_cast<std::size_t>(F.p), 0);
    const long long size = (F.q - 1) / e;
    for (long long t = 0; t < size; ++t) counts[F.trace_of_exp[i + t * e]]++;
    GaussPeriod g{e, i, counts, CyclotomicInt::from_counts(counts), std::nullopt};
    g.rational = g.value.rational_value();
    return g;
}

inline GaussPeriod gauss_period_exact(const CyclotomyParams& P, long long e, long long i) {
    return gauss_period(*P.ctx, e, i);
}

inline std::vector<GaussPeriod> gauss_periods(const FieldCtx& F, long long e) {
    std::vector<GaussPeriod> out;
    out.reserve(static_cast<std::size_t>(e));
    for (long long i = 0; i < e; ++i) out.push_back(gauss_period(F, e, i));
    return out;
}

// Solutions of the two Diophantine normalizations behind the cubic and
// quartic period formulas. `first` is the sign-normalized c1 (or u1),
// `second_abs` is |d1| (or |v1|).
struct DiophantineWitness {
    enum class Kind { c1d1, u1v1 };
    Kind kind;
    long long first = 0;
    long long second_abs = 0;

    friend bool operator==(const DiophantineWitness& a, const DiophantineWitness& b) {
        return a.kind == b.kind && a.first == b.first && a.second_abs == b.second_abs;
    }
};

namespace detail {

inline long long isqrt(long long n) {
    if (n < 0) return -1;
    auto r = static_cast<long long>(std::sqrt(static_cast<double>(n)));
    while (r > 0 && r * r > n) --r;
    while ((r + 1) * (r + 1) <= n) ++r;
    return r;
}

inline long long pow_ll(long long b, int e) {
    long long r = 1;
    for (int i = 0; i < e; ++i) {
        if (r > INT64_MAX / b) throw ArithmeticOverflow("integer power");
        r *= b;
    }
    return r;
}

}  // namespace detail

// 4 p^{m/3} = c1^2 + 27 d1^2 with c1 = 1 (mod 3) and gcd(c1, p) = 1.
// The side conditions pin c1 uniquely and d1 up to sign.
inline DiophantineWitness solve_c1_d1(long long p, int m) {
    if (p % 3 != 1) throw PreconditionError("solve_c1_d1 needs p = 1 (mod 3)");
    if (m % 3 != 0) throw PreconditionError("solve_c1_d1 needs 3 | m");
    const long long target = 4 * detail::pow_ll(p, m / 3);
    std::vector<DiophantineWitness> found;
    for (long long d = 0; 27 * d * d <= target; ++d) {
        long long rem = target - 27 * d * d;
        long long c = detail::isqrt(rem);
        if (c * c != rem || c == 0) continue;
        for (long long sc : {c, -c}) {
            if (((sc % 3) + 3) % 3 != 1) continue;
            if (std::gcd(c, p) != 1) continue;
            found.push_back({DiophantineWitness::Kind::c1d1, sc, d});
        }
    }
    if (found.empty())
        throw NoSolutionFound("4*" + std::to_string(p) + "^" + std::to_string(m / 3) +
                              " = c1^2 + 27 d1^2");
    if (found.size() > 1) throw MathCheckError("c1/d1 witness is not unique");
    return found.front();
}

// p^{m/2} = u1^2 + 4 v1^2 with u1 = 1 (mod 4) and gcd(u1, p) = 1.
inline DiophantineWitness solve_u1_v1(long long p, int m) {
    if (p % 4 != 1) throw PreconditionError("solve_u1_v1 needs p = 1 (mod 4)");
    if (m % 2 != 0) throw PreconditionError("solve_u1_v1 needs 2 | m");
    const long long target = detail::pow_ll(p, m / 2);
    std::vector<DiophantineWitness> found;
    for (long long v = 0; 4 * v * v <= target; ++v) {
        long long rem = target - 4 * v * v;
        long long u = detail::isqrt(rem);
        if (u * u != rem || u == 0) continue;
        for (long long su : {u, -u}) {
            if (((su % 4) + 4) % 4 != 1) continue;
            if (std::gcd(u, p) != 1) continue;
            found.push_back({DiophantineWitness::Kind::u1v1, su, v});
        }
    }
    if (found.empty())
        throw NoSolutionFound(std::to_string(p) + "^" + std::to_string(m / 2) +
                              " = u1^2 + 4 v1^2");
    if (found.size() > 1) throw MathCheckError("u1/v1 witness is not unique");
    return found.front();
}

// A closed-form prediction for the multiset of Gauss periods of some order,
// as exact rationals with multiplicities (sorted ascending by value).
// `r_limit` carries the corollary's valid subspace-dimension range when the
// case is used to evaluate generalized Hamming weights.
struct PeriodCase {
    std::string label;
    std::vector<std::pair<Rational, long long>> multiset;
    int r_limit = 0;
};

struct PeriodPrediction {
    std::vector<std::string> labels;
    std::vector<std::pair<Rational, long long>> multiset;

    Rational eta_max() const {
        return multiset.back().first;  // sorted ascending
    }
};

namespace detail {

inline std::vector<std::pair<Rational, long long>> sorted_multiset(
    std::vector<std::pair<Rational, long long>> v) {
    std::sort(v.begin(), v.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    std::vector<std::pair<Rational, long long>> merged;
    for (auto& e : v) {
        if (!merged.empty() && merged.back().first == e.first)
            merged.back().second += e.second;
        else
            merged.push_back(e);
    }
    return merged;
}

// All closed-form cases applicable to the Gauss periods of order e in F_{p^m}.
// Every branch below has an integral radical, so the values are exact.
inline std::vector<PeriodCase> period_closed_form_cases(long long p, int m, long long e) {
    std::vector<PeriodCase> cases;
    auto add = [&](std::string label, std::vector<std::pair<Rational, long long>> ms,
                   int r_limit) {
        cases.push_back({std::move(label), sorted_multiset(std::move(ms)), r_limit});
    };

    if (e == 1) {
        add("N1=1 (eta = -1)", {{Rational(-1), 1}}, m);
        return cases;
    }

    if (e == 2 && m % 2 == 0) {
        const long long s = pow_ll(p, m / 2);
        // The multiset is {(sqrt(q)-1)/2, (-sqrt(q)-1)/2} for every even m;
        // only the assignment to eta_0 depends on p mod 4 and m mod 4.
        std::string label = p % 4 == 1 ? "N1=2 lemma (p≡1 mod 4, m even)"
                                       : "N1=2 lemma (p≡3 mod 4, m even)";
        add(std::move(label), {{Rational(s - 1, 2), 1}, {Rational(-s - 1, 2), 1}}, m / 2);
    }

    if (e == 3 && p % 3 == 2 && m % 2 == 0) {
        const long long s = pow_ll(p, m / 2);
        if (m % 4 == 0) {
            // r-range: l = largest odd divisor of m/4 (0 when 4 does not divide m).
            int l = m / 4;
            while (l % 2 == 0) l /= 2;
            add("N1=3 lemma (p≡2 mod 3, m≡0 mod 4)",
                {{Rational(-1 - 2 * s, 3), 1}, {Rational(-1 + s, 3), 2}}, l);
        } else {
            add("N1=3 lemma (p≡2 mod 3, m≡2 mod 4)",
                {{Rational(-1 + 2 * s, 3), 1}, {Rational(-1 - s, 3), 2}}, m / 2);
        }
    }

    if (e == 3 && p % 3 == 1 && m % 3 == 0) {
        const long long t = pow_ll(p, m / 3);
        auto w = solve_c1_d1(p, m);
        const long long c1 = w.first, d1 = w.second_abs;
        if (c1 == 3 * d1 || c1 == -3 * d1)
            throw MathCheckError("c1 = ±3|d1| contradicts c1 ≡ 1 (mod 3)");
        add("N1=3 lemma (p≡1 mod 3, c1=" + std::to_string(c1) + ", |d1|=" + std::to_string(d1) +
                ")",
            {{Rational(-1 + c1 * t, 3), 1},
             {Rational(-2 - (c1 + 9 * d1) * t, 6), 1},
             {Rational(-2 - (c1 - 9 * d1) * t, 6), 1}},
            m / 3);
    }

    if (e == 4 && p % 4 == 3 && m % 2 == 0) {
        const long long s = pow_ll(p, m / 2);
        if (m % 4 == 0) {
            add("N1=4 lemma (p≡3 mod 4, m≡0 mod 4)",
                {{Rational(-1 - 3 * s, 4), 1}, {Rational(-1 + s, 4), 3}}, m / 4);
        } else {
            add("N1=4 lemma (p≡3 mod 4, m≡2 mod 4)",
                {{Rational(-1 + 3 * s, 4), 1}, {Rational(-1 - s, 4), 3}}, m / 2);
        }
    }

    if (e == 4 && p % 4 == 1 && m % 4 == 0) {
        const long long s = pow_ll(p, m / 2);
        const long long t = pow_ll(p, m / 4);
        auto w = solve_u1_v1(p, m);
        const long long u1 = w.first, v1 = w.second_abs;
        add("N1=4 lemma (p≡1 mod 4, u1=" + std::to_string(u1) + ", |v1|=" + std::to_string(v1) +
                ")",
            {{Rational(-1 - s - 2 * t * u1, 4), 1},
             {Rational(-1 - s + 2 * t * u1, 4), 1},
             {Rational(-1 + s - 4 * t * v1, 4), 1},
             {Rational(-1 + s + 4 * t * v1, 4), 1}},
            m / 4);
    }

    if (e >= 3) {
        // Semiprimitive case: e | p^j + 1 for the smallest such j, and m = 2 j gamma.
        int j = 0;
        long long pj = 1;
        for (int cand = 1; cand <= m; ++cand) {
            pj *= p;
            if ((pj + 1) % e == 0) {
                j = cand;
                break;
            }
        }
        if (j > 0 && m % (2 * j) == 0) {
            const long long gamma = m / (2 * j);
            const long long s = pow_ll(p, static_cast<int>(j * gamma));  // sqrt(q)
            const bool case_a = (gamma % 2 == 1) && ((pow_ll(p, j) + 1) / e) % 2 == 1;
            if (case_a) {
                add("semiprimitive lemma case (a), j=" + std::to_string(j) +
                        ", gamma=" + std::to_string(gamma),
                    {{Rational(s) - Rational(s + 1, e), 1}, {-Rational(s + 1, e), e - 1}}, j);
            } else {
                const long long sgn = gamma % 2 == 0 ? 1 : -1;
                add("semiprimitive lemma case (b), j=" + std::to_string(j) +
                        ", gamma=" + std::to_string(gamma),
                    {{Rational(-sgn * (e - 1) * s - 1, e), 1}, {Rational(sgn * s - 1, e), e - 1}},
                    j);
            }
        }
    }

    return cases;
}

}  // namespace detail

// Merged closed-form prediction for the periods of order e, when any lemma
// applies. Overlapping cases must predict the same multiset.
inline std::optional<PeriodPrediction> closed_form_periods_for_order(long long p, int m,
                                                                     long long e) {
    auto cases = detail::period_closed_form_cases(p, m, e);
    if (cases.empty()) return std::nullopt;
    PeriodPrediction pred;
    pred.multiset = cases.front().multiset;
    for (const auto& c : cases) {
        if (c.multiset != pred.multiset)
            throw CorollaryConflict("period predictions differ between '" +
                                    cases.front().label + "' and '" + c.label + "'");
        pred.labels.push_back(c.label);
    }
    return pred;
}

// Prediction for the periods of order N1, the order every downstream weight
// formula uses.
inline std::optional<PeriodPrediction> closed_form_periods(const CyclotomyParams& P) {
    return closed_form_periods_for_order(P.ctx->p, P.ctx->m, P.N1);
}

// Coefficients (ascending, monic) of the period polynomial
// Psi_{(e,q)}(X) = prod_i (X - eta_i). All coefficients must be rational
// integers; anything else signals an arithmetic bug.
inline std::vector<long long> period_polynomial(const FieldCtx& F, long long e) {
    if (e < 1 || (F.q - 1) % e != 0) throw NDoesNotDivide(e, F.q - 1);
    std::vector<CyclotomicInt> poly{CyclotomicInt::from_integer(F.p, 1)};
    for (long long i = 0; i < e; ++i) {
        const CyclotomicInt eta = gauss_period(F, e, i).value;
        std::vector<CyclotomicInt> next(poly.size() + 1, CyclotomicInt(F.p));
        for (std::size_t k = 0; k < poly.size(); ++k) {
            next[k + 1] += poly[k];
            next[k] -= eta * poly[k];
        }
        poly = std::move(next);
    }
    std::vector<long long> coeffs(poly.size());
    for (std::size_t k = 0; k < poly.size(); ++k) {
        auto r = poly[k].rational_value();
        if (!r || !r->is_integer())
            throw NonIntegerCoefficient("degree " + std::to_string(k) + " of Psi_(" +
                                        std::to_string(e) + "," + std::to_string(F.q) + ")");
        coeffs[k] = r->num();
    }
    return coeffs;
}

inline std::vector<long long> period_polynomial(const CyclotomyParams& P, long long e) {
    return period_polynomial(*P.ctx, e);
}

struct PeriodBoundReport {
    long long order = 0;
    long long checked = 0;
    bool all_rational = true;
};

// |eta_i + 1/e| <= (e-1) sqrt(q) / e for every class. Rational periods are
// checked exactly via (e*eta + 1)^2 <= (e-1)^2 q; irrational ones numerically
// with tolerance 1e-6.
inline PeriodBoundReport period_bound_check(const FieldCtx& F, long long e) {
    PeriodBoundReport rep{e, 0, true};
    for (long long i = 0; i < e; ++i) {
        const GaussPeriod g = gauss_period(F, e, i);
        if (g.rational) {
            const Rational lhs = (Rational(e) * *g.rational + Rational(1)) *
                                 (Rational(e) * *g.rational + Rational(1));
            const Rational rhs = Rational((e - 1) * (e - 1)) * Rational(F.q);
            if (lhs > rhs)
                throw BoundViolated("order " + std::to_string(e) + ", class " +
                                    std::to_string(i) + ": (e*eta+1)^2 = " + lhs.to_string() +
                                    " > " + rhs.to_string());
        } else {
            rep.all_rational = false;
            auto [re, im] = g.value.eval_complex();
            const double er = re + 1.0 / static_cast<double>(e);
            const double modulus = std::sqrt(er * er + im * im);
            const double limit = (static_cast<double>(e - 1)) *
                                 std::sqrt(static_cast<double>(F.q)) / static_cast<double>(e);
            if (modulus > limit + 1e-6)
                throw BoundViolated("order " + std::to_string(e) + ", class " +
                                    std::to_string(i) + ": |eta + 1/e| = " +
                                    std::to_string(modulus) + " > " + std::to_string(limit));
        }
        rep.checked++;
    }
    return rep;
}

inline PeriodBoundReport period_bound_check(const CyclotomyParams& P, long long e) {
    return period_bound_check(*P.ctx, e);
}

struct MultisetLemmaReport {
    long long e = 0;
    long long index = 0;
    long long g = 0;             // gcd((q-1)/(p-1), e)
    long long multiplicity = 0;  // (p-1) * g / e
};

// Checks the multiset equality
//   { x*y : y in F_p^*, x in C_i^{(e,q)} } = ((p-1) g / e) * C_i^{(g,q)}
// by direct enumeration, where g = gcd((q-1)/(p-1), e).
inline MultisetLemmaReport verify_multiset_lemma(const FieldCtx& F, long long e, long long i) {
    if (e < 1 || (F.q - 1) % e != 0) throw NDoesNotDivide(e, F.q - 1);
    if (i < 0 || i >= e) throw PreconditionError("class index out of range");
    const long long g = std::gcd((F.q - 1) / (F.p - 1), e);
    const long long num = (F.p - 1) * g;
    if (num % e != 0)
        throw MultisetMismatch("(p-1) gcd((q-1)/(p-1), e) / e is not an integer for e = " +
                               std::to_string(e));
    const long long mult = num / e;

    std::vector<long long> count(static_cast<std::size_t>(F.q), 0);
    const long long size = (F.q - 1) / e;
    for (long long t = 0; t < size; ++t) {
        const felem x = F.exp_table[i + t * e];
        for (long long c = 1; c < F.p; ++c) count[F.mul(x, F.scalar(c))]++;
    }

    const long long gsize = (F.q - 1) / g;
    const long long gi = i % g;
    for (long long t = 0; t < gsize; ++t) {
        const felem z = F.exp_table[gi + t * g];
        if (count[z] != mult)
            throw MultisetMismatch("element alpha^" + std::to_string(gi + t * g) +
                                   " has multiplicity " + std::to_string(count[z]) +
                                   ", expected " + std::to_string(mult));
        count[z] = 0;
    }
    for (long long v = 0; v < F.q; ++v)
        if (count[v] != 0)
            throw MultisetMismatch("unexpected element with rank " + std::to_string(v) +
                                   " in the scaled multiset");
    return {e, i, g, mult};
}

inline MultisetLemmaReport verify_multiset_lemma(const CyclotomyParams& P, long long e,
                                                 long long i) {
    return verify_multiset_lemma(*P.ctx, e, i);
}

// Exact rational periods of order e, which exist whenever e | (q-1)/(p-1).
inline std::vector<Rational> rational_periods(const FieldCtx& F, long long e) {
    std::vector<Rational> out;
    out.reserve(static_cast<std::size_t>(e));
    for (long long i = 0; i < e; ++i) {
        const GaussPeriod g = gauss_period(F, e, i);
        if (!g.rational)
            throw PeriodsNotRational("order " + std::to_string(e) + ", class " +
                                     std::to_string(i));
        out.push_back(*g.rational);
    }
    return out;
}

}  // namespace ghwlab
