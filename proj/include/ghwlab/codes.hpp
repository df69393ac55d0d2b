#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "ghwlab/cyclotomy.hpp"
#include "ghwlab/errors.hpp"
#include "ghwlab/field.hpp"
#include "ghwlab/rational.hpp"

namespace ghwlab {

inline constexpr unsigned long long kDefaultEnumBudget = 10'000'000;

enum class Family { A, B, C };

inline std::string family_name(Family f) {
    switch (f) {
        case Family::A: return "A";
        case Family::B: return "B";
        case Family::C: return "C";
    }
    return "?";
}

// How to build a skew set for family C: the canonical choice <alpha^2>
// (available when q = 3 mod 4), or one member per pair {x, -x} chosen by a
// seeded splitmix64 stream.
struct SkewSpec {
    bool canonical = true;
    std::uint64_t seed = 0;
};

namespace detail {

struct SplitMix64 {
    std::uint64_t state;
    explicit SplitMix64(std::uint64_t seed) : state(seed) {}
    std::uint64_t next() {
        std::uint64_t z = (state += 0x9E3779B97F4A7C15ull);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
        return z ^ (z >> 31);
    }
};

}  // namespace detail

// Defining set D = {d_1, ..., d_n} of nonzero elements, in fixed order:
//   family A: {theta^i : 0 <= i < n1}
//   family B: {theta^i : 0 <= i < n2}
//   family C: a skew set (D, -D, {0} partition F_q), ordered by log of the
//             chosen pair representative.
struct DefiningSet {
    Family family = Family::A;
    std::vector<felem> elements;
    CyclotomyParams params;
    std::optional<SkewSpec> skew;
};

inline DefiningSet defining_set(const CyclotomyParams& P, Family family,
                                std::optional<SkewSpec> skew = std::nullopt) {
    const FieldCtx& F = *P.ctx;
    DefiningSet D;
    D.family = family;
    D.params = P;

    if (family == Family::A || family == Family::B) {
        if (!P.ord_ok) throw OrderAssumptionViolated(P.n1, F.p, F.m);
        if (family == Family::B && P.N1 * P.N1 > F.q) throw IsoPreconditionFailed(P.N1, F.q);
        const long long n = family == Family::A ? P.n1 : P.n2;
        D.elements.reserve(static_cast<std::size_t>(n));
        felem t = F.one();
        for (long long i = 0; i < n; ++i) {
            D.elements.push_back(t);
            t = F.mul(t, P.theta);
        }
        return D;
    }

    // Family C. Pairs {alpha^j, -alpha^j} for 0 <= j < (q-1)/2; -1 = alpha^{(q-1)/2}.
    SkewSpec spec = skew.value_or(SkewSpec{});
    const long long half = (F.q - 1) / 2;
    D.skew = spec;
    D.elements.reserve(static_cast<std::size_t>(half));
    if (spec.canonical) {
        if (F.q % 4 != 3) throw SkewCanonicalUnavailable(F.q);
        for (long long j = 0; j < half; ++j) D.elements.push_back(F.exp_table[2 * j]);
    } else {
        detail::SplitMix64 rng(spec.seed);
        for (long long j = 0; j < half; ++j) {
            const bool take_neg = rng.next() & 1u;
            D.elements.push_back(F.exp_table[take_neg ? j + half : j]);
        }
    }
    // Structural property of every skew set: x -> -x maps D onto F_q^* \ D.
    {
        std::vector<bool> in(static_cast<std::size_t>(F.q), false);
        for (felem d : D.elements) in[d] = true;
        for (felem d : D.elements)
            if (in[F.neg(d)])
                throw MathCheckError("constructed set is not skew: contains x and -x");
    }
    return D;
}

// Trace code C_D = {(Tr(a d_1), ..., Tr(a d_n)) : a in F_q}. The generator
// matrix is the set of rows Tr(b_j d_i) over the polynomial basis b_j = x^j;
// k is its rank, and `basis_rows` lists the first k independent rows.
struct LinearCode {
    CyclotomyParams params;
    DefiningSet dset;
    long long n = 0;
    int k = 0;
    std::vector<std::vector<int>> trace_rows;  // m rows of length n
    std::vector<int> basis_rows;               // indices of selected rows
    std::vector<felem> message_basis;          // x^j for each selected row
    std::vector<felem> col_logs;               // dlog(d_i) per column

    const FieldCtx& field() const { return *params.ctx; }
};

inline LinearCode build_code_from_elements(const CyclotomyParams& P, DefiningSet dset) {
    const FieldCtx& F = *P.ctx;
    LinearCode C;
    C.params = P;
    C.n = static_cast<long long>(dset.elements.size());
    C.col_logs.reserve(dset.elements.size());
    for (felem d : dset.elements) C.col_logs.push_back(static_cast<felem>(F.dlog(d)));

    C.trace_rows.assign(F.m, std::vector<int>(dset.elements.size()));
    for (int j = 0; j < F.m; ++j) {
        const long long bl = F.dlog(F.basis_element(j));
        for (std::size_t i = 0; i < dset.elements.size(); ++i) {
            long long s = bl + C.col_logs[i];
            if (s >= F.q - 1) s -= F.q - 1;
            C.trace_rows[j][i] = F.trace_of_exp[s];
        }
    }

    // Row-echelon selection of a maximal independent subset, in row order.
    std::vector<std::vector<long long>> reduced;  // echelon rows
    std::vector<int> pivot_cols;
    for (int j = 0; j < F.m; ++j) {
        std::vector<long long> row(C.trace_rows[j].begin(), C.trace_rows[j].end());
        for (std::size_t t = 0; t < reduced.size(); ++t) {
            long long factor = row[pivot_cols[t]] % F.p;
            if (factor == 0) continue;
            for (std::size_t i = 0; i < row.size(); ++i)
                row[i] = ((row[i] - factor * reduced[t][i]) % F.p + F.p) % F.p;
        }
        int pivot = -1;
        for (std::size_t i = 0; i < row.size(); ++i)
            if (row[i] != 0) {
                pivot = static_cast<int>(i);
                break;
            }
        if (pivot < 0) continue;
        const long long inv = detail::mod_inverse(row[pivot], F.p);
        for (auto& v : row) v = v * inv % F.p;
        reduced.push_back(std::move(row));
        pivot_cols.push_back(pivot);
        C.basis_rows.push_back(j);
        C.message_basis.push_back(F.basis_element(j));
    }
    C.k = static_cast<int>(C.basis_rows.size());
    C.dset = std::move(dset);
    return C;
}

inline LinearCode build_code(const DefiningSet& dset) {
    return build_code_from_elements(dset.params, dset);
}

// Convenience for ad-hoc defining sets (the family tag is meaningless there).
inline LinearCode build_code_from_elements(const CyclotomyParams& P,
                                           const std::vector<felem>& elements) {
    DefiningSet D;
    D.family = Family::A;
    D.params = P;
    D.elements = elements;
    return build_code_from_elements(P, std::move(D));
}

struct Codeword {
    std::vector<int> coords;
    long long weight = 0;
};

inline Codeword codeword(const LinearCode& C, felem a) {
    const FieldCtx& F = C.field();
    Codeword w;
    w.coords.assign(static_cast<std::size_t>(C.n), 0);
    if (a == 0) return w;
    const long long la = F.dlog(a);
    for (std::size_t i = 0; i < w.coords.size(); ++i) {
        long long s = la + C.col_logs[i];
        if (s >= F.q - 1) s -= F.q - 1;
        const int t = F.trace_of_exp[s];
        w.coords[i] = t;
        if (t != 0) ++w.weight;
    }
    return w;
}

inline long long hamming_weight(const LinearCode& C, felem a) {
    const FieldCtx& F = C.field();
    if (a == 0) return 0;
    const long long la = F.dlog(a);
    long long w = 0;
    for (felem cl : C.col_logs) {
        long long s = la + cl;
        if (s >= F.q - 1) s -= F.q - 1;
        if (F.trace_of_exp[s] != 0) ++w;
    }
    return w;
}

// Full weight distribution over all p^k codewords (all q messages when k = m).
// The cost model is p^k * n codeword-coordinate operations against `budget`.
inline std::map<long long, long long> weight_distribution(
    const LinearCode& C, unsigned long long budget = kDefaultEnumBudget) {
    const FieldCtx& F = C.field();
    unsigned __int128 words = 1;
    for (int i = 0; i < C.k; ++i) words *= static_cast<unsigned long long>(F.p);
    const unsigned __int128 cost = words * static_cast<unsigned long long>(C.n);
    if (cost > budget)
        throw EnumerationBudgetExceeded(
            cost > UINT64_MAX ? UINT64_MAX : static_cast<unsigned long long>(cost), budget, 0);

    std::map<long long, long long> hist;
    if (C.k == F.m) {
        for (long long a = 0; a < F.q; ++a) hist[hamming_weight(C, static_cast<felem>(a))]++;
        return hist;
    }
    // k < m: walk messages sum v_j * b_j over the selected basis with an
    // odometer; incrementing digit j (with wraparound) always adds b_j.
    std::vector<int> digits(C.k, 0);
    felem a = 0;
    hist[0] = 1;
    const unsigned long long total = static_cast<unsigned long long>(words);
    for (unsigned long long step = 1; step < total; ++step) {
        int j = 0;
        while (true) {
            a = F.add(a, C.message_basis[j]);
            if (++digits[j] < F.p) break;
            digits[j] = 0;
            ++j;
        }
        hist[hamming_weight(C, a)]++;
    }
    return hist;
}

struct FamilyBWeightReport {
    long long checked = 0;
    long long min_weight = 0;
    std::vector<long long> class_weights;  // weight of c(a) for a in C_i^{(N1,q)}
};

// For family B, every nonzero codeword weight must equal the per-class value
//   W_H(c(a)) = q/(p N1) - (eta_i + 1/N1)/p   for a in C_i^{(N1,q)},
// and be positive.
inline FamilyBWeightReport check_family_B_weights(const LinearCode& C) {
    if (C.dset.family != Family::B)
        throw PreconditionError("check_family_B_weights needs a family B code");
    const FieldCtx& F = C.field();
    const CyclotomyParams& P = C.params;
    const std::vector<Rational> etas = rational_periods(F, P.N1);

    FamilyBWeightReport rep;
    rep.class_weights.resize(static_cast<std::size_t>(P.N1));
    for (long long i = 0; i < P.N1; ++i) {
        const Rational w = Rational(F.q, F.p * P.N1) -
                           (etas[i] + Rational(1, P.N1)) / Rational(F.p);
        if (!w.is_integer())
            throw WeightFormulaMismatch("class " + std::to_string(i) +
                                        " weight is not an integer: " + w.to_string());
        if (w.num() <= 0)
            throw WeightFormulaMismatch("class " + std::to_string(i) +
                                        " weight is not positive: " + w.to_string());
        rep.class_weights[i] = w.num();
    }
    rep.min_weight = *std::min_element(rep.class_weights.begin(), rep.class_weights.end());

    for (long long idx = 0; idx < F.q - 1; ++idx) {
        const felem a = F.exp_table[idx];
        const long long expect = rep.class_weights[idx % P.N1];
        const long long actual = hamming_weight(C, a);
        if (actual != expect)
            throw WeightFormulaMismatch("a = alpha^" + std::to_string(idx) + ": weight " +
                                        std::to_string(actual) + " != formula " +
                                        std::to_string(expect));
        ++rep.checked;
    }
    return rep;
}

}  // namespace ghwlab
