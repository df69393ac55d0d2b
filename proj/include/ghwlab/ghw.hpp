#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include "ghwlab/codes.hpp"
#include "ghwlab/cyclotomy.hpp"
#include "ghwlab/errors.hpp"
#include "ghwlab/field.hpp"
#include "ghwlab/rational.hpp"
#include "ghwlab/subspace.hpp"

namespace ghwlab {

// Counts of nonzero subspace elements per cyclotomic class of order N1:
// counts[i] = |H^r \cap C_i^{(N1,q)}|. They always sum to p^r - 1.
struct ClassProfile {
    std::vector<long long> counts;

    long long total() const {
        long long s = 0;
        for (long long c : counts) s += c;
        return s;
    }
};

namespace detail {

// Field elements of the r rows of a subspace basis, viewed through the
// polynomial-basis coordinates.
inline void subspace_row_elements(const FieldCtx& F, const Subspace& s,
                                  std::vector<felem>& out) {
    out.clear();
    for (int i = 0; i < s.r; ++i) {
        long long rank = 0;
        for (int j = 0; j < s.m; ++j) rank += static_cast<long long>(s.at(i, j)) * F.p_pow[j];
        out.push_back(static_cast<felem>(rank));
    }
}

// Visits every nonzero element of the row space exactly once. The odometer
// walks F_p^r; each step adds one basis row per carried digit (adding a row
// when its digit wraps from p-1 to 0 is the same as subtracting (p-1) copies).
template <typename Fn>
inline void for_each_rowspace_element(const FieldCtx& F, const std::vector<felem>& rows,
                                      Fn&& fn) {
    const int r = static_cast<int>(rows.size());
    std::vector<int> digits(r, 0);
    felem a = 0;
    unsigned long long total = 1;
    for (int i = 0; i < r; ++i) total *= static_cast<unsigned long long>(F.p);
    for (unsigned long long step = 1; step < total; ++step) {
        int j = 0;
        while (true) {
            a = F.add(a, rows[j]);
            if (++digits[j] < F.p) break;
            digits[j] = 0;
            ++j;
        }
        fn(a);
    }
}

}  // namespace detail

// N(U^r): number of coordinates whose trace functional vanishes on the whole
// subspace. A coordinate vanishes on U^r iff it vanishes on a basis of H^r.
inline long long n_zero_direct(const LinearCode& C, const Subspace& s) {
    const FieldCtx& F = C.field();
    if (s.r < 1) throw PreconditionError("n_zero_direct needs r >= 1");
    std::vector<felem> rows;
    detail::subspace_row_elements(F, s, rows);
    std::vector<long long> logs;
    logs.reserve(rows.size());
    for (felem a : rows) logs.push_back(F.dlog(a));

    const long long q1 = F.q - 1;
    long long count = 0;
    for (felem cl : C.col_logs) {
        bool all_zero = true;
        for (long long la : logs) {
            long long idx = la + cl;
            if (idx >= q1) idx -= q1;
            if (F.trace_of_exp[idx] != 0) {
                all_zero = false;
                break;
            }
        }
        if (all_zero) ++count;
    }
    return count;
}

inline ClassProfile class_profile(const FieldCtx& F, const Subspace& s, long long N1) {
    if (N1 < 1) throw PreconditionError("class_profile needs N1 >= 1");
    ClassProfile prof;
    prof.counts.assign(static_cast<std::size_t>(N1), 0);
    std::vector<felem> rows;
    detail::subspace_row_elements(F, s, rows);
    detail::for_each_rowspace_element(F, rows, [&](felem a) {
        prof.counts[F.log_table[a] % N1]++;
    });
    return prof;
}

// Predicted N(U^r) from the class profile and the exact order-N1 periods:
//   family A: n1/p^r + (N1/(p^r N)) sum_i |H_i^r| eta_i
//   family B: n2/p^r + (1/(p^r (p-1))) sum_i |H_i^r| eta_i
//   family C: (q - p^r)/(2 p^r), independent of the profile
// The result must come out a nonnegative integer.
inline long long n_zero_via_periods(const ClassProfile& prof, const CyclotomyParams& P,
                                    Family family, const std::vector<Rational>& etas) {
    const FieldCtx& F = *P.ctx;
    const long long pr = prof.total() + 1;  // p^r
    Rational value;
    if (family == Family::C) {
        value = Rational(F.q - pr, 2 * pr);
    } else {
        if (static_cast<long long>(etas.size()) != P.N1)
            throw PreconditionError("period vector does not match N1");
        Rational sum(0);
        for (long long i = 0; i < P.N1; ++i) sum += Rational(prof.counts[i]) * etas[i];
        if (family == Family::A)
            value = Rational(P.n1) / Rational(pr) + Rational(P.N1, pr * P.N) * sum;
        else
            value = Rational(P.n2) / Rational(pr) + Rational(1, pr * (F.p - 1)) * sum;
    }
    if (!value.is_integer() || value.num() < 0)
        throw NonIntegerResult("N(U^r) = " + value.to_string());
    return value.num();
}

struct BruteOptions {
    unsigned long long budget = kDefaultEnumBudget;
    int threads = 0;  // 0: use hardware concurrency
};

struct BruteResult {
    int r = 0;
    long long d_r = 0;
    long long n_zero_max = 0;
    unsigned long long argmax_index = 0;  // first maximizer in enumeration order
    ClassProfile max_profile;
    unsigned long long subspaces = 0;
};

// Exhaustive d_r = n - max N(U^r) over every r-dimensional subspace of the
// message space F_q. Requires the code map to be injective (k = m), so that
// subspaces of F_q correspond bijectively to r-dimensional subcodes.
// Work is partitioned by global enumeration index; results are independent of
// the worker count (ties resolve to the smallest index).
inline BruteResult ghw_bruteforce(const LinearCode& C, int r, const BruteOptions& opt = {}) {
    const FieldCtx& F = C.field();
    if (r < 1 || r > F.m) throw PreconditionError("ghw_bruteforce needs 1 <= r <= m");
    if (C.k != F.m) throw NotInjective(C.k, F.m);

    SubspaceEnumerator en(F.m, r, F.p);
    const unsigned __int128 cost = static_cast<unsigned __int128>(en.total()) *
                                   static_cast<unsigned long long>(C.n) *
                                   static_cast<unsigned>(r);
    if (cost > opt.budget)
        throw EnumerationBudgetExceeded(
            cost > UINT64_MAX ? UINT64_MAX : static_cast<unsigned long long>(cost), opt.budget,
            r);

    unsigned hw = std::thread::hardware_concurrency();
    int workers = opt.threads > 0 ? opt.threads : (hw > 0 ? static_cast<int>(hw) : 1);
    if (en.total() < 2048) workers = 1;
    workers = std::max(1, std::min<int>(workers, 64));

    struct Best {
        long long value = -1;
        unsigned long long index = 0;
    };
    std::vector<Best> best(static_cast<std::size_t>(workers));

    auto run = [&](int w) {
        const unsigned long long total = en.total();
        const unsigned long long lo = total * static_cast<unsigned long long>(w) /
                                      static_cast<unsigned long long>(workers);
        const unsigned long long hi = total * static_cast<unsigned long long>(w + 1) /
                                      static_cast<unsigned long long>(workers);
        Best b;
        en.for_each(lo, hi, [&](const Subspace& s, unsigned long long idx) {
            const long long nz = n_zero_direct(C, s);
            if (nz > b.value) {
                b.value = nz;
                b.index = idx;
            }
        });
        best[static_cast<std::size_t>(w)] = b;
    };

    if (workers == 1) {
        run(0);
    } else {
        std::vector<std::thread> pool;
        pool.reserve(static_cast<std::size_t>(workers));
        for (int w = 0; w < workers; ++w) pool.emplace_back(run, w);
        for (auto& t : pool) t.join();
    }

    Best overall;
    for (const Best& b : best) {
        if (b.value > overall.value || (b.value == overall.value && b.index < overall.index))
            overall = b;
    }

    BruteResult res;
    res.r = r;
    res.n_zero_max = overall.value;
    res.d_r = C.n - overall.value;
    res.argmax_index = overall.index;
    res.max_profile = class_profile(F, en.at(overall.index), C.params.N1);
    res.subspaces = en.total();
    return res;
}

struct ClosedForm {
    long long value = 0;
    std::string label;
    int r_limit = 0;     // largest r any applicable closed form covers
    bool derived = false;  // true for the family-B analogue (remark-derived)
};

// Closed-form d_r where a corollary applies at this r:
//   family A: d_r = n1 (1 - p^-r) - (N1 (p^r - 1) / (p^r N)) eta_max
//   family B: d_r = n2 (1 - p^-r) - ((p^r - 1) / (p^r (p-1))) eta_max
//   family C: d_r = (1 - p^-r) q / 2 for every 1 <= r <= m
// with eta_max the largest order-N1 period from the applicable lemma, each
// lemma carrying its own valid r-range. Overlapping cases must agree.
inline std::optional<ClosedForm> ghw_closed_form(const CyclotomyParams& P, Family family,
                                                 int r) {
    const FieldCtx& F = *P.ctx;
    if (r < 1 || r > F.m) return std::nullopt;
    const long long pr = detail::pow_ll(F.p, r);

    if (family == Family::C) {
        const Rational d = Rational(F.q) * Rational(pr - 1, 2 * pr);
        ClosedForm cf;
        cf.value = d.as_integer();
        cf.label = "skew-set theorem";
        cf.r_limit = F.m;
        return cf;
    }

    auto cases = detail::period_closed_form_cases(F.p, F.m, P.N1);
    std::optional<ClosedForm> out;
    int r_limit = 0;
    std::vector<std::string> labels;
    std::optional<long long> value;
    for (const auto& c : cases) {
        r_limit = std::max(r_limit, c.r_limit);
        if (r > c.r_limit) continue;
        const Rational eta_max = c.multiset.back().first;
        Rational d;
        if (family == Family::A) {
            d = Rational(P.n1) * Rational(pr - 1, pr) -
                Rational(P.N1 * (pr - 1), pr * P.N) * eta_max;
        } else {
            d = Rational(P.n2) * Rational(pr - 1, pr) -
                Rational(pr - 1, pr * (F.p - 1)) * eta_max;
        }
        if (!d.is_integer())
            throw NonIntegerResult("closed-form d_" + std::to_string(r) + " = " + d.to_string() +
                                   " under '" + c.label + "'");
        if (value && *value != d.num())
            throw CorollaryConflict("d_" + std::to_string(r) + ": " + std::to_string(*value) +
                                    " under '" + labels.front() + "' vs " +
                                    std::to_string(d.num()) + " under '" + c.label + "'");
        value = d.num();
        labels.push_back(c.label);
    }
    if (!value) return std::nullopt;
    ClosedForm cf;
    cf.value = *value;
    cf.r_limit = r_limit;
    cf.derived = family == Family::B;
    for (std::size_t i = 0; i < labels.size(); ++i)
        cf.label += (i ? "; " : "") + labels[i];
    if (cf.derived) cf.label = "derived from remark: " + cf.label;
    return cf;
}

struct GhwBounds {
    long long singleton_lo = 0;
    long long singleton_hi = 0;
    long long plotkin = 0;
    long long griesmer = 0;
};

// Singleton: r <= d_r <= n-k+r.  Plotkin-like: d_r <= floor(n(p^r-1)p^{k-r}/(p^k-1)).
// Griesmer-like: d_r >= sum_{i<r} ceil(d_1/p^i).
inline GhwBounds ghw_bounds(long long n, int k, long long p, long long d1, int r) {
    if (r < 1 || r > k) throw PreconditionError("ghw_bounds needs 1 <= r <= k");
    GhwBounds b;
    b.singleton_lo = r;
    b.singleton_hi = n - k + r;
    using u128 = unsigned __int128;
    u128 pr = 1, pkr = 1, pk = 1;
    for (int i = 0; i < r; ++i) pr *= static_cast<unsigned long long>(p);
    for (int i = 0; i < k - r; ++i) pkr *= static_cast<unsigned long long>(p);
    pk = pr * pkr;
    b.plotkin = static_cast<long long>(static_cast<u128>(n) * (pr - 1) * pkr / (pk - 1));
    long long g = 0, pi = 1;
    for (int i = 0; i < r; ++i) {
        g += (d1 + pi - 1) / pi;
        pi *= p;
    }
    b.griesmer = g;
    return b;
}

enum class CrossCheck { Auto, All, Sampled, None };

struct HierarchyOptions {
    int r_max = 0;  // 0: up to m
    unsigned long long budget = kDefaultEnumBudget;
    int threads = 0;
    CrossCheck crosscheck = CrossCheck::Auto;
};

struct GhwRecord {
    int r = 0;
    long long d_r = 0;
    std::string method;  // "brute" or "closed_form"
    long long n_zero_max = -1;
    std::optional<long long> d_brute;
    std::optional<long long> d_closed;
    std::string corollary;
    bool closed_derived = false;
    std::vector<long long> max_profile;
    GhwBounds bounds;
    bool bounds_ok = true;
    bool monotone_ok = true;
    bool closed_matches_brute = true;
    unsigned long long oracle_checked = 0;
    unsigned long long oracle_mismatches = 0;
};

struct HierarchyReport {
    Family family = Family::A;
    std::vector<GhwRecord> records;
    bool all_ok = true;
    int truncated_from_r = 0;  // smallest r whose brute force hit the budget (0: none)
    std::vector<std::string> issues;
};

// Full per-instance hierarchy: for each r, brute-force d_r when the budget
// allows, every applicable closed form, the period-formula cross-check of
// N(U^r) on all (or sampled) subspaces, bound checks against d_1, and strict
// monotonicity. Every discrepancy is itemized in `issues`.
inline HierarchyReport hierarchy_report(const LinearCode& C, const HierarchyOptions& opt = {}) {
    const FieldCtx& F = C.field();
    const CyclotomyParams& P = C.params;
    HierarchyReport rep;
    rep.family = C.dset.family;
    if (C.k != F.m) throw NotInjective(C.k, F.m);

    std::vector<Rational> etas;
    if (rep.family != Family::C) etas = rational_periods(F, P.N1);

    const int r_hi = opt.r_max > 0 ? std::min(opt.r_max, F.m) : F.m;
    std::optional<long long> d1;
    long long prev_d = 0;

    for (int r = 1; r <= r_hi; ++r) {
        GhwRecord rec;
        rec.r = r;
        auto closed = ghw_closed_form(P, rep.family, r);
        if (closed) {
            rec.d_closed = closed->value;
            rec.corollary = closed->label;
            rec.closed_derived = closed->derived;
        }

        SubspaceEnumerator en(F.m, r, F.p);
        const unsigned __int128 cost = static_cast<unsigned __int128>(en.total()) *
                                       static_cast<unsigned long long>(C.n) *
                                       static_cast<unsigned>(r);
        const bool brute_feasible = cost <= opt.budget;
        if (brute_feasible) {
            BruteOptions bo;
            bo.budget = opt.budget;
            bo.threads = opt.threads;
            const BruteResult br = ghw_bruteforce(C, r, bo);
            rec.d_brute = br.d_r;
            rec.n_zero_max = br.n_zero_max;
            rec.max_profile = br.max_profile.counts;
        } else if (rep.truncated_from_r == 0) {
            rep.truncated_from_r = r;
        }

        if (rec.d_brute) {
            rec.d_r = *rec.d_brute;
            rec.method = "brute";
        } else if (rec.d_closed) {
            rec.d_r = *rec.d_closed;
            rec.method = "closed_form";
        } else {
            rep.issues.push_back("r=" + std::to_string(r) +
                                 ": over budget and no closed form; hierarchy truncated");
            break;
        }

        if (rec.d_brute && rec.d_closed && *rec.d_brute != *rec.d_closed) {
            rec.closed_matches_brute = false;
            rep.issues.push_back("r=" + std::to_string(r) + ": brute " +
                                 std::to_string(*rec.d_brute) + " != closed form " +
                                 std::to_string(*rec.d_closed) + " (" + rec.corollary + ")");
        }

        // Cross-check N(U^r) against the period formula.
        CrossCheck mode = opt.crosscheck;
        if (mode == CrossCheck::Auto)
            mode = (F.q <= 81 && brute_feasible) ? CrossCheck::All
                   : brute_feasible              ? CrossCheck::Sampled
                                                 : CrossCheck::None;
        if (mode != CrossCheck::None && brute_feasible) {
            const unsigned long long stride =
                mode == CrossCheck::All ? 1 : std::max<unsigned long long>(1, en.total() / 256);
            en.for_each([&](const Subspace& s, unsigned long long idx) {
                if (idx % stride != 0) return;
                const long long direct = n_zero_direct(C, s);
                const ClassProfile prof = class_profile(F, s, P.N1);
                const long long predicted = n_zero_via_periods(prof, P, rep.family, etas);
                ++rec.oracle_checked;
                if (direct != predicted) {
                    ++rec.oracle_mismatches;
                    if (rep.issues.size() < 32)
                        rep.issues.push_back(
                            "r=" + std::to_string(r) + ", subspace " + std::to_string(idx) +
                            ": N(U^r) direct " + std::to_string(direct) + " != period formula " +
                            std::to_string(predicted));
                }
            });
        }

        if (!d1) d1 = rec.d_r;
        rec.bounds = ghw_bounds(C.n, C.k, F.p, *d1, r);
        rec.bounds_ok = rec.bounds.singleton_lo <= rec.d_r && rec.d_r <= rec.bounds.singleton_hi &&
                        rec.d_r <= rec.bounds.plotkin && rec.d_r >= rec.bounds.griesmer;
        if (!rec.bounds_ok)
            rep.issues.push_back("r=" + std::to_string(r) + ": d_r = " + std::to_string(rec.d_r) +
                                 " violates a bound");
        if (r > 1 && rec.d_r <= prev_d) {
            rec.monotone_ok = false;
            rep.issues.push_back("r=" + std::to_string(r) + ": d_r = " + std::to_string(rec.d_r) +
                                 " not strictly above d_{r-1} = " + std::to_string(prev_d));
        }
        prev_d = rec.d_r;
        rep.all_ok = rep.all_ok && rec.bounds_ok && rec.monotone_ok &&
                     rec.closed_matches_brute && rec.oracle_mismatches == 0;
        rep.records.push_back(std::move(rec));
    }
    return rep;
}

}  // namespace ghwlab
