#pragma once

#include <fstream>
#include <iostream>
#include <map>
#include <memory>
#include <numeric>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "ghwlab/ghw.hpp"
#include "ghwlab/report.hpp"

namespace ghwlab::cli {

struct RunConfig {
    std::string command;
    long long p = 3;
    int m = 1;
    long long N = 1;
    Family family = Family::A;
    std::string skew = "canonical";  // "canonical" or "seeded"
    std::uint64_t seed = 0;
    int r_max = 0;
    unsigned long long budget = kDefaultEnumBudget;
    int threads = 0;
    std::string format = "text";  // json, csv, text
    std::string output;
    long long q_max = 343;
    long long field_guard = kDefaultFieldGuard;
};

struct CheckResult {
    std::string name;
    bool ok = true;
    std::string detail;
};

namespace detail {

inline std::optional<SkewSpec> skew_spec(const RunConfig& cfg) {
    if (cfg.family != Family::C) return std::nullopt;
    SkewSpec s;
    s.canonical = cfg.skew != "seeded";
    s.seed = cfg.seed;
    return s;
}

inline std::string join(const std::vector<long long>& v, const std::string& sep = ";") {
    std::string s;
    for (std::size_t i = 0; i < v.size(); ++i) s += (i ? sep : "") + std::to_string(v[i]);
    return s;
}

inline void csv_escaped(std::ostream& os, const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) {
        os << s;
        return;
    }
    os << '"';
    for (char c : s) {
        if (c == '"') os << '"';
        os << c;
    }
    os << '"';
}

// All odd prime powers q = p^m <= q_max, ordered by q.
inline std::vector<std::pair<long long, int>> prime_power_list(long long q_max) {
    std::vector<std::pair<long long, int>> out;
    for (long long p = 3; p <= q_max; p += 2) {
        if (!ghwlab::detail::is_prime(p)) continue;
        long long q = p;
        int m = 1;
        while (q <= q_max) {
            out.push_back({p, m});
            if (q > q_max / p) break;
            q *= p;
            ++m;
        }
    }
    std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
        double qa = std::pow(static_cast<double>(a.first), a.second);
        double qb = std::pow(static_cast<double>(b.first), b.second);
        return qa < qb;
    });
    return out;
}

inline std::vector<long long> divisors(long long n) {
    std::vector<long long> out;
    for (long long d = 1; d * d <= n; ++d) {
        if (n % d != 0) continue;
        out.push_back(d);
        if (d != n / d) out.push_back(n / d);
    }
    std::sort(out.begin(), out.end());
    return out;
}

}  // namespace detail

// Periods of order N1 compared against the applicable closed forms.
// match is empty when no lemma applies.
struct PeriodsOutcome {
    std::vector<GaussPeriod> periods;
    std::optional<PeriodPrediction> prediction;
    std::optional<bool> match;
    std::vector<long long> polynomial;
};

inline PeriodsOutcome periods_outcome(const CyclotomyParams& P) {
    const FieldCtx& F = *P.ctx;
    PeriodsOutcome out;
    out.periods = gauss_periods(F, P.N1);
    out.prediction = closed_form_periods(P);
    if (out.prediction) {
        std::vector<std::pair<Rational, long long>> exact;
        for (const auto& g : out.periods) {
            if (!g.rational) throw PeriodsNotRational("order " + std::to_string(P.N1));
            exact.push_back({*g.rational, 1});
        }
        std::sort(exact.begin(), exact.end(),
                  [](const auto& a, const auto& b) { return a.first < b.first; });
        std::vector<std::pair<Rational, long long>> merged;
        for (auto& e : exact) {
            if (!merged.empty() && merged.back().first == e.first)
                merged.back().second += e.second;
            else
                merged.push_back(e);
        }
        out.match = merged == out.prediction->multiset;
    }
    out.polynomial = period_polynomial(F, P.N1);
    return out;
}

// Shared per-instance verification used by `verify` and `sweep`.
inline std::vector<CheckResult> instance_checks(const CyclotomyParams& P, Family family,
                                                std::optional<SkewSpec> skew,
                                                const HierarchyOptions& hopt,
                                                std::vector<const GhwRecord*>* out_records
                                                = nullptr,
                                                HierarchyReport* out_hier = nullptr) {
    const FieldCtx& F = *P.ctx;
    std::vector<CheckResult> checks;
    auto push = [&](std::string name, bool ok, std::string detail = "") {
        checks.push_back({std::move(name), ok, std::move(detail)});
    };

    // Period sum over all classes of order N1 is exactly -1.
    {
        CyclotomicInt sum(F.p);
        for (long long i = 0; i < P.N1; ++i) sum += gauss_period(F, P.N1, i).value;
        push("period_sum_is_minus_one", sum == CyclotomicInt::from_integer(F.p, -1));
    }
    // Closed-form period prediction matches the exact multiset (when it applies).
    try {
        const PeriodsOutcome po = periods_outcome(P);
        if (po.match)
            push("periods_match_closed_form", *po.match,
                 po.prediction->labels.empty() ? "" : po.prediction->labels.front());
        else
            push("periods_match_closed_form", true, "no lemma applies (skipped)");
        // Integer coefficients were already asserted inside period_polynomial.
        push("period_polynomial_integer", true);
        period_bound_check(F, P.N1);
        push("period_bound", true);
    } catch (const MathCheckError& e) {
        push("periods", false, e.what());
    }

    LinearCode C;
    try {
        C = build_code(defining_set(P, family, skew));
    } catch (const PreconditionError& e) {
        push("defining_set", false, std::string("precondition: ") + e.what());
        return checks;
    }
    push("dimension_k_equals_m", C.k == F.m,
         "k = " + std::to_string(C.k) + ", m = " + std::to_string(F.m));

    if (family == Family::B) {
        try {
            check_family_B_weights(C);
            push("family_B_weight_formula", true);
        } catch (const MathCheckError& e) {
            push("family_B_weight_formula", false, e.what());
        }
    }
    if (family == Family::A) {
        // Weights constant on cyclotomic classes of order N1.
        bool ok = true;
        std::string detail;
        if (static_cast<unsigned long long>(F.q) * C.n <= hopt.budget) {
            std::vector<long long> wt(static_cast<std::size_t>(P.N1), -1);
            for (long long idx = 0; idx < F.q - 1 && ok; ++idx) {
                const long long w = hamming_weight(C, F.exp_table[idx]);
                long long& ref = wt[idx % P.N1];
                if (ref < 0)
                    ref = w;
                else if (ref != w) {
                    ok = false;
                    detail = "class " + std::to_string(idx % P.N1) + " weights differ";
                }
            }
        } else {
            detail = "skipped (over budget)";
        }
        push("family_A_class_constant_weights", ok, detail);
    }

    try {
        HierarchyReport rep = hierarchy_report(C, hopt);
        push("hierarchy", rep.all_ok,
             rep.issues.empty() ? "" : rep.issues.front() +
                 (rep.issues.size() > 1 ? " (+" + std::to_string(rep.issues.size() - 1) + ")"
                                        : ""));
        if (out_hier) *out_hier = rep;
        if (out_records && out_hier)
            for (const auto& rec : out_hier->records) out_records->push_back(&rec);
    } catch (const Error& e) {
        push("hierarchy", false, e.what());
    }
    return checks;
}

namespace detail {

inline int emit(const RunConfig& cfg, const json& doc, const std::string& text,
                const std::string& csv) {
    std::ostringstream buf;
    if (cfg.format == "json")
        buf << doc.dump(2) << "\n";
    else if (cfg.format == "csv")
        buf << csv;
    else
        buf << text;
    if (cfg.output.empty()) {
        std::cout << buf.str();
    } else {
        std::ofstream f(cfg.output, std::ios::binary);
        if (!f) throw PreconditionError("cannot open output file: " + cfg.output);
        f << buf.str();
    }
    return 0;
}

}  // namespace detail

inline int cmd_field(const RunConfig& cfg) {
    auto F = build_field(cfg.p, cfg.m, cfg.field_guard);
    json doc{{"schema_version", kSchemaVersion},
             {"command", "field"},
             {"instance", json{{"p", F->p}, {"m", F->m}, {"q", F->q}}},
             {"modulus", F->modulus},
             {"alpha", json{{"index", F->alpha}, {"coeffs", F->coeffs(F->alpha)}}},
             {"trace_basis", F->trace_basis},
             {"verdict", "pass"}};
    std::ostringstream text, csv;
    text << "F_" << F->q << " = F_" << F->p << "[x]/(";
    for (int j = F->m; j >= 0; --j) {
        if (F->modulus[j] == 0) continue;
        if (j < F->m) text << " + ";
        if (F->modulus[j] != 1 || j == 0) text << F->modulus[j];
        if (j >= 1) text << "x";
        if (j >= 2) text << "^" << j;
    }
    text << ")\nalpha = index " << F->alpha << ", coeffs (";
    auto ac = F->coeffs(F->alpha);
    for (int j = 0; j < F->m; ++j) text << (j ? "," : "") << ac[j];
    text << ")\ntrace basis:";
    for (int t : F->trace_basis) text << " " << t;
    text << "\n";
    csv << "key,value\np," << F->p << "\nm," << F->m << "\nq," << F->q << "\nmodulus,";
    csv << detail::join(std::vector<long long>(F->modulus.begin(), F->modulus.end()));
    csv << "\nalpha," << F->alpha << "\n";
    return detail::emit(cfg, doc, text.str(), csv.str());
}

inline int cmd_periods(const RunConfig& cfg) {
    auto F = build_field(cfg.p, cfg.m, cfg.field_guard);
    auto P = cyclotomy_params(F, cfg.N);
    const PeriodsOutcome po = periods_outcome(P);
    const auto bound = period_bound_check(*F, P.N1);

    json periods = json::array();
    for (const auto& g : po.periods) periods.push_back(to_json(g));
    json doc{{"schema_version", kSchemaVersion},
             {"command", "periods"},
             {"instance", instance_json(P)},
             {"order", P.N1},
             {"periods", periods},
             {"period_polynomial", po.polynomial},
             {"bound_check", json{{"checked", bound.checked}, {"all_rational", bound.all_rational}}}};
    doc["closed_form"] = po.prediction ? to_json(*po.prediction) : json(nullptr);
    doc["match"] = po.match ? json(*po.match) : json(nullptr);
    const bool pass = !po.match || *po.match;
    doc["verdict"] = pass ? "pass" : "fail";

    std::ostringstream text, csv;
    text << "Gauss periods of order N1 = " << P.N1 << " in F_" << F->q << " (N = " << cfg.N
         << ")\n";
    for (const auto& g : po.periods) {
        text << "  eta_" << g.index << " = ";
        if (g.rational)
            text << g.rational->to_string();
        else
            text << "(irrational)";
        text << "   trace counts:";
        for (long long c : g.trace_counts) text << " " << c;
        text << "\n";
    }
    if (po.prediction) {
        text << "closed form:";
        for (const auto& [v, mult] : po.prediction->multiset)
            text << " " << v.to_string() << " (x" << mult << ")";
        text << "\n  labels:";
        for (const auto& l : po.prediction->labels) text << " [" << l << "]";
        text << "\n  match: " << (po.match && *po.match ? "yes" : "NO") << "\n";
    } else {
        text << "closed form: none applies\n";
    }
    text << "period polynomial coeffs (ascending):";
    for (long long c : po.polynomial) text << " " << c;
    text << "\nverdict: " << (pass ? "pass" : "fail") << "\n";

    csv << "index,rational_num,rational_den,trace_counts,canonical\n";
    for (const auto& g : po.periods) {
        csv << g.index << ",";
        if (g.rational)
            csv << g.rational->num() << "," << g.rational->den();
        else
            csv << ",";
        csv << ",";
        detail::csv_escaped(csv, detail::join(g.trace_counts));
        csv << ",";
        detail::csv_escaped(csv, detail::join(g.value.coeffs()));
        csv << "\n";
    }
    detail::emit(cfg, doc, text.str(), csv.str());
    return pass ? 0 : 1;
}

inline int cmd_code(const RunConfig& cfg) {
    auto F = build_field(cfg.p, cfg.m, cfg.field_guard);
    auto P = cyclotomy_params(F, cfg.N);
    auto D = defining_set(P, cfg.family, detail::skew_spec(cfg));
    auto C = build_code(D);

    json doc{{"schema_version", kSchemaVersion},
             {"command", "code"},
             {"instance", instance_json(P)},
             {"family", family_name(cfg.family)},
             {"n", C.n},
             {"k", C.k},
             {"k_equals_m", C.k == F->m}};
    if (D.skew)
        doc["skew"] = json{{"type", D.skew->canonical ? "canonical" : "seeded"},
                           {"seed", D.skew->seed}};
    bool pass = C.k == F->m;
    std::ostringstream text, csv;
    text << "family " << family_name(cfg.family) << " code over F_" << F->p << ": [" << C.n
         << ", " << C.k << "]\n";
    csv << "key,value\nfamily," << family_name(cfg.family) << "\nn," << C.n << "\nk," << C.k
        << "\n";

    try {
        auto wd = weight_distribution(C, cfg.budget);
        json jw = json::array();
        std::ostringstream wline;
        for (auto [w, c] : wd) {
            jw.push_back(json{{"weight", w}, {"count", c}});
            wline << w << ":" << c << ";";
        }
        doc["weight_distribution"] = jw;
        text << "weight distribution: " << wline.str() << "\n";
        csv << "weight_distribution," << wline.str() << "\n";
    } catch (const EnumerationBudgetExceeded&) {
        doc["weight_distribution"] = nullptr;
        text << "weight distribution: skipped (over budget)\n";
    }

    if (cfg.family == Family::B) {
        auto wrep = check_family_B_weights(C);
        doc["family_B_weights"] = json{{"class_weights", wrep.class_weights},
                                       {"min_weight", wrep.min_weight},
                                       {"checked", wrep.checked}};
        text << "family-B per-class weights:";
        for (long long w : wrep.class_weights) text << " " << w;
        text << " (all " << wrep.checked << " nonzero codewords match)\n";
    }
    doc["verdict"] = pass ? "pass" : "fail";
    text << "verdict: " << (pass ? "pass" : "fail") << "\n";
    detail::emit(cfg, doc, text.str(), csv.str());
    return pass ? 0 : 1;
}

inline int cmd_ghw(const RunConfig& cfg) {
    auto F = build_field(cfg.p, cfg.m, cfg.field_guard);
    auto P = cyclotomy_params(F, cfg.N);
    auto C = build_code(defining_set(P, cfg.family, detail::skew_spec(cfg)));
    HierarchyOptions hopt;
    hopt.r_max = cfg.r_max;
    hopt.budget = cfg.budget;
    hopt.threads = cfg.threads;
    const HierarchyReport rep = hierarchy_report(C, hopt);

    json doc{{"schema_version", kSchemaVersion},
             {"command", "ghw"},
             {"instance", instance_json(P)},
             {"family", family_name(cfg.family)},
             {"n", C.n},
             {"k", C.k},
             {"budget", cfg.budget},
             {"hierarchy", to_json(rep)["records"]},
             {"truncated_from_r", rep.truncated_from_r},
             {"issues", rep.issues},
             {"verdict", rep.all_ok ? "pass" : "fail"}};
    if (C.dset.skew)
        doc["skew"] = json{{"type", C.dset.skew->canonical ? "canonical" : "seeded"},
                           {"seed", C.dset.skew->seed}};

    std::ostringstream text, csv;
    text << "family " << family_name(cfg.family) << " [" << C.n << ", " << C.k << "] code, q = "
         << F->q << ", N = " << cfg.N << " (N1 = " << P.N1 << ")\n";
    text << "  r  d_r  method       closed  corollary\n";
    for (const auto& rec : rep.records) {
        char line[160];
        std::snprintf(line, sizeof line, "%3d %5lld  %-11s %6s  %s\n", rec.r, rec.d_r,
                      rec.method.c_str(),
                      rec.d_closed ? std::to_string(*rec.d_closed).c_str() : "-",
                      rec.corollary.empty() ? "-" : rec.corollary.c_str());
        text << line;
    }
    if (rep.truncated_from_r)
        text << "brute force truncated from r = " << rep.truncated_from_r
             << " (budget " << cfg.budget << ")\n";
    for (const auto& issue : rep.issues) text << "issue: " << issue << "\n";
    text << "verdict: " << (rep.all_ok ? "pass" : "fail") << "\n";

    csv << "r,d_r,method,d_brute,d_closed,corollary,singleton_lo,singleton_hi,plotkin,griesmer,"
           "bounds_ok,monotone_ok,closed_matches_brute,oracle_checked,oracle_mismatches\n";
    for (const auto& rec : rep.records) {
        csv << rec.r << "," << rec.d_r << "," << rec.method << ",";
        if (rec.d_brute) csv << *rec.d_brute;
        csv << ",";
        if (rec.d_closed) csv << *rec.d_closed;
        csv << ",";
        detail::csv_escaped(csv, rec.corollary);
        csv << "," << rec.bounds.singleton_lo << "," << rec.bounds.singleton_hi << ","
            << rec.bounds.plotkin << "," << rec.bounds.griesmer << "," << rec.bounds_ok << ","
            << rec.monotone_ok << "," << rec.closed_matches_brute << "," << rec.oracle_checked
            << "," << rec.oracle_mismatches << "\n";
    }
    detail::emit(cfg, doc, text.str(), csv.str());
    return rep.all_ok ? 0 : 1;
}

inline int cmd_verify(const RunConfig& cfg) {
    auto F = build_field(cfg.p, cfg.m, cfg.field_guard);
    auto P = cyclotomy_params(F, cfg.N);
    std::vector<CheckResult> checks;
    auto push = [&](std::string name, bool ok, std::string detail = "") {
        checks.push_back({std::move(name), ok, std::move(detail)});
    };

    // Field invariants.
    {
        bool bij = true;
        for (long long i = 0; i < F->q - 1 && bij; ++i)
            bij = F->log_table[F->exp_table[i]] == static_cast<felem>(i);
        for (long long a = 1; a < F->q && bij; ++a)
            bij = F->exp_table[F->log_table[a]] == static_cast<felem>(a);
        push("exp_log_bijection", bij);

        bool lin = true;
        if (F->q <= 729) {
            for (long long a = 0; a < F->q && lin; ++a)
                for (long long b = 0; b < F->q && lin; ++b)
                    lin = (F->trace(F->add(static_cast<felem>(a), static_cast<felem>(b))) ==
                           (F->trace(static_cast<felem>(a)) + F->trace(static_cast<felem>(b))) %
                               F->p);
        } else {
            ghwlab::detail::SplitMix64 rng(1);
            for (int t = 0; t < 4096 && lin; ++t) {
                auto a = static_cast<felem>(rng.next() % F->q);
                auto b = static_cast<felem>(rng.next() % F->q);
                lin = F->trace(F->add(a, b)) == (F->trace(a) + F->trace(b)) % F->p;
            }
        }
        push("trace_additive", lin);

        std::vector<long long> pre(static_cast<std::size_t>(F->p), 0);
        for (long long a = 0; a < F->q; ++a) pre[F->trace(static_cast<felem>(a))]++;
        bool onto = true;
        for (long long t = 0; t < F->p; ++t) onto = onto && pre[t] == F->q / F->p;
        push("trace_onto_q_over_p", onto);

        bool frob = true;
        for (long long a = 0; a < F->q && frob; ++a)
            frob = F->trace_by_frobenius(static_cast<felem>(a)) == F->trace(static_cast<felem>(a));
        push("trace_frobenius_consistent", frob);
    }

    // Multiset lemma across every order (bounded fields), else for N and N1.
    {
        bool ok = true;
        std::string detail;
        try {
            const auto es = F->q <= 2401 ? detail::divisors(F->q - 1)
                                         : std::vector<long long>{P.N, P.N1};
            for (long long e : es)
                for (long long i = 0; i < e; ++i) verify_multiset_lemma(*F, e, i);
        } catch (const MathCheckError& e) {
            ok = false;
            detail = e.what();
        }
        push("multiset_lemma", ok, detail);
    }

    HierarchyOptions hopt;
    hopt.r_max = cfg.r_max;
    hopt.budget = cfg.budget;
    hopt.threads = cfg.threads;
    HierarchyReport hier;
    auto inst = instance_checks(P, cfg.family, detail::skew_spec(cfg), hopt, nullptr, &hier);
    checks.insert(checks.end(), inst.begin(), inst.end());

    bool pass = true;
    for (const auto& c : checks) pass = pass && c.ok;

    json jchecks = json::array();
    for (const auto& c : checks)
        jchecks.push_back(json{{"name", c.name}, {"ok", c.ok}, {"detail", c.detail}});
    json doc{{"schema_version", kSchemaVersion},
             {"command", "verify"},
             {"instance", instance_json(P)},
             {"family", family_name(cfg.family)},
             {"checks", jchecks},
             {"hierarchy", to_json(hier)["records"]},
             {"verdict", pass ? "pass" : "fail"}};

    std::ostringstream text, csv;
    csv << "check,ok,detail\n";
    for (const auto& c : checks) {
        text << (c.ok ? "[ok]   " : "[FAIL] ") << c.name;
        if (!c.detail.empty()) text << "  (" << c.detail << ")";
        text << "\n";
        csv << c.name << "," << c.ok << ",";
        detail::csv_escaped(csv, c.detail);
        csv << "\n";
    }
    text << "verdict: " << (pass ? "pass" : "fail") << "\n";
    detail::emit(cfg, doc, text.str(), csv.str());
    return pass ? 0 : 1;
}

inline int cmd_sweep(const RunConfig& cfg) {
    long long fields = 0, instances = 0, checks_passed = 0, checks_failed = 0;
    std::vector<std::string> failures;
    json inst_rows = json::array();
    std::ostringstream text, csv;
    csv << "p,m,q,N,family,n,k,ok,d_values\n";

    auto run_instance = [&](const CyclotomyParams& P, Family fam, std::optional<SkewSpec> skew) {
        ++instances;
        HierarchyOptions hopt;
        hopt.budget = cfg.budget;
        hopt.threads = cfg.threads;
        HierarchyReport hier;
        bool inst_ok = true;
        std::vector<CheckResult> checks;
        try {
            checks = instance_checks(P, fam, skew, hopt, nullptr, &hier);
        } catch (const Error& e) {
            checks.push_back({"instance", false, e.what()});
        }
        for (const auto& c : checks) {
            if (c.ok) {
                ++checks_passed;
            } else {
                ++checks_failed;
                inst_ok = false;
                if (failures.size() < 100)
                    failures.push_back("p=" + std::to_string(P.ctx->p) + " m=" +
                                       std::to_string(P.ctx->m) + " N=" + std::to_string(P.N) +
                                       " family=" + family_name(fam) + " " + c.name +
                                       (c.detail.empty() ? "" : ": " + c.detail));
            }
        }
        std::vector<long long> ds;
        for (const auto& rec : hier.records) ds.push_back(rec.d_r);
        json row{{"p", P.ctx->p}, {"m", P.ctx->m},       {"q", P.ctx->q},
                 {"N", P.N},      {"family", family_name(fam)}, {"d", ds},
                 {"ok", inst_ok}};
        if (skew) row["skew"] = skew->canonical ? "canonical" : ("seed=" + std::to_string(skew->seed));
        inst_rows.push_back(row);
        csv << P.ctx->p << "," << P.ctx->m << "," << P.ctx->q << "," << P.N << ","
            << family_name(fam) << ",,," << inst_ok << "," << detail::join(ds) << "\n";
    };

    for (const auto& [p, m] : detail::prime_power_list(cfg.q_max)) {
        auto F = build_field(p, m, cfg.field_guard);
        ++fields;
        // Field-level: multiset lemma for every order and class.
        for (long long e : detail::divisors(F->q - 1)) {
            for (long long i = 0; i < e; ++i) {
                try {
                    verify_multiset_lemma(*F, e, i);
                    ++checks_passed;
                } catch (const MathCheckError& ex) {
                    ++checks_failed;
                    if (failures.size() < 100)
                        failures.push_back("q=" + std::to_string(F->q) + " multiset e=" +
                                           std::to_string(e) + " i=" + std::to_string(i) + ": " +
                                           ex.what());
                }
            }
        }
        for (long long N : detail::divisors(F->q - 1)) {
            auto P = cyclotomy_params(F, N);
            if (!P.ord_ok) continue;
            run_instance(P, Family::A, std::nullopt);
            if (P.N1 * P.N1 <= F->q) run_instance(P, Family::B, std::nullopt);
        }
        // Family C does not depend on N.
        auto P1 = cyclotomy_params(F, 1);
        if (F->q % 4 == 3) run_instance(P1, Family::C, SkewSpec{true, 0});
        run_instance(P1, Family::C, SkewSpec{false, 1});
        run_instance(P1, Family::C, SkewSpec{false, 2});
    }

    const bool pass = checks_failed == 0;
    json doc{{"schema_version", kSchemaVersion},
             {"command", "sweep"},
             {"q_max", cfg.q_max},
             {"budget", cfg.budget},
             {"fields", fields},
             {"instances", instances},
             {"checks_passed", checks_passed},
             {"checks_failed", checks_failed},
             {"failures", failures},
             {"results", inst_rows},
             {"verdict", pass ? "pass" : "fail"}};

    text << "sweep up to q = " << cfg.q_max << ": " << fields << " fields, " << instances
         << " instances, " << checks_passed << " checks passed, " << checks_failed
         << " failed\n";
    for (const auto& f : failures) text << "  FAIL " << f << "\n";
    text << "verdict: " << (pass ? "pass" : "fail") << "\n";
    detail::emit(cfg, doc, text.str(), csv.str());
    return pass ? 0 : 1;
}

// Entry point shared by the binary and the tests. Exit codes: 0 = all
// requested checks pass, 1 = a mathematical check failed, 2 = usage or
// precondition error.
inline int run(std::vector<std::string> args) {
    RunConfig cfg;
    CLI::App app{"exact Gauss periods and generalized Hamming weights of cyclotomic trace codes"};
    app.require_subcommand(1);

    std::string family_str = "A";
    auto add_common = [&](CLI::App* sub, bool wants_instance) {
        if (wants_instance) {
            sub->add_option("--p", cfg.p, "odd prime p")->required();
            sub->add_option("--m", cfg.m, "extension degree m");
            sub->add_option("--N", cfg.N, "divisor N of q-1");
        }
        sub->add_option("--budget", cfg.budget, "enumeration budget (column checks)");
        sub->add_option("--threads", cfg.threads, "worker threads (0 = auto)");
        sub->add_option("--format", cfg.format, "output format: text, json, csv")
            ->check(CLI::IsMember({"text", "json", "csv"}));
        sub->add_option("--output", cfg.output, "write the report to this file");
        sub->add_option("--guard", cfg.field_guard, "field size guard (default 10^6)");
    };

    auto* s_field = app.add_subcommand("field", "construct F_{p^m} and print its data");
    add_common(s_field, true);
    auto* s_periods = app.add_subcommand("periods", "exact Gauss periods and closed forms");
    add_common(s_periods, true);
    auto* s_code = app.add_subcommand("code", "build a defining-set code");
    add_common(s_code, true);
    auto* s_ghw = app.add_subcommand("ghw", "generalized Hamming weight hierarchy");
    add_common(s_ghw, true);
    auto* s_verify = app.add_subcommand("verify", "full invariant suite for one instance");
    add_common(s_verify, true);
    auto* s_sweep = app.add_subcommand("sweep", "verify every valid instance with q <= Q");
    add_common(s_sweep, false);
    s_sweep->add_option("--q-max", cfg.q_max, "largest field size to sweep");

    for (CLI::App* sub : {s_code, s_ghw, s_verify}) {
        sub->add_option("--family", family_str, "defining-set family: A, B or C")
            ->check(CLI::IsMember({"A", "B", "C"}));
        sub->add_option("--skew", cfg.skew, "skew set kind for family C")
            ->check(CLI::IsMember({"canonical", "seeded"}));
        sub->add_option("--seed", cfg.seed, "seed for a seeded skew set");
        sub->add_option("--r-max", cfg.r_max, "largest subspace dimension r");
    }

    try {
        // CLI11 consumes the vector form back to front.
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::CallForHelp& e) {
        std::cout << app.help();
        return 0;
    } catch (const CLI::ParseError& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return 2;
    }

    cfg.family = family_str == "B" ? Family::B : family_str == "C" ? Family::C : Family::A;
    if (cfg.skew == "seeded" && cfg.family != Family::C) {
        std::cerr << "usage error: --skew applies to family C only\n";
        return 2;
    }

    try {
        if (s_field->parsed()) return cmd_field(cfg);
        if (s_periods->parsed()) return cmd_periods(cfg);
        if (s_code->parsed()) return cmd_code(cfg);
        if (s_ghw->parsed()) return cmd_ghw(cfg);
        if (s_verify->parsed()) return cmd_verify(cfg);
        if (s_sweep->parsed()) return cmd_sweep(cfg);
    } catch (const PreconditionError& e) {
        std::cerr << "precondition error: " << e.what() << "\n";
        return 2;
    } catch (const MathCheckError& e) {
        std::cerr << "mathematical check failed: " << e.what() << "\n";
        return 1;
    }
    return 2;
}

}  // namespace ghwlab::cli
