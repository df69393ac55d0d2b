#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "ghwlab/codes.hpp"
#include "ghwlab/cyclotomy.hpp"
#include "ghwlab/ghw.hpp"
#include "ghwlab/rational.hpp"

namespace ghwlab {

inline constexpr int kSchemaVersion = 1;

using json = nlohmann::json;

// Rationals serialize losslessly as {"num": ..., "den": ...}.
inline json to_json(const Rational& r) { return json{{"num", r.num()}, {"den", r.den()}}; }

inline json to_json(const GaussPeriod& g) {
    json j{{"order", g.order},
           {"index", g.index},
           {"trace_counts", g.trace_counts},
           {"canonical", g.value.coeffs()}};
    j["rational"] = g.rational ? to_json(*g.rational) : json(nullptr);
    return j;
}

inline json to_json(const PeriodPrediction& p) {
    json values = json::array();
    for (const auto& [v, mult] : p.multiset)
        values.push_back(json{{"value", to_json(v)}, {"multiplicity", mult}});
    return json{{"labels", p.labels}, {"multiset", values}};
}

inline json to_json(const DiophantineWitness& w) {
    return json{{"kind", w.kind == DiophantineWitness::Kind::c1d1 ? "c1d1" : "u1v1"},
                {"first", w.first},
                {"second_abs", w.second_abs}};
}

inline json instance_json(const CyclotomyParams& P) {
    const FieldCtx& F = *P.ctx;
    return json{{"p", F.p},     {"m", F.m},   {"q", F.q},   {"N", P.N},
                {"n1", P.n1},   {"N1", P.N1}, {"N2", P.N2}, {"n2", P.n2},
                {"ord_ok", P.ord_ok}};
}

inline json to_json(const GhwBounds& b) {
    return json{{"singleton_lo", b.singleton_lo},
                {"singleton_hi", b.singleton_hi},
                {"plotkin", b.plotkin},
                {"griesmer", b.griesmer}};
}

inline json to_json(const GhwRecord& r) {
    json j{{"r", r.r},
           {"d_r", r.d_r},
           {"method", r.method},
           {"bounds", to_json(r.bounds)},
           {"checks",
            json{{"bounds_ok", r.bounds_ok},
                 {"monotone_ok", r.monotone_ok},
                 {"closed_matches_brute", r.closed_matches_brute},
                 {"oracle_checked", r.oracle_checked},
                 {"oracle_mismatches", r.oracle_mismatches}}}};
    j["d_brute"] = r.d_brute ? json(*r.d_brute) : json(nullptr);
    j["d_closed"] = r.d_closed ? json(*r.d_closed) : json(nullptr);
    j["corollary"] = r.corollary.empty() ? json(nullptr) : json(r.corollary);
    j["closed_form_derived"] = r.closed_derived;
    if (r.n_zero_max >= 0) {
        j["n_zero_max"] = r.n_zero_max;
        j["max_profile"] = r.max_profile;
    }
    return j;
}

inline json to_json(const HierarchyReport& rep) {
    json records = json::array();
    for (const auto& r : rep.records) records.push_back(to_json(r));
    return json{{"family", family_name(rep.family)},
                {"records", records},
                {"all_ok", rep.all_ok},
                {"truncated_from_r", rep.truncated_from_r},
                {"issues", rep.issues}};
}

}  // namespace ghwlab
