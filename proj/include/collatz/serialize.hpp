#pragma once

#include "collatz/diagnostics.hpp"
#include "collatz/dynamics.hpp"
#include "collatz/fpseries.hpp"
#include "collatz/isometry.hpp"

#include <json.hpp>

#include <sstream>
#include <string>

namespace collatz {

using Json = nlohmann::ordered_json;

inline Json to_json(const HenselDigits& h) {
    return Json{{"p", h.p}, {"preperiod", h.preperiod}, {"period", h.period}};
}

inline Json to_json(const PadicApprox& a) {
    return Json{{"p", a.p},
                {"valuation_offset", a.valuation_offset},
                {"precision", a.digits.size()},
                {"digits", a.digits}};
}

inline Json to_json(const OrbitRecord& rec) {
    Json states = Json::array();
    for (const auto& s : rec.states) states.push_back(to_string(s));
    Json j{{"p", rec.params.p()},
           {"q", rec.params.q()},
           {"states", std::move(states)},
           {"digits", rec.digits},
           {"r", rec.r},
           {"truncated", rec.truncated}};
    if (rec.cycle)
        j["cycle"] = Json{{"preperiod", rec.cycle->preperiod}, {"period", rec.cycle->period}};
    else
        j["cycle"] = nullptr;
    return j;
}

inline Json to_json(const Cycle& c) {
    Json members = Json::array();
    for (const auto& m : c.members) members.push_back(to_string(m));
    return Json{{"p", c.params.p()},
                {"q", c.params.q()},
                {"representative", to_string(c.members.front())},
                {"members", std::move(members)}};
}

inline Json to_json(const CycleIdentity& id) {
    return Json{{"numerator", id.numerator.get_str()},
                {"denominator", id.denominator.get_str()},
                {"quotient", id.quotient.get_str()}};
}

inline Json to_json(const CycleSearchResult& r) {
    Json cycles = Json::array();
    for (const auto& c : r.cycles) {
        Json jc = to_json(c);
        jc["identity"] = to_json(cycle_identity(c));
        cycles.push_back(std::move(jc));
    }
    Json truncated = Json::array();
    for (const auto& t : r.truncated)
        truncated.push_back(Json{{"seed", t.seed.get_str()}, {"escaped", t.escaped}});
    return Json{{"cycles", std::move(cycles)}, {"truncated_seeds", std::move(truncated)}};
}

inline Json to_json(const DensityWitness& w) {
    Json j{{"n", w.n},
           {"psi_prime_n", w.psi_prime_n.get_str()},
           {"v_n", to_string(w.v_n)},
           {"w_n", w.w_n.get_str()},
           {"psi_n_minus_1", w.psi_n_minus_1},
           {"orbit_periodic", w.orbit_periodic},
           {"bound_achieved", w.bound_achieved}};
    j["distance_exponent"] = w.distance_exponent ? Json(*w.distance_exponent) : Json(nullptr);
    j["psi_n"] = w.psi_n ? Json(*w.psi_n) : Json(nullptr);
    return j;
}

inline Json to_json(const PsiPrimeSeries& s) {
    Json values = Json::array();
    for (const auto& v : s.values) values.push_back(v.get_str());
    return Json{{"values", std::move(values)},
                {"ratios", s.ratios},
                {"liminf_estimate", s.liminf_estimate}};
}

inline Json to_json(const MeanDriftReport& r) {
    return Json{{"p", r.p},
                {"q", r.q},
                {"m", r.m},
                {"sample_size", r.sample_size},
                {"full_enumeration", r.full_enumeration},
                {"rng_seed", r.rng_seed},
                {"empirical_mean", to_string(r.empirical_mean)},
                {"empirical_mean_decimal", r.empirical_mean_d},
                {"lower_bound", r.lower_bound},
                {"upper_bound", r.upper_bound},
                {"within_bounds", r.within_bounds}};
}

inline Json to_json(const TrancheStats& t) {
    return Json{{"r", t.r},          {"m", t.m},
                {"ell", t.ell},      {"e_list", t.e_list},
                {"nonzero_total", t.nonzero_total}, {"drift", t.drift},
                {"height_ok", t.height_ok}};
}

inline Json to_json(const NzDriftReport& r) {
    return Json{{"m", r.m},           {"nz", r.nz},   {"drift", r.drift},
                {"alpha_nz", r.alpha_nz}, {"d", r.d}, {"within_two", r.within_two}};
}

inline Json to_json(const RatioSeries& s) {
    Json points = Json::array();
    for (const auto& pt : s.points) {
        Json jp{{"n", pt.n}, {"r_over_n", pt.r_over_n}};
        jp["psi_over_n"] = pt.psi_over_n ? Json(*pt.psi_over_n) : Json(nullptr);
        jp["h_over_n"] = pt.h_over_n ? Json(*pt.h_over_n) : Json(nullptr);
        jp["growth_ratio"] = pt.growth_ratio ? Json(*pt.growth_ratio) : Json(nullptr);
        points.push_back(std::move(jp));
    }
    Json j{{"periodic", s.periodic}, {"points", std::move(points)}};
    if (s.cycle)
        j["cycle"] = Json{{"preperiod", s.cycle->preperiod}, {"period", s.cycle->period}};
    else
        j["cycle"] = nullptr;
    return j;
}

inline Json to_json(const FpSeriesApprox& s) {
    return Json{{"p", s.p}, {"coeffs", s.coeffs}};
}

inline Json to_json(const FpRationalFunction& f) {
    return Json{{"p", f.p()}, {"num", f.num.coeffs}, {"den", f.den.coeffs}};
}

/// CSV rows of a cycle table: p,q,representative,cycle (members ;-joined).
inline std::string cycle_table_csv(const std::vector<CycleSearchResult>& results,
                                   const std::vector<Params>& params_list) {
    std::ostringstream out;
    out << "p,q,representative,cycle\n";
    for (std::size_t i = 0; i < results.size(); ++i) {
        for (const auto& c : results[i].cycles) {
            out << params_list[i].p() << ',' << params_list[i].q() << ','
                << to_string(c.members.front()) << ',';
            for (std::size_t j = 0; j < c.members.size(); ++j) {
                if (j) out << ';';
                out << to_string(c.members[j]);
            }
            out << '\n';
        }
    }
    return out.str();
}

inline std::string mean_drift_csv(const MeanDriftReport& r) {
    std::ostringstream out;
    out << "m,empirical,lower,upper,samples,rng_seed\n";
    out << r.m << ',' << to_string(r.empirical_mean) << ',' << r.lower_bound << ','
        << r.upper_bound << ',' << r.sample_size << ',' << r.rng_seed << '\n';
    return out.str();
}

} // namespace collatz
