#include "qdx/report.hpp"

#include <sstream>

namespace qdx {

std::string json_line(const Json& j) { return j.dump(); }

Json rat_json(const Rat& r) { return rat_to_string(r); }

Json series_json(const SeriesExpr& s) {
    Json j;
    std::vector<std::string> num;
    int d = poly_degree(s.numerator);
    for (int i = 0; i <= std::max(d, 0); ++i) {
        auto it = s.numerator.find(i);
        num.push_back((it == s.numerator.end() ? Int(0) : it->second).str());
    }
    j["num"] = num;
    j["den"] = s.denom_weights;
    return j;
}

Json prime_json(const WeightedRing& R, const MonPrime& q) {
    return prime_to_string(R, q);
}

Json additivity_json(const WeightedRing& R, const AdditivityReport& rep) {
    Json j;
    j["lhs"] = rat_json(rep.lhs);
    Json terms = Json::array();
    for (const auto& t : rep.terms) {
        Json e;
        e["prime"] = prime_json(R, t.prime);
        e["length"] = t.length;
        e["prime_degree"] = rat_json(t.pdeg);
        e["value"] = rat_json(t.value);
        terms.push_back(e);
    }
    j["terms"] = terms;
    j["rhs"] = rat_json(rep.rhs);
    j["equal"] = rep.equal;
    return j;
}

namespace {

Json pair_json(const QuillenPair& pr) {
    Json j;
    std::vector<std::string> elems;
    for (const auto& g : pr.A.elems)
        if (!g.is_identity()) elems.push_back(g.to_cycle_string());
    j["subgroup"] = elems;
    j["point"] = pr.point;
    j["rank"] = pr.rank;
    return j;
}

} // namespace

Json main_report_json(const MainReport& rep) {
    Json j;
    j["fixture"] = rep.fixture;
    j["lhs"] = rat_json(rep.lhs);
    j["rhs"] = rat_json(rep.rhs);
    j["equal"] = rep.equal;
    j["lhs_pole"] = rep.lhs_pole;
    j["max_rank"] = rep.max_rank;
    j["dim_check"] = rep.dim_check;
    Json terms = Json::array();
    for (const auto& t : rep.terms) {
        Json e;
        e["class"] = pair_json(t.class_rep);
        e["weyl_order"] = t.weyl;
        e["model_degree"] = rat_json(t.model_deg);
        e["value"] = rat_json(t.value);
        e["tautological"] = t.tautological;
        e["model_verified"] = t.model_verified;
        terms.push_back(e);
    }
    j["terms"] = terms;
    j["any_tautology"] = rep.any_tautology;
    j["all_models_verified"] = rep.all_models_verified;
    j["series_convention"] = rep.series_convention;
    if (rep.term_matching) {
        const auto& tm = *rep.term_matching;
        Json m;
        m["count_equal"] = tm.count_equal;
        m["bijection_ok"] = tm.bijection_ok;
        Json entries = Json::array();
        for (const auto& e : tm.entries) {
            Json je;
            je["prime_vars"] = e.prime.vars;
            je["local_length"] = e.local_len;
            je["prime_degree"] = rat_json(e.pdeg);
            je["algebraic_value"] = rat_json(e.algebraic_value);
            je["geometric_value"] = rat_json(e.geometric_value);
            je["equal"] = e.equal;
            entries.push_back(je);
        }
        m["entries"] = entries;
        m["all_terms_equal"] = tm.all_terms_equal;
        m["algebraic_rhs"] = rat_json(tm.algebraic_rhs);
        m["totals_agree"] = tm.totals_agree;
        j["term_matching"] = m;
    }
    return j;
}

Json correspondence_json(const CorrespondenceReport& rep) {
    Json j;
    j["fixture"] = rep.fixture;
    j["minimal_primes"] = rep.num_minimal_primes;
    j["qprime_classes"] = rep.num_qprime_classes;
    j["counts_equal"] = rep.counts_equal;
    j["bijection_ok"] = rep.bijection_ok;
    j["dims_respected"] = rep.dims_respected;
    j["pullbacks_ok"] = rep.pullbacks_ok;
    j["ok"] = rep.ok;
    return j;
}

Json gate_json(const GateReport& rep) {
    Json j;
    j["all_passed"] = rep.all_passed;
    j["failures"] = rep.failures;
    j["unverified"] = rep.unverified;
    return j;
}

std::string main_report_human(const MainReport& rep) {
    std::ostringstream os;
    os << "fixture " << rep.fixture << ": lhs=" << rat_to_string(rep.lhs)
       << " rhs=" << rat_to_string(rep.rhs) << " equal=" << (rep.equal ? "true" : "false")
       << " dim=" << rep.lhs_pole << "/" << rep.max_rank
       << " dim_check=" << (rep.dim_check ? "true" : "false");
    if (rep.any_tautology) os << " [tautological]";
    if (!rep.all_models_verified) os << " [unverified fixture series]";
    os << "\n";
    for (const auto& t : rep.terms) {
        os << "  class rank " << t.rank << " point " << t.class_rep.point << ": |W|=" << t.weyl
           << " deg=" << rat_to_string(t.model_deg) << " term=" << rat_to_string(t.value);
        if (t.tautological) os << " [tautological]";
        if (!t.model_verified) os << " [unverified]";
        os << "\n";
    }
    if (rep.term_matching) {
        const auto& tm = *rep.term_matching;
        os << "  term matching: |D(M)|=|Q'_max| " << (tm.count_equal ? "yes" : "NO")
           << ", bijection " << (tm.bijection_ok ? "ok" : "BROKEN") << ", terms "
           << (tm.all_terms_equal ? "all equal" : "MISMATCH") << ", totals "
           << (tm.totals_agree ? "agree" : "DIFFER") << "\n";
        for (const auto& e : tm.entries)
            os << "    prime " << (e.prime.vars.empty() ? "(0)" : "(#" + std::to_string(e.prime.vars.size()) + " vars)")
               << " len=" << e.local_len << " lhs term=" << rat_to_string(e.algebraic_value)
               << " rhs term=" << rat_to_string(e.geometric_value)
               << (e.equal ? "" : "  <-- MISMATCH") << "\n";
    }
    return os.str();
}

std::string additivity_human(const WeightedRing& R, const AdditivityReport& rep) {
    std::ostringstream os;
    os << "deg(M) = " << rat_to_string(rep.lhs) << "\n";
    for (const auto& t : rep.terms)
        os << "  " << prime_to_string(R, t.prime) << ": length " << t.length << " x deg "
           << rat_to_string(t.pdeg) << " = " << rat_to_string(t.value) << "\n";
    os << "sum = " << rat_to_string(rep.rhs) << (rep.equal ? "  (equal)" : "  (NOT EQUAL)") << "\n";
    return os.str();
}

std::string correspondence_human(const CorrespondenceReport& rep) {
    std::ostringstream os;
    os << "fixture " << rep.fixture << ": minimal primes " << rep.num_minimal_primes
       << " vs Q' classes " << rep.num_qprime_classes << " -> "
       << (rep.counts_equal ? "equal" : "DIFFER") << "; bijection "
       << (rep.bijection_ok ? "ok" : "BROKEN") << "; dims "
       << (rep.dims_respected ? "respected" : "VIOLATED") << "; pullbacks "
       << (rep.pullbacks_ok ? "ok" : "BROKEN") << "; overall "
       << (rep.ok ? "ok" : "FAILED") << "\n";
    return os.str();
}

} // namespace qdx
