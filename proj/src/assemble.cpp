#include "qdx/assemble.hpp"

#include "qdx/errors.hpp"

#include <algorithm>
#include <set>

namespace qdx {

namespace {

bool conjugate_in(const PermGroup& G, const Subgroup& A, const Subgroup& B) {
    if (A.order() != B.order()) return false;
    for (const auto& g : G.elements())
        if (conjugate_subgroup(g, A) == B) return true;
    return false;
}

const CohModel* stabilizer_model_for(const Fixture& f, const Subgroup& stab) {
    for (const auto& entry : f.stabilizer_models)
        if (conjugate_in(f.G, entry.key, stab)) return &entry.model;
    return nullptr;
}

// Index of the class containing the given pair, or -1.
int class_of_pair(const PermGroup& G, const GSet& X, const std::vector<QuillenPair>& pairs,
                  const std::vector<PairClass>& classes, const QuillenPair& pair) {
    for (std::size_t ci = 0; ci < classes.size(); ++ci) {
        const auto& rep = classes[ci].rep;
        if (is_subconjugate(G, X, pair, rep) && is_subconjugate(G, X, rep, pair)) return (int)ci;
    }
    (void)pairs;
    return -1;
}

const CohModel* centralizer_model_for(const Fixture& f, const std::vector<QuillenPair>& pairs,
                                      const std::vector<PairClass>& classes, int ci) {
    // Exact pair keys take precedence over rank keys.
    for (const auto& entry : f.centralizer_models) {
        if (!entry.pair_key) continue;
        QuillenPair key{entry.pair_key->first, entry.pair_key->second,
                        subgroup_rank(entry.pair_key->first, f.p)};
        if (class_of_pair(f.G, f.X, pairs, classes, key) == ci) return &entry.model;
    }
    for (const auto& entry : f.centralizer_models) {
        if (!entry.rank_key) continue;
        if (*entry.rank_key == classes[ci].rank) return &entry.model;
    }
    return nullptr;
}

bool is_tautological(const Fixture& f, const QuillenPair& rep) {
    // Circular instance: the centralizer is all of G and the component spans X.
    Subgroup C = pair_centralizer(f.G, f.X, rep);
    return C.order() == f.G.order() && f.X.num_points() == 1;
}

} // namespace

SeriesExpr lhs_series(const Fixture& f) {
    if (f.global_model) return model_series(*f.global_model);
    if (f.stabilizer_models.empty())
        throw MissingModel("fixture '" + f.name + "' has neither a global model nor stabilizer models");
    SeriesExpr total = SeriesExpr::zero();
    bool first = true;
    for (const auto& orbit : f.X.orbits(f.G)) {
        Subgroup stab = f.X.stabilizer(f.G, orbit.front());
        const CohModel* m = stabilizer_model_for(f, stab);
        if (!m)
            throw MissingModel("no stabilizer model for an orbit stabilizer of order " +
                               std::to_string(stab.order()));
        SeriesExpr piece = model_series(*m);
        total = first ? piece : add(total, piece);
        first = false;
    }
    if (first) throw MissingModel("empty G-set has no orbit models to sum");
    return normalize(total);
}

Rat lhs_degree(const Fixture& f) { return degree_at_one(lhs_series(f)); }

RhsReport rhs_degree(const Fixture& f) {
    auto pairs = quillen_pairs(f.G, f.p, f.X);
    auto classes = pair_classes(f.G, f.p, f.X);
    auto qmax = q_prime_max(f.G, f.p, f.X);
    RhsReport rep;
    rep.total = 0;
    for (const auto& cls : qmax) {
        int ci = class_of_pair(f.G, f.X, pairs, classes, cls.rep);
        const CohModel* m = centralizer_model_for(f, pairs, classes, ci);
        if (!m)
            throw MissingModel("no centralizer model for a maximal-rank class (rank " +
                               std::to_string(cls.rank) + ")");
        RhsTerm term;
        term.class_rep = cls.rep;
        term.rank = cls.rank;
        term.weyl = weyl_order(f.G, f.X, cls.rep);
        term.model_deg = model_degree(*m);
        term.value = term.model_deg / term.weyl;
        term.tautological = is_tautological(f, cls.rep);
        term.model_verified = model_is_verified(*m);
        rep.total += term.value;
        rep.terms.push_back(std::move(term));
    }
    return rep;
}

namespace {

TermMatching run_term_matching(const Fixture& f, const std::vector<QuillenPair>& pairs,
                               const std::vector<PairClass>& classes,
                               const std::vector<PairClass>& qmax) {
    const auto& alg = *f.algebraic;
    TermMatching tm;
    auto dmax = dmax_primes(alg.ring, alg.module);
    tm.count_equal = dmax.size() == qmax.size();

    // The declared matches must hit each prime of D(M) and each class of
    // Q'_max exactly once.
    std::set<MonPrime> seen_primes;
    std::set<int> seen_classes;
    bool bijection = tm.count_equal && alg.matches.size() == dmax.size();
    for (const auto& match : alg.matches) {
        bool prime_known = std::binary_search(dmax.begin(), dmax.end(), match.prime);
        QuillenPair key{match.A, match.point, subgroup_rank(match.A, f.p)};
        int ci = class_of_pair(f.G, f.X, pairs, classes, key);
        bool class_in_qmax = false;
        for (const auto& cls : qmax)
            if (ci >= 0 && cls.rep == classes[ci].rep) class_in_qmax = true;
        if (!prime_known || !class_in_qmax || !seen_primes.insert(match.prime).second ||
            !seen_classes.insert(ci).second)
            bijection = false;
    }
    tm.bijection_ok = bijection;

    tm.algebraic_rhs = additivity_report(alg.ring, alg.module).rhs;
    Rat matched_total = 0;
    bool all_equal = bijection;
    for (const auto& match : alg.matches) {
        TermMatchEntry e;
        e.prime = match.prime;
        e.local_len = local_length(alg.ring, alg.module, match.prime);
        e.pdeg = prime_degree(alg.ring, match.prime);
        e.algebraic_value = Rat(e.local_len) * e.pdeg;

        QuillenPair key{match.A, match.point, subgroup_rank(match.A, f.p)};
        int ci = class_of_pair(f.G, f.X, pairs, classes, key);
        if (ci < 0) throw MissingModel("declared match names a pair outside the Quillen category");
        e.class_rep = classes[ci].rep;
        const CohModel* m = centralizer_model_for(f, pairs, classes, ci);
        if (!m) throw MissingModel("declared match has no centralizer model");
        e.geometric_value = model_degree(*m) / weyl_order(f.G, f.X, e.class_rep);
        e.equal = (e.algebraic_value == e.geometric_value);
        all_equal = all_equal && e.equal;
        matched_total += e.algebraic_value;
        tm.entries.push_back(std::move(e));
    }
    tm.all_terms_equal = all_equal;
    tm.totals_agree = (matched_total == tm.algebraic_rhs);
    return tm;
}

} // namespace

MainReport verify_main(const Fixture& f) {
    MainReport rep;
    rep.fixture = f.name;
    auto series = lhs_series(f);
    rep.lhs = degree_at_one(series);
    rep.lhs_pole = pole_order(series);
    rep.max_rank = max_rank(f.G, f.p, f.X);
    rep.dim_check = (rep.lhs_pole == rep.max_rank);

    auto rhs = rhs_degree(f);
    rep.rhs = rhs.total;
    rep.terms = rhs.terms;
    rep.equal = (rep.lhs == rep.rhs);
    for (const auto& t : rep.terms) {
        rep.any_tautology = rep.any_tautology || t.tautological;
        rep.all_models_verified = rep.all_models_verified && t.model_verified;
    }
    if (f.global_model)
        rep.all_models_verified = rep.all_models_verified && model_is_verified(*f.global_model);

    if (f.algebraic) {
        auto pairs = quillen_pairs(f.G, f.p, f.X);
        auto classes = pair_classes(f.G, f.p, f.X);
        auto qmax = q_prime_max(f.G, f.p, f.X);
        rep.term_matching = run_term_matching(f, pairs, classes, qmax);
    }
    return rep;
}

GateReport run_series_gates(const Fixture& f, int D) {
    GateReport rep;
    auto gate_one = [&](const CohModel& m, const std::string& where) {
        const auto* so = std::get_if<SeriesOnlyModel>(&m);
        if (!so) return;
        if (!so->action) {
            rep.unverified.push_back(where);
            return;
        }
        if (!series_matches_action(*so, D)) {
            rep.all_passed = false;
            rep.failures.push_back(where);
        }
    };
    if (f.global_model) gate_one(*f.global_model, "global_model");
    for (std::size_t i = 0; i < f.stabilizer_models.size(); ++i)
        gate_one(f.stabilizer_models[i].model, "stabilizer_model[" + std::to_string(i) + "]");
    for (std::size_t i = 0; i < f.centralizer_models.size(); ++i)
        gate_one(f.centralizer_models[i].model, "centralizer_model[" + std::to_string(i) + "]");
    return rep;
}

CorrespondenceReport correspondence_check(const Fixture& f) {
    if (!f.algebraic) throw MissingAlgebraicSide("fixture declares no algebraic side");
    const auto& alg = *f.algebraic;
    CorrespondenceReport rep;
    rep.fixture = f.name;

    auto primes = minimal_primes(alg.ring, alg.module);
    auto qp = q_prime(f.G, f.p, f.X);
    rep.num_minimal_primes = primes.size();
    rep.num_qprime_classes = qp.size();
    rep.counts_equal = primes.size() == qp.size();

    auto pairs = quillen_pairs(f.G, f.p, f.X);
    auto classes = pair_classes(f.G, f.p, f.X);

    std::set<MonPrime> seen_primes;
    std::set<int> seen_classes;
    bool bijection = alg.matches.size() == primes.size();
    bool dims = true;
    bool pullbacks = true;
    for (const auto& match : alg.matches) {
        if (!std::binary_search(primes.begin(), primes.end(), match.prime)) bijection = false;
        QuillenPair key{match.A, match.point, subgroup_rank(match.A, f.p)};
        int ci = class_of_pair(f.G, f.X, pairs, classes, key);
        if (ci < 0) { bijection = false; continue; }
        if (!is_maximal_pair(f.G, f.p, f.X, classes[ci].rep)) bijection = false;
        if (!seen_primes.insert(match.prime).second) bijection = false;
        if (!seen_classes.insert(ci).second) bijection = false;
        if (alg.ring.n() - (int)match.prime.vars.size() != classes[ci].rank) dims = false;

        if (match.res) {
            // The centralizer model must be presented; its unique minimal
            // prime contracts to the declared prime.
            const CohModel* m = centralizer_model_for(f, pairs, classes, ci);
            if (!m || !std::holds_alternative<PresentedModel>(*m))
                throw MissingModel("pullback check needs a presented centralizer model");
            const auto& pm = std::get<PresentedModel>(*m);
            auto cent_primes = minimal_primes(pm.ring, GradedModule::cyclic(pm.ideal));
            if (cent_primes.size() != 1) {
                pullbacks = false;
            } else {
                auto contracted = pullback_prime(*match.res, cent_primes.front());
                pullbacks = pullbacks && (contracted == match.prime);
            }
        }
    }
    rep.bijection_ok = bijection;
    rep.dims_respected = dims;
    rep.pullbacks_ok = pullbacks;
    rep.ok = rep.counts_equal && rep.bijection_ok && rep.dims_respected && rep.pullbacks_ok;
    return rep;
}

} // namespace qdx
