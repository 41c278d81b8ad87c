#include "qdx/corpus.hpp"

#include "qdx/cli.hpp"
#include "qdx/errors.hpp"
#include "qdx/report.hpp"
#include "qdx/series.hpp"
#include "qdx/wmod.hpp"

#include "corpus_data.hpp"

#include <numeric>
#include <sstream>

namespace qdx {

namespace {

long long rand_below(std::mt19937_64& rng, long long n) { return (long long)(rng() % n); }

SeriesExpr random_series(std::mt19937_64& rng, bool nonneg) {
    while (true) {
        int deg = (int)rand_below(rng, 9);
        std::vector<Int> num(deg + 1);
        bool any = false;
        for (auto& c : num) {
            long long v = nonneg ? rand_below(rng, 10) : rand_below(rng, 19) - 9;
            c = v;
            any = any || v != 0;
        }
        if (!any) continue;
        std::vector<int> den;
        int nw = (int)rand_below(rng, 5);
        for (int i = 0; i < nw; ++i) den.push_back(1 + (int)rand_below(rng, 4));
        return SeriesExpr(poly_from_coeffs(num), den);
    }
}

} // namespace

std::pair<WeightedRing, MonIdeal> random_monomial_quotient(std::mt19937_64& rng) {
    int n = 1 + (int)rand_below(rng, 6);
    std::vector<int> weights;
    for (int i = 0; i < n; ++i) weights.push_back(1 + (int)rand_below(rng, 3));
    WeightedRing R(weights, 2);
    int ng = (int)rand_below(rng, 9);
    std::vector<Exponent> gens;
    for (int g = 0; g < ng; ++g) {
        Exponent e(n, 0);
        int nz = 0;
        for (int i = 0; i < n; ++i) {
            e[i] = (int)rand_below(rng, 5);
            if (rand_below(rng, 2)) e[i] = 0;
            nz += (e[i] > 0);
        }
        if (nz == 0) continue;
        gens.push_back(std::move(e));
    }
    return {std::move(R), MonIdeal::make(std::move(gens))};
}

SuiteResult suite_series_properties(unsigned long long seed, int count) {
    SuiteResult res;
    std::mt19937_64 rng(seed);
    const Rat tau(999999, 1000000);
    const Rat tol(1, 1000);
    for (int iter = 0; iter < count && res.pass; ++iter) {
        bool nonneg = iter % 2 == 0;
        auto a = random_series(rng, nonneg);
        auto b = random_series(rng, nonneg);
        int k = (int)rand_below(rng, 6);
        auto fail = [&](const std::string& what) {
            res.pass = false;
            res.detail = "instance " + std::to_string(iter) + ": " + what;
        };
        auto prod = mul(a, b);
        if (pole_order(prod) != pole_order(a) + pole_order(b)) fail("pole additivity");
        else if (degree_at_one(prod) != degree_at_one(a) * degree_at_one(b))
            fail("degree multiplicativity");
        else if (degree_at_one(shift(a, k)) != degree_at_one(a)) fail("shift invariance");
        else if (nonneg && !(degree_at_one(a) > 0)) fail("positivity");
        else if (rat_abs(eval_scaled_at(a, tau) - degree_at_one(a)) > tol)
            fail("numeric cross-check");
        else if (expand(normalize(a), 24) != expand(a, 24)) fail("normalize preserves expansion");
        ++res.checked;
    }
    return res;
}

SuiteResult suite_hilbert_oracle(unsigned long long seed, int count, int max_degree) {
    SuiteResult res;
    std::mt19937_64 rng(seed);
    for (int iter = 0; iter < count && res.pass; ++iter) {
        auto [R, I] = random_monomial_quotient(rng);
        if (expand(hilbert_series(R, I), max_degree) != hilbert_brute(R, I, max_degree)) {
            res.pass = false;
            res.detail = "instance " + std::to_string(iter) + ": series vs brute mismatch";
        }
        ++res.checked;
    }
    return res;
}

SuiteResult suite_dimension_coherence(unsigned long long seed, int count) {
    SuiteResult res;
    std::mt19937_64 rng(seed);
    for (int iter = 0; iter < count && res.pass; ++iter) {
        auto [R, I] = random_monomial_quotient(rng);
        auto M = GradedModule::cyclic(I);
        if (M.is_zero()) continue;
        // krull_dim already cross-asserts pole order against the cover bound;
        // recompute both sides here explicitly.
        int via_pole = pole_order(module_series(R, M));
        int via_cover = R.n() - min_cover_size(R, M);
        if (via_pole != via_cover) {
            res.pass = false;
            res.detail = "instance " + std::to_string(iter) + ": dimension mismatch";
        }
        ++res.checked;
    }
    return res;
}

SuiteResult suite_algebraic_additivity(unsigned long long seed, int count) {
    SuiteResult res;
    std::mt19937_64 rng(seed);
    for (int iter = 0; iter < count && res.pass; ++iter) {
        auto [R, I] = random_monomial_quotient(rng);
        auto M = GradedModule::cyclic(I);
        if (M.is_zero()) continue;
        auto rep = additivity_report(R, M);
        if (!rep.equal) {
            res.pass = false;
            res.detail = "instance " + std::to_string(iter) + ": deg(M) = " +
                         rat_to_string(rep.lhs) + " but sum = " + rat_to_string(rep.rhs);
        }
        ++res.checked;
    }
    return res;
}

namespace {

PermGroup wmod_group(int which) {
    switch (which) {
        case 0: return PermGroup(2, {Perm::from_cycles(2, {{0, 1}})});                       // Z/2
        case 1: return PermGroup(3, {Perm::from_cycles(3, {{0, 1, 2}})});                    // Z/3
        case 2:
            return PermGroup(3, {Perm::from_cycles(3, {{0, 1, 2}}), Perm::from_cycles(3, {{0, 1}})}); // S3
        default:
            return PermGroup(4, {Perm::from_cycles(4, {{0, 1}}), Perm::from_cycles(4, {{2, 3}})}); // Z/2 x Z/2
    }
}

// Random Artinian monomial quotient with *length <= 20.
std::pair<WeightedRing, MonIdeal> random_artinian_quotient(std::mt19937_64& rng) {
    while (true) {
        int n = 1 + (int)rand_below(rng, 3);
        std::vector<int> weights;
        for (int i = 0; i < n; ++i) weights.push_back(1 + (int)rand_below(rng, 2));
        WeightedRing R(weights, 2);
        std::vector<Exponent> gens;
        for (int i = 0; i < n; ++i) {
            Exponent e(n, 0);
            e[i] = 1 + (int)rand_below(rng, 3);
            gens.push_back(std::move(e));
        }
        // occasional extra mixed generator
        if (n > 1 && rand_below(rng, 2)) {
            Exponent e(n, 0);
            e[(int)rand_below(rng, n)] = 1;
            e[(int)rand_below(rng, n)] += 1;
            gens.push_back(std::move(e));
        }
        auto I = MonIdeal::make(std::move(gens));
        if (module_length(R, GradedModule::cyclic(I)) <= 20) return {std::move(R), std::move(I)};
    }
}

} // namespace

SuiteResult suite_wmod(unsigned long long seed, int count) {
    SuiteResult res;
    std::mt19937_64 rng(seed);
    for (int iter = 0; iter < count && res.pass; ++iter) {
        auto W = wmod_group((int)rand_below(rng, 4));
        int t = 1 + (int)rand_below(rng, 4);
        auto [R, I] = random_artinian_quotient(rng);
        auto P = InducedModule::from_quotient(W, t, R, I);
        auto fail = [&](const std::string& what) {
            res.pass = false;
            res.detail = "instance " + std::to_string(iter) + ": " + what;
        };
        if (!check_free(P, P.base.top_degree() + 1)) fail("check_free");
        auto inv = invariants_dims(P, std::max(P.base.top_degree(), 0));
        for (int d = 0; d < (int)inv.size() && res.pass; ++d)
            if (inv[d] != P.t * P.base.at(d)) fail("invariants dims");
        if (res.pass) {
            auto li = length_identity(P);
            if (!li.ok || li.lP != (long long)W.order() * li.lPW) fail("length identity");
        }
        ++res.checked;
    }
    return res;
}

SuiteResult suite_tensor_length(unsigned long long seed, int count) {
    SuiteResult res;
    std::mt19937_64 rng(seed);
    for (int iter = 0; iter < count && res.pass; ++iter) {
        auto [R, I] = random_artinian_quotient(rng);
        long long ml = module_length(R, GradedModule::cyclic(I));
        std::vector<long long> v_dims;
        int vd = 1 + (int)rand_below(rng, 4);
        for (int i = 0; i < vd; ++i) v_dims.push_back(rand_below(rng, 4));
        // Explicit composition series: one factor per (standard monomial,
        // V basis vector) pair, counted degree by degree.
        auto dims = expand(hilbert_series(R, I), 40);
        long long vtotal = std::accumulate(v_dims.begin(), v_dims.end(), 0ll);
        long long pairs = 0;
        for (const auto& c : dims) pairs += (long long)c * vtotal;
        if (tensor_length(ml, v_dims) != pairs) {
            res.pass = false;
            res.detail = "instance " + std::to_string(iter) + ": tensor length mismatch";
        }
        ++res.checked;
    }
    return res;
}

// --- bundled corpus ------------------------------------------------------------

const std::vector<std::pair<const char*, const char*>>& corpus_fixture_texts() {
    return corpus_data::kFixtureFiles;
}

std::vector<CorpusEntry> corpus_entries() {
    std::vector<CorpusEntry> entries;
    for (const auto& [name, text] : corpus_data::kFixtureFiles) {
        Environment env = parse_environment(text);
        std::string note;
        for (const auto& fd : env.fixtures)
            note += (note.empty() ? "" : "; ") + fd.note;
        entries.push_back({name, note, false});
    }
    entries.push_back({"series_properties",
                       "seeded random series: pole additivity, degree multiplicativity, shift "
                       "invariance, positivity, numeric cross-check",
                       true});
    entries.push_back({"hilbert_oracle",
                       "seeded random weighted monomial quotients: pivot-splitting series equals "
                       "brute-force standard monomial counts",
                       true});
    entries.push_back({"dimension_coherence",
                       "seeded random quotients: pole order equals variable count minus minimum "
                       "vertex cover",
                       true});
    entries.push_back({"algebraic_additivity",
                       "seeded random quotients: degree equals the sum of local length times "
                       "prime degree over maximal-dimension minimal primes",
                       true});
    entries.push_back({"wmod_suite",
                       "seeded induced modules over Z/2, Z/3, S3, Z/2xZ/2: freeness, invariant "
                       "dimensions, length identity",
                       true});
    entries.push_back({"tensor_length",
                       "seeded Artinian quotients: tensor length equals the explicit "
                       "composition-series count",
                       true});
    return entries;
}

namespace {

// Verification outcome for one embedded fixture file.
bool run_fixture_entry(const std::string& name, const char* text, int max_degree,
                       const std::string& format, std::ostream& out) {
    Environment env = parse_environment(text);
    bool all_ok = true;
    for (const auto& fd : env.fixtures) {
        auto gates = run_series_gates(fd.fixture, std::max(40, max_degree));
        auto rep = verify_main(fd.fixture);
        bool ok = rep.equal && rep.dim_check && gates.all_passed;
        if (fd.expected_lhs && *fd.expected_lhs != rep.lhs) ok = false;
        if (fd.expected_rhs && *fd.expected_rhs != rep.rhs) ok = false;
        std::optional<CorrespondenceReport> corr;
        if (fd.fixture.algebraic) {
            corr = correspondence_check(fd.fixture);
            ok = ok && corr->ok;
            if (rep.term_matching)
                ok = ok && rep.term_matching->all_terms_equal && rep.term_matching->totals_agree;
        }
        if (format == "machine") {
            Json j = main_report_json(rep);
            j["gates"] = gate_json(gates);
            if (corr) j["correspondence"] = correspondence_json(*corr);
            j["entry"] = name;
            j["pass"] = ok;
            out << json_line(j) << "\n";
        } else {
            out << (ok ? "PASS " : "FAIL ") << name << ": " << main_report_human(rep);
            if (!gates.all_passed) out << "  series gate FAILED\n";
            for (const auto& u : gates.unverified) out << "  unverified fixture series: " << u << "\n";
            if (corr) out << "  " << correspondence_human(*corr);
        }
        all_ok = all_ok && ok;
    }
    return all_ok;
}

} // namespace

bool run_corpus_entry(const std::string& name, unsigned long long seed, int max_degree,
                      const std::string& format, std::ostream& out) {
    for (const auto& [fname, text] : corpus_data::kFixtureFiles)
        if (fname == name) return run_fixture_entry(name, text, max_degree, format, out);

    SuiteResult res;
    if (name == "series_properties") res = suite_series_properties(seed, 500);
    else if (name == "hilbert_oracle") res = suite_hilbert_oracle(seed, 200, max_degree);
    else if (name == "dimension_coherence") res = suite_dimension_coherence(seed, 200);
    else if (name == "algebraic_additivity") res = suite_algebraic_additivity(seed, 200);
    else if (name == "wmod_suite") res = suite_wmod(seed, 100);
    else if (name == "tensor_length") res = suite_tensor_length(seed, 50);
    else throw UnknownReference("no corpus entry named '" + name + "'");

    if (format == "machine") {
        Json j;
        j["entry"] = name;
        j["seed"] = seed;
        j["checked"] = res.checked;
        j["pass"] = res.pass;
        if (!res.pass) j["detail"] = res.detail;
        out << json_line(j) << "\n";
    } else {
        out << (res.pass ? "PASS " : "FAIL ") << name << ": " << res.checked
            << " instances (seed " << seed << ")";
        if (!res.pass) out << " -- " << res.detail;
        out << "\n";
    }
    return res.pass;
}

} // namespace qdx
