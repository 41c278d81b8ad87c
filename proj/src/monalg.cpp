#include "qdx/monalg.hpp"

#include "qdx/errors.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <sstream>

namespace qdx {

WeightedRing::WeightedRing(std::vector<int> weights_, int p_, std::vector<std::string> names)
    : weights(std::move(weights_)), var_names(std::move(names)), p(p_) {
    for (int w : weights)
        if (w < 1) throw Error("variable weight must be >= 1");
    if (var_names.empty()) {
        for (int i = 0; i < n(); ++i) var_names.push_back("x" + std::to_string(i));
    }
    if ((int)var_names.size() != n()) throw Error("variable name count mismatch");
}

int WeightedRing::degree(const Exponent& e) const {
    int d = 0;
    for (int i = 0; i < n(); ++i) d += weights[i] * e[i];
    return d;
}

std::string WeightedRing::monomial_to_string(const Exponent& e) const {
    std::ostringstream os;
    bool first = true;
    for (int i = 0; i < n(); ++i) {
        if (e[i] == 0) continue;
        if (!first) os << "*";
        os << var_names[i];
        if (e[i] > 1) os << "^" << e[i];
        first = false;
    }
    if (first) os << "1";
    return os.str();
}

bool monomial_divides(const Exponent& a, const Exponent& b) {
    for (size_t i = 0; i < a.size(); ++i)
        if (a[i] > b[i]) return false;
    return true;
}

MonIdeal MonIdeal::make(std::vector<Exponent> gens) {
    for (const auto& g : gens) {
        if (g.size() != gens.front().size())
            throw Error("ideal generators must agree on the variable count");
        for (int e : g)
            if (e < 0) throw Error("monomial exponents must be >= 0");
    }
    std::sort(gens.begin(), gens.end());
    gens.erase(std::unique(gens.begin(), gens.end()), gens.end());
    // Keep only generators not strictly divisible by another.
    std::vector<Exponent> reduced;
    for (const auto& g : gens) {
        bool dominated = false;
        for (const auto& h : gens)
            if (h != g && monomial_divides(h, g)) { dominated = true; break; }
        if (!dominated) reduced.push_back(g);
    }
    MonIdeal I;
    I.gens = std::move(reduced);
    return I;
}

bool MonIdeal::is_unit() const {
    for (const auto& g : gens)
        if (std::all_of(g.begin(), g.end(), [](int e) { return e == 0; })) return true;
    return false;
}

bool MonIdeal::contains_monomial(const Exponent& m) const {
    for (const auto& g : gens)
        if (monomial_divides(g, m)) return true;
    return false;
}

MonIdeal ideal_plus_monomial(const MonIdeal& I, const Exponent& m) {
    auto gens = I.gens;
    gens.push_back(m);
    return MonIdeal::make(std::move(gens));
}

MonIdeal ideal_colon_var(const MonIdeal& I, int var) {
    std::vector<Exponent> gens;
    gens.reserve(I.gens.size());
    for (auto g : I.gens) {
        if (g[var] > 0) --g[var];
        gens.push_back(std::move(g));
    }
    return MonIdeal::make(std::move(gens));
}

MonIdeal ideal_intersect(const MonIdeal& I, const MonIdeal& J, int n) {
    // Intersection of monomial ideals: pairwise lcms.
    std::vector<Exponent> gens;
    for (const auto& a : I.gens)
        for (const auto& b : J.gens) {
            Exponent l(n);
            for (int i = 0; i < n; ++i) l[i] = std::max(a[i], b[i]);
            gens.push_back(std::move(l));
        }
    return MonIdeal::make(std::move(gens));
}

GradedModule GradedModule::make(std::vector<Summand> summands) {
    GradedModule M;
    for (auto& s : summands) {
        if (s.shift < 0) throw Error("summand shift must be >= 0");
        if (s.ideal.is_unit()) continue; // zero summand
        M.summands.push_back(std::move(s));
    }
    return M;
}

GradedModule GradedModule::cyclic(MonIdeal I, int shift) {
    return make({Summand{shift, std::move(I)}});
}

MonPrime MonPrime::make(std::vector<int> vars) {
    std::sort(vars.begin(), vars.end());
    vars.erase(std::unique(vars.begin(), vars.end()), vars.end());
    MonPrime q;
    q.vars = std::move(vars);
    return q;
}

bool MonPrime::contains_var(int v) const {
    return std::binary_search(vars.begin(), vars.end(), v);
}

std::string prime_to_string(const WeightedRing& R, const MonPrime& q) {
    if (q.vars.empty()) return "(0)";
    std::string s = "(";
    for (size_t i = 0; i < q.vars.size(); ++i) {
        if (i) s += ",";
        s += R.var_names[q.vars[i]];
    }
    return s + ")";
}

MonRingMap MonRingMap::make(WeightedRing source, WeightedRing target, std::vector<Exponent> images) {
    if ((int)images.size() != source.n()) throw Error("ring map needs one image per source variable");
    for (int i = 0; i < source.n(); ++i)
        if (target.degree(images[i]) != source.weights[i])
            throw Error("ring map is not graded: image of " + source.var_names[i] +
                        " has degree " + std::to_string(target.degree(images[i])));
    MonRingMap f;
    f.source = std::move(source);
    f.target = std::move(target);
    f.images = std::move(images);
    return f;
}

// --- Hilbert series ----------------------------------------------------------

namespace {

int support_size(const Exponent& g) {
    int s = 0;
    for (int e : g) s += (e > 0);
    return s;
}

using Memo = std::map<std::vector<Exponent>, Poly>;

Poly hilbert_numerator(const MonIdeal& I, const WeightedRing& R, Memo& memo) {
    if (I.is_unit()) return Poly{};
    if (I.is_zero()) return Poly{{0, 1}};

    bool all_pure = std::all_of(I.gens.begin(), I.gens.end(),
                                [](const Exponent& g) { return support_size(g) == 1; });
    if (all_pure) {
        // Reduced pure powers live in distinct variables: complete intersection.
        Poly num{{0, 1}};
        for (const auto& g : I.gens) num = poly_mul(num, Poly{{0, 1}, {R.degree(g), -1}});
        return num;
    }

    if (auto it = memo.find(I.gens); it != memo.end()) return it->second;

    // Pivot: the most frequent variable over all generator supports, restricted
    // to variables that occur in some mixed-support generator (this keeps both
    // branches strictly smaller).
    std::vector<int> freq(R.n(), 0), eligible(R.n(), 0);
    for (const auto& g : I.gens) {
        bool mixed = support_size(g) >= 2;
        for (int i = 0; i < R.n(); ++i)
            if (g[i] > 0) {
                ++freq[i];
                if (mixed) eligible[i] = 1;
            }
    }
    int pivot = -1;
    for (int i = 0; i < R.n(); ++i)
        if (eligible[i] && (pivot < 0 || freq[i] > freq[pivot])) pivot = i;

    Exponent m(R.n(), 0);
    m[pivot] = 1;
    Poly sum_part = hilbert_numerator(ideal_plus_monomial(I, m), R, memo);
    Poly colon_part = hilbert_numerator(ideal_colon_var(I, pivot), R, memo);
    Poly num = poly_add(sum_part, poly_scale_shift(colon_part, 1, R.weights[pivot]));
    memo.emplace(I.gens, num);
    return num;
}

} // namespace

SeriesExpr hilbert_series(const WeightedRing& R, const MonIdeal& I) {
    if (R.n() > kMaxVars)
        throw CapacityExceeded("ring has more than " + std::to_string(kMaxVars) + " variables");
    Memo memo;
    return SeriesExpr(hilbert_numerator(I, R, memo), R.weights);
}

std::vector<Int> hilbert_brute(const WeightedRing& R, const MonIdeal& I, int D, long long cap) {
    if (R.n() > kMaxVars)
        throw CapacityExceeded("ring has more than " + std::to_string(kMaxVars) + " variables");
    if (D < 0) return {};
    std::vector<Int> counts(D + 1, Int(0));
    if (I.is_unit()) return counts;

    Exponent cur(R.n(), 0);
    long long visited = 0;
    // Assign exponents variable by variable; once every variable in a
    // generator's support is fixed, divisibility is decided for the whole
    // subtree, so dominated branches are pruned.
    auto rec = [&](auto&& self, int var, int deg) -> void {
        if (++visited > cap) throw CapacityExceeded("monomial enumeration exceeded bound");
        for (const auto& g : I.gens) {
            bool decided = true;
            for (int i = var; i < R.n(); ++i)
                if (g[i] > 0) { decided = false; break; }
            if (decided && monomial_divides(g, cur)) return;
        }
        if (var == R.n()) {
            ++counts[deg];
            return;
        }
        for (int e = 0; deg + e * R.weights[var] <= D; ++e) {
            cur[var] = e;
            self(self, var + 1, deg + e * R.weights[var]);
        }
        cur[var] = 0;
    };
    rec(rec, 0, 0);
    return counts;
}

SeriesExpr module_series(const WeightedRing& R, const GradedModule& M) {
    SeriesExpr total = SeriesExpr::zero();
    bool first = true;
    for (const auto& s : M.summands) {
        SeriesExpr piece = shift(hilbert_series(R, s.ideal), s.shift);
        total = first ? piece : add(total, piece);
        first = false;
    }
    return total;
}

// --- dimension and primes ----------------------------------------------------

namespace {

MonIdeal annihilator(const WeightedRing& R, const GradedModule& M) {
    MonIdeal ann = M.summands.front().ideal;
    for (size_t i = 1; i < M.summands.size(); ++i)
        ann = ideal_intersect(ann, M.summands[i].ideal, R.n());
    return ann;
}

// All minimal transversals of the generator supports, by scanning the subset
// lattice (n <= kMaxVars keeps this small).
std::vector<MonPrime> minimal_covers(const WeightedRing& R, const MonIdeal& I) {
    const int n = R.n();
    std::vector<unsigned> supports;
    for (const auto& g : I.gens) {
        unsigned s = 0;
        for (int i = 0; i < n; ++i)
            if (g[i] > 0) s |= 1u << i;
        supports.push_back(s);
    }
    std::vector<unsigned> covers;
    for (unsigned mask = 0; mask < (1u << n); ++mask) {
        bool ok = true;
        for (unsigned s : supports)
            if ((s & mask) == 0) { ok = false; break; }
        if (ok) covers.push_back(mask);
    }
    std::vector<MonPrime> result;
    for (unsigned c : covers) {
        bool minimal = true;
        for (unsigned d : covers)
            if (d != c && (d & ~c) == 0) { minimal = false; break; }
        if (!minimal) continue;
        std::vector<int> vars;
        for (int i = 0; i < n; ++i)
            if (c & (1u << i)) vars.push_back(i);
        result.push_back(MonPrime::make(std::move(vars)));
    }
    std::sort(result.begin(), result.end());
    return result;
}

int min_cover_of_ideal(const WeightedRing& R, const MonIdeal& I) {
    if (I.is_unit()) throw Error("unit ideal has no prime cover");
    int best = R.n();
    for (const auto& q : minimal_covers(R, I)) best = std::min(best, (int)q.vars.size());
    return best;
}

} // namespace

int min_cover_size(const WeightedRing& R, const GradedModule& M) {
    if (M.is_zero()) throw ZeroModule();
    return min_cover_of_ideal(R, annihilator(R, M));
}

int krull_dim(const WeightedRing& R, const GradedModule& M) {
    if (M.is_zero()) throw ZeroModule();
    int via_pole = pole_order(module_series(R, M));
    int via_cover = R.n() - min_cover_size(R, M);
    if (via_pole != via_cover)
        throw InvariantViolation("pole order " + std::to_string(via_pole) +
                                 " disagrees with cover dimension " + std::to_string(via_cover));
    return via_pole;
}

std::vector<MonPrime> minimal_primes(const WeightedRing& R, const GradedModule& M) {
    if (M.is_zero()) throw ZeroModule();
    if (R.n() > kMaxVars)
        throw CapacityExceeded("ring has more than " + std::to_string(kMaxVars) + " variables");
    return minimal_covers(R, annihilator(R, M));
}

long long count_standard_monomials(const WeightedRing& R, const MonIdeal& I, long long cap) {
    if (I.is_unit()) return 0;
    // Finite iff I contains a pure power of every variable.
    std::vector<int> bound(R.n(), -1);
    for (const auto& g : I.gens) {
        if (support_size(g) != 1) continue;
        for (int i = 0; i < R.n(); ++i)
            if (g[i] > 0 && (bound[i] < 0 || g[i] < bound[i])) bound[i] = g[i];
    }
    for (int i = 0; i < R.n(); ++i)
        if (bound[i] < 0)
            throw Divergent("standard monomial count diverges: no pure power of " +
                            R.var_names[i]);

    long long count = 0, visited = 0;
    Exponent cur(R.n(), 0);
    auto rec = [&](auto&& self, int var) -> void {
        if (++visited > cap) throw CapacityExceeded("standard monomial enumeration exceeded bound");
        if (var == R.n()) {
            if (!I.contains_monomial(cur)) ++count;
            return;
        }
        for (int e = 0; e < bound[var]; ++e) {
            cur[var] = e;
            self(self, var + 1);
        }
        cur[var] = 0;
    };
    rec(rec, 0);
    return count;
}

namespace {

// Substitute 1 for every variable outside q; the result lives in the
// polynomial ring on q's variables.
std::pair<WeightedRing, MonIdeal> localize_at(const WeightedRing& R, const MonIdeal& I,
                                              const MonPrime& q) {
    std::vector<int> weights;
    std::vector<std::string> names;
    for (int v : q.vars) {
        weights.push_back(R.weights[v]);
        names.push_back(R.var_names[v]);
    }
    WeightedRing Rq(weights, R.p, names);
    std::vector<Exponent> gens;
    for (const auto& g : I.gens) {
        Exponent e(q.vars.size());
        for (size_t i = 0; i < q.vars.size(); ++i) e[i] = g[q.vars[i]];
        gens.push_back(std::move(e));
    }
    return {std::move(Rq), MonIdeal::make(std::move(gens))};
}

} // namespace

long long local_length(const WeightedRing& R, const GradedModule& M, const MonPrime& q) {
    auto primes = minimal_primes(R, M);
    if (!std::binary_search(primes.begin(), primes.end(), q))
        throw NotMinimalPrime(prime_to_string(R, q) + " is not a minimal prime of the module");
    long long total = 0;
    for (const auto& s : M.summands) {
        auto [Rq, Iq] = localize_at(R, s.ideal, q);
        total += count_standard_monomials(Rq, Iq);
    }
    return total;
}

long long module_length(const WeightedRing& R, const GradedModule& M) {
    if (M.is_zero()) return 0;
    if (krull_dim(R, M) != 0)
        throw NotArtinian("module has positive dimension, *length is infinite");
    long long total = 0;
    for (const auto& s : M.summands) total += count_standard_monomials(R, s.ideal);
    return total;
}

Rat degree_of(const WeightedRing& R, const GradedModule& M) {
    if (M.is_zero()) throw ZeroModule();
    return degree_at_one(module_series(R, M));
}

Rat prime_degree(const WeightedRing& R, const MonPrime& q) {
    Rat d = 1;
    for (int i = 0; i < R.n(); ++i)
        if (!q.contains_var(i)) d /= R.weights[i];
    return d;
}

std::vector<MonPrime> dmax_primes(const WeightedRing& R, const GradedModule& M) {
    int dim = krull_dim(R, M);
    std::vector<MonPrime> result;
    for (auto& q : minimal_primes(R, M))
        if (R.n() - (int)q.vars.size() == dim) result.push_back(std::move(q));
    return result;
}

AdditivityReport additivity_report(const WeightedRing& R, const GradedModule& M) {
    AdditivityReport rep;
    rep.lhs = degree_of(R, M);
    rep.rhs = 0;
    for (const auto& q : dmax_primes(R, M)) {
        AdditivityReport::Term t;
        t.prime = q;
        t.length = local_length(R, M, q);
        t.pdeg = prime_degree(R, q);
        t.value = Rat(t.length) * t.pdeg;
        rep.rhs += t.value;
        rep.terms.push_back(std::move(t));
    }
    rep.equal = (rep.lhs == rep.rhs);
    return rep;
}

MonPrime pullback_prime(const MonRingMap& f, const MonPrime& q) {
    std::vector<int> vars;
    for (int u = 0; u < f.source.n(); ++u) {
        const Exponent& img = f.images[u];
        for (int v : q.vars)
            if (img[v] > 0) {
                vars.push_back(u);
                break;
            }
    }
    return MonPrime::make(std::move(vars));
}

} // namespace qdx
