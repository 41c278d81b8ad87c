#include "qdx/grpcat.hpp"

#include "qdx/errors.hpp"

#include <algorithm>
#include <deque>
#include <numeric>
#include <set>
#include <sstream>

namespace qdx {

Perm Perm::identity(int m) {
    Perm p;
    p.img.resize(m);
    std::iota(p.img.begin(), p.img.end(), 0);
    return p;
}

Perm Perm::from_cycles(int m, const std::vector<std::vector<int>>& cycles) {
    Perm p = identity(m);
    std::vector<bool> seen(m, false);
    for (const auto& cyc : cycles) {
        for (std::size_t i = 0; i < cyc.size(); ++i) {
            int a = cyc[i], b = cyc[(i + 1) % cyc.size()];
            if (a < 0 || a >= m) throw BadPermutation("cycle point out of range");
            if (seen[a]) throw BadPermutation("point repeated across cycles");
            seen[a] = true;
            p.img[a] = b;
        }
    }
    return p;
}

Perm Perm::operator*(const Perm& o) const {
    Perm r;
    r.img.resize(img.size());
    for (std::size_t x = 0; x < img.size(); ++x) r.img[x] = img[o.img[x]];
    return r;
}

Perm Perm::inverse() const {
    Perm r;
    r.img.resize(img.size());
    for (std::size_t x = 0; x < img.size(); ++x) r.img[img[x]] = (int)x;
    return r;
}

bool Perm::is_identity() const {
    for (std::size_t x = 0; x < img.size(); ++x)
        if (img[x] != (int)x) return false;
    return true;
}

int Perm::order() const {
    Perm p = *this;
    int n = 1;
    while (!p.is_identity()) {
        p = p * *this;
        ++n;
    }
    return n;
}

std::string Perm::to_cycle_string() const {
    std::ostringstream os;
    std::vector<bool> seen(img.size(), false);
    bool any = false;
    for (std::size_t s = 0; s < img.size(); ++s) {
        if (seen[s] || img[s] == (int)s) continue;
        os << "(";
        int x = (int)s;
        bool first = true;
        do {
            if (!first) os << " ";
            os << x;
            seen[x] = true;
            x = img[x];
            first = false;
        } while (x != (int)s);
        os << ")";
        any = true;
    }
    if (!any) os << "()";
    return os.str();
}

PermGroup::PermGroup(int degree, std::vector<Perm> generators, std::size_t bound)
    : degree_(degree), generators_(std::move(generators)), bound_(bound) {
    for (const auto& g : generators_) {
        if (g.degree() != degree_) throw BadPermutation("generator degree mismatch");
        std::vector<bool> hit(degree_, false);
        for (int x : g.img) {
            if (x < 0 || x >= degree_ || hit[x]) throw BadPermutation("not a bijection");
            hit[x] = true;
        }
    }
}

const std::vector<Perm>& PermGroup::elements() const {
    if (enumerated_) return elements_;
    std::set<Perm> seen;
    std::deque<Perm> todo;
    Perm id = Perm::identity(degree_);
    seen.insert(id);
    todo.push_back(id);
    while (!todo.empty()) {
        Perm cur = todo.front();
        todo.pop_front();
        for (const auto& g : generators_) {
            Perm next = g * cur;
            if (seen.insert(next).second) {
                if (seen.size() > bound_)
                    throw GroupTooLarge("group exceeds size bound " + std::to_string(bound_));
                todo.push_back(next);
            }
        }
    }
    elements_.assign(seen.begin(), seen.end());
    for (std::size_t i = 0; i < elements_.size(); ++i) index_[elements_[i]] = (int)i;
    enumerated_ = true;
    return elements_;
}

int PermGroup::index_of(const Perm& g) const {
    elements();
    auto it = index_.find(g);
    return it == index_.end() ? -1 : it->second;
}

Subgroup Subgroup::trivial(int degree) {
    Subgroup s;
    s.elems.push_back(Perm::identity(degree));
    return s;
}

Subgroup Subgroup::closure(int degree, const std::vector<Perm>& gens) {
    std::set<Perm> seen;
    std::deque<Perm> todo;
    Perm id = Perm::identity(degree);
    seen.insert(id);
    todo.push_back(id);
    while (!todo.empty()) {
        Perm cur = todo.front();
        todo.pop_front();
        for (const auto& g : gens) {
            Perm next = g * cur;
            if (seen.insert(next).second) {
                if (seen.size() > kDefaultGroupBound)
                    throw GroupTooLarge("subgroup closure exceeds bound");
                todo.push_back(next);
            }
        }
    }
    Subgroup s;
    s.elems.assign(seen.begin(), seen.end());
    return s;
}

Subgroup Subgroup::from_sorted(std::vector<Perm> elems) {
    Subgroup s;
    s.elems = std::move(elems);
    std::sort(s.elems.begin(), s.elems.end());
    return s;
}

bool Subgroup::contains(const Perm& g) const {
    return std::binary_search(elems.begin(), elems.end(), g);
}

Subgroup conjugate_subgroup(const Perm& g, const Subgroup& A) {
    std::vector<Perm> elems;
    elems.reserve(A.elems.size());
    Perm ginv = g.inverse();
    for (const auto& a : A.elems) elems.push_back(g * a * ginv);
    return Subgroup::from_sorted(std::move(elems));
}

bool subgroup_subset(const Subgroup& A, const Subgroup& B) {
    return std::includes(B.elems.begin(), B.elems.end(), A.elems.begin(), A.elems.end());
}

// --- GSet ---------------------------------------------------------------------

GSet GSet::make(const PermGroup& G, int num_points, std::vector<std::vector<int>> generator_action) {
    if ((int)generator_action.size() != (int)G.generators().size())
        throw Error("one point permutation required per group generator");
    for (const auto& a : generator_action) {
        if ((int)a.size() != num_points) throw BadPermutation("action table size mismatch");
        std::vector<bool> hit(num_points, false);
        for (int x : a) {
            if (x < 0 || x >= num_points || hit[x]) throw BadPermutation("action is not a bijection");
            hit[x] = true;
        }
    }
    GSet X;
    X.num_points_ = num_points;
    X.generator_action_ = std::move(generator_action);

    // Extend to all elements along the Cayley graph; revisiting an element by
    // another generator word checks the homomorphism property on every
    // relation of the group.
    const auto& elems = G.elements();
    std::vector<int> ident(num_points);
    std::iota(ident.begin(), ident.end(), 0);
    X.element_action_.assign(elems.size(), {});
    int id_index = G.index_of(Perm::identity(G.degree()));
    X.element_action_[id_index] = ident;
    std::deque<int> todo{id_index};
    std::vector<bool> assigned(elems.size(), false);
    assigned[id_index] = true;
    while (!todo.empty()) {
        int ci = todo.front();
        todo.pop_front();
        for (std::size_t gi = 0; gi < G.generators().size(); ++gi) {
            int ni = G.index_of(G.generators()[gi] * elems[ci]);
            std::vector<int> composed(num_points);
            for (int pt = 0; pt < num_points; ++pt)
                composed[pt] = X.generator_action_[gi][X.element_action_[ci][pt]];
            if (!assigned[ni]) {
                X.element_action_[ni] = std::move(composed);
                assigned[ni] = true;
                todo.push_back(ni);
            } else if (X.element_action_[ni] != composed) {
                throw Error("generator actions do not define a homomorphism");
            }
        }
    }
    return X;
}

GSet GSet::point(const PermGroup& G) {
    std::vector<std::vector<int>> action(G.generators().size(), std::vector<int>{0});
    return make(G, 1, std::move(action));
}

GSet GSet::cosets(const PermGroup& G, const Subgroup& H) {
    for (const auto& h : H.elems)
        if (!G.contains(h)) throw UnknownReference("coset subgroup is not inside the group");
    // Left cosets gH, ordered by least member.
    std::vector<std::vector<Perm>> coset_list;
    std::map<Perm, int> elem_coset;
    for (const auto& g : G.elements()) {
        if (elem_coset.count(g)) continue;
        std::vector<Perm> coset;
        for (const auto& h : H.elems) coset.push_back(g * h);
        std::sort(coset.begin(), coset.end());
        int idx = (int)coset_list.size();
        for (const auto& e : coset) elem_coset[e] = idx;
        coset_list.push_back(std::move(coset));
    }
    int np = (int)coset_list.size();
    std::vector<std::vector<int>> action;
    for (const auto& s : G.generators()) {
        std::vector<int> perm(np);
        for (int c = 0; c < np; ++c) perm[c] = elem_coset.at(s * coset_list[c][0]);
        action.push_back(std::move(perm));
    }
    return make(G, np, std::move(action));
}

GSet GSet::free_orbits(const PermGroup& G, int copies) {
    const auto& elems = G.elements();
    int n = (int)elems.size();
    std::vector<std::vector<int>> action;
    for (const auto& s : G.generators()) {
        std::vector<int> perm(n * copies);
        for (int c = 0; c < copies; ++c)
            for (int i = 0; i < n; ++i)
                perm[c * n + i] = c * n + G.index_of(s * elems[i]);
        action.push_back(std::move(perm));
    }
    return make(G, n * copies, std::move(action));
}

GSet GSet::disjoint_union(const PermGroup& G, const GSet& A, const GSet& B) {
    std::vector<std::vector<int>> action;
    for (std::size_t gi = 0; gi < G.generators().size(); ++gi) {
        std::vector<int> perm;
        perm.reserve(A.num_points_ + B.num_points_);
        for (int pt = 0; pt < A.num_points_; ++pt) perm.push_back(A.generator_action_[gi][pt]);
        for (int pt = 0; pt < B.num_points_; ++pt)
            perm.push_back(A.num_points_ + B.generator_action_[gi][pt]);
        action.push_back(std::move(perm));
    }
    return make(G, A.num_points_ + B.num_points_, std::move(action));
}

int GSet::act(const PermGroup& G, const Perm& g, int point) const {
    int gi = G.index_of(g);
    if (gi < 0) throw Error("acting element is not in the group");
    return element_action_[gi][point];
}

std::vector<std::vector<int>> GSet::orbits(const PermGroup& G) const {
    (void)G;
    std::vector<int> root(num_points_);
    std::iota(root.begin(), root.end(), 0);
    auto find = [&](int x) {
        while (root[x] != x) x = root[x] = root[root[x]];
        return x;
    };
    for (const auto& a : generator_action_)
        for (int pt = 0; pt < num_points_; ++pt) {
            int r1 = find(pt), r2 = find(a[pt]);
            if (r1 != r2) root[std::max(r1, r2)] = std::min(r1, r2);
        }
    std::map<int, std::vector<int>> groups;
    for (int pt = 0; pt < num_points_; ++pt) groups[find(pt)].push_back(pt);
    std::vector<std::vector<int>> result;
    for (auto& [rep, pts] : groups) result.push_back(std::move(pts));
    return result;
}

Subgroup GSet::stabilizer(const PermGroup& G, int point) const {
    std::vector<Perm> elems;
    const auto& all = G.elements();
    for (std::size_t i = 0; i < all.size(); ++i)
        if (element_action_[i][point] == point) elems.push_back(all[i]);
    return Subgroup::from_sorted(std::move(elems));
}

// --- Quillen category -----------------------------------------------------------

std::vector<Perm> enumerate_elements(const PermGroup& G) { return G.elements(); }

int subgroup_rank(const Subgroup& A, int p) {
    int r = 0;
    std::size_t sz = A.order();
    while (sz > 1) {
        if (sz % p != 0) throw Error("subgroup order is not a power of p");
        sz /= p;
        ++r;
    }
    return r;
}

std::vector<Subgroup> elementary_abelians(const PermGroup& G, int p) {
    const auto& elems = G.elements();
    std::vector<Perm> order_p;
    for (const auto& g : elems)
        if (!g.is_identity() && g.order() == p) order_p.push_back(g);

    std::set<Subgroup> seen;
    std::deque<Subgroup> todo;
    Subgroup triv = Subgroup::trivial(G.degree());
    seen.insert(triv);
    todo.push_back(triv);
    while (!todo.empty()) {
        Subgroup A = todo.front();
        todo.pop_front();
        for (const auto& x : order_p) {
            if (A.contains(x)) continue;
            bool commutes = std::all_of(A.elems.begin(), A.elems.end(),
                                        [&](const Perm& a) { return a * x == x * a; });
            if (!commutes) continue;
            // A extended by x: products a * x^k, k < p.
            std::vector<Perm> ext;
            ext.reserve(A.elems.size() * p);
            Perm xp = Perm::identity(G.degree());
            for (int k = 0; k < p; ++k) {
                for (const auto& a : A.elems) ext.push_back(a * xp);
                xp = xp * x;
            }
            Subgroup B = Subgroup::from_sorted(std::move(ext));
            if (seen.insert(B).second) todo.push_back(B);
        }
    }
    std::vector<Subgroup> result(seen.begin(), seen.end());
    return result;
}

std::vector<QuillenPair> quillen_pairs(const PermGroup& G, int p, const GSet& X) {
    std::vector<QuillenPair> pairs;
    for (const auto& A : elementary_abelians(G, p)) {
        int rank = subgroup_rank(A, p);
        for (int pt = 0; pt < X.num_points(); ++pt) {
            bool fixed = std::all_of(A.elems.begin(), A.elems.end(), [&](const Perm& a) {
                return X.act(G, a, pt) == pt;
            });
            if (fixed) pairs.push_back(QuillenPair{A, pt, rank});
        }
    }
    std::sort(pairs.begin(), pairs.end());
    return pairs;
}

bool is_subconjugate(const PermGroup& G, const GSet& X, const QuillenPair& from,
                     const QuillenPair& to) {
    if (from.A.order() > to.A.order()) return false;
    const auto& elems = G.elements();
    for (std::size_t gi = 0; gi < elems.size(); ++gi) {
        if (X.act_by_index((int)gi, from.point) != to.point) continue;
        if (subgroup_subset(conjugate_subgroup(elems[gi], from.A), to.A)) return true;
    }
    return false;
}

std::vector<PairClass> pair_classes(const PermGroup& G, int p, const GSet& X) {
    // Two pairs are mutually subconjugate exactly when they lie in one orbit
    // of g . (A,c) = (gAg^-1, gc), so the classes are the orbits.
    auto pairs = quillen_pairs(G, p, X);
    std::map<QuillenPair, int> index;
    for (std::size_t i = 0; i < pairs.size(); ++i) index[pairs[i]] = (int)i;

    std::vector<PairClass> classes;
    std::vector<bool> used(pairs.size(), false);
    for (std::size_t i = 0; i < pairs.size(); ++i) {
        if (used[i]) continue;
        PairClass cls;
        std::deque<int> todo{(int)i};
        used[i] = true;
        while (!todo.empty()) {
            int cur = todo.front();
            todo.pop_front();
            cls.members.push_back(cur);
            for (const auto& g : G.generators()) {
                QuillenPair moved{conjugate_subgroup(g, pairs[cur].A),
                                  X.act(G, g, pairs[cur].point), pairs[cur].rank};
                int ni = index.at(moved);
                if (!used[ni]) {
                    used[ni] = true;
                    todo.push_back(ni);
                }
            }
        }
        std::sort(cls.members.begin(), cls.members.end());
        cls.rep = pairs[cls.members.front()]; // pairs sorted, so least member first
        cls.rank = cls.rep.rank;
        classes.push_back(std::move(cls));
    }
    return classes;
}

bool is_maximal_pair(const PermGroup& G, int p, const GSet& X, const QuillenPair& pair) {
    // Categorical test: every morphism out of the pair is an isomorphism.
    // Morphisms into equal-order pairs are isomorphisms (conjugation makes
    // the containment an equality), so only strictly larger targets matter.
    auto pairs = quillen_pairs(G, p, X);
    bool categorical = true;
    for (const auto& other : pairs) {
        if (other.A.order() <= pair.A.order()) continue;
        if (is_subconjugate(G, X, pair, other)) {
            categorical = false;
            break;
        }
    }
    // Stabilizer criterion: A is a maximal elementary abelian subgroup of G_c.
    Subgroup stab = X.stabilizer(G, pair.point);
    bool stabilizer_max = true;
    for (const auto& x : stab.elems) {
        if (x.is_identity() || x.order() != p || pair.A.contains(x)) continue;
        bool commutes = std::all_of(pair.A.elems.begin(), pair.A.elems.end(),
                                    [&](const Perm& a) { return a * x == x * a; });
        if (commutes) {
            stabilizer_max = false;
            break;
        }
    }
    if (categorical != stabilizer_max)
        throw CriterionMismatch("categorical and stabilizer maximality tests disagree");
    return categorical;
}

std::vector<PairClass> q_prime(const PermGroup& G, int p, const GSet& X) {
    std::vector<PairClass> result;
    for (auto& cls : pair_classes(G, p, X))
        if (is_maximal_pair(G, p, X, cls.rep)) result.push_back(std::move(cls));
    return result;
}

std::vector<PairClass> q_prime_max(const PermGroup& G, int p, const GSet& X) {
    auto qp = q_prime(G, p, X);
    int best = -1;
    for (const auto& cls : qp) best = std::max(best, cls.rank);
    std::vector<PairClass> result;
    for (auto& cls : qp)
        if (cls.rank == best) result.push_back(std::move(cls));
    return result;
}

Subgroup pair_normalizer(const PermGroup& G, const GSet& X, const QuillenPair& pair) {
    std::vector<Perm> elems;
    const auto& all = G.elements();
    for (std::size_t i = 0; i < all.size(); ++i) {
        if (X.act_by_index((int)i, pair.point) != pair.point) continue;
        if (conjugate_subgroup(all[i], pair.A) == pair.A) elems.push_back(all[i]);
    }
    return Subgroup::from_sorted(std::move(elems));
}

Subgroup pair_centralizer(const PermGroup& G, const GSet& X, const QuillenPair& pair) {
    std::vector<Perm> elems;
    const auto& all = G.elements();
    for (std::size_t i = 0; i < all.size(); ++i) {
        if (X.act_by_index((int)i, pair.point) != pair.point) continue;
        bool commutes = std::all_of(pair.A.elems.begin(), pair.A.elems.end(),
                                    [&](const Perm& a) { return a * all[i] == all[i] * a; });
        if (commutes) elems.push_back(all[i]);
    }
    return Subgroup::from_sorted(std::move(elems));
}

long long weyl_order(const PermGroup& G, const GSet& X, const QuillenPair& pair) {
    Subgroup N = pair_normalizer(G, X, pair);
    Subgroup C = pair_centralizer(G, X, pair);
    // C must be normal in N.
    for (const auto& n : N.elems)
        for (const auto& c : C.elems)
            if (!C.contains(n * c * n.inverse()))
                throw InvariantViolation("centralizer is not normal in normalizer");
    if (N.order() % C.order() != 0)
        throw InvariantViolation("centralizer order does not divide normalizer order");
    return (long long)(N.order() / C.order());
}

int max_rank(const PermGroup& G, int p, const GSet& X) {
    int best = 0;
    for (const auto& pair : quillen_pairs(G, p, X)) best = std::max(best, pair.rank);
    return best;
}

} // namespace qdx
