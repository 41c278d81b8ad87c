#pragma once

#include <cstddef>
#include <map>
#include <string>
#include <vector>

namespace qdx {

inline constexpr std::size_t kDefaultGroupBound = 2000;

// Permutation of {0..m-1}; composition acts on the left: (a*b)(x) = a(b(x)).
struct Perm {
    std::vector<int> img;

    static Perm identity(int m);
    // Product of cycles over points < m, e.g. {{0,1,2},{3,4}}.
    static Perm from_cycles(int m, const std::vector<std::vector<int>>& cycles);

    int degree() const { return (int)img.size(); }
    int operator()(int x) const { return img[x]; }
    Perm operator*(const Perm& o) const;
    Perm inverse() const;
    bool is_identity() const;
    int order() const;

    auto operator<=>(const Perm&) const = default;
    std::string to_cycle_string() const;
};

// Finite permutation group; elements are enumerated on demand by closing the
// generators, sorted canonically, and cached.
class PermGroup {
public:
    PermGroup() = default;
    PermGroup(int degree, std::vector<Perm> generators, std::size_t bound = kDefaultGroupBound);

    int degree() const { return degree_; }
    const std::vector<Perm>& generators() const { return generators_; }
    const std::vector<Perm>& elements() const; // throws GroupTooLarge past the bound
    std::size_t order() const { return elements().size(); }
    int index_of(const Perm& g) const; // -1 when not a member
    bool contains(const Perm& g) const { return index_of(g) >= 0; }
    std::size_t bound() const { return bound_; }

private:
    int degree_ = 1;
    std::vector<Perm> generators_;
    std::size_t bound_ = kDefaultGroupBound;
    mutable std::vector<Perm> elements_;
    mutable std::map<Perm, int> index_;
    mutable bool enumerated_ = false;
};

// Subgroup as a canonical sorted element list (always contains the identity).
struct Subgroup {
    std::vector<Perm> elems;

    static Subgroup trivial(int degree);
    static Subgroup closure(int degree, const std::vector<Perm>& gens);
    static Subgroup from_sorted(std::vector<Perm> elems);

    std::size_t order() const { return elems.size(); }
    bool contains(const Perm& g) const;
    auto operator<=>(const Subgroup&) const = default;
};

Subgroup conjugate_subgroup(const Perm& g, const Subgroup& A);
bool subgroup_subset(const Subgroup& A, const Subgroup& B); // A <= B as sets

// Finite discrete G-set.  Construction verifies that the generator actions
// extend to a homomorphism on the whole group (Cayley-graph consistency) and
// caches the action of every element.
class GSet {
public:
    GSet() = default;
    static GSet make(const PermGroup& G, int num_points,
                     std::vector<std::vector<int>> generator_action);
    static GSet point(const PermGroup& G);
    static GSet cosets(const PermGroup& G, const Subgroup& H);
    static GSet free_orbits(const PermGroup& G, int copies);
    static GSet disjoint_union(const PermGroup& G, const GSet& A, const GSet& B);

    int num_points() const { return num_points_; }
    bool empty() const { return num_points_ == 0; }
    // Action of group element with index gi (into G.elements()).
    int act_by_index(int gi, int point) const { return element_action_[gi][point]; }
    int act(const PermGroup& G, const Perm& g, int point) const;

    std::vector<std::vector<int>> orbits(const PermGroup& G) const; // sorted point lists
    Subgroup stabilizer(const PermGroup& G, int point) const;

private:
    int num_points_ = 0;
    std::vector<std::vector<int>> generator_action_;
    std::vector<std::vector<int>> element_action_; // indexed like G.elements()
};

// Quillen pair: elementary abelian A (possibly trivial) and a point of X^A.
struct QuillenPair {
    Subgroup A;
    int point = 0;
    int rank = 0; // log_p |A|

    auto operator<=>(const QuillenPair&) const = default;
};

struct PairClass {
    QuillenPair rep;            // lexicographically least member
    std::vector<int> members;   // indexes into the pair list
    int rank = 0;
};

std::vector<Perm> enumerate_elements(const PermGroup& G);

// All elementary abelian p-subgroups, including the trivial one (rank 0).
std::vector<Subgroup> elementary_abelians(const PermGroup& G, int p);

int subgroup_rank(const Subgroup& A, int p);

std::vector<QuillenPair> quillen_pairs(const PermGroup& G, int p, const GSet& X);

// True iff some g in G has gAg^-1 inside A' and carries c to c'.
bool is_subconjugate(const PermGroup& G, const GSet& X, const QuillenPair& from,
                     const QuillenPair& to);

std::vector<PairClass> pair_classes(const PermGroup& G, int p, const GSet& X);

// Computes both the categorical test (every outgoing morphism is invertible)
// and Quillen's stabilizer criterion, asserts they agree, returns the value.
bool is_maximal_pair(const PermGroup& G, int p, const GSet& X, const QuillenPair& pair);

std::vector<PairClass> q_prime(const PermGroup& G, int p, const GSet& X);
std::vector<PairClass> q_prime_max(const PermGroup& G, int p, const GSet& X);

Subgroup pair_normalizer(const PermGroup& G, const GSet& X, const QuillenPair& pair);
Subgroup pair_centralizer(const PermGroup& G, const GSet& X, const QuillenPair& pair);
long long weyl_order(const PermGroup& G, const GSet& X, const QuillenPair& pair);

int max_rank(const PermGroup& G, int p, const GSet& X);

} // namespace qdx
