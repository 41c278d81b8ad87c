#pragma once

#include "qdx/series.hpp"

#include <optional>
#include <string>
#include <vector>

namespace qdx {

// Capacity bounds; exceeding either raises CapacityExceeded rather than
// degrading silently.
inline constexpr int kMaxVars = 12;
inline constexpr long long kEnumBound = 10'000'000;

using Exponent = std::vector<int>; // one entry per ring variable, >= 0

// Weighted polynomial ring F_p[x_0..x_{n-1}] with deg(x_i) = weights[i].
// The characteristic plays no role in the combinatorics here; it is recorded
// for fixture consistency.
struct WeightedRing {
    std::vector<int> weights;
    std::vector<std::string> var_names; // defaults to x0, x1, ...
    int p = 2;

    WeightedRing() = default;
    WeightedRing(std::vector<int> weights_, int p_ = 2, std::vector<std::string> names = {});

    int n() const { return (int)weights.size(); }
    int degree(const Exponent& e) const;
    std::string monomial_to_string(const Exponent& e) const;
};

// Monomial ideal, stored as a reduced generating set: no generator divides
// another, generators sorted for canonical identity.  Empty set = zero ideal.
struct MonIdeal {
    std::vector<Exponent> gens;

    static MonIdeal zero() { return MonIdeal{}; }
    static MonIdeal make(std::vector<Exponent> gens);

    bool is_zero() const { return gens.empty(); }
    bool is_unit() const; // contains the monomial 1
    bool contains_monomial(const Exponent& m) const; // m divisible by some generator
};

bool monomial_divides(const Exponent& a, const Exponent& b); // a | b

MonIdeal ideal_plus_monomial(const MonIdeal& I, const Exponent& m); // I + (m)
MonIdeal ideal_colon_var(const MonIdeal& I, int var);              // I : x_var
MonIdeal ideal_intersect(const MonIdeal& I, const MonIdeal& J, int n);

// Finite direct sum of degree-shifted cyclic quotients (R/I_i)(-s_i).
// Summands whose ideal is the unit ideal are dropped on construction;
// the zero module is the empty list.
struct GradedModule {
    struct Summand {
        int shift = 0;
        MonIdeal ideal;
    };
    std::vector<Summand> summands;

    static GradedModule zero() { return GradedModule{}; }
    static GradedModule make(std::vector<Summand> summands);
    static GradedModule cyclic(MonIdeal I, int shift = 0);

    bool is_zero() const { return summands.empty(); }
};

// Monomial prime: the ideal generated by a subset of the variables.
// Empty subset = zero ideal.
struct MonPrime {
    std::vector<int> vars; // sorted ascending

    static MonPrime make(std::vector<int> vars);
    bool contains_var(int v) const;
    bool operator==(const MonPrime&) const = default;
    auto operator<=>(const MonPrime&) const = default;
};

std::string prime_to_string(const WeightedRing& R, const MonPrime& q);

// Graded monomial ring map: each source variable maps to a target monomial of
// the same weighted degree.
struct MonRingMap {
    WeightedRing source, target;
    std::vector<Exponent> images; // one target monomial per source variable

    static MonRingMap make(WeightedRing source, WeightedRing target, std::vector<Exponent> images);
};

// --- operations -------------------------------------------------------------

// Exact Hilbert series of R/I via the pivot-splitting recursion
// HS(R/I) = HS(R/(I+(x))) + t^{deg x} HS(R/(I:x)).
SeriesExpr hilbert_series(const WeightedRing& R, const MonIdeal& I);

// Independent oracle: counts standard monomials of each weighted degree <= D
// by exhaustive enumeration.
std::vector<Int> hilbert_brute(const WeightedRing& R, const MonIdeal& I, int D,
                               long long cap = kEnumBound);

SeriesExpr module_series(const WeightedRing& R, const GradedModule& M);

// Pole order of the module's Poincare series; cross-checked internally
// against the minimum-vertex-cover computation on generator supports.
int krull_dim(const WeightedRing& R, const GradedModule& M);

// Minimum vertex cover of the supports of the annihilator's generators
// (exposed for the independent dimension oracle).
int min_cover_size(const WeightedRing& R, const GradedModule& M);

std::vector<MonPrime> minimal_primes(const WeightedRing& R, const GradedModule& M);

long long local_length(const WeightedRing& R, const GradedModule& M, const MonPrime& q);

long long module_length(const WeightedRing& R, const GradedModule& M);

Rat degree_of(const WeightedRing& R, const GradedModule& M);

Rat prime_degree(const WeightedRing& R, const MonPrime& q);

std::vector<MonPrime> dmax_primes(const WeightedRing& R, const GradedModule& M);

struct AdditivityReport {
    struct Term {
        MonPrime prime;
        long long length = 0;
        Rat pdeg;
        Rat value; // length * pdeg
    };
    Rat lhs;
    std::vector<Term> terms;
    Rat rhs;
    bool equal = false;
};

// deg(M) versus the sum over maximal-dimension minimal primes of
// local length times prime degree.  Inequality is reported, never corrected.
AdditivityReport additivity_report(const WeightedRing& R, const GradedModule& M);

// Contraction f^{-1}(q) of a monomial prime along a graded monomial map.
MonPrime pullback_prime(const MonRingMap& f, const MonPrime& q);

// Standard monomial count of an Artinian monomial ideal; throws Divergent when
// the ideal lacks a pure power of some variable (infinite count).
long long count_standard_monomials(const WeightedRing& R, const MonIdeal& I,
                                   long long cap = kEnumBound);

} // namespace qdx
