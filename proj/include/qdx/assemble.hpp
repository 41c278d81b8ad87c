#pragma once

#include "qdx/cohmodel.hpp"
#include "qdx/grpcat.hpp"
#include "qdx/monalg.hpp"
#include "qdx/series.hpp"

#include <optional>
#include <string>
#include <vector>

namespace qdx {

// Declared matching between a minimal prime of the presented global model and
// a Quillen class, given by any pair inside the class; optionally carries a
// graded monomial restriction map for the pullback consistency check.
struct PrimeClassMatch {
    MonPrime prime;
    Subgroup A;
    int point = 0;
    std::optional<MonRingMap> res; // global model ring -> centralizer model ring
};

struct AlgebraicSide {
    WeightedRing ring;
    GradedModule module;
    std::vector<PrimeClassMatch> matches;
};

// Centralizer model keyed either by a specific pair (resolved through its
// class) or by rank (applies to every class of that rank).
struct CentralizerModelEntry {
    std::optional<std::pair<Subgroup, int>> pair_key;
    std::optional<int> rank_key;
    CohModel model;
};

struct StabilizerModelEntry {
    Subgroup key; // matches orbit stabilizers up to conjugacy
    CohModel model;
};

struct Fixture {
    std::string name;
    PermGroup G;
    int p = 2;
    GSet X;
    std::vector<StabilizerModelEntry> stabilizer_models;
    std::vector<CentralizerModelEntry> centralizer_models;
    std::optional<CohModel> global_model; // takes precedence for the left side
    std::optional<AlgebraicSide> algebraic;
    std::optional<Rat> expected_lhs, expected_rhs;
    std::string note;
};

// Left side: the global model's series, or the orbit-stratified sum of
// stabilizer model series.
SeriesExpr lhs_series(const Fixture& f);
Rat lhs_degree(const Fixture& f);

struct RhsTerm {
    QuillenPair class_rep;
    int rank = 0;
    long long weyl = 1;
    Rat model_deg;
    Rat value; // model_deg / weyl
    bool tautological = false;
    bool model_verified = true;
};

struct RhsReport {
    std::vector<RhsTerm> terms;
    Rat total;
};

RhsReport rhs_degree(const Fixture& f);

struct TermMatchEntry {
    MonPrime prime;
    long long local_len = 0;
    Rat pdeg;
    Rat algebraic_value; // local_len * pdeg
    QuillenPair class_rep;
    Rat geometric_value; // model_deg / weyl
    bool equal = false;
};

struct TermMatching {
    bool count_equal = false;      // |D(M)| == |Q'_max|
    bool bijection_ok = false;     // declared map is a bijection
    std::vector<TermMatchEntry> entries;
    bool all_terms_equal = false;
    Rat algebraic_rhs;             // from monalg::additivity_report
    bool totals_agree = false;     // sum of matched terms == algebraic rhs
};

struct MainReport {
    std::string fixture;
    Rat lhs;
    Rat rhs;
    bool equal = false;
    int lhs_pole = 0;
    int max_rank = 0;
    bool dim_check = false;
    std::vector<RhsTerm> terms;
    bool any_tautology = false;
    bool all_models_verified = true;
    std::optional<TermMatching> term_matching;
    std::string series_convention = "full"; // p odd models carry the full series
};

// Both sides of the degree formula, exact comparison, dimension check,
// tautology flags, and (when algebraic data is present) term-by-term matching
// against the algebraic additivity formula.
MainReport verify_main(const Fixture& f);

struct CorrespondenceReport {
    std::string fixture;
    std::size_t num_minimal_primes = 0;
    std::size_t num_qprime_classes = 0;
    bool counts_equal = false;
    bool bijection_ok = false;   // declared map injective on both sides
    bool dims_respected = false; // n - |q| == rank of the matched class
    bool pullbacks_ok = true;    // res-map contractions agree where supplied
    bool ok = false;
};

// Quillen correspondence at fixture level: minimal primes of the presented
// global model against Q'(G,X), the declared bijection, and optional pullback
// consistency along supplied restriction maps.
CorrespondenceReport correspondence_check(const Fixture& f);

struct GateReport {
    bool all_passed = true;                // every action-carrying series matched
    std::vector<std::string> failures;     // gated series that failed
    std::vector<std::string> unverified;   // series models without an action
};

// Anti-hallucination gate: every stored series that carries an action must
// agree with its invariant truncation up to degree D.
GateReport run_series_gates(const Fixture& f, int D = 40);

} // namespace qdx
