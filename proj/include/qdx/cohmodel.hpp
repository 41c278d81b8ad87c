#pragma once

#include "qdx/monalg.hpp"
#include "qdx/series.hpp"

#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace qdx {

inline constexpr std::size_t kMatrixGroupBound = 1000;

// Linear action of a finite group on the degree-1 generators of the model
// ring for an elementary abelian group: r x r matrices over F_p, rows are the
// images of the generators.
struct LinearWAction {
    int rank = 0;
    int p = 2;
    std::vector<std::vector<std::vector<int>>> gens; // each r x r, invertible mod p

    static LinearWAction make(int rank, int p, std::vector<std::vector<std::vector<int>>> gens);
};

struct ElementaryAbelianModel {
    int rank = 0;
    int p = 2;
};

struct PresentedModel {
    WeightedRing ring;
    MonIdeal ideal;
};

// Literature-input series with a declared dimension; optionally carries the
// action that lets invariant_truncation vouch for it.
struct SeriesOnlyModel {
    SeriesExpr series;
    int declared_dim = 0;
    std::string note;
    std::optional<LinearWAction> action;

    static SeriesOnlyModel make(SeriesExpr series, int declared_dim, std::string note,
                                std::optional<LinearWAction> action = std::nullopt);
};

using CohModel = std::variant<ElementaryAbelianModel, PresentedModel, SeriesOnlyModel>;

// Closed form for elementary abelian groups, Hilbert series for presented
// models, the stored series otherwise.
SeriesExpr model_series(const CohModel& m);
Rat model_degree(const CohModel& m);
int model_dim(const CohModel& m);

// True when the model's series is pinned by an independent computation
// (closed form, presented quotient, or a supplied action); false for raw
// literature series, which reports label "unverified fixture".
bool model_is_verified(const CohModel& m);

// Dimensions of the W-fixed subspace of the elementary abelian model ring in
// each degree <= D, by explicit matrices on monomial bases and kernel ranks.
// p odd: Lambda(x_1..x_r) (x) F_p[y_1..y_r], deg x = 1, deg y = 2;
// p = 2:  F_2[x_1..x_r], deg x = 1.
std::vector<long long> invariant_truncation(const LinearWAction& a, int D);

// Checks a SeriesOnly model's stored series against invariant_truncation up
// to degree D; true when no action is supplied counts as "not checked".
bool series_matches_action(const SeriesOnlyModel& m, int D);

} // namespace qdx
