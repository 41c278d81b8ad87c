#include "qdx/errors.hpp"
#include "qdx/wmod.hpp"

#include <doctest.h>

#include <numeric>
#include <random>

using namespace qdx;

namespace {

PermGroup z2() { return PermGroup(2, {Perm::from_cycles(2, {{0, 1}})}); }
PermGroup z3() { return PermGroup(3, {Perm::from_cycles(3, {{0, 1, 2}})}); }
PermGroup s3() { return PermGroup(3, {Perm::from_cycles(3, {{0, 1, 2}}), Perm::from_cycles(3, {{0, 1}})}); }
PermGroup v4() { return PermGroup(4, {Perm::from_cycles(4, {{0, 1}}), Perm::from_cycles(4, {{2, 3}})}); }

} // namespace

TEST_CASE("check_free and dims") {
    auto P = InducedModule::make(z2(), 1, GradedDims{{1}}, 1, 2);
    CHECK(check_free(P, 4));
    CHECK(P.num_components() == 2);

    auto P2 = InducedModule::make(s3(), 2, GradedDims{{1, 1}}, 2, 2);
    CHECK(check_free(P2, 4));
    CHECK(P2.num_components() == 12);

    auto P3 = InducedModule::make(PermGroup(1, {}), 3, GradedDims{{2, 1}}, 3, 3);
    CHECK(check_free(P3, 4));
    CHECK(P3.num_components() == 3);
}

TEST_CASE("invariants dims equal t * base dims") {
    auto P = InducedModule::make(z2(), 1, GradedDims{{1}}, 1, 2);
    CHECK(invariants_dims(P, 3) == std::vector<long long>{1, 0, 0, 0});

    auto P2 = InducedModule::make(z3(), 1, GradedDims{{1, 1, 1}}, 3, 2);
    CHECK(invariants_dims(P2, 2) == std::vector<long long>{1, 1, 1});

    auto P3 = InducedModule::make(z2(), 3, GradedDims{{1, 0, 2}}, 3, 5);
    CHECK(invariants_dims(P3, 2) == std::vector<long long>{3, 0, 6});
}

TEST_CASE("length identity") {
    auto P = InducedModule::make(z2(), 1, GradedDims{{1, 1, 1}}, 3, 2);
    auto li = length_identity(P);
    CHECK(li.lP == 6);
    CHECK(li.lPW == 3);
    CHECK(li.ok);

    auto Ptriv = InducedModule::make(PermGroup(1, {}), 2, GradedDims{{2, 2}}, 4, 3);
    auto li2 = length_identity(Ptriv);
    CHECK(li2.lP == li2.lPW);
    CHECK(li2.ok);

    auto P3 = InducedModule::make(s3(), 2, GradedDims{{1}}, 1, 2);
    auto li3 = length_identity(P3);
    CHECK(li3.lP == 12);
    CHECK(li3.lPW == 2);
    CHECK(li3.ok);
}

TEST_CASE("degreewise shadow: total dim = |W| * invariants dim") {
    auto P = InducedModule::make(v4(), 2, GradedDims{{1, 2, 0, 1}}, 4, 2);
    auto inv = invariants_dims(P, 3);
    for (int d = 0; d <= 3; ++d)
        CHECK((long long)P.num_components() * P.base.at(d) ==
              (long long)P.W.order() * inv[d]);
}

TEST_CASE("tensor length") {
    CHECK(tensor_length(3, {2}) == 6);
    CHECK(tensor_length(3, {1}) == 3);
    CHECK(tensor_length(0, {5, 5}) == 0);
    // linearity in each argument
    CHECK(tensor_length(7, {1, 2, 3}) == 7 * 6);
    CHECK(tensor_length(3, {1, 2}) + tensor_length(4, {1, 2}) == tensor_length(7, {1, 2}));
}

TEST_CASE("tensor length against an explicit composition-series enumeration") {
    WeightedRing R({1, 1}, 2, {"x", "y"});
    auto I = MonIdeal::make({{3, 0}, {1, 1}, {0, 2}});
    auto M = GradedModule::cyclic(I);
    long long ml = module_length(R, M);
    std::vector<long long> v_dims{2, 0, 1};
    // Composition factors of M (x) V: one shifted copy of k per pair
    // (standard monomial, V basis element).
    long long pairs = 0;
    auto dims = expand(hilbert_series(R, I), 10);
    for (const auto& c : dims)
        pairs += (long long)c * std::accumulate(v_dims.begin(), v_dims.end(), 0ll);
    CHECK(tensor_length(ml, v_dims) == pairs);
}

TEST_CASE("violating component actions are rejected at construction") {
    // Trivial action of Z/2 on 2 components is a homomorphism but not free.
    std::vector<std::vector<int>> trivial_action = {{0, 1}, {0, 1}};
    CHECK_THROWS_AS(
        InducedModule::make_with_action(z2(), 1, GradedDims{{1}}, 1, 2, trivial_action),
        InvariantViolation);
    // Non-homomorphism action: g and g^2 both mapped to the same 3-cycle.
    std::vector<std::vector<int>> bad = {{0, 1, 2}, {1, 2, 0}, {1, 2, 0}};
    CHECK_THROWS_AS(InducedModule::make_with_action(z3(), 1, GradedDims{{1}}, 1, 3, bad),
                    InvariantViolation);
    CHECK_THROWS_AS(InducedModule::make(z2(), 0, GradedDims{{1}}, 1, 2), InvariantViolation);
}

TEST_CASE("from_quotient builds a consistent base") {
    WeightedRing R({1, 2}, 3, {"x", "y"});
    auto I = MonIdeal::make({{2, 0}, {0, 2}});
    auto P = InducedModule::from_quotient(s3(), 2, R, I);
    CHECK(P.base_length == 4);
    CHECK(P.base_length == P.base.total());
    CHECK(check_free(P, 8));
    auto li = length_identity(P);
    CHECK(li.ok);
    CHECK(li.lP == 2 * 6 * 4);

    WeightedRing R2({1, 1}, 2, {"x", "y"});
    CHECK_THROWS_AS(InducedModule::from_quotient(z2(), 1, R2, MonIdeal::make({{1, 1}})),
                    NotArtinian);
}

TEST_CASE("localized length bookkeeping chain") {
    // The length of the localized module transfers through: tensoring with a
    // graded space of total dimension m multiplies length by m; passing to
    // invariants of a free W-action divides it by |W|.  Composing the steps,
    // the left side length equals 1/|W| times the component length.
    std::mt19937_64 rng(555);
    for (int iter = 0; iter < 20; ++iter) {
        auto W = iter % 2 ? s3() : v4();
        int m = 1 + (int)(rng() % 4); // total dimension of the auxiliary space
        int t = m;                    // orbits per auxiliary basis vector
        WeightedRing R({1}, 2, {"x"});
        auto I = MonIdeal::make({{1 + (int)(rng() % 5)}});
        auto P = InducedModule::from_quotient(W, t, R, I);
        auto li = length_identity(P);
        REQUIRE(li.ok);
        // lP = l(N (x) V) and lPW = l(M (x) V) for l(N) = lP/m, l(M) = lPW/m
        REQUIRE(li.lP % m == 0);
        REQUIRE(li.lPW % m == 0);
        long long len_N = li.lP / m, len_M = li.lPW / m;
        CHECK(tensor_length(len_N, std::vector<long long>(m, 1)) == li.lP);
        CHECK(tensor_length(len_M, std::vector<long long>(m, 1)) == li.lPW);
        CHECK(len_M * (long long)W.order() == len_N);
    }
}

TEST_CASE("randomized instances: freeness, invariants, length identity") {
    std::mt19937_64 rng(991);
    auto groups = std::vector<PermGroup>{z2(), z3(), s3(), v4()};
    for (int iter = 0; iter < 40; ++iter) {
        const auto& W = groups[rng() % groups.size()];
        int t = 1 + (int)(rng() % 4);
        // random Artinian monomial quotient in <= 2 variables, length <= 20
        int n = 1 + (int)(rng() % 2);
        std::vector<int> weights;
        for (int i = 0; i < n; ++i) weights.push_back(1 + (int)(rng() % 2));
        WeightedRing R(weights, 2);
        std::vector<Exponent> gens;
        for (int i = 0; i < n; ++i) {
            Exponent e(n, 0);
            e[i] = 1 + (int)(rng() % 4);
            gens.push_back(e);
        }
        auto I = MonIdeal::make(gens);
        auto P = InducedModule::from_quotient(W, t, R, I);
        if (P.base_length > 20) continue;
        CHECK(check_free(P, P.base.top_degree() + 1));
        auto inv = invariants_dims(P, std::max(P.base.top_degree(), 0));
        for (int d = 0; d < (int)inv.size(); ++d) CHECK(inv[d] == P.t * P.base.at(d));
        CHECK(length_identity(P).ok);
    }
}
