#include "qdx/errors.hpp"
#include "qdx/series.hpp"

#include <doctest.h>

#include <random>

using namespace qdx;

namespace {

// Independent oracle for expansion: the claimed coefficients, multiplied back
// by the denominator, must reproduce the numerator (truncated to degree D).
bool remultiplies(const SeriesExpr& s, const std::vector<Int>& coeffs, int D) {
    Poly prod = poly_from_coeffs(coeffs);
    for (int w : s.denom_weights) prod = poly_mul(prod, Poly{{0, 1}, {w, -1}});
    for (int i = 0; i <= D; ++i) {
        Int expect = 0;
        if (auto it = s.numerator.find(i); it != s.numerator.end()) expect = it->second;
        Int got = 0;
        if (auto it = prod.find(i); it != prod.end()) got = it->second;
        if (expect != got) return false;
    }
    return true;
}

SeriesExpr make(std::vector<Int> num, std::vector<int> den) {
    return SeriesExpr(poly_from_coeffs(num), std::move(den));
}

std::vector<Int> to_ints(std::vector<int> v) { return std::vector<Int>(v.begin(), v.end()); }

SeriesExpr random_series(std::mt19937_64& rng, bool nonneg) {
    SeriesExpr s;
    while (true) {
        int deg = (int)(rng() % 9);
        std::vector<Int> num(deg + 1);
        bool any = false;
        for (auto& c : num) {
            long long v = (long long)(rng() % 19) - 9;
            if (nonneg) v = (long long)(rng() % 10);
            c = v;
            any = any || v != 0;
        }
        if (!any) continue;
        int nw = (int)(rng() % 5);
        std::vector<int> den;
        for (int i = 0; i < nw; ++i) den.push_back(1 + (int)(rng() % 4));
        s = SeriesExpr(poly_from_coeffs(num), den);
        return s;
    }
}

} // namespace

TEST_CASE("expansion of basic series") {
    auto s1 = make(to_ints({1}), {1});
    CHECK(expand(s1, 3) == to_ints({1, 1, 1, 1}));

    auto s2 = make(to_ints({1, 1}), {2}); // (1+t)/(1-t^2) = 1/(1-t)
    auto got = expand(s2, 4);
    CHECK(got == to_ints({1, 1, 1, 1, 1}));
    CHECK(remultiplies(s2, got, 4));

    auto s3 = make(to_ints({1, 0, -1}), {1, 1}); // (1-t^2)/(1-t)^2 = (1+t)/(1-t)
    got = expand(s3, 3);
    CHECK(got == to_ints({1, 2, 2, 2}));
    CHECK(remultiplies(s3, got, 3));

    CHECK(expand(SeriesExpr::zero(), 2) == to_ints({0, 0, 0}));
}

TEST_CASE("pole order") {
    CHECK(pole_order(make(to_ints({1}), {1, 1, 1})) == 3);
    // 1 - 2t^2 + t^3 = (1-t)(1 + t - t^2): one removable factor
    auto s = make(to_ints({1, 0, -2, 1}), {1, 1});
    CHECK(poly_mul(Poly{{0, 1}, {1, -1}}, Poly{{0, 1}, {1, 1}, {2, -1}}) == s.numerator);
    CHECK(pole_order(s) == 1);
    CHECK(pole_order(make(to_ints({1, -1}), {1})) == 0);
    CHECK(pole_order(make(to_ints({1, -1}), {})) == -1);
    CHECK_THROWS_AS(pole_order(SeriesExpr::zero()), ZeroSeries);
}

TEST_CASE("degree at one") {
    CHECK(degree_at_one(make(to_ints({1}), {1})) == Rat(1));

    auto s = make(to_ints({1, 2, 2, 1}), {4});
    CHECK(degree_at_one(s) == Rat(3, 2));
    // high-precision cross-check at tau = 1 - 10^-6
    Rat tau(999999, 1000000);
    Rat diff = rat_abs(eval_scaled_at(s, tau) - Rat(3, 2));
    CHECK(diff <= Rat(1, 1000));

    CHECK(degree_at_one(make(to_ints({1, 0, -1}), {1, 1, 2})) == Rat(1));
    CHECK_THROWS_AS(degree_at_one(SeriesExpr::zero()), ZeroSeries);
}

TEST_CASE("mul") {
    auto a = make(to_ints({1}), {1});
    auto prod = mul(a, a);
    CHECK(prod.denom_weights == std::vector<int>{1, 1});
    CHECK(prod.numerator == Poly{{0, 1}});

    auto b = mul(make(to_ints({1, 1}), {}), make(to_ints({1}), {2}));
    CHECK(b.numerator == Poly{{0, 1}, {1, 1}});
    CHECK(b.denom_weights == std::vector<int>{2});

    auto x = make(to_ints({1, 0, -1}), {1, 1});
    auto y = make(to_ints({1}), {1});
    CHECK(pole_order(mul(x, y)) == pole_order(x) + pole_order(y));
    CHECK(pole_order(mul(x, y)) == 2);
}

TEST_CASE("add") {
    auto one = make(to_ints({1}), {1});
    auto sum = add(one, one);
    CHECK(expand(sum, 4) == to_ints({2, 2, 2, 2, 2}));

    auto cancel = normalize(add(one, make(to_ints({-1}), {1})));
    CHECK(cancel.is_zero());
    CHECK(cancel.denom_weights.empty());

    auto mixed = add(one, make(to_ints({1}), {2}));
    CHECK(expand(mixed, 5) == to_ints({2, 1, 2, 1, 2, 1}));
}

TEST_CASE("shift") {
    auto s = make(to_ints({1}), {1});
    CHECK(shift(s, 0) == s);
    CHECK(expand(shift(s, 2), 3) == to_ints({0, 0, 1, 1}));
    CHECK(degree_at_one(shift(make(to_ints({1, 2, 2, 1}), {4}), 5)) == Rat(3, 2));
}

TEST_CASE("normalize cancels removable factors") {
    // Greedy from the smallest weight: (1-t^2)/((1-t)(1-t^2)) cancels the
    // (1-t) factor first, leaving (1+t)/(1-t^2).
    auto s = make(to_ints({1, 0, -1}), {1, 2});
    auto n = normalize(s);
    CHECK(n.numerator == Poly{{0, 1}, {1, 1}});
    CHECK(n.denom_weights == std::vector<int>{2});
    CHECK(expand(n, 8) == expand(s, 8));

    // Full cancellation down to a polynomial.
    auto m = normalize(make(to_ints({1, 0, -1}), {2}));
    CHECK(m.numerator == Poly{{0, 1}});
    CHECK(m.denom_weights.empty());

    auto k = normalize(make(to_ints({1, -1, -1, 1}), {1, 2})); // (1-t)(1-t^2)
    CHECK(k.numerator == Poly{{0, 1}});
    CHECK(k.denom_weights.empty());
}

TEST_CASE("seeded random series properties") {
    std::mt19937_64 rng(20240811);
    Rat tau(999999, 1000000);
    for (int iter = 0; iter < 300; ++iter) {
        bool nonneg = iter % 2 == 0;
        auto a = random_series(rng, nonneg);
        auto b = random_series(rng, nonneg);

        CHECK(expand(normalize(a), 24) == expand(a, 24));

        auto prod = mul(a, b);
        CHECK(pole_order(prod) == pole_order(a) + pole_order(b));
        CHECK(degree_at_one(prod) == degree_at_one(a) * degree_at_one(b));

        int k = (int)(rng() % 6);
        CHECK(degree_at_one(shift(a, k)) == degree_at_one(a));

        if (nonneg) CHECK(degree_at_one(a) > 0);

        CHECK(rat_abs(eval_scaled_at(a, tau) - degree_at_one(a)) <= Rat(1, 1000));

        auto sum = add(a, b);
        auto ea = expand(a, 16), eb = expand(b, 16), es = expand(sum, 16);
        for (int i = 0; i <= 16; ++i) CHECK(es[i] == ea[i] + eb[i]);
    }
}

TEST_CASE("text form") {
    CHECK(series_to_text(make(to_ints({1, 0, -1}), {1, 2})) == "num: [1, 0, -1]; den: [1, 2]");
    CHECK(rat_to_string(Rat(3, 2)) == "3/2");
    CHECK(rat_to_string(Rat(4, 2)) == "2");
}
