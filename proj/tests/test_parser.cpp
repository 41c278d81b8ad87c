#include "qdx/errors.hpp"
#include "qdx/parser.hpp"

#include <doctest.h>

#include <random>

using namespace qdx;

namespace {

const char* kSample = R"(
# sample environment
ring R = { vars=[x, y, w]; weights=[1, 1, 2]; p=2 }
ideal I = R ["x*y"]
ideal Z = R []
module HM = R [(0, I)]
map f = R -> R { x -> "x"; y -> "y"; w -> "w" }
group D4 = <(0 1 2 3), (0 2)> on 4
gset X = pt(D4)
model MD4 = presented(R, I)
model MV = elemab(rank=2, p=2)

fixture d4 = {
  group = D4
  p = 2
  gset = X
  global_model = MD4
  centralizer_model rank 2 = MV
  algebraic = {
    ring = R
    module = HM
    match (x) -> pair(<(0 2), (0 2)(1 3)>, 0)
    match (y) -> pair(<(0 1)(2 3), (0 2)(1 3)>, 0)
  }
  expected_lhs = 1
  expected_rhs = 1
  note = "sample"
}
)";

} // namespace

TEST_CASE("parses a full environment") {
    auto env = parse_environment(kSample);
    REQUIRE(env.rings.size() == 1);
    CHECK(env.rings[0].ring.n() == 3);
    CHECK(env.rings[0].ring.weights == std::vector<int>{1, 1, 2});
    REQUIRE(env.ideals.size() == 2);
    CHECK(env.ideals[0].ideal.gens == std::vector<Exponent>{{1, 1, 0}});
    CHECK(env.ideals[1].ideal.is_zero());
    REQUIRE(env.groups.size() == 1);
    CHECK(env.groups[0].group.order() == 8);
    REQUIRE(env.gsets.size() == 1);
    CHECK(env.gsets[0].gset.num_points() == 1);
    REQUIRE(env.models.size() == 2);
    REQUIRE(env.fixtures.size() == 1);
    const auto& f = env.fixtures[0].fixture;
    CHECK(f.p == 2);
    CHECK(f.global_model.has_value());
    REQUIRE(f.algebraic.has_value());
    CHECK(f.algebraic->matches.size() == 2);
    CHECK(f.algebraic->matches[0].A.order() == 4);
}

TEST_CASE("group closure example") {
    auto env = parse_environment("group S3 = <(0 1 2), (0 1)>");
    CHECK(env.groups[0].group.order() == 6);
    CHECK(env.groups[0].group.degree() == 3);
}

TEST_CASE("gset grammar") {
    auto env = parse_environment(R"(
group S3 = <(0 1 2), (0 1)>
gset X = cosets(S3, <(0 1 2)>) + free(1)
gset Y = table(S3, points=2, action=[[0, 1], [1, 0]])
)");
    CHECK(env.gsets[0].gset.num_points() == 8);
    CHECK(env.gsets[1].gset.num_points() == 2);
}

TEST_CASE("syntax errors carry positions") {
    try {
        parse_environment("group G = <(0 1 2)");
        FAIL("expected a syntax error");
    } catch (const SyntaxError& e) {
        CHECK(e.line == 1);
        CHECK(e.col >= 10);
    }
    CHECK_THROWS_AS(parse_environment("ring R = { vars=[x]; weights=[1, 2]; p=2 }"), SyntaxError);
    CHECK_THROWS_AS(parse_environment("bogus Q = 3"), SyntaxError);
}

TEST_CASE("duplicate names rejected") {
    CHECK_THROWS_AS(parse_environment("group G = <(0 1)>\ngroup G = <(0 1)>"), DuplicateName);
    CHECK_THROWS_AS(
        parse_environment("ring R = { vars=[x]; weights=[1]; p=2 }\nideal R = R []"),
        DuplicateName);
}

TEST_CASE("forward and unknown references rejected") {
    CHECK_THROWS_AS(parse_environment("ideal I = R [\"x\"]"), UnknownReference);
    CHECK_THROWS_AS(parse_environment("gset X = pt(G)\ngroup G = <(0 1)>"), UnknownReference);
}

TEST_CASE("bad permutations rejected") {
    CHECK_THROWS_AS(parse_environment("group G = <(0 1 0)>"), BadPermutation);
    // subgroup generator outside the fixture group
    auto text = R"(
group Z2 = <(0 1)> on 2
gset X = pt(Z2)
model M = elemab(rank=1, p=2)
fixture f = {
  group = Z2
  p = 2
  gset = X
  global_model = M
  stabilizer_model <(0 1 2)> = M
}
)";
    CHECK_THROWS(parse_environment(text));
}

TEST_CASE("bad monomial strings") {
    CHECK_THROWS_AS(
        parse_environment("ring R = { vars=[x]; weights=[1]; p=2 }\nideal I = R [\"q^2\"]"),
        SyntaxError);
    CHECK_THROWS_AS(
        parse_environment("ring R = { vars=[x]; weights=[1]; p=2 }\nideal I = R [\"x^\"]"),
        SyntaxError);
}

TEST_CASE("pretty-print round trip") {
    auto env = parse_environment(kSample);
    auto text1 = pretty_print(env);
    auto env2 = parse_environment(text1);
    auto text2 = pretty_print(env2);
    CHECK(text1 == text2);

    // spot checks that the reparse is semantically identical
    CHECK(env2.rings[0].ring.weights == env.rings[0].ring.weights);
    CHECK(env2.ideals[0].ideal.gens == env.ideals[0].ideal.gens);
    CHECK(env2.groups[0].group.order() == env.groups[0].group.order());
    CHECK(env2.fixtures[0].fixture.algebraic->matches[1].prime ==
          env.fixtures[0].fixture.algebraic->matches[1].prime);
}

TEST_CASE("series model with action round-trips") {
    auto text = R"(
model M = series(num=[1, 0, 0, 1], den=[4], dim=1, note="gated", p=3, action=[[-1]])
)";
    auto env = parse_environment(text);
    const auto& so = std::get<SeriesOnlyModel>(env.models[0].model);
    CHECK(so.declared_dim == 1);
    REQUIRE(so.action.has_value());
    CHECK(so.action->rank == 1);
    CHECK(so.action->p == 3);
    CHECK(so.action->gens[0][0][0] == 2); // -1 mod 3

    auto text1 = pretty_print(env);
    auto env2 = parse_environment(text1);
    CHECK(pretty_print(env2) == text1);
}

TEST_CASE("map images accept quoted and unquoted monomials") {
    auto env = parse_environment(R"(
ring S = { vars=[x, y]; weights=[1, 1]; p=2 }
ring U = { vars=[u, v]; weights=[2, 2]; p=2 }
map f = U -> S { u -> x^2; v -> x*y }
map g = U -> S { u -> "x^2"; v -> "x*y" }
)");
    CHECK(env.maps[0].map.images == env.maps[1].map.images);
    CHECK(env.maps[0].map.images[0] == Exponent{2, 0});
    CHECK(env.maps[0].map.images[1] == Exponent{1, 1});

    auto text1 = pretty_print(env);
    CHECK(pretty_print(parse_environment(text1)) == text1);
}

TEST_CASE("declared dim must match the series pole order") {
    CHECK_THROWS_AS(parse_environment("model M = series(num=[1], den=[1], dim=2)"),
                    InvariantViolation);
}

TEST_CASE("fixtures must declare group, p, and gset") {
    CHECK_THROWS_AS(parse_environment(R"(
group G = <(0 1)> on 2
gset X = pt(G)
fixture f = { group = G; gset = X }
)"),
                    SyntaxError);
}

TEST_CASE("mutated inputs never escape the error hierarchy") {
    std::string base = kSample;
    std::mt19937_64 rng(123457);
    const std::string charset = "abcxyz0123456789(){}[]<>=,;/+-*^\"# \n";
    for (int iter = 0; iter < 600; ++iter) {
        std::string text = base;
        int edits = 1 + (int)(rng() % 3);
        for (int e = 0; e < edits; ++e) {
            std::size_t pos = rng() % text.size();
            switch (rng() % 3) {
                case 0: text[pos] = charset[rng() % charset.size()]; break;
                case 1: text.erase(pos, 1 + rng() % 5); break;
                default: text.insert(pos, 1, charset[rng() % charset.size()]); break;
            }
        }
        try {
            parse_environment(text);
        } catch (const Error&) {
            // typed failure is the contract
        }
    }
    // oversized literals are rejected, not overflowed
    CHECK_THROWS_AS(parse_environment("group G = <(0 99999999999999999999)>"), SyntaxError);
    CHECK_THROWS_AS(
        parse_environment("ring R = { vars=[x]; weights=[1]; p=2 }\nideal I = R [\"x^9999999\"]"),
        SyntaxError);
}
