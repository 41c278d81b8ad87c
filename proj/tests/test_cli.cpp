#include "qdx/cli.hpp"

#include <doctest.h>

#include <cstdio>
#include <fstream>
#include <sstream>

using namespace qdx;

namespace {

struct TempFile {
    std::string path;
    explicit TempFile(const std::string& content) {
        path = std::string("qdx_test_") + std::to_string(rand()) + ".qdx";
        std::ofstream out(path);
        out << content;
    }
    ~TempFile() { std::remove(path.c_str()); }
};

int run(const std::vector<std::string>& args, std::string* out_text = nullptr,
        std::string* err_text = nullptr) {
    std::ostringstream out, err;
    int code = cli_run(args, out, err);
    if (out_text) *out_text = out.str();
    if (err_text) *err_text = err.str();
    return code;
}

const char* kAlg = R"(
ring R = { vars=[x, y]; weights=[1, 2]; p=2 }
ideal I = R ["x*y"]
module HM = R [(0, I)]
)";

} // namespace

TEST_CASE("degree subcommand") {
    TempFile f(kAlg);
    std::string out;
    CHECK(run({"degree", f.path, "I"}, &out) == kExitOk);
    CHECK(out == "3/2\n");
    CHECK(run({"degree", f.path, "HM"}, &out) == kExitOk);
    CHECK(out == "3/2\n");
}

TEST_CASE("hilbert and oracle subcommands") {
    TempFile f(kAlg);
    std::string out;
    CHECK(run({"hilbert", f.path, "I", "--max-degree", "6"}, &out) == kExitOk);
    CHECK(out.find("num: [1, 0, 0, -1]; den: [1, 2]") != std::string::npos);
    CHECK(run({"oracle", f.path, "HM", "--max-degree", "12"}, &out) == kExitOk);
    CHECK(out.find("MATCH") != std::string::npos);
}

TEST_CASE("minprimes, length, additivity") {
    TempFile f(kAlg);
    std::string out;
    CHECK(run({"minprimes", f.path, "I"}, &out) == kExitOk);
    CHECK(out.find("(x)") != std::string::npos);
    CHECK(out.find("(y)") != std::string::npos);

    CHECK(run({"length", f.path, "I", "--at", "x"}, &out) == kExitOk);
    CHECK(out == "1\n");

    TempFile free_ring("ring R = { vars=[x]; weights=[2]; p=3 }\nideal Z = R []\n");
    CHECK(run({"length", free_ring.path, "Z", "--at", "0"}, &out) == kExitOk);
    CHECK(out == "1\n");

    CHECK(run({"additivity", f.path, "I"}, &out) == kExitOk);
    CHECK(out.find("deg(M) = 3/2") != std::string::npos);
    CHECK(out.find("(equal)") != std::string::npos);
}

TEST_CASE("exit codes") {
    TempFile bad("group G = <(0 1");
    std::string err;
    CHECK(run({"degree", bad.path, "I"}, nullptr, &err) == kExitParse);
    CHECK(run({"degree", "does_not_exist.qdx", "I"}, nullptr, &err) == kExitParse);

    TempFile cap(R"(
ring R = { vars=[a, b, c, d, e, f, g, h, i, j, k, l, m]; weights=[1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1]; p=2 }
ideal I = R []
)");
    CHECK(run({"degree", cap.path, "I"}, nullptr, &err) == kExitCapacity);

    // missing centralizer model -> 4
    TempFile miss(R"(
group Z2 = <(0 1)> on 2
gset X = pt(Z2)
model M = elemab(rank=1, p=2)
fixture f = { group = Z2; p = 2; gset = X; global_model = M }
)");
    CHECK(run({"verify-main", miss.path}, nullptr, &err) == kExitMissingModel);

    // wrong expected value -> verification failure 3
    TempFile wrong(R"(
group Z2 = <(0 1)> on 2
gset X = pt(Z2)
model M = elemab(rank=1, p=2)
fixture f = {
  group = Z2
  p = 2
  gset = X
  global_model = M
  centralizer_model rank 1 = M
  expected_lhs = 7
}
)");
    CHECK(run({"verify-main", wrong.path}, nullptr, &err) == kExitVerification);
}

TEST_CASE("verify-main fails on a swapped term matching") {
    // The 1/6 term belongs to the normal Klein subgroup; swapping the
    // declared matches breaks the per-term equality and must exit 3.
    TempFile swapped(R"(
group S4 = <(0 1 2 3), (0 1)> on 4
gset X = pt(S4)
ring R = { vars=[a, b, c]; weights=[1, 2, 3]; p=2 }
ideal I = R ["a*c"]
module HM = R [(0, I)]
model MS4 = presented(R, I)
model MV = elemab(rank=2, p=2)
fixture bad = {
  group = S4
  p = 2
  gset = X
  global_model = MS4
  centralizer_model rank 2 = MV
  algebraic = {
    ring = R
    module = HM
    match (c) -> pair(<(0 1)(2 3), (0 2)(1 3)>, 0)
    match (a) -> pair(<(0 1), (2 3)>, 0)
  }
}
)");
    std::string out;
    CHECK(run({"verify-main", swapped.path}, &out) == kExitVerification);
    CHECK(out.find("MISMATCH") != std::string::npos);
    // the totals still agree (the two sides only swap), so the failure is
    // localized to the per-term comparison
    CHECK(out.find("equal=true") != std::string::npos);
}

TEST_CASE("verify-main passes on a correct fixture") {
    TempFile good(R"(
group Z2 = <(0 1)> on 2
gset X = pt(Z2)
model M = elemab(rank=1, p=2)
fixture f = {
  group = Z2
  p = 2
  gset = X
  global_model = M
  centralizer_model rank 1 = M
  expected_lhs = 1
  expected_rhs = 1
}
)");
    std::string out;
    CHECK(run({"verify-main", good.path}, &out) == kExitOk);
    CHECK(out.find("PASS") != std::string::npos);
    CHECK(out.find("equal=true") != std::string::npos);
    CHECK(out.find("[tautological]") != std::string::npos);
}

TEST_CASE("group-info and quillen") {
    TempFile f(R"(
group D4 = <(0 1 2 3), (0 2)> on 4
gset X = pt(D4)
model M = elemab(rank=2, p=2)
fixture fx = { group = D4; p = 2; gset = X; global_model = M; centralizer_model rank 2 = M }
)");
    std::string out;
    CHECK(run({"group-info", f.path, "D4", "--p", "2"}, &out) == kExitOk);
    CHECK(out.find("order 8") != std::string::npos);
    CHECK(out.find("rank 2: 2 subgroup(s) in 2 conjugacy class(es)") != std::string::npos);

    CHECK(run({"quillen", f.path, "fx", "--poset"}, &out) == kExitOk);
    CHECK(out.find("|Q'_max| = 2") != std::string::npos);
}

TEST_CASE("selftest list and machine stability") {
    std::string out1, out2;
    CHECK(run({"selftest", "--list"}, &out1) == kExitOk);
    CHECK(out1.find("d4_p2_pt") != std::string::npos);
    CHECK(out1.find("series_properties") != std::string::npos);

    // machine output is byte-identical across runs with the same seed
    CHECK(run({"selftest", "--format", "machine", "--seed", "7"}, &out1) == kExitOk);
    CHECK(run({"selftest", "--format", "machine", "--seed", "7"}, &out2) == kExitOk);
    CHECK(out1 == out2);
    CHECK(out1.find("\"pass\":true") != std::string::npos);
}

TEST_CASE("wmod-check smoke run") {
    std::string out;
    CHECK(run({"wmod-check", "--count", "5", "--seed", "42"}, &out) == kExitOk);
    CHECK(out.find("PASS") != std::string::npos);
    CHECK(out.find("seed 42") != std::string::npos);
}

TEST_CASE("invariants subcommand") {
    TempFile f(R"(
model M = series(num=[1, 0, 0, 1], den=[4], dim=1, note="gated", p=3, action=[[-1]])
)");
    std::string out;
    CHECK(run({"invariants", f.path, "M"}, &out) == kExitOk);
    CHECK(out.find("matches") != std::string::npos);
}
