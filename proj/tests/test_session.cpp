#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "nflocus/loci.hpp"
#include "nflocus/module.hpp"
#include "nflocus/session.hpp"

using namespace nflocus;

namespace {

// parse and return the error text, or "" when the text parses cleanly
std::string err_of(const std::string& text) {
    try {
        parse_session(text);
        return "";
    } catch (const error& e) {
        return e.what();
    }
}

bool mentions(const std::string& msg, const std::string& part) {
    return msg.find(part) != std::string::npos;
}

}  // namespace

TEST_CASE("minimal session: one ring, one module") {
    auto s = parse_session("ring R = Q[x,y]/(x^2); module X = coker [[x]];");
    CHECK(s.ring_name == "R");
    CHECK(s.ring->base->p == 0);
    CHECK(s.ring->base->weights == std::vector<int>{1, 1});
    CHECK(s.ring->defining.size() == 1);
    CHECK(s.ring->defining[0].str() == "x^2");
    REQUIRE(s.modules.size() == 1);
    const FPModule* X = s.find_module("X");
    REQUIRE(X != nullptr);
    CHECK(X->gen_degrees == std::vector<int>{0});
    REQUIRE(X->rels.size() == 1);
    CHECK(X->rels[0][0].str() == "x");
    CHECK(s.find_module("Y") == nullptr);
}

TEST_CASE("matrix rows are generators; degrees are inferred") {
    auto s = parse_session(
        "ring R = Q[x,y]/(x^2);\n"
        "module Y = coker [[x, y],[0, x]];\n");
    const FPModule* Y = s.find_module("Y");
    REQUIRE(Y != nullptr);
    CHECK(Y->gen_degrees == std::vector<int>{0, 0});
    // two relation columns, transposed from the rows
    REQUIRE(Y->rels.size() == 2);
    CHECK(Y->rels[0][0].str() == "x");
    CHECK(Y->rels[0][1].str() == "0");
    CHECK(Y->rels[1][0].str() == "y");
    CHECK(Y->rels[1][1].str() == "x");
}

TEST_CASE("inference anchors each block; explicit degrees override") {
    // the relation y*e1 + x*e2 = 0 forces deg(e2) = deg(e1) - 1 under wt(x)=2
    auto s = parse_session(
        "ring R = Q[x,y] weights 2 1;\n"
        "module M = coker [[y],[x]];\n"
        "module N = coker [[y],[x]] degrees 3 2;\n");
    CHECK(s.find_module("M")->gen_degrees == std::vector<int>{0, -1});
    CHECK(s.find_module("N")->gen_degrees == std::vector<int>{3, 2});
    REQUIRE(s.find_module("N")->rels.size() == 1);
    // explicit degrees must still give a homogeneous presentation
    CHECK(mentions(err_of("ring R = Q[x,y] weights 2 1;\n"
                          "module N = coker [[y],[x]] degrees 3 3;"),
                   "inconsistent degree"));
}

TEST_CASE("free modules and empty relation rows") {
    auto s = parse_session(
        "ring R = Q[x];\n"
        "module F = free 0 -1 2;\n"
        "module Z = free;\n");
    CHECK(s.find_module("F")->gen_degrees == std::vector<int>{0, -1, 2});
    CHECK(s.find_module("F")->rels.empty());
    CHECK(s.find_module("Z")->gen_degrees.empty());
}

TEST_CASE("weighted prime with a non-linear generator") {
    auto s = parse_session(
        "ring R = Q[x,y,z]/(x^2) weights 1 2 1;\n"
        "prime p = (x, y-z^2);\n");
    const HomPrime* p = s.find_prime("p");
    REQUIRE(p != nullptr);
    REQUIRE(p->gens.size() == 2);
    CHECK(p->gens[0].str() == "x");
    CHECK(p->gens[1].str() == "y - z^2");
    // usable directly as a locus component
    ClosedSubset V = closed_subset(s.ring, *p);
    CHECK(V.primes.size() == 1);
}

TEST_CASE("fields: Q, k with char, and F<p>") {
    CHECK(parse_session("ring R = k[x];").ring->base->p == 0);
    CHECK(parse_session("ring R = k[x] char 7;").ring->base->p == 7);
    CHECK(parse_session("ring R = F5[x,y]/(x^2);").ring->base->p == 5);
    CHECK(parse_session("ring R = F2147483629[x];").ring->base->p == 2147483629u);

    CHECK(mentions(err_of("ring R = Q[x] char 5;"), "field Q conflicts with char 5"));
    CHECK(mentions(err_of("ring R = F5[x] char 7;"), "field 'F5' conflicts with char 7"));
    CHECK(mentions(err_of("ring R = k[x] char 6;"), "6 is not prime"));
    CHECK(mentions(err_of("ring R = F1[x];"), "at least 2"));
    CHECK(mentions(err_of("ring R = GF[x];"), "unknown field 'GF'"));
    CHECK(mentions(err_of("ring R = F2147483648[x];"), "not prime"));
    CHECK(mentions(err_of("ring R = F2147483659[x];"), "too large"));
    CHECK(mentions(err_of("ring R = k[x] char 2147483648;"), "out of range"));
}

TEST_CASE("errors carry line and column") {
    std::string e1 = err_of("ring R = Q[x,y];\nmodule X = coker [[x+y^2]];");
    CHECK(mentions(e1, "line 2"));
    CHECK(mentions(e1, "not homogeneous"));

    std::string e2 = err_of("ring R = Q[x];\nmodule X = coker [[w]];");
    CHECK(mentions(e2, "line 2"));
    CHECK(mentions(e2, "unknown variable"));
    CHECK(mentions(e2, "in 'w'"));

    std::string e3 = err_of("ring R = Q[x]\nmodule X = coker [[x]];");
    CHECK(mentions(e3, "line 2"));
    CHECK(mentions(e3, "expected ';'"));
}

TEST_CASE("structural and semantic rejections") {
    CHECK(mentions(err_of(""), "session declares no ring"));
    CHECK(mentions(err_of("module X = coker [[x]];"), "declare a ring before modules"));
    CHECK(mentions(err_of("prime p = (x);"), "declare a ring before primes"));
    CHECK(mentions(err_of("ring R = Q[x]; ring S = Q[y];"), "only one ring"));
    CHECK(mentions(err_of("ring R = Q[x]; module R = free 0;"), "duplicate name 'R'"));
    CHECK(mentions(err_of("ring R = Q[x]; module X = free 0; prime X = (x);"),
                   "duplicate name 'X'"));
    CHECK(mentions(err_of("ring R = Q[x,y]; module X = coker [[x, y],[x]];"), "ragged"));
    CHECK(mentions(err_of("ring R = Q[x]; module X = coker [[x]] degrees 0 1;"),
                   "one degree per generator"));
    CHECK(mentions(err_of("ring R = Q[x,y] weights 1;"), "one weight per variable"));
    CHECK(mentions(err_of("ring R = Q[x,y]; frob F = 1;"), "unknown statement 'frob'"));
    CHECK(mentions(err_of("ring R = Q[x,y]; prime p = (x*y);"), "prime"));
    // no consistent generator degrees: e*x = e*y^2 cannot both be homogeneous
    CHECK(mentions(err_of("ring R = Q[x,y]; module X = coker [[x, y^2],[1, 1]];"),
                   "not homogeneous for any generator degrees"));
}

TEST_CASE("comments and whitespace are skipped") {
    auto s = parse_session(
        "# leading comment\n"
        "ring R = Q[x,y]/(x*y);   # trailing\n"
        "\n"
        "module X = coker [[x]];  # module comment\n"
        "prime p = (x, y);\n");
    CHECK(s.ring->defining[0].str() == "x*y");
    CHECK(s.find_module("X") != nullptr);
    CHECK(s.find_prime("p") != nullptr);
}
