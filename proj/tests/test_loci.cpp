#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "nflocus/loci.hpp"

using namespace nflocus;

namespace {

std::shared_ptr<const QuotRing> poly_xy() {
    auto B = BaseRing::make({"x", "y"}, 0);
    return QuotRing::make(B, {});
}

std::shared_ptr<const QuotRing> dual_numbers() {
    auto B = BaseRing::make({"x", "y"}, 0);
    return QuotRing::make(B, {B->parse("x^2")});
}

Ideal ideal_of(std::shared_ptr<const QuotRing> Q, std::initializer_list<const char*> gens) {
    Ideal I{Q->base, {}};
    for (const char* g : gens) I.gens.push_back(Q->base->parse(g));
    return I;
}

// the submodule of the free module R generated by the given elements
FPModule submodule(std::shared_ptr<const QuotRing> Q, std::initializer_list<const char*> gens) {
    std::vector<Vec> cols;
    for (const char* g : gens) cols.push_back({Q->base->parse(g)});
    return subquotient(Q, cols, {}, {}, {0}).mod;
}

}  // namespace

TEST_CASE("closed subsets over the plane: canonical form and set algebra") {
    auto Q = poly_xy();

    ClosedSubset Vxy = closed_subset(Q, ideal_of(Q, {"x*y"}));
    REQUIRE(Vxy.primes.size() == 2);
    CHECK(Vxy.primes[0].gens[0].str() == "x");
    CHECK(Vxy.primes[1].gens[0].str() == "y");
    CHECK(Vxy.str() == "V(x) ∪ V(y)");

    ClosedSubset Vx = closed_subset(Q, ideal_of(Q, {"x"}));
    ClosedSubset Vy = closed_subset(Q, ideal_of(Q, {"y"}));
    ClosedSubset Vm = closed_subset(Q, ideal_of(Q, {"x", "y"}));

    CHECK(subset_equal(subset_union(Vx, Vy), Vxy));
    // the origin is swallowed by the axis
    CHECK(subset_equal(subset_union(Vx, Vm), Vx));
    CHECK(subset_contains(Vx, Vm));
    CHECK(!subset_contains(Vm, Vx));
    CHECK(subset_contains(Vxy, Vx));
    CHECK(contains_prime(Vxy, ideal_of(Q, {"x", "y"})));
    CHECK(!contains_prime(Vx, ideal_of(Q, {"y"})));

    ClosedSubset none = closed_subset(Q, ideal_of(Q, {"1"}));
    CHECK(none.is_empty());
    CHECK(none.str() == "∅");
    CHECK(dim_of(none) == -1);
    CHECK(subset_contains(Vx, none));

    CHECK(dim_of(Vxy) == 1);
    CHECK(dim_of(Vm) == 0);
}

TEST_CASE("heights relative to a closed subset") {
    auto Q = dual_numbers();
    ClosedSubset whole = closed_subset(Q, Ideal{Q->base, {}});
    REQUIRE(whole.primes.size() == 1);  // Spec R is irreducible: V(x)
    CHECK(whole.primes[0].gens[0].str() == "x");
    CHECK(dim_of(whole) == 1);

    CHECK(height_in(whole, ideal_of(Q, {"x"})) == 0);
    CHECK(height_in(whole, ideal_of(Q, {"x", "y"})) == 1);
    ClosedSubset Vm = closed_subset(Q, ideal_of(Q, {"x", "y"}));
    CHECK(height_in(Vm, ideal_of(Q, {"x", "y"})) == 0);
    CHECK_THROWS(height_in(Vm, ideal_of(Q, {"x"})));
}

TEST_CASE("support") {
    auto Q = poly_xy();
    CHECK(support(zero_module(Q)).is_empty());
    FPModule k = make_module(Q, {0}, {{Q->base->parse("x")}, {Q->base->parse("y")}});
    CHECK(subset_equal(support(k), closed_subset(Q, ideal_of(Q, {"x", "y"}))));
    CHECK(support(free_module(Q, {0, 2})).primes.size() == 1);  // all of Spec
}

TEST_CASE("nonfree locus of free modules is empty, both routes") {
    auto Q = dual_numbers();
    FPModule F = free_module(Q, {0, 1});
    CHECK(nonfree_locus(F).is_empty());
    CHECK(nonfree_locus_fitting(F).is_empty());
    CHECK(nonfree_locus(zero_module(Q)).is_empty());
    CHECK(nonfree_locus_fitting(zero_module(Q)).is_empty());
}

TEST_CASE("nonfree locus of xR over the dual numbers is V(x)") {
    auto Q = dual_numbers();
    // xR = R/(x) up to shift
    FPModule M = make_module(Q, {0}, {{Q->base->parse("x")}});
    ClosedSubset expected = closed_subset(Q, ideal_of(Q, {"x"}));

    ClosedSubset byext = nonfree_locus(M);
    ClosedSubset byfit = nonfree_locus_fitting(M);
    CHECK(subset_equal(byext, expected));
    CHECK(subset_equal(byfit, expected));
    CHECK(byext.str() == "V(x)");

    // the same module built as a submodule of R
    FPModule xR = submodule(Q, {"x"});
    CHECK(subset_equal(nonfree_locus(xR), expected));
    CHECK(subset_equal(nonfree_locus_fitting(xR), expected));
}

TEST_CASE("nonfree locus of (x, y^n) over the dual numbers is the origin") {
    auto Q = dual_numbers();
    ClosedSubset origin = closed_subset(Q, ideal_of(Q, {"x", "y"}));
    for (int n = 1; n <= 3; n++) {
        std::string yn = "y^" + std::to_string(n);
        FPModule In = submodule(Q, {"x", yn.c_str()});
        // free away from the origin: y^n is a unit at (x)
        CHECK(subset_equal(nonfree_locus(In), origin));
        CHECK(subset_equal(nonfree_locus_fitting(In), origin));
    }
}

TEST_CASE("nonfree locus over the coordinate cross") {
    auto B = BaseRing::make({"x", "y"}, 0);
    auto Q = QuotRing::make(B, {B->parse("x*y")});
    // R/(x) is free of rank one at (x) (y becomes a unit, killing x),
    // zero at (y), and nonfree only at the origin.
    FPModule M = make_module(Q, {0}, {{B->parse("x")}});
    ClosedSubset origin = closed_subset(Q, ideal_of(Q, {"x", "y"}));
    CHECK(subset_equal(nonfree_locus(M), origin));
    CHECK(subset_equal(nonfree_locus_fitting(M), origin));
}

TEST_CASE("nonfree locus of a direct sum is the union") {
    auto Q = dual_numbers();
    FPModule xR = make_module(Q, {0}, {{Q->base->parse("x")}});
    FPModule I2 = submodule(Q, {"x", "y^2"});

    FPModule A = direct_sum({xR, free_module(Q, {0})}).sum;
    CHECK(subset_equal(nonfree_locus(A), nonfree_locus(xR)));

    FPModule Bm = direct_sum({xR, I2}).sum;
    ClosedSubset expect = subset_union(nonfree_locus(xR), nonfree_locus(I2));
    CHECK(subset_equal(nonfree_locus(Bm), expect));
    CHECK(subset_equal(nonfree_locus_fitting(Bm), expect));
    CHECK(expect.str() == "V(x)");
}

TEST_CASE("singular loci of hypersurfaces") {
    auto B = BaseRing::make({"x", "y"}, 0);
    auto dual = QuotRing::make(B, {B->parse("x^2")});
    auto cross = QuotRing::make(B, {B->parse("x*y")});
    auto line = QuotRing::make(B, {B->parse("x")});

    CHECK(sing_locus_hypersurface(dual).str() == "V(x)");
    CHECK(sing_locus_hypersurface(cross).str() == "V(x, y)");
    CHECK(sing_locus_hypersurface(line).is_empty());
    CHECK_THROWS(sing_locus_hypersurface(poly_xy()));

    // NF is pinched inside the singular locus
    FPModule xR = make_module(dual, {0}, {{B->parse("x")}});
    CHECK(subset_contains(sing_locus_hypersurface(dual), nonfree_locus(xR)));
}

TEST_CASE("is_field_at") {
    auto Q = dual_numbers();
    CHECK(!is_field_at(Q, ideal_of(Q, {"x"})));  // nilpotent x survives

    auto B = BaseRing::make({"x", "y"}, 0);
    auto line = QuotRing::make(B, {B->parse("x")});
    CHECK(is_field_at(line, ideal_of(line, {"x"})));  // (x) = 0 there

    auto P = poly_xy();
    CHECK(!is_field_at(P, ideal_of(P, {"x", "y"})));
    CHECK(!is_field_at(P, ideal_of(P, {"x"})));  // a DVR, not a field
}

TEST_CASE("prime validation") {
    auto Q = dual_numbers();
    HomPrime p = make_prime(Q, {Q->base->parse("x")});
    CHECK(p.gens.size() == 1);
    // misses the defining ideal
    CHECK_THROWS(make_prime(Q, {Q->base->parse("y")}));
    auto P = poly_xy();
    CHECK_THROWS(make_prime(P, {P->base->parse("x*y")}));      // not prime
    CHECK_THROWS(make_prime(P, {P->base->parse("x + y^2")}));  // not homogeneous
    HomPrime m = make_prime(P, {P->base->parse("y"), P->base->parse("x")});
    CHECK(m.gens.size() == 2);
}

TEST_CASE("nonfree loci in finite characteristic") {
    auto B = BaseRing::make({"x", "y"}, 5);
    auto Q = QuotRing::make(B, {B->parse("x^2")});
    FPModule M = make_module(Q, {0}, {{B->parse("x")}});
    ClosedSubset expected = closed_subset(Q, ideal_of(Q, {"x"}));
    CHECK(subset_equal(nonfree_locus(M), expected));
    CHECK(subset_equal(nonfree_locus_fitting(M), expected));
}
