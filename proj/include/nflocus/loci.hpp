#pragma once

#include "nflocus/ideal_ops.hpp"
#include "nflocus/module.hpp"

namespace nflocus {

/// A homogeneous prime of the quotient ring, stored as a base-ring ideal
/// containing the defining ideal.
using HomPrime = Ideal;

/// Zariski-closed subset of Spec of a quotient ring, in canonical form:
/// the minimal primes (sorted by prime_order) plus their intersection.
/// The empty set is the unit radical ideal with no primes.
struct ClosedSubset {
    std::shared_ptr<const QuotRing> ring;
    Ideal radical_ideal;
    std::vector<HomPrime> primes;

    bool is_empty() const { return primes.empty(); }
    std::string str() const;
};

/// V(I) inside Spec of Q (the defining ideal is added to I).
ClosedSubset closed_subset(std::shared_ptr<const QuotRing> Q, const Ideal& I);
ClosedSubset empty_subset(std::shared_ptr<const QuotRing> Q);

ClosedSubset subset_union(const ClosedSubset& A, const ClosedSubset& B);
/// B subseteq A
bool subset_contains(const ClosedSubset& A, const ClosedSubset& B);
bool subset_equal(const ClosedSubset& A, const ClosedSubset& B);
/// p in Z as a point, i.e. V(p) subseteq Z
bool contains_prime(const ClosedSubset& Z, const HomPrime& p);

/// max dim R/p over the primes of Z; -1 for the empty set.
int dim_of(const ClosedSubset& Z);
/// Height of p relative to Z: max over minimal primes q of Z contained in p
/// of dim R/q - dim R/p. Throws if p is not in Z.
int height_in(const ClosedSubset& Z, const HomPrime& p);

/// Validated prime constructor: homogeneous generators, contains the
/// defining ideal, and actually prime.
HomPrime make_prime(std::shared_ptr<const QuotRing> Q, std::vector<Poly> gens);

/// V(Ann M)
ClosedSubset support(const FPModule& M);

/// The primes where X fails to be free, as the support of Ext^1(X, syzygy X).
ClosedSubset nonfree_locus(const FPModule& X);

/// Same locus by the Fitting-ideal freeness criterion: X is free at p iff
/// for some r both Fitt_r(X) and Ann(Fitt_{r-1}(X)) miss p, so the locus is
/// V(sum_r Fitt_r * Ann(Fitt_{r-1})).
ClosedSubset nonfree_locus_fitting(const FPModule& X);

/// Jacobian locus V(f, df/dx_1, ..., df/dx_n) for a principal defining ideal.
ClosedSubset sing_locus_hypersurface(std::shared_ptr<const QuotRing> Q);

/// Whether the local ring at p is a field, i.e. p vanishes at itself:
/// Ann(p as a module) is not contained in p.
bool is_field_at(std::shared_ptr<const QuotRing> Q, const HomPrime& p);

}  // namespace nflocus
