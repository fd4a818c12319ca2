#pragma once

#include "nflocus/groebner.hpp"

namespace nflocus {

/// Reduced, monic, deterministically ordered generating set.
Ideal ideal_canon(const Ideal& I);

Ideal ideal_sum(const Ideal& I, const Ideal& J);
Ideal ideal_product(const Ideal& I, const Ideal& J);
Ideal ideal_intersect(const Ideal& I, const Ideal& J);

/// (I : f) = { g : g*f in I }
Ideal ideal_colon(const Ideal& I, const Poly& f);
/// (I : J)
Ideal ideal_colon(const Ideal& I, const Ideal& J);
/// (I : f^inf), computed by iterating colon until stable.
Ideal ideal_saturate(const Ideal& I, const Poly& f);

bool ideal_equal(const Ideal& I, const Ideal& J);
/// J subseteq I
bool ideal_contains_ideal(const Ideal& I, const Ideal& J);
bool ideal_contains(const Ideal& I, const Poly& f);
bool ideal_is_trivial(const Ideal& I);  // the unit ideal
bool ideal_is_zero(const Ideal& I);

/// f in rad(I), by the extended-ring trick: 1 in I + (1 - t*f).
bool radical_membership(const Poly& f, const Ideal& I);

/// Krull dimension of ring/I (the full polynomial ring). -1 for the unit ideal.
int krull_dim(const Ideal& I);

/// Irreducible factors with multiplicity (product = f up to a constant; each
/// factor monic). Supports monomial content plus univariate / two-variable
/// weighted-homogeneous parts; throws nflocus::error beyond that.
std::vector<Poly> factor_poly(const Poly& f);
bool is_irreducible(const Poly& f);

/// Minimal primes over I, each in canonical (reduced ascending) form, sorted
/// by prime_order. Empty list for the unit ideal.
std::vector<Ideal> minimal_primes(const Ideal& I);

/// Deterministic total order used to sort lists of primes.
bool prime_order(const Ideal& a, const Ideal& b);

}  // namespace nflocus
