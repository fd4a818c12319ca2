#ifndef NFLOCUS_GROEBNER_HPP
#define NFLOCUS_GROEBNER_HPP

#include <climits>

#include "nflocus/ring.hpp"

namespace nflocus {

/// Element of a free module P^rank, dense by position.
using Vec = std::vector<Poly>;

Vec vec_zero(const BaseRing* r, size_t rank);
Vec vec_add(const Vec& a, const Vec& b);
Vec vec_sub(const Vec& a, const Vec& b);
Vec vec_neg(const Vec& a);
Vec vec_mul_term(const Vec& a, const Monomial& m, const Coeff& c);
Vec vec_scale(const Vec& a, const Poly& f);
bool vec_is_zero(const Vec& a);
bool vec_eq(const Vec& a, const Vec& b);

/// Module term order: term-over-position weighted grevlex, with an optional
/// elimination split — positions >= split form a lower block, every term there
/// is smaller than any term in positions < split. Ties on the monomial are
/// broken by the lower position.
struct ModOrder {
    const BaseRing* ring;
    int split = INT_MAX;

    // compares module terms (m,i) vs (n,j); +1 if first is larger
    int cmp(const Monomial& m, int i, const Monomial& n, int j) const;
};

struct LeadRef {
    Monomial m;
    Coeff c;
    int pos = -1;  // -1: zero vector
};

LeadRef vec_lead(const Vec& v, const ModOrder& ord);

/// Full normal form of v against basis (every term reduced).
Vec vec_normal_form(Vec v, const std::vector<Vec>& basis, const ModOrder& ord);

/// Reduced monic Groebner basis of the submodule of P^rank spanned by gens.
/// Buchberger with normalized pair selection; deterministic for a fixed input
/// order.
std::vector<Vec> groebner(std::vector<Vec> gens, size_t rank, const ModOrder& ord);

/// Generators of the syzygy module of the given columns (elements of P^rank):
/// all v with sum v_i * cols_i = 0. Classical witness-block elimination.
std::vector<Vec> syzygies(const std::vector<Vec>& cols, size_t rank, const BaseRing* ring);

// ---- submodules of free modules over a quotient ring R = base/I ----
// Everything lifts to the base ring: a submodule N of R^rank is handled via
// its preimage, i.e. the given generators plus q*e_i for every defining
// generator q and every position i.

std::vector<Vec> quot_cols(const QuotRing& Q, size_t rank);

/// Reduced basis of the preimage of <gens> in base^rank (membership oracle).
std::vector<Vec> rgb(const QuotRing& Q, const std::vector<Vec>& gens, size_t rank);

bool rmember(const QuotRing& Q, const Vec& v, const std::vector<Vec>& gb_preimage);

/// Canonical presentation columns over R: the preimage basis with
/// defining-only elements dropped (their entries all reduce to zero).
std::vector<Vec> rcanon(const QuotRing& Q, const std::vector<Vec>& gens, size_t rank);

/// Generators of { v in R^s : sum v_i cols_i = 0 in R^rank }, s = cols count.
/// Entries come back reduced against the defining basis; zero columns dropped.
std::vector<Vec> rsyzygies(const QuotRing& Q, const std::vector<Vec>& cols, size_t rank);

/// Express v as a combination of the basis columns over the quotient ring.
/// Returns false if v is not in their span; otherwise writes one coordinate
/// per basis column to *coords when given.
bool rsolve(const QuotRing& Q, const Vec& v, const std::vector<Vec>& basis, size_t rank,
            Vec* coords = nullptr);

Poly rnf(const QuotRing& Q, const Poly& f);
Vec rvec_nf(const QuotRing& Q, const Vec& v);

/// Ideal helpers at the base-ring level.
std::vector<Poly> ideal_gb(const Ideal& I);  // reduced monic basis
bool ideal_member(const Poly& f, const std::vector<Poly>& gb);
Poly ideal_nf(const Poly& f, const std::vector<Poly>& gb);
bool ideal_is_unit(const std::vector<Poly>& gb);

}  // namespace nflocus

#endif
