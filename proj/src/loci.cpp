#include "nflocus/loci.hpp"

#include <algorithm>

namespace nflocus {

namespace {

Ideal unit_ideal(const std::shared_ptr<const BaseRing>& R) {
    return Ideal{R, {R->constant(Coeff::one(R->p))}};
}

Ideal intersect_all(const std::shared_ptr<const BaseRing>& R, const std::vector<Ideal>& list) {
    if (list.empty()) return unit_ideal(R);
    Ideal acc = list[0];
    for (size_t i = 1; i < list.size(); i++) acc = ideal_intersect(acc, list[i]);
    return ideal_canon(acc);
}

// dedupe, drop non-minimal members, sort
std::vector<Ideal> minimalize(std::vector<Ideal> ps) {
    std::vector<Ideal> out;
    for (const Ideal& p : ps) {
        bool seen = false;
        for (const Ideal& q : out) seen = seen || ideal_equal(p, q);
        if (!seen) out.push_back(p);
    }
    std::vector<Ideal> kept;
    for (size_t i = 0; i < out.size(); i++) {
        bool minimal = true;
        for (size_t j = 0; j < out.size() && minimal; j++)
            if (j != i && ideal_contains_ideal(out[i], out[j])) minimal = false;
        if (minimal) kept.push_back(out[i]);
    }
    std::sort(kept.begin(), kept.end(), prime_order);
    return kept;
}

void check_same(const ClosedSubset& A, const ClosedSubset& B) {
    if (!same_ring(*A.ring, *B.ring)) throw error("closed subsets over different rings");
}

// annihilator of the image of I in the quotient ring, as a base-ring ideal:
// the intersection of (defining : u) over generators u.
Ideal ann_in_quotient(const std::shared_ptr<const QuotRing>& Q, const Ideal& I) {
    Ideal def{Q->base, Q->defining};
    Ideal acc = unit_ideal(Q->base);
    bool first = true;
    for (const Poly& u : I.gens) {
        if (u.is_zero()) continue;
        Ideal c = ideal_colon(def, u);
        acc = first ? c : ideal_intersect(acc, c);
        first = false;
    }
    return ideal_canon(acc);
}

}  // namespace

std::string ClosedSubset::str() const {
    if (primes.empty()) return "∅";
    std::string out;
    for (size_t i = 0; i < primes.size(); i++) {
        if (i) out += " ∪ ";
        out += "V(";
        // display generators largest-first
        for (size_t j = primes[i].gens.size(); j-- > 0;) {
            out += primes[i].gens[j].str();
            if (j) out += ", ";
        }
        out += ")";
    }
    return out;
}

ClosedSubset closed_subset(std::shared_ptr<const QuotRing> Q, const Ideal& I) {
    if (I.ring.get() != Q->base.get()) throw error("closed_subset: ideal over the wrong ring");
    Ideal J = ideal_sum(I, Ideal{Q->base, Q->defining});
    ClosedSubset Z;
    Z.ring = Q;
    Z.primes = minimal_primes(J);
    Z.radical_ideal = intersect_all(Q->base, Z.primes);
    return Z;
}

ClosedSubset empty_subset(std::shared_ptr<const QuotRing> Q) {
    return ClosedSubset{Q, unit_ideal(Q->base), {}};
}

ClosedSubset subset_union(const ClosedSubset& A, const ClosedSubset& B) {
    check_same(A, B);
    std::vector<Ideal> ps = A.primes;
    ps.insert(ps.end(), B.primes.begin(), B.primes.end());
    ClosedSubset Z;
    Z.ring = A.ring;
    Z.primes = minimalize(std::move(ps));
    Z.radical_ideal = intersect_all(A.ring->base, Z.primes);
    return Z;
}

bool contains_prime(const ClosedSubset& Z, const HomPrime& p) {
    for (const Ideal& q : Z.primes)
        if (ideal_contains_ideal(p, q)) return true;
    return false;
}

bool subset_contains(const ClosedSubset& A, const ClosedSubset& B) {
    check_same(A, B);
    for (const Ideal& p : B.primes)
        if (!contains_prime(A, p)) return false;
    return true;
}

bool subset_equal(const ClosedSubset& A, const ClosedSubset& B) {
    check_same(A, B);
    if (A.primes.size() != B.primes.size()) return false;
    for (size_t i = 0; i < A.primes.size(); i++)
        if (!ideal_equal(A.primes[i], B.primes[i])) return false;
    return true;
}

int dim_of(const ClosedSubset& Z) {
    int d = -1;
    for (const Ideal& p : Z.primes) d = std::max(d, krull_dim(p));
    return d;
}

int height_in(const ClosedSubset& Z, const HomPrime& p) {
    if (!contains_prime(Z, p)) throw error("height_in: prime does not lie in the subset");
    int dp = krull_dim(p);
    int h = 0;
    for (const Ideal& q : Z.primes)
        if (ideal_contains_ideal(p, q)) h = std::max(h, krull_dim(q) - dp);
    return h;
}

HomPrime make_prime(std::shared_ptr<const QuotRing> Q, std::vector<Poly> gens) {
    for (const Poly& g : gens) {
        if (g.ring() != Q->base.get()) throw error("make_prime: wrong ring");
        if (!g.is_homogeneous()) throw error("make_prime: inhomogeneous generator " + g.str());
    }
    Ideal I{Q->base, std::move(gens)};
    if (!ideal_contains_ideal(I, Ideal{Q->base, Q->defining}))
        throw error("make_prime: ideal does not contain the defining ideal");
    std::vector<Ideal> ps = minimal_primes(I);
    if (ps.size() != 1 || !ideal_equal(ps[0], I))
        throw error("make_prime: ideal is not prime");
    return ps[0];
}

ClosedSubset support(const FPModule& M) {
    return closed_subset(M.ring, annihilator(M));
}

ClosedSubset nonfree_locus(const FPModule& X) {
    OmegaData od = omega_step(X);
    FPModule E = ext_module(X, od.omega, 1);
    return support(E);
}

ClosedSubset nonfree_locus_fitting(const FPModule& X) {
    auto Q = X.ring;
    std::vector<Ideal> fits = fitting_ideals(X);
    Ideal acc{Q->base, Q->defining};
    for (size_t r = 0; r < fits.size(); r++) {
        Ideal term = r == 0 ? fits[r] : ideal_product(fits[r], ann_in_quotient(Q, fits[r - 1]));
        acc = ideal_sum(acc, term);
    }
    return closed_subset(Q, acc);
}

ClosedSubset sing_locus_hypersurface(std::shared_ptr<const QuotRing> Q) {
    if (Q->defining.size() != 1)
        throw error("sing_locus_hypersurface: defining ideal is not principal");
    const Poly& f = Q->defining[0];
    Ideal J{Q->base, {f}};
    for (size_t i = 0; i < Q->base->nvars(); i++) J.gens.push_back(f.derivative(i));
    return closed_subset(Q, J);
}

bool is_field_at(std::shared_ptr<const QuotRing> Q, const HomPrime& p) {
    Ideal ann = ann_in_quotient(Q, p);
    return !ideal_contains_ideal(p, ann);
}

}  // namespace nflocus
