#pragma once

#include "nflocus/certs.hpp"
#include "nflocus/loci.hpp"

namespace nflocus {

/// All monomials of the given weighted degree, descending in the ring order.
std::vector<Monomial> monomials_of_degree(const BaseRing& R, int d);

/// Deterministic graded prime avoidance: a homogeneous element of p lying
/// outside every ideal of avoid_set. Scans the graded pieces of p degree by
/// degree — generators first, then pair and triple combinations with small
/// coefficients. Throws when some member of avoid_set contains p.
Poly avoid(const QuotRing& Q, const Ideal& p, const std::vector<Ideal>& avoid_set);

struct StepResult {
    FPModule module;     // the pushout X1
    ResCert cert;        // X1 in res^2 of the input
    ClosedSubset locus;  // NF(X1)
};

/// One descent step: push the minimal free cover 0 -> W -> F -> X -> 0 out
/// along multiplication by x on W, giving X1 with NF(X1) = NF(X) ∩ V(x)
/// inside NF(X). The certificate, the locus shrink, and D(x)-avoidance are
/// re-verified before returning; when a target prime is supplied it is also
/// checked to survive into NF(X1).
StepResult pushout_step(const FPModule& X, const Poly& x, const Ideal* target = nullptr);

struct DescentStep {
    Poly x;
    FPModule module;
    ClosedSubset locus;
};

/// A chain of pushout steps with its composite certificate. The bound is the
/// certificate depth, at most twice the number of steps.
struct DescentTrace {
    std::vector<DescentStep> steps;
    FPModule result;
    ClosedSubset locus;
    ResCert cert;
    int bound = 0;
};

/// Shrink the nonfree locus down to exactly W (component by component for
/// reducible W; components may run on `jobs` threads, result independent of
/// the thread count). Requires W ⊆ NF(X).
DescentTrace realize(const FPModule& X, const ClosedSubset& W, int jobs = 1);

/// Descend until p has height zero in the nonfree locus, so the module is
/// free away from V(p) near p. Requires p ∈ NF(X); bound ≤ 2·height.
DescentTrace punctured_descent(const FPModule& X, const HomPrime& p);

struct ScratchResult {
    bool feasible = false;
    HomPrime obstruction;  // set when infeasible: the local ring there is a field
    FPModule result;
    std::vector<DescentTrace> traces;  // one per component of W
};

/// Build a module with nonfree locus exactly W out of the quotients R/p,
/// or report the component where no module can be nonfree.
ScratchResult realize_from_scratch(std::shared_ptr<const QuotRing> Q, const ClosedSubset& W);

}  // namespace nflocus
