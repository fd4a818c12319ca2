#pragma once

#include <climits>

#include "nflocus/ideal_ops.hpp"

namespace nflocus {

/// Finitely presented graded module over a quotient ring: the cokernel of a
/// graded map into a free module, recorded as generator degrees plus relation
/// columns (each column a vector in the generators' coordinates).
struct FPModule {
    std::shared_ptr<const QuotRing> ring;
    std::vector<int> gen_degrees;
    std::vector<Vec> rels;

    size_t rank() const { return gen_degrees.size(); }
};

/// Graded map between finitely presented modules; cols[j] is the image of the
/// j-th generator of src, written in tgt's generator coordinates.
struct ModMap {
    FPModule src;
    FPModule tgt;
    std::vector<Vec> cols;
};

/// Validated constructors. Both throw nflocus::error on inhomogeneous data;
/// make_map additionally checks that src's relations map into tgt's.
FPModule make_module(std::shared_ptr<const QuotRing> R, std::vector<int> degs,
                     std::vector<Vec> rels);
ModMap make_map(FPModule src, FPModule tgt, std::vector<Vec> cols);

FPModule free_module(std::shared_ptr<const QuotRing> R, std::vector<int> degs);
FPModule zero_module(std::shared_ptr<const QuotRing> R);
/// R/I placed in degree 0.
FPModule quotient_module(std::shared_ptr<const QuotRing> R, const std::vector<Poly>& gens);

/// Degree of a homogeneous vector under the given generator degrees; throws on
/// inhomogeneous input, returns INT_MIN for zero.
int vec_degree(const Vec& v, const std::vector<int>& degs);

/// All degrees raised by t (the module is unchanged up to regrading).
FPModule shifted(const FPModule& M, int t);
ModMap shifted(const ModMap& f, int t);

/// Canonical form: relation columns replaced by the reduced basis of the
/// relation submodule, entries normal-formed against the defining ideal.
FPModule canon(const FPModule& M);
bool module_equal(const FPModule& M, const FPModule& N);  // same canonical data
/// True if N = shifted(M, t) for some t (canonical forms compared); the shift
/// is written to *t_out when provided.
bool equal_up_to_shift(const FPModule& M, const FPModule& N, int* t_out = nullptr);

/// Remove unit entries (redundant generators) until the presentation matrix
/// lies in the maximal ideal, then canonicalize.
FPModule min_presentation(const FPModule& M);

/// min_presentation together with the mutually inverse maps it induces
/// (proj . incl = identity on the minimized module).
struct MinPresData {
    FPModule mod;
    ModMap proj;  // M -> mod
    ModMap incl;  // mod -> M
};
MinPresData min_presentation_maps(const FPModule& M);
bool is_zero_module(const FPModule& M);

Vec map_apply(const ModMap& f, const Vec& v);
ModMap identity_map(const FPModule& M);
ModMap zero_map(FPModule src, FPModule tgt);
ModMap compose(const ModMap& g, const ModMap& f);  // g after f
ModMap map_sub(const ModMap& f, const ModMap& g);
/// Equal as maps (columns agree modulo tgt's relations).
bool map_equal(const ModMap& f, const ModMap& g);
bool is_zero_map(const ModMap& f);

struct SumData {
    FPModule sum;
    std::vector<ModMap> into;   // injections
    std::vector<ModMap> onto;   // projections
};
SumData direct_sum(const std::vector<FPModule>& parts);

/// Minimal generators of the submodule of an ambient module spanned by gens:
/// ambient relations participate in all membership tests. Returns a subset of
/// gens filtered by ascending degree.
std::vector<Vec> minimal_generators(const QuotRing& Q, std::vector<Vec> gens,
                                    const std::vector<Vec>& ambient_rels,
                                    const std::vector<int>& ambient_degs);

/// Presentation of (<gens> + <image>)/<image> inside the ambient module:
/// the subquotient with the given generators, modulo the span of image columns
/// and ambient relations.
struct Subquotient {
    FPModule mod;
    std::vector<Vec> gens;  // minimal generators, in ambient coordinates
};
Subquotient subquotient(std::shared_ptr<const QuotRing> Q, std::vector<Vec> gens,
                        const std::vector<Vec>& image, const std::vector<Vec>& ambient_rels,
                        const std::vector<int>& ambient_degs);

struct KernelData {
    FPModule ker;
    ModMap incl;  // ker -> src of the original map
};
KernelData kernel(const ModMap& f);

struct CokernelData {
    FPModule coker;
    ModMap proj;  // tgt -> coker
};
CokernelData cokernel(const ModMap& f);

/// One minimal-cover syzygy step: F free on min_presentation(M)'s generator
/// degrees, omega the kernel of F -> M with its minimal generators.
struct OmegaData {
    FPModule minimized;  // min_presentation(M)
    FPModule free;       // minimal free cover
    FPModule omega;
    ModMap incl;  // omega -> free  (columns = omega generators in F coords)
    ModMap proj;  // free -> minimized
};
OmegaData omega_step(const FPModule& M);

/// Minimal graded free resolution data up to the requested homological degree:
/// free_degs[k] lists F_k's generator degrees, boundary[k-1] holds the columns
/// of F_k -> F_{k-1} (empty once the resolution has terminated).
struct Resolution {
    FPModule minimized;
    std::vector<std::vector<int>> free_degs;
    std::vector<std::vector<Vec>> boundary;
};
Resolution resolution(const FPModule& M, int depth);

/// Ext^i(M, N) as a finitely presented module, via Hom(F_i, N) of a minimal
/// free resolution of M.
FPModule ext_module(const FPModule& M, const FPModule& N, int i);

/// Annihilator of M, returned as an ideal of the base ring containing the
/// defining ideal.
Ideal annihilator(const FPModule& M);

/// r-th Fitting ideal of M (ideal of (rank - r)-minors of the presentation
/// matrix), as an ideal of the base ring containing the defining ideal.
Ideal fitting_ideal(const FPModule& M, int r);

/// All Fitting ideals Fitt_0 .. Fitt_g of M at once, where g is the rank of
/// the minimal presentation; one shared minor table serves every level.
std::vector<Ideal> fitting_ideals(const FPModule& M);

/// Least i with Ext^i(R/I, M) nonzero, scanned up to nvars + 1; INT_MAX when
/// none is found there or when the question is vacuous (M = 0 or I = (1)).
int grade_of(const Ideal& I, const FPModule& M);

struct PushoutData {
    FPModule mod;
    ModMap from_left;   // B -> pushout
    ModMap from_right;  // C -> pushout
};
/// Pushout of B <-f- A -g-> C, i.e. coker((f,-g): A -> B (+) C).
PushoutData pushout(const ModMap& f, const ModMap& g);

}  // namespace nflocus
