#pragma once

#include <memory>

#include "json.hpp"
#include "nflocus/module.hpp"

namespace nflocus {

using json = nlohmann::ordered_json;

enum class CertKind { BASE, EXT, KER, SUM };

/// 0 -> A --i--> M --p--> B -> 0
struct ShortExact {
    ModMap i, p;
};

struct CertNode;
using CertPtr = std::shared_ptr<const CertNode>;

/// Node of a certificate tree. Each node certifies its module relative to a
/// distinguished module X (fixed by the enclosing ResCert):
///   BASE: the module is a direct summand of (+)_t X(t) over x_shifts,
///         plus a free part with generator degrees r_degs, exhibited by
///         section/retraction with retraction . section = id.
///   EXT:  0 -> children[0] -> module -> children[1] -> 0 exact.
///   KER:  0 -> module -> children[0] -> children[1] -> 0 exact.
///   SUM:  the module is a summand of the direct sum of the children.
struct CertNode {
    CertKind kind = CertKind::BASE;
    FPModule module;
    std::vector<int> x_shifts;  // BASE
    std::vector<int> r_degs;    // BASE: free-part generator degrees
    ModMap section;             // BASE/SUM: module -> target
    ModMap retraction;          // BASE/SUM: target -> module
    ShortExact seq;             // EXT/KER
    std::vector<CertPtr> children;
};

struct ResCert {
    FPModule base;  // the X of "module lies in res^depth of X"
    CertPtr root;
};

int cert_depth(const CertPtr& node);
int cert_depth(const ResCert& cert);

/// The BASE target rebuilt from X: direct sum of the listed shifts of X
/// followed by one free block (omitted when r_degs is empty).
FPModule base_target(const FPModule& X, const std::vector<int>& x_shifts,
                     const std::vector<int>& r_degs);

CertPtr base_node(FPModule Y, const FPModule& X, std::vector<int> x_shifts,
                  std::vector<int> r_degs, ModMap section, ModMap retraction);
CertPtr ext_node(ShortExact seq, CertPtr sub, CertPtr quot);
CertPtr ker_node(ShortExact seq, CertPtr mid, CertPtr quot);
CertPtr sum_node(FPModule Y, ModMap section, ModMap retraction, std::vector<CertPtr> parts);

ResCert cert_base_self(const FPModule& X);                      // X in res^0 X
ResCert cert_base_free(const FPModule& X, const FPModule& F);   // free F in res^0 X

CertPtr shift_node(const CertPtr& node, int t);

struct VerifyResult {
    bool ok = false;
    int depth = -1;
    std::string diag;  // path to the first failing check when !ok
};

/// Full check of the tree against X and Y: every map revalidated, every
/// sequence checked for exactness, every split composed to the identity,
/// BASE targets rebuilt from X, and the root compared with Y up to shift.
VerifyResult verify_cert(const ResCert& cert, const FPModule& X, const FPModule& Y);

/// Graft c1 (Y in res^m X) onto the BASE leaves of c2 (Z in res^n Y),
/// producing Z in res^{m+n} X. Throws when c2's base is not c1's root module.
ResCert compose_certs(const ResCert& c1, const ResCert& c2);

json ring_to_json(const QuotRing& Q);
std::shared_ptr<const QuotRing> ring_from_json(const json& j);
json module_to_json(const FPModule& M);
FPModule module_from_json(std::shared_ptr<const QuotRing> Q, const json& j);
json cert_to_json(const ResCert& cert);
/// Rebuilds a certificate; map and module validation errors surface as
/// nflocus::error (a verification failure, distinct from malformed JSON).
ResCert cert_from_json(const json& j);

}  // namespace nflocus
