#pragma once

#include <cstdint>

#include "nflocus/constructions.hpp"

namespace nflocus {

/// One labeled example module together with its ring.
struct CorpusItem {
    std::string label;
    std::shared_ptr<const QuotRing> ring;
    FPModule module;
};

/// The rings every cross-check runs over: k[x,y]/(x^2) in characteristic zero
/// and five, k[x,y,z]/(x^2), and the reducible k[x,y]/(xy).
std::vector<std::shared_ptr<const QuotRing>> standard_rings();

/// I_n = (x, y^n) over Q[x,y]/(x^2); 1 <= n <= 8.
CorpusItem corpus_In(int n);

/// Certificate placing I_n in res^1(xR), via 0 -> xR -> I_n -> xR(n-1) -> 0.
/// The cert's base module is xR.
ResCert corpus_In_cert(int n);

/// p(f) = (x, y - z f) over Q[x,y,z]/(x^2) with weight(y) = deg f + 1;
/// f is one of "1", "z", "z^2", "1+z" (the last homogenized to x + z).
CorpusItem corpus_pf(const std::string& f);

/// Certificate placing p(f) in res^1(xR) as the kernel in
/// 0 -> p(f)(1) -> xR(s) (+) R -> xR -> 0, s = deg f + 1.
ResCert corpus_pf_cert(const std::string& f);

/// Seeded random homogeneous presentations over the standard rings, round
/// robin: rank <= 4, at most 6 relation columns, entry degree <= 3.
/// Reproducible: the same seed and count give identical modules.
std::vector<CorpusItem> corpus_random(uint64_t seed, int count);

/// Families: "In" (param = n), "pf" (param = f), "random" (param = count,
/// seeded). Throws on unknown families or out-of-bounds params.
std::vector<CorpusItem> example_corpus(const std::string& family, const std::string& param,
                                       uint64_t seed = 1);

}  // namespace nflocus
