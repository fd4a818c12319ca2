#pragma once

#include "nflocus/loci.hpp"

namespace nflocus {

/// Parsed input script: one ring declaration plus named modules and primes.
struct SessionInput {
    std::string ring_name;
    std::shared_ptr<const QuotRing> ring;
    std::vector<std::pair<std::string, FPModule>> modules;
    std::vector<std::pair<std::string, HomPrime>> primes;

    const FPModule* find_module(const std::string& name) const;
    const HomPrime* find_prime(const std::string& name) const;
};

/// One statement per `;`, `#` comments to end of line:
///   ring R = Q[x,y]/(x^2) char 0 weights 1 1;
///   module X = coker [[x]];                    rows = generators
///   module Y = coker [[x,y],[0,x]] degrees 0 1;
///   module F = free 0 1;
///   prime p = (x, y);
/// The field symbol is Q, k, or F<p>; `/(...)`, `char`, `weights`, and
/// `degrees` are optional (degrees are inferred from homogeneity when
/// omitted). All errors carry line and column.
SessionInput parse_session(const std::string& text);

}  // namespace nflocus
