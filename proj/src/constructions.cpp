#include "nflocus/constructions.hpp"

#include <algorithm>
#include <atomic>
#include <mutex>
#include <set>
#include <thread>

namespace nflocus {

namespace {

void mono_rec(const BaseRing& R, size_t i, int left, Monomial& cur, std::vector<Monomial>& out) {
    if (i == R.nvars()) {
        if (left == 0) out.push_back(cur);
        return;
    }
    int w = R.weights[i];
    for (int e = left / w; e >= 0; e--) {
        cur[i] = e;
        mono_rec(R, i + 1, left - e * w, cur, out);
    }
    cur[i] = 0;
}

std::string ideal_str(const Ideal& I) {
    std::string s = "(";
    for (size_t i = 0; i < I.gens.size(); i++) {
        if (i) s += ", ";
        s += I.gens[i].str();
    }
    return s + ")";
}

int poly_degree(const Poly& f) { return vec_degree(Vec{f}, {0}); }

}  // namespace

std::vector<Monomial> monomials_of_degree(const BaseRing& R, int d) {
    std::vector<Monomial> out;
    if (d < 0) return out;
    Monomial cur(R.nvars(), 0);
    mono_rec(R, 0, d, cur, out);
    std::sort(out.begin(), out.end(),
              [&](const Monomial& a, const Monomial& b) { return R.mono_cmp(a, b) > 0; });
    return out;
}

Poly avoid(const QuotRing& Q, const Ideal& p, const std::vector<Ideal>& avoid_set) {
    const BaseRing* B = Q.base.get();
    std::vector<std::vector<Poly>> gbs;
    for (const auto& q : avoid_set) {
        auto gb = ideal_canon(q).gens;
        bool inside = true;
        for (const auto& g : p.gens)
            if (!ideal_member(g, gb)) {
                inside = false;
                break;
            }
        if (inside) throw error("avoid: " + ideal_str(q) + " contains the target prime");
        gbs.push_back(std::move(gb));
    }

    int dmin = INT_MAX, dmax = 0;
    for (const auto& g : p.gens) {
        int d = poly_degree(g);
        if (d == INT_MIN) continue;
        dmin = std::min(dmin, d);
        dmax = std::max(dmax, d);
    }
    if (dmin == INT_MAX) throw error("avoid: target ideal is zero");

    std::vector<Coeff> palette;
    if (B->p == 0)
        for (long v : {1, -1, 2, -2}) palette.push_back(Coeff::integer(0, v));
    else
        for (uint32_t v = 1; v <= std::min<uint32_t>(B->p - 1, 6); v++)
            palette.push_back(Coeff::modp(B->p, v));

    auto good = [&](const Poly& h) {
        if (rnf(Q, h).is_zero()) return false;
        for (const auto& gb : gbs)
            if (ideal_member(h, gb)) return false;
        return true;
    };

    for (int D = dmin; D <= dmax + 8; D++) {
        std::vector<Poly> basis;
        std::set<std::string> seen;
        for (const auto& g : p.gens) {
            int dg = poly_degree(g);
            if (dg == INT_MIN || dg > D) continue;
            for (const auto& m : monomials_of_degree(*B, D - dg)) {
                Poly cand = rnf(Q, Poly(B, {Term{m, Coeff::one(B->p)}}) * g);
                if (cand.is_zero() || !seen.insert(cand.str()).second) continue;
                basis.push_back(std::move(cand));
            }
        }
        for (const auto& b : basis)
            if (good(b)) return b;
        for (size_t i = 0; i < basis.size(); i++)
            for (size_t j = i + 1; j < basis.size(); j++)
                for (const auto& c : palette) {
                    Poly h = basis[i] + B->constant(c) * basis[j];
                    if (good(h)) return h;
                }
        for (size_t i = 0; i < basis.size(); i++)
            for (size_t j = i + 1; j < basis.size(); j++)
                for (size_t k = j + 1; k < basis.size(); k++)
                    for (const auto& c1 : palette)
                        for (const auto& c2 : palette) {
                            Poly h = basis[i] + B->constant(c1) * basis[j] +
                                     B->constant(c2) * basis[k];
                            if (good(h)) return h;
                        }
    }
    throw error("avoid: no element found in the degree window");
}

// Fitting route while its minor budget lasts, Ext route beyond it; the two
// agree everywhere, the crossover is purely a size/performance line.
static ClosedSubset locus_of(const FPModule& X) {
    try {
        return nonfree_locus_fitting(X);
    } catch (const error& e) {
        if (std::string(e.what()) != "fitting ideal: too many minors") throw;
        return nonfree_locus(X);
    }
}

StepResult pushout_step(const FPModule& X, const Poly& x, const Ideal* target) {
    auto Q = X.ring;
    const BaseRing* B = Q->base.get();
    if (rnf(*Q, x).is_zero()) throw error("pushout step along zero");
    int d = poly_degree(x);  // throws on inhomogeneous input
    if (d <= 0) throw error("pushout step needs an element of the maximal ideal");
    ClosedSubset nf = locus_of(X);
    if (nf.is_empty()) throw error("pushout step on a free module");

    auto od = omega_step(X);
    auto mp = min_presentation_maps(X);

    FPModule om_sh = shifted(od.omega, -d);
    std::vector<Vec> xcols;
    for (size_t j = 0; j < od.omega.rank(); j++) {
        Vec col = vec_zero(B, od.omega.rank());
        col[j] = x;
        xcols.push_back(std::move(col));
    }
    ModMap multx = make_map(od.omega, om_sh, xcols);
    auto P = pushout(od.incl, multx);

    // bottom row 0 -> W(-d) -> X1 -> X -> 0, collapsing the free block
    std::vector<Vec> qcols = od.proj.cols;
    for (size_t j = 0; j < om_sh.rank(); j++) qcols.push_back(vec_zero(B, od.minimized.rank()));
    ModMap q = make_map(P.mod, od.minimized, qcols);

    // W(-d) sits in res^1 X through the shifted minimal cover
    FPModule free_sh = shifted(od.free, -d);
    auto mid = base_node(free_sh, X, {}, free_sh.gen_degrees, identity_map(free_sh),
                         identity_map(free_sh));
    FPModule min_sh = shifted(od.minimized, -d);
    auto quot_sh = base_node(min_sh, X, {-d}, {}, shifted(mp.incl, -d), shifted(mp.proj, -d));
    auto ker = ker_node(ShortExact{shifted(od.incl, -d), shifted(od.proj, -d)}, mid, quot_sh);

    auto quot = base_node(od.minimized, X, {0}, {}, mp.incl, mp.proj);
    ResCert cert{X, ext_node(ShortExact{P.from_right, q}, ker, quot)};

    auto vr = verify_cert(cert, X, P.mod);
    if (!vr.ok || vr.depth > 2)
        throw error("pushout step: certificate failed to verify: " + vr.diag);
    ClosedSubset nf1 = locus_of(P.mod);
    if (!subset_contains(nf, nf1)) throw error("pushout step: nonfree locus grew");
    for (const auto& c : nf1.primes)
        if (!ideal_contains(c, x))
            throw error("pushout step: component " + ideal_str(c) + " escapes the chosen element");
    if (target && !contains_prime(nf1, *target))
        throw error("pushout step: target prime fell out of the locus");

    return StepResult{P.mod, std::move(cert), std::move(nf1)};
}

static DescentTrace realize_irreducible(const FPModule& X, const ClosedSubset& W,
                                        const ClosedSubset& nf) {
    auto Q = X.ring;
    const Ideal& p = W.primes[0];
    DescentTrace tr;
    FPModule cur = X;
    ResCert cert = cert_base_self(X);
    ClosedSubset cnf = nf;
    int guard = 0;
    while (!subset_equal(cnf, W)) {
        if (++guard > 64) throw error("realize: descent failed to converge");
        const Ideal* q = nullptr;
        for (const auto& c : cnf.primes)
            if (!ideal_contains_ideal(p, c)) {
                q = &c;
                break;
            }
        if (!q)
            for (const auto& c : cnf.primes)
                if (!ideal_contains_ideal(c, p)) {
                    q = &c;
                    break;
                }
        if (!q) throw error("realize: no removable component");
        Poly x = avoid(*Q, p, {*q});
        auto st = pushout_step(cur, x, &p);
        cert = compose_certs(cert, st.cert);
        tr.steps.push_back(DescentStep{std::move(x), st.module, st.locus});
        cur = std::move(st.module);
        cnf = std::move(st.locus);
    }
    tr.result = std::move(cur);
    tr.locus = std::move(cnf);
    tr.bound = cert_depth(cert);
    tr.cert = std::move(cert);
    return tr;
}

DescentTrace realize(const FPModule& X, const ClosedSubset& W, int jobs) {
    auto Q = X.ring;
    ClosedSubset nf = locus_of(X);
    if (!subset_contains(nf, W)) throw error("realize: target exceeds the nonfree locus");

    DescentTrace tr;
    if (W.is_empty()) {
        tr.result = free_module(Q, {0});
        tr.locus = empty_subset(Q);
        tr.cert = cert_base_free(X, tr.result);
        return tr;
    }
    if (subset_equal(nf, W)) {
        tr.result = X;
        tr.locus = nf;
        tr.cert = cert_base_self(X);
        return tr;
    }
    if (W.primes.size() == 1) return realize_irreducible(X, W, nf);

    // one chain per component; chains only read shared immutable values, so
    // they can run on a small thread pool without changing the result
    std::vector<DescentTrace> subs(W.primes.size());
    auto run = [&](size_t i) { subs[i] = realize_irreducible(X, closed_subset(Q, W.primes[i]), nf); };
    if (jobs > 1) {
        std::atomic<size_t> next{0};
        std::exception_ptr eptr;
        std::mutex em;
        std::vector<std::thread> pool;
        for (size_t t = std::min((size_t)jobs, W.primes.size()); t-- > 0;)
            pool.emplace_back([&] {
                for (size_t i = next++; i < W.primes.size(); i = next++) {
                    try {
                        run(i);
                    } catch (...) {
                        std::lock_guard<std::mutex> g(em);
                        if (!eptr) eptr = std::current_exception();
                        return;
                    }
                }
            });
        for (auto& th : pool) th.join();
        if (eptr) std::rethrow_exception(eptr);
    } else {
        for (size_t i = 0; i < W.primes.size(); i++) run(i);
    }

    std::vector<FPModule> parts;
    std::vector<CertPtr> roots;
    for (auto& sub : subs) {
        for (auto& s : sub.steps) tr.steps.push_back(std::move(s));
        parts.push_back(std::move(sub.result));
        roots.push_back(sub.cert.root);
    }
    auto S = direct_sum(parts);
    tr.result = S.sum;
    tr.cert = ResCert{X, sum_node(S.sum, identity_map(S.sum), identity_map(S.sum), roots)};
    tr.locus = locus_of(tr.result);
    if (!subset_equal(tr.locus, W)) throw error("realize: combined locus mismatch");
    tr.bound = cert_depth(tr.cert);
    return tr;
}

DescentTrace punctured_descent(const FPModule& X, const HomPrime& p) {
    auto Q = X.ring;
    ClosedSubset nf = locus_of(X);
    if (!contains_prime(nf, p)) throw error("descent: prime is outside the nonfree locus");

    DescentTrace tr;
    FPModule cur = X;
    ResCert cert = cert_base_self(X);
    ClosedSubset cnf = nf;
    int h = height_in(cnf, p);
    int guard = 0;
    while (h > 0) {
        if (++guard > 64) throw error("descent failed to converge");
        Poly x = avoid(*Q, p, cnf.primes);
        auto st = pushout_step(cur, x, &p);
        int h1 = height_in(st.locus, p);
        if (h1 >= h) throw error("descent: height did not drop");
        cert = compose_certs(cert, st.cert);
        tr.steps.push_back(DescentStep{std::move(x), st.module, st.locus});
        cur = std::move(st.module);
        cnf = std::move(st.locus);
        h = h1;
    }
    tr.result = std::move(cur);
    tr.locus = std::move(cnf);
    tr.bound = cert_depth(cert);
    tr.cert = std::move(cert);
    return tr;
}

ScratchResult realize_from_scratch(std::shared_ptr<const QuotRing> Q, const ClosedSubset& W) {
    ScratchResult out;
    if (W.is_empty()) {
        out.feasible = true;
        out.result = free_module(Q, {0});
        return out;
    }
    for (const auto& p : W.primes)
        if (is_field_at(Q, p)) {
            out.obstruction = p;
            return out;
        }
    std::vector<FPModule> parts;
    for (const auto& p : W.primes) {
        FPModule Xp = quotient_module(Q, p.gens);
        auto tr = realize(Xp, closed_subset(Q, p));
        parts.push_back(tr.result);
        out.traces.push_back(std::move(tr));
    }
    out.result = parts.size() == 1 ? parts[0] : direct_sum(parts).sum;
    out.feasible = true;
    if (!subset_equal(locus_of(out.result), W))
        throw error("scratch realization: locus mismatch");
    return out;
}

}  // namespace nflocus
