#include "nflocus/groebner.hpp"

#include <algorithm>
#include <cassert>
#include <map>

namespace nflocus {

Vec vec_zero(const BaseRing* r, size_t rank) { return Vec(rank, Poly(r)); }

Vec vec_add(const Vec& a, const Vec& b) {
    Vec r(a.size());
    for (size_t i = 0; i < a.size(); i++) r[i] = a[i] + b[i];
    return r;
}

Vec vec_sub(const Vec& a, const Vec& b) {
    Vec r(a.size());
    for (size_t i = 0; i < a.size(); i++) r[i] = a[i] - b[i];
    return r;
}

Vec vec_neg(const Vec& a) {
    Vec r(a.size());
    for (size_t i = 0; i < a.size(); i++) r[i] = -a[i];
    return r;
}

Vec vec_mul_term(const Vec& a, const Monomial& m, const Coeff& c) {
    Vec r(a.size());
    for (size_t i = 0; i < a.size(); i++) r[i] = a[i].mul_term(m, c);
    return r;
}

Vec vec_scale(const Vec& a, const Poly& f) {
    Vec r(a.size());
    for (size_t i = 0; i < a.size(); i++) r[i] = a[i] * f;
    return r;
}

bool vec_is_zero(const Vec& a) {
    for (auto& f : a)
        if (!f.is_zero()) return false;
    return true;
}

bool vec_eq(const Vec& a, const Vec& b) {
    if (a.size() != b.size()) return false;
    for (size_t i = 0; i < a.size(); i++)
        if (!(a[i] == b[i])) return false;
    return true;
}

int ModOrder::cmp(const Monomial& m, int i, const Monomial& n, int j) const {
    bool bi = i >= split, bj = j >= split;
    if (bi != bj) return bi ? -1 : 1;
    int c = ring->mono_cmp(m, n);
    if (c) return c;
    if (i != j) return i < j ? 1 : -1;
    return 0;
}

LeadRef vec_lead(const Vec& v, const ModOrder& ord) {
    LeadRef best;
    for (size_t i = 0; i < v.size(); i++) {
        if (v[i].is_zero()) continue;
        const Term& t = v[i].lead();
        if (best.pos < 0 || ord.cmp(t.m, (int)i, best.m, best.pos) > 0) {
            best.m = t.m;
            best.c = t.c;
            best.pos = (int)i;
        }
    }
    return best;
}

// reduce every term of v against the basis leads
Vec vec_normal_form(Vec v, const std::vector<Vec>& basis, const ModOrder& ord) {
    if (basis.empty()) return v;
    std::vector<LeadRef> leads(basis.size());
    for (size_t k = 0; k < basis.size(); k++) leads[k] = vec_lead(basis[k], ord);

    Vec out = vec_zero(ord.ring, v.size());
    while (true) {
        LeadRef lt = vec_lead(v, ord);
        if (lt.pos < 0) break;
        bool reduced = false;
        for (size_t k = 0; k < basis.size(); k++) {
            if (leads[k].pos != lt.pos) continue;
            if (!mono_divides(leads[k].m, lt.m)) continue;
            Monomial q = mono_div(lt.m, leads[k].m);
            Coeff c = lt.c / leads[k].c;
            v = vec_sub(v, vec_mul_term(basis[k], q, c));
            reduced = true;
            break;
        }
        if (!reduced) {
            // move lead term to output, keep reducing the tail
            Poly t(ord.ring, {{lt.m, lt.c}});
            out[lt.pos] = out[lt.pos] + t;
            v[lt.pos] = v[lt.pos] - t;
        }
    }
    return out;
}

namespace {

struct Pair {
    size_t i, j;
    Monomial lcm;
    int pos;
    int deg;
};

bool pair_less(const BaseRing* ring, const Pair& a, const Pair& b) {
    if (a.deg != b.deg) return a.deg < b.deg;
    int c = ring->mono_cmp(a.lcm, b.lcm);
    if (c) return c < 0;
    if (a.pos != b.pos) return a.pos < b.pos;
    if (a.i != b.i) return a.i < b.i;
    return a.j < b.j;
}

}  // namespace

std::vector<Vec> groebner(std::vector<Vec> gens, size_t rank, const ModOrder& ord) {
    std::vector<Vec> g;
    std::vector<LeadRef> leads;
    auto push = [&](Vec v) {
        LeadRef l = vec_lead(v, ord);
        if (l.pos < 0) return false;
        v = vec_mul_term(v, Monomial(ord.ring->nvars(), 0), l.c.inv());
        leads.push_back(vec_lead(v, ord));
        g.push_back(std::move(v));
        return true;
    };

    std::vector<Pair> queue;
    auto add_pairs = [&](size_t k) {
        for (size_t i = 0; i < k; i++) {
            if (leads[i].pos != leads[k].pos) continue;
            Pair p;
            p.i = i;
            p.j = k;
            p.lcm = mono_lcm(leads[i].m, leads[k].m);
            p.pos = leads[k].pos;
            p.deg = ord.ring->wdeg(p.lcm);
            queue.push_back(std::move(p));
        }
    };

    // interreduce the input first: big redundant generating sets (minor
    // lists, stacked sums) mostly collapse before any pairs are formed
    std::sort(gens.begin(), gens.end(), [&](const Vec& a, const Vec& b) {
        LeadRef la = vec_lead(a, ord), lb = vec_lead(b, ord);
        if (la.pos < 0 || lb.pos < 0) return lb.pos >= 0;
        return ord.cmp(la.m, la.pos, lb.m, lb.pos) < 0;
    });
    for (auto& v : gens)
        if (push(vec_normal_form(std::move(v), g, ord))) add_pairs(g.size() - 1);

    while (!queue.empty()) {
        size_t best = 0;
        for (size_t k = 1; k < queue.size(); k++)
            if (pair_less(ord.ring, queue[k], queue[best])) best = k;
        Pair p = queue[best];
        queue.erase(queue.begin() + (long)best);

        // product criterion: safe for ideals (rank 1), skipped for proper modules
        if (rank == 1 && mono_mul(leads[p.i].m, leads[p.j].m) == p.lcm) continue;

        // chain criterion: another lead divides the lcm and both sub-pairs
        // sit strictly lower in the lcm lattice, so this S-vector is redundant
        bool chained = false;
        for (size_t k = 0; k < g.size() && !chained; k++) {
            if (k == p.i || k == p.j || leads[k].pos != p.pos) continue;
            if (!mono_divides(leads[k].m, p.lcm)) continue;
            if (mono_lcm(leads[k].m, leads[p.i].m) == p.lcm) continue;
            if (mono_lcm(leads[k].m, leads[p.j].m) == p.lcm) continue;
            chained = true;
        }
        if (chained) continue;

        Vec s = vec_sub(vec_mul_term(g[p.i], mono_div(p.lcm, leads[p.i].m), Coeff::one(ord.ring->p)),
                        vec_mul_term(g[p.j], mono_div(p.lcm, leads[p.j].m), Coeff::one(ord.ring->p)));
        s = vec_normal_form(std::move(s), g, ord);
        if (push(std::move(s))) add_pairs(g.size() - 1);
    }

    // minimalize: drop elements whose lead is divisible by another kept lead
    // (equal leads keep the earliest), then tail-reduce each survivor
    std::vector<size_t> keep;
    for (size_t k = 0; k < g.size(); k++) {
        bool drop = false;
        for (size_t l = 0; l < g.size() && !drop; l++) {
            if (l == k || leads[l].pos != leads[k].pos) continue;
            if (!mono_divides(leads[l].m, leads[k].m)) continue;
            if (leads[k].m == leads[l].m)
                drop = l < k;
            else
                drop = true;
        }
        if (!drop) keep.push_back(k);
    }
    std::vector<Vec> red;
    for (size_t k : keep) {
        std::vector<Vec> others;
        others.reserve(keep.size() - 1);
        for (size_t l : keep)
            if (l != k) others.push_back(g[l]);
        Vec v = vec_normal_form(g[k], others, ord);
        LeadRef l = vec_lead(v, ord);
        v = vec_mul_term(v, Monomial(ord.ring->nvars(), 0), l.c.inv());
        red.push_back(std::move(v));
    }
    std::sort(red.begin(), red.end(), [&](const Vec& a, const Vec& b) {
        LeadRef la = vec_lead(a, ord), lb = vec_lead(b, ord);
        return ord.cmp(la.m, la.pos, lb.m, lb.pos) < 0;
    });
    return red;
}

std::vector<Vec> syzygies(const std::vector<Vec>& cols, size_t rank, const BaseRing* ring) {
    size_t s = cols.size();
    std::vector<Vec> ext;
    ext.reserve(s);
    for (size_t j = 0; j < s; j++) {
        Vec v = vec_zero(ring, rank + s);
        for (size_t i = 0; i < rank; i++) v[i] = cols[j][i];
        v[rank + j] = ring->constant(Coeff::one(ring->p));
        ext.push_back(std::move(v));
    }
    ModOrder ord{ring, (int)rank};
    auto gb = groebner(std::move(ext), rank + s, ord);
    std::vector<Vec> out;
    for (auto& v : gb) {
        bool primary = false;
        for (size_t i = 0; i < rank; i++)
            if (!v[i].is_zero()) primary = true;
        if (primary) continue;
        Vec w(v.begin() + (long)rank, v.end());
        out.push_back(std::move(w));
    }
    return out;
}

// ---------------------------------------------------------------- quotient ring layer

std::vector<Vec> quot_cols(const QuotRing& Q, size_t rank) {
    std::vector<Vec> qs;
    for (auto& q : Q.defining_gb) {
        for (size_t i = 0; i < rank; i++) {
            Vec v = vec_zero(Q.base.get(), rank);
            v[i] = q;
            qs.push_back(std::move(v));
        }
    }
    return qs;
}

std::vector<Vec> rgb(const QuotRing& Q, const std::vector<Vec>& gens, size_t rank) {
    std::vector<Vec> all = gens;
    for (auto& v : quot_cols(Q, rank)) all.push_back(std::move(v));
    ModOrder ord{Q.base.get()};
    return groebner(std::move(all), rank, ord);
}

bool rmember(const QuotRing& Q, const Vec& v, const std::vector<Vec>& gb_preimage) {
    ModOrder ord{Q.base.get()};
    return vec_is_zero(vec_normal_form(v, gb_preimage, ord));
}

std::vector<Vec> rcanon(const QuotRing& Q, const std::vector<Vec>& gens, size_t rank) {
    auto gb = rgb(Q, gens, rank);
    std::vector<Vec> out;
    for (auto& v : gb) {
        Vec w = rvec_nf(Q, v);
        if (!vec_is_zero(w)) out.push_back(std::move(w));
    }
    return out;
}

std::vector<Vec> rsyzygies(const QuotRing& Q, const std::vector<Vec>& cols, size_t rank) {
    size_t s = cols.size();
    std::vector<Vec> all = cols;
    for (auto& v : quot_cols(Q, rank)) all.push_back(std::move(v));
    auto syz = syzygies(all, rank, Q.base.get());
    std::vector<Vec> out;
    for (auto& v : syz) {
        Vec w(v.begin(), v.begin() + (long)s);
        w = rvec_nf(Q, w);
        if (!vec_is_zero(w)) out.push_back(std::move(w));
    }
    return out;
}

bool rsolve(const QuotRing& Q, const Vec& v, const std::vector<Vec>& basis, size_t rank,
            Vec* coords) {
    const BaseRing* R = Q.base.get();
    size_t k = basis.size();
    size_t full = rank + k;
    std::vector<Vec> cols;
    for (size_t i = 0; i < k; i++) {
        if (basis[i].size() != rank) throw error("rsolve: basis column of wrong rank");
        Vec w = basis[i];
        w.resize(full, Poly(R));
        w[rank + i] = R->constant(Coeff::integer(R->p, -1));
        cols.push_back(std::move(w));
    }
    for (auto& w : quot_cols(Q, full)) cols.push_back(std::move(w));
    ModOrder ord{R, (int)rank};
    auto gb = groebner(std::move(cols), full, ord);
    Vec ext = v;
    ext.resize(full, Poly(R));
    Vec nf = vec_normal_form(std::move(ext), gb, ord);
    for (size_t i = 0; i < rank; i++)
        if (!nf[i].is_zero()) return false;
    if (coords) {
        coords->assign(nf.begin() + (long)rank, nf.end());
        for (Poly& c : *coords) c = rnf(Q, c);
    }
    return true;
}

Poly rnf(const QuotRing& Q, const Poly& f) { return ideal_nf(f, Q.defining_gb); }

Vec rvec_nf(const QuotRing& Q, const Vec& v) {
    Vec r(v.size());
    for (size_t i = 0; i < v.size(); i++) r[i] = rnf(Q, v[i]);
    return r;
}

Poly QuotRing::nf(const Poly& f) const { return ideal_nf(f, defining_gb); }

std::shared_ptr<const QuotRing> QuotRing::make(std::shared_ptr<const BaseRing> base,
                                               std::vector<Poly> defining, std::string name) {
    auto q = std::make_shared<QuotRing>();
    for (auto& g : defining) {
        if (!g.is_homogeneous())
            throw error("defining ideal generator '" + g.str() + "' is not homogeneous");
    }
    q->base = base;
    q->defining = defining;
    std::vector<Vec> gens;
    for (auto& g : defining)
        if (!g.is_zero()) gens.push_back({g});
    ModOrder ord{base.get()};
    auto gb = groebner(std::move(gens), 1, ord);
    for (auto& v : gb) q->defining_gb.push_back(v[0]);
    q->name = std::move(name);
    return q;
}

// ---------------------------------------------------------------- ideal helpers

std::vector<Poly> ideal_gb(const Ideal& I) {
    std::vector<Vec> gens;
    for (auto& g : I.gens)
        if (!g.is_zero()) gens.push_back({g});
    ModOrder ord{I.ring.get()};
    auto gb = groebner(std::move(gens), 1, ord);
    std::vector<Poly> out;
    out.reserve(gb.size());
    for (auto& v : gb) out.push_back(v[0]);
    return out;
}

Poly ideal_nf(const Poly& f, const std::vector<Poly>& gb) {
    if (gb.empty() || f.is_zero()) return f;
    std::vector<Vec> basis;
    basis.reserve(gb.size());
    for (auto& g : gb) basis.push_back({g});
    ModOrder ord{f.ring()};
    return vec_normal_form({f}, basis, ord)[0];
}

bool ideal_member(const Poly& f, const std::vector<Poly>& gb) {
    return ideal_nf(f, gb).is_zero();
}

bool ideal_is_unit(const std::vector<Poly>& gb) {
    for (auto& g : gb)
        if (g.is_unit()) return true;
    return false;
}

}  // namespace nflocus
