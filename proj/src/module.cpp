#include "nflocus/module.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <unordered_map>

namespace nflocus {

namespace {

Vec normalize_vec(const BaseRing* R, Vec v) {
    for (auto& f : v)
        if (f.ring() == nullptr) f = Poly(R);
    return v;
}

}  // namespace

int vec_degree(const Vec& v, const std::vector<int>& degs) {
    int d = INT_MIN;
    for (size_t i = 0; i < v.size(); i++) {
        if (v[i].is_zero()) continue;
        if (!v[i].is_homogeneous()) throw error("inhomogeneous entry: " + v[i].str());
        int di = v[i].wdeg() + degs[i];
        if (d != INT_MIN && d != di) throw error("entries of inconsistent degree");
        d = di;
    }
    return d;
}

FPModule make_module(std::shared_ptr<const QuotRing> R, std::vector<int> degs,
                     std::vector<Vec> rels) {
    if (!R) throw error("module without a ring");
    const BaseRing* B = R->base.get();
    for (auto& c : rels) {
        if (c.size() != degs.size()) throw error("relation column of wrong length");
        c = normalize_vec(B, std::move(c));
        vec_degree(c, degs);  // throws on inhomogeneous columns
    }
    return FPModule{std::move(R), std::move(degs), std::move(rels)};
}

FPModule free_module(std::shared_ptr<const QuotRing> R, std::vector<int> degs) {
    return make_module(std::move(R), std::move(degs), {});
}

FPModule zero_module(std::shared_ptr<const QuotRing> R) {
    return make_module(std::move(R), {}, {});
}

FPModule quotient_module(std::shared_ptr<const QuotRing> R, const std::vector<Poly>& gens) {
    std::vector<Vec> rels;
    for (const auto& g : gens)
        if (!g.is_zero()) rels.push_back({g});
    return make_module(R, {0}, std::move(rels));
}

ModMap make_map(FPModule src, FPModule tgt, std::vector<Vec> cols) {
    if (!same_ring(*src.ring, *tgt.ring)) throw error("map between different rings");
    if (cols.size() != src.rank()) throw error("wrong number of map columns");
    const QuotRing& Q = *src.ring;
    const BaseRing* B = Q.base.get();
    for (size_t j = 0; j < cols.size(); j++) {
        if (cols[j].size() != tgt.rank()) throw error("map column of wrong length");
        cols[j] = normalize_vec(B, std::move(cols[j]));
        int d = vec_degree(cols[j], tgt.gen_degrees);
        if (d != INT_MIN && d != src.gen_degrees[j])
            throw error("map is not degree-preserving");
    }
    auto basis = rgb(Q, tgt.rels, tgt.rank());
    ModMap f{std::move(src), std::move(tgt), std::move(cols)};
    for (const auto& r : f.src.rels) {
        if (!rmember(Q, map_apply(f, r), basis))
            throw error("map does not send relations into relations");
    }
    return f;
}

Vec map_apply(const ModMap& f, const Vec& v) {
    Vec out = vec_zero(f.src.ring->base.get(), f.tgt.rank());
    for (size_t j = 0; j < f.cols.size(); j++) {
        if (v[j].is_zero()) continue;
        out = vec_add(out, vec_scale(f.cols[j], v[j]));
    }
    return out;
}

FPModule shifted(const FPModule& M, int t) {
    FPModule out = M;
    for (auto& d : out.gen_degrees) d += t;
    return out;
}

ModMap shifted(const ModMap& f, int t) {
    return ModMap{shifted(f.src, t), shifted(f.tgt, t), f.cols};
}

FPModule canon(const FPModule& M) {
    FPModule out = M;
    out.rels = rcanon(*M.ring, M.rels, M.rank());
    return out;
}

bool module_equal(const FPModule& M, const FPModule& N) {
    if (!same_ring(*M.ring, *N.ring)) return false;
    if (M.gen_degrees != N.gen_degrees) return false;
    auto a = rcanon(*M.ring, M.rels, M.rank());
    auto b = rcanon(*N.ring, N.rels, N.rank());
    if (a.size() != b.size()) return false;
    for (size_t i = 0; i < a.size(); i++)
        if (!vec_eq(a[i], b[i])) return false;
    return true;
}

bool equal_up_to_shift(const FPModule& M, const FPModule& N, int* t_out) {
    if (!same_ring(*M.ring, *N.ring)) return false;
    if (M.rank() != N.rank()) return false;
    int t = 0;
    if (M.rank() > 0) {
        t = N.gen_degrees[0] - M.gen_degrees[0];
        for (size_t i = 0; i < M.rank(); i++)
            if (N.gen_degrees[i] - M.gen_degrees[i] != t) return false;
    }
    if (!module_equal(shifted(M, t), N)) return false;
    if (t_out) *t_out = t;
    return true;
}

MinPresData min_presentation_maps(const FPModule& M) {
    FPModule cur = canon(M);
    // running change of coordinates: proj_cols[j] = image of M's j-th
    // generator in cur's coordinates, incl_cols = the reverse inclusion
    std::vector<Vec> proj_cols = identity_map(cur).cols;
    std::vector<Vec> incl_cols = proj_cols;
    while (true) {
        size_t ci = SIZE_MAX, gi = SIZE_MAX;
        for (size_t c = 0; c < cur.rels.size() && ci == SIZE_MAX; c++)
            for (size_t i = 0; i < cur.rank(); i++)
                if (cur.rels[c][i].is_unit()) {
                    ci = c;
                    gi = i;
                    break;
                }
        if (ci == SIZE_MAX) break;
        Vec piv = cur.rels[ci];
        Coeff u = piv[gi].terms()[0].c;
        auto eliminate = [&](Vec v) {
            if (!v[gi].is_zero()) v = vec_sub(v, vec_scale(piv, v[gi].scale(u.inv())));
            v.erase(v.begin() + gi);
            return v;
        };
        std::vector<Vec> next;
        for (size_t c = 0; c < cur.rels.size(); c++) {
            if (c == ci) continue;
            Vec r = eliminate(cur.rels[c]);
            if (!vec_is_zero(r)) next.push_back(std::move(r));
        }
        cur.rels = std::move(next);
        cur.gen_degrees.erase(cur.gen_degrees.begin() + gi);
        cur = canon(cur);
        for (Vec& v : proj_cols) v = eliminate(std::move(v));
        incl_cols.erase(incl_cols.begin() + gi);
    }
    MinPresData out;
    out.mod = cur;
    out.proj = make_map(M, cur, proj_cols);
    out.incl = make_map(cur, M, incl_cols);
    return out;
}

FPModule min_presentation(const FPModule& M) { return min_presentation_maps(M).mod; }

bool is_zero_module(const FPModule& M) {
    if (M.rank() == 0) return true;
    const QuotRing& Q = *M.ring;
    auto basis = rgb(Q, M.rels, M.rank());
    for (size_t i = 0; i < M.rank(); i++) {
        Vec e = vec_zero(Q.base.get(), M.rank());
        e[i] = Q.base->constant(Coeff::one(Q.base->p));
        if (!rmember(Q, e, basis)) return false;
    }
    return true;
}

ModMap identity_map(const FPModule& M) {
    std::vector<Vec> cols;
    for (size_t j = 0; j < M.rank(); j++) {
        Vec e = vec_zero(M.ring->base.get(), M.rank());
        e[j] = M.ring->base->constant(Coeff::one(M.ring->base->p));
        cols.push_back(std::move(e));
    }
    return make_map(M, M, std::move(cols));
}

ModMap zero_map(FPModule src, FPModule tgt) {
    std::vector<Vec> cols(src.rank(), vec_zero(src.ring->base.get(), tgt.rank()));
    return make_map(std::move(src), std::move(tgt), std::move(cols));
}

ModMap compose(const ModMap& g, const ModMap& f) {
    if (!module_equal(g.src, f.tgt)) throw error("composition mismatch");
    std::vector<Vec> cols;
    for (const auto& c : f.cols) cols.push_back(map_apply(g, c));
    return make_map(f.src, g.tgt, std::move(cols));
}

ModMap map_sub(const ModMap& f, const ModMap& g) {
    std::vector<Vec> cols;
    for (size_t j = 0; j < f.cols.size(); j++) cols.push_back(vec_sub(f.cols[j], g.cols[j]));
    return make_map(f.src, f.tgt, std::move(cols));
}

bool is_zero_map(const ModMap& f) {
    const QuotRing& Q = *f.src.ring;
    auto basis = rgb(Q, f.tgt.rels, f.tgt.rank());
    for (const auto& c : f.cols)
        if (!rmember(Q, c, basis)) return false;
    return true;
}

bool map_equal(const ModMap& f, const ModMap& g) {
    if (!module_equal(f.src, g.src) || !module_equal(f.tgt, g.tgt)) return false;
    return is_zero_map(map_sub(f, g));
}

SumData direct_sum(const std::vector<FPModule>& parts) {
    if (parts.empty()) throw error("empty direct sum");
    auto Q = parts[0].ring;
    const BaseRing* B = Q->base.get();
    std::vector<int> degs;
    std::vector<size_t> offset;
    for (const auto& P : parts) {
        if (!same_ring(*P.ring, *Q)) throw error("direct sum over different rings");
        offset.push_back(degs.size());
        degs.insert(degs.end(), P.gen_degrees.begin(), P.gen_degrees.end());
    }
    size_t total = degs.size();
    std::vector<Vec> rels;
    for (size_t k = 0; k < parts.size(); k++) {
        for (const auto& r : parts[k].rels) {
            Vec v = vec_zero(B, total);
            for (size_t i = 0; i < r.size(); i++) v[offset[k] + i] = r[i];
            rels.push_back(std::move(v));
        }
    }
    SumData out;
    out.sum = make_module(Q, degs, rels);
    for (size_t k = 0; k < parts.size(); k++) {
        std::vector<Vec> icols, pcols;
        for (size_t j = 0; j < parts[k].rank(); j++) {
            Vec e = vec_zero(B, total);
            e[offset[k] + j] = B->constant(Coeff::one(B->p));
            icols.push_back(std::move(e));
        }
        for (size_t j = 0; j < total; j++) {
            Vec e = vec_zero(B, parts[k].rank());
            if (j >= offset[k] && j < offset[k] + parts[k].rank())
                e[j - offset[k]] = B->constant(Coeff::one(B->p));
            pcols.push_back(std::move(e));
        }
        out.into.push_back(make_map(parts[k], out.sum, std::move(icols)));
        out.onto.push_back(make_map(out.sum, parts[k], std::move(pcols)));
    }
    return out;
}

std::vector<Vec> minimal_generators(const QuotRing& Q, std::vector<Vec> gens,
                                    const std::vector<Vec>& ambient_rels,
                                    const std::vector<int>& ambient_degs) {
    const BaseRing* B = Q.base.get();
    size_t rank = ambient_degs.size();
    std::vector<Vec> clean;
    for (auto& g : gens) {
        Vec v = rvec_nf(Q, normalize_vec(B, std::move(g)));
        if (!vec_is_zero(v)) clean.push_back(std::move(v));
    }
    // m * (everything): degree arguments make dropped generators stay redundant
    std::vector<Vec> mgens;
    for (const auto& g : clean)
        for (size_t k = 0; k < B->nvars(); k++) mgens.push_back(vec_scale(g, B->var_poly(k)));
    for (const auto& r : ambient_rels) mgens.push_back(r);

    std::vector<size_t> order(clean.size());
    for (size_t i = 0; i < order.size(); i++) order[i] = i;
    std::stable_sort(order.begin(), order.end(), [&](size_t a, size_t b) {
        return vec_degree(clean[a], ambient_degs) < vec_degree(clean[b], ambient_degs);
    });

    std::vector<Vec> kept;
    for (size_t idx : order) {
        std::vector<Vec> span = kept;
        span.insert(span.end(), mgens.begin(), mgens.end());
        auto basis = rgb(Q, span, rank);
        if (!rmember(Q, clean[idx], basis)) kept.push_back(clean[idx]);
    }
    return kept;
}

Subquotient subquotient(std::shared_ptr<const QuotRing> Q, std::vector<Vec> gens,
                        const std::vector<Vec>& image, const std::vector<Vec>& ambient_rels,
                        const std::vector<int>& ambient_degs) {
    size_t rank = ambient_degs.size();
    std::vector<Vec> span_extra = image;
    span_extra.insert(span_extra.end(), ambient_rels.begin(), ambient_rels.end());

    // minimal generators modulo the image and ambient relations
    std::vector<Vec> W = minimal_generators(*Q, std::move(gens), span_extra, ambient_degs);

    Subquotient out;
    out.gens = W;
    std::vector<int> degs;
    for (const auto& w : W) degs.push_back(vec_degree(w, ambient_degs));
    if (W.empty()) {
        out.mod = make_module(Q, {}, {});
        return out;
    }
    std::vector<Vec> cols = W;
    cols.insert(cols.end(), span_extra.begin(), span_extra.end());
    auto syz = rsyzygies(*Q, cols, rank);
    std::vector<Vec> rels;
    for (const auto& s : syz) {
        Vec t(s.begin(), s.begin() + W.size());
        t = rvec_nf(*Q, t);
        if (!vec_is_zero(t)) rels.push_back(std::move(t));
    }
    rels = rcanon(*Q, rels, W.size());
    out.mod = make_module(Q, degs, rels);
    return out;
}

KernelData kernel(const ModMap& f) {
    auto Q = f.src.ring;
    const BaseRing* B = Q->base.get();
    std::vector<Vec> gens;
    if (f.tgt.rank() == 0) {
        for (size_t j = 0; j < f.src.rank(); j++) {
            Vec e = vec_zero(B, f.src.rank());
            e[j] = B->constant(Coeff::one(B->p));
            gens.push_back(std::move(e));
        }
    } else {
        std::vector<Vec> cols = f.cols;
        cols.insert(cols.end(), f.tgt.rels.begin(), f.tgt.rels.end());
        auto syz = rsyzygies(*Q, cols, f.tgt.rank());
        for (const auto& s : syz) {
            Vec t(s.begin(), s.begin() + f.src.rank());
            if (!vec_is_zero(t)) gens.push_back(std::move(t));
        }
    }
    auto sq = subquotient(Q, gens, {}, f.src.rels, f.src.gen_degrees);
    KernelData out{sq.mod, make_map(sq.mod, f.src, sq.gens)};
    return out;
}

CokernelData cokernel(const ModMap& f) {
    std::vector<Vec> rels = f.tgt.rels;
    rels.insert(rels.end(), f.cols.begin(), f.cols.end());
    FPModule C = make_module(f.tgt.ring, f.tgt.gen_degrees, rels);
    CokernelData out{C, {}};
    out.proj = make_map(f.tgt, C, identity_map(f.tgt).cols);
    return out;
}

OmegaData omega_step(const FPModule& M) {
    OmegaData out;
    out.minimized = min_presentation(M);
    auto Q = M.ring;
    out.free = free_module(Q, out.minimized.gen_degrees);
    auto sq = subquotient(Q, out.minimized.rels, {}, {}, out.minimized.gen_degrees);
    out.omega = sq.mod;
    out.incl = make_map(out.omega, out.free, sq.gens);
    out.proj = make_map(out.free, out.minimized, identity_map(out.free).cols);
    return out;
}

Resolution resolution(const FPModule& M, int depth) {
    Resolution res;
    res.minimized = min_presentation(M);
    res.free_degs.push_back(res.minimized.gen_degrees);
    FPModule cur = res.minimized;
    for (int k = 1; k <= depth; k++) {
        if (cur.rank() == 0 || cur.rels.empty()) {
            res.free_degs.push_back({});
            res.boundary.push_back({});
            cur = zero_module(M.ring);
            continue;
        }
        auto sq = subquotient(M.ring, cur.rels, {}, {}, cur.gen_degrees);
        res.boundary.push_back(sq.gens);
        res.free_degs.push_back(sq.mod.gen_degrees);
        cur = sq.mod;
    }
    return res;
}

namespace {

std::vector<int> hom_degs(const std::vector<int>& fdegs, const FPModule& N) {
    std::vector<int> out;
    for (int fd : fdegs)
        for (int nd : N.gen_degrees) out.push_back(nd - fd);
    return out;
}

std::vector<Vec> hom_rels(const std::vector<int>& fdegs, const FPModule& N) {
    const BaseRing* B = N.ring->base.get();
    size_t total = fdegs.size() * N.rank();
    std::vector<Vec> out;
    for (size_t j = 0; j < fdegs.size(); j++) {
        for (const auto& r : N.rels) {
            Vec v = vec_zero(B, total);
            for (size_t l = 0; l < N.rank(); l++) v[j * N.rank() + l] = r[l];
            out.push_back(std::move(v));
        }
    }
    return out;
}

// columns of Hom(d, N): Hom(F_{k-1}, N) -> Hom(F_k, N) for d: F_k -> F_{k-1}
std::vector<Vec> dual_cols(const std::vector<Vec>& bnd, size_t r_from, size_t r_to,
                           const FPModule& N) {
    const BaseRing* B = N.ring->base.get();
    std::vector<Vec> out;
    for (size_t j = 0; j < r_from; j++) {
        for (size_t l = 0; l < N.rank(); l++) {
            Vec v = vec_zero(B, r_to * N.rank());
            for (size_t m = 0; m < r_to; m++) v[m * N.rank() + l] = bnd[m][j];
            out.push_back(std::move(v));
        }
    }
    return out;
}

}  // namespace

FPModule ext_module(const FPModule& M, const FPModule& N, int i) {
    if (i < 0) throw error("negative Ext index");
    if (!same_ring(*M.ring, *N.ring)) throw error("Ext over different rings");
    auto Q = M.ring;
    const BaseRing* B = Q->base.get();
    if (N.rank() == 0) return zero_module(Q);
    Resolution res = resolution(M, i + 1);
    size_t ri = res.free_degs[i].size();
    if (ri == 0) return zero_module(Q);
    size_t rip = res.free_degs[i + 1].size();

    std::vector<int> Hdegs = hom_degs(res.free_degs[i], N);
    std::vector<Vec> Hrels = hom_rels(res.free_degs[i], N);

    // kernel of the dual of the (i+1)-st boundary
    std::vector<Vec> kergens;
    if (rip == 0) {
        for (size_t j = 0; j < Hdegs.size(); j++) {
            Vec e = vec_zero(B, Hdegs.size());
            e[j] = B->constant(Coeff::one(B->p));
            kergens.push_back(std::move(e));
        }
    } else {
        std::vector<Vec> dcols = dual_cols(res.boundary[i], ri, rip, N);
        std::vector<Vec> cols = dcols;
        auto Hrels_next = hom_rels(res.free_degs[i + 1], N);
        cols.insert(cols.end(), Hrels_next.begin(), Hrels_next.end());
        auto syz = rsyzygies(*Q, cols, rip * N.rank());
        for (const auto& s : syz) {
            Vec t(s.begin(), s.begin() + dcols.size());
            if (!vec_is_zero(t)) kergens.push_back(std::move(t));
        }
    }

    // image of the dual of the i-th boundary
    std::vector<Vec> image;
    if (i >= 1) {
        size_t rim = res.free_degs[i - 1].size();
        if (rim > 0) image = dual_cols(res.boundary[i - 1], rim, ri, N);
    }

    return min_presentation(subquotient(Q, kergens, image, Hrels, Hdegs).mod);
}

Ideal annihilator(const FPModule& M) {
    const BaseRing* B = M.ring->base.get();
    auto base = M.ring->base;
    Poly one = B->constant(Coeff::one(B->p));
    if (M.rank() == 0) return ideal_canon(Ideal{base, {one}});
    FPModule Mc = canon(min_presentation(M));
    if (Mc.rank() == 0) return ideal_canon(Ideal{base, {one}});
    size_t r = Mc.rank();
    // intersect the colons (rels : e_j) one generator at a time
    Ideal out;
    for (size_t j = 0; j < r; j++) {
        std::vector<Vec> cols;
        Vec ej = vec_zero(B, r);
        ej[j] = one;
        cols.push_back(std::move(ej));
        cols.insert(cols.end(), Mc.rels.begin(), Mc.rels.end());
        auto syz = rsyzygies(*M.ring, cols, r);
        Ideal colj{base, M.ring->defining};
        for (const auto& s : syz)
            if (!s[0].is_zero()) colj.gens.push_back(s[0]);
        colj = ideal_canon(colj);
        out = j == 0 ? std::move(colj) : ideal_intersect(out, colj);
    }
    return ideal_canon(out);
}

namespace {

// Laplace expansion along the first picked row, memoized on the index sets
// and reduced mod the defining ideal so shared sub-minors stay small. The
// budget counts distinct minors actually evaluated; structured sparse
// matrices stay far below it, dense blowups abort instead of thrashing.
struct MinorHash {
    size_t operator()(const std::pair<uint64_t, uint64_t>& k) const {
        uint64_t h = k.first * 0x9e3779b97f4a7c15ULL;
        h ^= k.second + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
        return (size_t)h;
    }
};

struct MinorTable {
    const std::vector<Vec>& cols;
    const QuotRing& Q;
    bool memoize;  // index sets fit in the mask words
    size_t computed = 0;
    std::unordered_map<std::pair<uint64_t, uint64_t>, Poly, MinorHash> memo;

    static constexpr size_t kBudget = 500'000;

    static uint64_t mask_of(const std::vector<size_t>& ix) {
        uint64_t m = 0;
        for (size_t i : ix) m |= uint64_t(1) << i;
        return m;
    }

    Poly det(const std::vector<size_t>& rows, const std::vector<size_t>& pick) {
        size_t k = rows.size();
        if (k == 1) return rnf(Q, cols[pick[0]][rows[0]]);
        std::pair<uint64_t, uint64_t> key;
        if (memoize) {
            key = {mask_of(rows), mask_of(pick)};
            auto it = memo.find(key);
            if (it != memo.end()) return it->second;
        }
        if (++computed > kBudget) throw error("fitting ideal: too many minors");
        Poly acc(Q.base.get());
        std::vector<size_t> subrows(rows.begin() + 1, rows.end());
        for (size_t t = 0; t < k; t++) {
            const Poly& a = cols[pick[t]][rows[0]];
            if (a.is_zero()) continue;
            std::vector<size_t> subpick;
            for (size_t s = 0; s < k; s++)
                if (s != t) subpick.push_back(pick[s]);
            Poly sub = det(subrows, subpick);
            if (t % 2 == 0)
                acc = acc + a * sub;
            else
                acc = acc - a * sub;
        }
        acc = rnf(Q, acc);
        if (memoize) memo.emplace(key, acc);
        return acc;
    }
};

void choose(size_t n, size_t k, const std::function<void(const std::vector<size_t>&)>& fn) {
    std::vector<size_t> pick(k);
    std::function<void(size_t, size_t)> rec = [&](size_t at, size_t from) {
        if (at == k) {
            fn(pick);
            return;
        }
        for (size_t i = from; i + (k - at) <= n; i++) {
            pick[at] = i;
            rec(at + 1, i + 1);
        }
    };
    rec(0, 0);
}

// all k-minors of the table's matrix appended to out.gens, skipping index
// pairs whose submatrix has a zero row or column (their minors vanish)
void collect_minors(MinorTable& tab, long g, long c, long k, Ideal& out) {
    bool bits = g <= 64 && c <= 64;
    std::vector<uint64_t> rowbits(g, 0), colbits(c, 0);
    if (bits)
        for (long j = 0; j < c; j++)
            for (long i = 0; i < g; i++)
                if (!tab.cols[j][i].is_zero()) {
                    rowbits[i] |= uint64_t(1) << j;
                    colbits[j] |= uint64_t(1) << i;
                }
    choose(g, k, [&](const std::vector<size_t>& rows) {
        if (bits) {
            uint64_t rmask = MinorTable::mask_of(rows);
            std::vector<size_t> cands;
            uint64_t candmask = 0;
            for (long j = 0; j < c; j++)
                if (colbits[j] & rmask) {
                    cands.push_back(j);
                    candmask |= colbits[j];
                }
            if ((long)cands.size() < k) return;
            for (size_t r : rows)
                if (!(candmask & (uint64_t(1) << r))) return;
            choose(cands.size(), k, [&](const std::vector<size_t>& ci) {
                std::vector<size_t> colpick(k);
                for (long t = 0; t < k; t++) colpick[t] = cands[ci[t]];
                Poly d = tab.det(rows, colpick);
                if (!d.is_zero()) out.gens.push_back(d);
            });
        } else {
            choose(c, k, [&](const std::vector<size_t>& colpick) {
                Poly d = tab.det(rows, colpick);
                if (!d.is_zero()) out.gens.push_back(d);
            });
        }
    });
}

}  // namespace

Ideal fitting_ideal(const FPModule& M, int r) {
    auto base = M.ring->base;
    const BaseRing* B = base.get();
    Poly one = B->constant(Coeff::one(B->p));
    FPModule Mc = canon(M);
    long g = (long)Mc.rank(), c = (long)Mc.rels.size();
    long k = g - r;
    if (k <= 0) return ideal_canon(Ideal{base, {one}});
    if (k > c || k > g) return ideal_canon(Ideal{base, M.ring->defining});
    MinorTable tab{Mc.rels, *M.ring, g <= 64 && c <= 64, 0, {}};
    Ideal out{base, M.ring->defining};
    collect_minors(tab, g, c, k, out);
    return ideal_canon(out);
}

std::vector<Ideal> fitting_ideals(const FPModule& M) {
    auto base = M.ring->base;
    const BaseRing* B = base.get();
    Poly one = B->constant(Coeff::one(B->p));
    FPModule Mc = canon(min_presentation(M));
    long g = (long)Mc.rank(), c = (long)Mc.rels.size();
    std::vector<Ideal> out((size_t)g + 1);
    out[g] = ideal_canon(Ideal{base, {one}});
    MinorTable tab{Mc.rels, *M.ring, g <= 64 && c <= 64, 0, {}};
    // ascending minor size so every level reuses the one below it
    for (long k = 1; k <= g; k++) {
        Ideal fk{base, M.ring->defining};
        if (k <= c) collect_minors(tab, g, c, k, fk);
        out[g - k] = ideal_canon(fk);
    }
    return out;
}

int grade_of(const Ideal& I, const FPModule& M) {
    if (is_zero_module(M)) return INT_MAX;
    FPModule RI = quotient_module(M.ring, I.gens);
    if (is_zero_module(RI)) return INT_MAX;
    int bound = (int)M.ring->base->nvars() + 1;
    for (int i = 0; i <= bound; i++)
        if (!is_zero_module(ext_module(RI, M, i))) return i;
    return INT_MAX;
}

PushoutData pushout(const ModMap& f, const ModMap& g) {
    if (!module_equal(f.src, g.src)) throw error("pushout legs must share a source");
    auto sum = direct_sum({f.tgt, g.tgt});
    const BaseRing* B = f.src.ring->base.get();
    std::vector<Vec> rels = sum.sum.rels;
    size_t rb = f.tgt.rank();
    for (size_t j = 0; j < f.src.rank(); j++) {
        Vec v = vec_zero(B, sum.sum.rank());
        for (size_t i = 0; i < rb; i++) v[i] = f.cols[j][i];
        for (size_t i = 0; i < g.tgt.rank(); i++) v[rb + i] = -g.cols[j][i];
        rels.push_back(std::move(v));
    }
    FPModule P = make_module(f.src.ring, sum.sum.gen_degrees, rels);
    PushoutData out{P, {}, {}};
    out.from_left = make_map(f.tgt, P, sum.into[0].cols);
    out.from_right = make_map(g.tgt, P, sum.into[1].cols);
    return out;
}

}  // namespace nflocus
