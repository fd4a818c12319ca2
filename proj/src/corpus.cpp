#include "nflocus/corpus.hpp"

#include <random>

namespace nflocus {

namespace {

struct PfData {
    std::shared_ptr<const QuotRing> ring;
    Poly g;  // y - z f, the degree-s generator
    int s;   // weight of y = deg f + 1
};

PfData pf_data(const std::string& f) {
    int fdeg;
    std::string fh;
    if (f == "1") {
        fdeg = 0;
        fh = "1";
    } else if (f == "z") {
        fdeg = 1;
        fh = "z";
    } else if (f == "z^2") {
        fdeg = 2;
        fh = "z^2";
    } else if (f == "1+z") {
        // homogenized in the nilpotent variable so y - z f stays graded
        fdeg = 1;
        fh = "x+z";
    } else {
        throw error("pf family: f must be one of 1, z, z^2, 1+z (got '" + f + "')");
    }
    int s = fdeg + 1;
    auto B = BaseRing::make({"x", "y", "z"}, 0, {1, s, 1});
    auto Q = QuotRing::make(B, {B->parse("x^2")},
                            "Q[x,y,z]/(x^2) wt(y)=" + std::to_string(s));
    Poly g = B->parse("y") - B->parse("z") * B->parse(fh);
    return {Q, g, s};
}

FPModule x_cyclic(const std::shared_ptr<const QuotRing>& Q) {
    return make_module(Q, {1}, {{Q->base->parse("x")}});
}

}  // namespace

std::vector<std::shared_ptr<const QuotRing>> standard_rings() {
    std::vector<std::shared_ptr<const QuotRing>> out;
    {
        auto B = BaseRing::make({"x", "y"}, 0);
        out.push_back(QuotRing::make(B, {B->parse("x^2")}, "Q[x,y]/(x^2)"));
    }
    {
        auto B = BaseRing::make({"x", "y", "z"}, 0);
        out.push_back(QuotRing::make(B, {B->parse("x^2")}, "Q[x,y,z]/(x^2)"));
    }
    {
        auto B = BaseRing::make({"x", "y"}, 0);
        out.push_back(QuotRing::make(B, {B->parse("x*y")}, "Q[x,y]/(xy)"));
    }
    {
        auto B = BaseRing::make({"x", "y"}, 5);
        out.push_back(QuotRing::make(B, {B->parse("x^2")}, "F5[x,y]/(x^2)"));
    }
    return out;
}

CorpusItem corpus_In(int n) {
    if (n < 1 || n > 8) throw error("In family: n must be between 1 and 8");
    auto B = BaseRing::make({"x", "y"}, 0);
    auto Q = QuotRing::make(B, {B->parse("x^2")}, "Q[x,y]/(x^2)");
    std::string yn = n == 1 ? "y" : "y^" + std::to_string(n);
    FPModule In = make_module(
        Q, {1, n}, {{B->parse("x"), Poly(B.get())}, {B->parse(yn), B->parse("-x")}});
    return {"I" + std::to_string(n) + " = (x, " + yn + ")", Q, std::move(In)};
}

ResCert corpus_In_cert(int n) {
    CorpusItem it = corpus_In(n);
    auto B = it.ring->base;
    Poly zero(B.get());
    FPModule X = x_cyclic(it.ring);
    FPModule Qm = shifted(X, n - 1);
    ShortExact seq;
    seq.i = make_map(X, it.module, {{B->parse("1"), zero}});
    seq.p = make_map(it.module, Qm, {{zero}, {B->parse("1")}});
    auto sub = base_node(X, X, {0}, {}, identity_map(X), identity_map(X));
    auto quot = base_node(Qm, X, {n - 1}, {}, identity_map(Qm), identity_map(Qm));
    return ResCert{X, ext_node(std::move(seq), sub, quot)};
}

CorpusItem corpus_pf(const std::string& f) {
    PfData D = pf_data(f);
    auto B = D.ring->base;
    FPModule P = make_module(D.ring, {1, D.s},
                             {{B->parse("x"), Poly(B.get())}, {D.g, B->parse("-x")}});
    return {"p(" + f + ") = (x, " + D.g.str() + ")", D.ring, std::move(P)};
}

// p(f) is the first syzygy of M = xR/(y - zf) xR: pull the minimal cover
// R -> M back along xR -> M; the pullback K splits off the free part, and
// the kernel of K -> xR is p(f) embedded along (x, 0) and (y - zf, 0).
ResCert corpus_pf_cert(const std::string& f) {
    PfData D = pf_data(f);
    auto Q = D.ring;
    auto B = Q->base;
    const BaseRing* R = B.get();
    Poly x = B->parse("x");
    Poly one = R->constant(Coeff::one(R->p));
    Poly zero(R);

    FPModule X = x_cyclic(Q);
    FPModule M = make_module(Q, {1}, {{x}, {D.g}});
    FPModule F = free_module(Q, {1});

    auto sum = direct_sum({F, X});
    ModMap phi = make_map(sum.sum, M, {{one}, {-one}});
    KernelData Kd = kernel(phi);
    const FPModule& K = Kd.ker;
    ModMap p = compose(sum.onto[1], Kd.incl);

    // K = xR(s) (+) R along t1 = (0, y - zf) and t2 = (1, 1)
    Vec t1{zero, D.g}, t2{one, one};
    auto solve = [&](const Vec& v, std::vector<Vec> basis, size_t keep) {
        basis.insert(basis.end(), sum.sum.rels.begin(), sum.sum.rels.end());
        Vec coords;
        if (!rsolve(*Q, v, basis, 2, &coords))
            throw error("pf certificate: element escapes the span");
        coords.resize(keep, zero);
        return coords;
    };

    FPModule T = base_target(X, {D.s}, {1});
    std::vector<Vec> sec_cols;
    for (const Vec& w : Kd.incl.cols) sec_cols.push_back(solve(w, {t1, t2}, 2));
    std::vector<Vec> ret_cols{solve(t1, Kd.incl.cols, K.rank()),
                              solve(t2, Kd.incl.cols, K.rank())};
    CertPtr mid = base_node(K, X, {D.s}, {1}, make_map(K, T, sec_cols),
                            make_map(T, K, ret_cols));
    CertPtr quot = base_node(X, X, {0}, {}, identity_map(X), identity_map(X));

    FPModule Pf1 = shifted(corpus_pf(f).module, 1);
    std::vector<Vec> icols{solve(Vec{x, zero}, Kd.incl.cols, K.rank()),
                           solve(Vec{D.g, zero}, Kd.incl.cols, K.rank())};
    ShortExact seq{make_map(Pf1, K, icols), p};
    return ResCert{X, ker_node(std::move(seq), mid, quot)};
}

std::vector<CorpusItem> corpus_random(uint64_t seed, int count) {
    if (count < 0 || count > 1000)
        throw error("random family: count must be between 0 and 1000");
    auto rings = standard_rings();
    std::mt19937_64 rng(seed);
    // raw modulo keeps the stream identical across platforms, unlike the
    // standard distributions; the slight bias is irrelevant here
    auto pick = [&](int k) { return (int)(rng() % (uint64_t)k); };
    static const long palette[] = {1, -1, 2};

    std::vector<CorpusItem> out;
    for (int i = 0; i < count; i++) {
        auto Q = rings[(size_t)i % rings.size()];
        const BaseRing* B = Q->base.get();
        int g = 1 + pick(4);
        std::vector<int> degs((size_t)g);
        int dmin = 2, dmax = 0;
        for (int& d : degs) {
            d = pick(3);
            dmin = std::min(dmin, d);
            dmax = std::max(dmax, d);
        }
        int c = pick(7);
        std::vector<Vec> rels;
        for (int j = 0; j < c; j++) {
            int e = dmax + pick(dmin + 3 - dmax + 1);
            Vec col = vec_zero(B, (size_t)g);
            bool nonzero = false;
            for (int r = 0; r < g; r++) {
                if (pick(2)) continue;
                auto monos = monomials_of_degree(*B, e - degs[(size_t)r]);
                if (monos.empty()) continue;
                Poly entry(B);
                int terms = 1 + pick(2);
                for (int t = 0; t < terms; t++) {
                    long cv = B->p == 0 ? palette[pick(3)] : 1 + pick((int)B->p - 1);
                    entry = entry + Poly(B, {{monos[(size_t)pick((int)monos.size())],
                                              Coeff::integer(B->p, cv)}});
                }
                if (entry.is_zero()) continue;
                col[(size_t)r] = entry;
                nonzero = true;
            }
            if (nonzero) rels.push_back(std::move(col));
        }
        FPModule M = make_module(Q, degs, rels);
        out.push_back({"random #" + std::to_string(i) + " over " + Q->name, Q, std::move(M)});
    }
    return out;
}

std::vector<CorpusItem> example_corpus(const std::string& family, const std::string& param,
                                       uint64_t seed) {
    auto int_param = [&](const char* what) {
        try {
            size_t used = 0;
            int v = std::stoi(param, &used);
            if (used != param.size()) throw std::invalid_argument(param);
            return v;
        } catch (const std::exception&) {
            throw error(std::string(what) + ": bad integer parameter '" + param + "'");
        }
    };
    if (family == "In") return {corpus_In(int_param("In family"))};
    if (family == "pf") return {corpus_pf(param)};
    if (family == "random") return corpus_random(seed, int_param("random family"));
    throw error("unknown corpus family '" + family + "' (families: In, pf, random)");
}

}  // namespace nflocus
