#include "nflocus/ideal_ops.hpp"

#include <algorithm>
#include <functional>

namespace nflocus {

Ideal ideal_canon(const Ideal& I) {
    return Ideal{I.ring, ideal_gb(I)};
}

Ideal ideal_sum(const Ideal& I, const Ideal& J) {
    Ideal out{I.ring, I.gens};
    out.gens.insert(out.gens.end(), J.gens.begin(), J.gens.end());
    return ideal_canon(out);
}

Ideal ideal_product(const Ideal& I, const Ideal& J) {
    Ideal out{I.ring, {}};
    for (const auto& f : I.gens)
        for (const auto& g : J.gens) out.gens.push_back(f * g);
    return ideal_canon(out);
}

Ideal ideal_intersect(const Ideal& I, const Ideal& J) {
    const BaseRing* R = I.ring.get();
    Poly one = R->constant(Coeff::one(R->p));
    std::vector<Vec> cols;
    cols.push_back({one, one});
    for (const auto& f : I.gens)
        if (!f.is_zero()) cols.push_back({f, Poly(R)});
    for (const auto& g : J.gens)
        if (!g.is_zero()) cols.push_back({Poly(R), g});
    auto syz = syzygies(cols, 2, R);
    Ideal out{I.ring, {}};
    for (const auto& s : syz)
        if (!s[0].is_zero()) out.gens.push_back(s[0]);
    return ideal_canon(out);
}

Ideal ideal_colon(const Ideal& I, const Poly& f) {
    const BaseRing* R = I.ring.get();
    if (f.is_zero()) return Ideal{I.ring, {R->constant(Coeff::one(R->p))}};
    std::vector<Vec> cols;
    cols.push_back({f});
    for (const auto& g : I.gens)
        if (!g.is_zero()) cols.push_back({g});
    auto syz = syzygies(cols, 1, R);
    Ideal out{I.ring, {}};
    for (const auto& s : syz)
        if (!s[0].is_zero()) out.gens.push_back(s[0]);
    return ideal_canon(out);
}

Ideal ideal_colon(const Ideal& I, const Ideal& J) {
    const BaseRing* R = I.ring.get();
    Ideal acc{I.ring, {R->constant(Coeff::one(R->p))}};
    bool first = true;
    for (const auto& g : J.gens) {
        if (g.is_zero()) continue;
        Ideal c = ideal_colon(I, g);
        acc = first ? c : ideal_intersect(acc, c);
        first = false;
    }
    return first ? acc : ideal_canon(acc);
}

Ideal ideal_saturate(const Ideal& I, const Poly& f) {
    Ideal cur = ideal_canon(I);
    for (int it = 0; it < 256; it++) {
        Ideal next = ideal_colon(cur, f);
        if (ideal_equal(cur, next)) return cur;
        cur = next;
    }
    throw error("saturation did not stabilize");
}

bool ideal_equal(const Ideal& I, const Ideal& J) {
    auto a = ideal_gb(I), b = ideal_gb(J);
    if (a.size() != b.size()) return false;
    for (size_t i = 0; i < a.size(); i++)
        if (a[i] != b[i]) return false;
    return true;
}

bool ideal_contains(const Ideal& I, const Poly& f) {
    return ideal_member(f, ideal_gb(I));
}

bool ideal_contains_ideal(const Ideal& I, const Ideal& J) {
    auto gb = ideal_gb(I);
    for (const auto& g : J.gens)
        if (!ideal_member(g, gb)) return false;
    return true;
}

bool ideal_is_trivial(const Ideal& I) {
    return ideal_is_unit(ideal_gb(I));
}

bool ideal_is_zero(const Ideal& I) {
    for (const auto& g : I.gens)
        if (!g.is_zero()) return false;
    return true;
}

bool radical_membership(const Poly& f, const Ideal& I) {
    if (f.is_zero()) return true;
    if (ideal_is_zero(I)) return false;
    const BaseRing* R = I.ring.get();
    std::string fresh = "t";
    while (R->var_index(fresh) >= 0) fresh += "t";
    auto E = R->extended(fresh);
    std::vector<Poly> gens;
    for (const auto& g : I.gens)
        if (!g.is_zero()) gens.push_back(g.subst_ring(E.get()));
    Poly t = E->var_poly(E->nvars() - 1);
    Poly one = E->constant(Coeff::one(E->p));
    gens.push_back(one - t * f.subst_ring(E.get()));
    return ideal_is_unit(ideal_gb(Ideal{E, gens}));
}

int krull_dim(const Ideal& I) {
    auto gb = ideal_gb(I);
    if (ideal_is_unit(gb)) return -1;
    size_t n = I.ring->nvars();
    if (n > 16) throw error("krull_dim: too many variables");
    std::vector<unsigned> leadmask;
    for (const auto& g : gb) {
        unsigned m = 0;
        const Monomial& lm = g.lead().m;
        for (size_t i = 0; i < n; i++)
            if (lm[i] > 0) m |= 1u << i;
        leadmask.push_back(m);
    }
    int best = 0;
    for (unsigned s = 0; s < (1u << n); s++) {
        bool independent = true;
        for (unsigned m : leadmask)
            if ((m & ~s) == 0) {
                independent = false;
                break;
            }
        if (independent) best = std::max(best, __builtin_popcount(s));
    }
    return best;
}

// ---------------------------------------------------------------------------
// univariate factorization (dense, ascending coefficients)

namespace {

using Uni = std::vector<Coeff>;

void uni_trim(Uni& a) {
    while (!a.empty() && a.back().is_zero()) a.pop_back();
}

int uni_deg(const Uni& a) { return (int)a.size() - 1; }

Coeff uni_eval(const Uni& a, const Coeff& x) {
    Coeff acc = Coeff::zero(x.characteristic());
    for (size_t i = a.size(); i-- > 0;) acc = acc * x + a[i];
    return acc;
}

// exact division attempt; returns true and sets q if b | a
bool uni_divides(const Uni& a, const Uni& b, Uni& q) {
    if (b.empty()) return false;
    Uni r = a;
    uni_trim(r);
    q.assign(r.size(), Coeff::zero(b.back().characteristic()));
    Coeff invlead = b.back().inv();
    while ((int)r.size() >= (int)b.size()) {
        Coeff c = r.back() * invlead;
        size_t shift = r.size() - b.size();
        q[shift] = c;
        for (size_t i = 0; i < b.size(); i++) r[shift + i] = r[shift + i] - c * b[i];
        uni_trim(r);
    }
    uni_trim(q);
    return r.empty();
}

Uni uni_monic(Uni a) {
    uni_trim(a);
    if (a.empty()) return a;
    Coeff inv = a.back().inv();
    for (auto& c : a) c = c * inv;
    return a;
}

std::vector<mpz_class> divisors_signed(const mpz_class& v0) {
    mpz_class v = abs(v0);
    if (v > mpz_class("1000000000000"))
        throw error("factorization: coefficient values too large");
    std::vector<mpz_class> pos;
    for (mpz_class d = 1; d * d <= v; d++) {
        if (v % d == 0) {
            pos.push_back(d);
            if (d * d != v) pos.push_back(v / d);
        }
    }
    std::sort(pos.begin(), pos.end());
    std::vector<mpz_class> out;
    for (const auto& d : pos) {
        out.push_back(d);
        out.push_back(-d);
    }
    return out;
}

// Kronecker search over the rationals: find one nontrivial factor of a, or
// return false if a is irreducible.
bool kronecker_one_factor(const Uni& a, Uni& out) {
    // primitivize: a true factor of the primitive integer form b evaluates to a
    // divisor of b at every integer point, which is what the search relies on
    mpz_class den(1);
    for (const auto& c : a) den = lcm(den, c.rat().get_den());
    std::vector<mpz_class> ai;
    mpz_class cont(0);
    for (const auto& c : a) {
        mpq_class q = c.rat() * den;
        ai.push_back(q.get_num());
        cont = gcd(cont, ai.back());
    }
    if (cont != 0)
        for (auto& z : ai) z /= cont;
    Uni b;
    for (const auto& z : ai) b.push_back(Coeff::rational(mpq_class(z)));

    int d = uni_deg(b);
    std::vector<long> points;
    for (long k = 0; (int)points.size() < d / 2 + 1 + d && k <= 60; k++) {
        points.push_back(k == 0 ? 0 : (k % 2 ? (k + 1) / 2 : -(k / 2)));
    }
    // rational root at an evaluation point gives a linear factor outright
    for (long x : points) {
        if (uni_eval(b, Coeff::rational(mpq_class(x))).is_zero()) {
            out = {Coeff::rational(mpq_class(-x)), Coeff::rational(mpq_class(1))};
            return true;
        }
    }
    for (int e = 1; e <= d / 2; e++) {
        std::vector<long> xs;
        std::vector<std::vector<mpz_class>> divs;
        double combos = 1;
        for (long x : points) {
            Coeff v = uni_eval(b, Coeff::rational(mpq_class(x)));
            if (v.is_zero()) continue;  // handled above
            xs.push_back(x);
            divs.push_back(divisors_signed(v.rat().get_num()));
            combos *= (double)divs.back().size();
            if ((int)xs.size() == e + 1) break;
        }
        if ((int)xs.size() < e + 1) throw error("factorization: not enough sample points");
        if (combos > 2e6) throw error("factorization: divisor search too large");
        // odometer over divisor tuples
        std::vector<size_t> idx(e + 1, 0);
        while (true) {
            // Lagrange interpolation through (xs[i], divs[i][idx[i]])
            std::vector<mpq_class> cand(e + 1, mpq_class(0));
            for (int i = 0; i <= e; i++) {
                // basis_i(t) = prod_{j != i} (t - xs[j]) / (xs[i] - xs[j])
                std::vector<mpq_class> basis = {mpq_class(1)};
                mpq_class denom(1);
                for (int j = 0; j <= e; j++) {
                    if (j == i) continue;
                    std::vector<mpq_class> nb(basis.size() + 1, mpq_class(0));
                    for (size_t k = 0; k < basis.size(); k++) {
                        nb[k + 1] += basis[k];
                        nb[k] -= basis[k] * xs[j];
                    }
                    basis = nb;
                    denom *= mpq_class(xs[i] - xs[j]);
                }
                mpq_class scale = mpq_class(divs[i][idx[i]]) / denom;
                for (size_t k = 0; k < basis.size(); k++) cand[k] += basis[k] * scale;
            }
            while (!cand.empty() && cand.back() == 0) cand.pop_back();
            if ((int)cand.size() >= 2) {
                Uni g;
                for (const auto& c : cand) g.push_back(Coeff::rational(c));
                Uni q;
                if ((int)g.size() <= d && uni_divides(a, g, q)) {
                    out = g;
                    return true;
                }
            }
            int pos = 0;
            while (pos <= e && ++idx[pos] == divs[pos].size()) idx[pos++] = 0;
            if (pos > e) break;
        }
    }
    return false;
}

// Brute-force factor search over F_p.
bool modp_one_factor(const Uni& a, Uni& out) {
    uint32_t p = a.back().characteristic();
    int d = uni_deg(a);
    if (p > 2000000) throw error("factorization: field too large for search");
    for (long x = 0; x < (long)p; x++) {
        if (uni_eval(a, Coeff::modp(p, x)).is_zero()) {
            out = {-Coeff::modp(p, x), Coeff::one(p)};
            return true;
        }
    }
    for (int e = 2; e <= d / 2; e++) {
        double count = 1;
        for (int i = 0; i < e; i++) count *= p;
        if (count > 2e6) throw error("factorization: field too large for search");
        std::vector<uint64_t> digits(e, 0);
        while (true) {
            Uni g;
            for (int i = 0; i < e; i++) g.push_back(Coeff::modp(p, digits[i]));
            g.push_back(Coeff::one(p));
            Uni q;
            if (uni_divides(a, g, q)) {
                out = g;
                return true;
            }
            int pos = 0;
            while (pos < e && ++digits[pos] == p) digits[pos++] = 0;
            if (pos == e) break;
        }
    }
    return false;
}

// monic irreducible factors with multiplicity
std::vector<Uni> uni_factor(Uni a) {
    uni_trim(a);
    if (a.empty()) throw error("factorization of zero");
    std::vector<Uni> todo = {a}, done;
    while (!todo.empty()) {
        Uni cur = todo.back();
        todo.pop_back();
        if (uni_deg(cur) < 1) continue;
        if (uni_deg(cur) == 1) {
            done.push_back(uni_monic(cur));
            continue;
        }
        Uni g, q;
        bool found = cur.back().characteristic() ? modp_one_factor(cur, g)
                                                 : kronecker_one_factor(cur, g);
        if (!found) {
            done.push_back(uni_monic(cur));
            continue;
        }
        if (!uni_divides(cur, g, q)) throw error("factorization: internal division failure");
        todo.push_back(g);
        todo.push_back(q);
    }
    std::sort(done.begin(), done.end(), [](const Uni& x, const Uni& y) {
        if (x.size() != y.size()) return x.size() < y.size();
        for (size_t i = x.size(); i-- > 0;) {
            if (x[i] == y[i]) continue;
            return x[i].str() < y[i].str();
        }
        return false;
    });
    return done;
}

Poly divide_monomial(const Poly& f, const Monomial& m) {
    std::vector<Term> ts;
    for (const auto& t : f.terms()) {
        if (!mono_divides(m, t.m)) throw error("monomial division failure");
        ts.push_back({mono_div(t.m, m), t.c});
    }
    return Poly(f.ring(), std::move(ts));
}

Poly uni_to_poly(const BaseRing* R, const Uni& a, size_t var) {
    std::vector<Term> ts;
    for (size_t j = 0; j < a.size(); j++) {
        if (a[j].is_zero()) continue;
        Monomial m(R->nvars(), 0);
        m[var] = (int)j;
        ts.push_back({m, a[j]});
    }
    return Poly(R, std::move(ts));
}

// Rebuild a weighted-homogeneous 2-variable polynomial from a dehomogenized
// univariate part q (in variable `keep`), filling the dropped variable.
bool regrade(const BaseRing* R, const Uni& q, size_t keep, size_t drop, Poly& out) {
    int wk = R->weights[keep], wd = R->weights[drop];
    int jmax = uni_deg(q);
    std::vector<Term> ts;
    for (int j = 0; j <= jmax; j++) {
        if (q[j].is_zero()) continue;
        long raise = (long)(jmax - j) * wk;
        if (raise % wd != 0) return false;
        Monomial m(R->nvars(), 0);
        m[keep] = j;
        m[drop] = (int)(raise / wd);
        ts.push_back({m, q[j]});
    }
    out = Poly(R, std::move(ts));
    return true;
}

}  // namespace

std::vector<Poly> factor_poly(const Poly& f0) {
    if (f0.is_zero()) throw error("factorization of zero");
    const BaseRing* R = f0.ring();
    std::vector<Poly> out;
    // monomial content
    Monomial content(R->nvars(), 0);
    bool first = true;
    for (const auto& t : f0.terms()) {
        for (size_t i = 0; i < R->nvars(); i++)
            content[i] = first ? t.m[i] : std::min(content[i], t.m[i]);
        first = false;
    }
    Poly f = f0;
    for (size_t i = 0; i < R->nvars(); i++)
        for (int k = 0; k < content[i]; k++) out.push_back(R->var_poly(i));
    bool has_content = false;
    for (int c : content) has_content |= c > 0;
    if (has_content) f = divide_monomial(f, content);

    // linear in some variable with a constant coefficient => irreducible
    // (any factorization would need a constant cofactor)
    auto linear_unit_coeff = [&](size_t v) {
        bool saw_linear = false;
        Coeff coeff = Coeff::zero(R->p);
        for (const auto& t : f.terms()) {
            if (t.m[v] > 1) return false;
            if (t.m[v] == 1) {
                Monomial rest = t.m;
                rest[v] = 0;
                for (int e : rest)
                    if (e) return false;  // coefficient of v is not constant
                coeff = t.c;
                saw_linear = true;
            }
        }
        return saw_linear && !coeff.is_zero();
    };
    auto sup = f.support();
    if (sup.size() >= 2) {
        for (int v : sup) {
            if (linear_unit_coeff(v)) {
                out.push_back(f.monic());
                f = R->constant(Coeff::one(R->p));
                break;
            }
        }
    }
    sup = f.support();
    if (sup.size() == 1) {
        size_t v = sup[0];
        Uni a(f.wdeg() / R->weights[v] + 1, Coeff::zero(R->p));
        for (const auto& t : f.terms()) a[t.m[v]] = t.c;
        for (const auto& q : uni_factor(a)) out.push_back(uni_to_poly(R, q, v));
    } else if (sup.size() == 2) {
        if (!f.is_homogeneous())
            throw error("cannot factor a non-homogeneous polynomial in two variables: " + f.str());
        size_t u = sup[0], v = sup[1];
        // keep the heavier variable as the univariate one
        size_t keep = R->weights[v] > R->weights[u] ? v : u;
        size_t drop = keep == u ? v : u;
        int jmax = 0;
        for (const auto& t : f.terms()) jmax = std::max(jmax, t.m[keep]);
        Uni a(jmax + 1, Coeff::zero(R->p));
        for (const auto& t : f.terms()) a[t.m[keep]] = t.c;
        auto parts = uni_factor(a);
        // peel minimal sub-multisets whose product regrades to a homogeneous factor
        while (!parts.empty()) {
            size_t n = parts.size();
            bool peeled = false;
            for (size_t sz = 1; sz <= n && !peeled; sz++) {
                std::vector<size_t> pick(sz);
                std::function<bool(size_t, size_t)> rec = [&](size_t at, size_t from) {
                    if (at == sz) {
                        Uni prod = {Coeff::one(R->p)};
                        for (size_t i : pick) {
                            Uni nxt(prod.size() + parts[i].size() - 1, Coeff::zero(R->p));
                            for (size_t x = 0; x < prod.size(); x++)
                                for (size_t y = 0; y < parts[i].size(); y++)
                                    nxt[x + y] = nxt[x + y] + prod[x] * parts[i][y];
                            prod = nxt;
                        }
                        Poly F;
                        if (!regrade(R, prod, keep, drop, F)) return false;
                        out.push_back(F.monic());
                        std::vector<Uni> rest;
                        for (size_t i = 0, k = 0; i < parts.size(); i++) {
                            if (k < sz && pick[k] == i) {
                                k++;
                                continue;
                            }
                            rest.push_back(parts[i]);
                        }
                        parts = rest;
                        return true;
                    }
                    for (size_t i = from; i < parts.size(); i++) {
                        pick[at] = i;
                        if (rec(at + 1, i + 1)) return true;
                    }
                    return false;
                };
                peeled = rec(0, 0);
            }
            if (!peeled) throw error("factorization: could not regrade factors of " + f.str());
        }
    } else if (!f.is_unit()) {
        throw error("cannot factor a polynomial in three or more variables: " + f.str());
    }

    // consistency: the product of the factors must reproduce f0 up to a constant
    Poly prod = R->constant(Coeff::one(R->p));
    for (const auto& g : out) prod = prod * g;
    if (prod.monic() != f0.monic()) throw error("factorization: product check failed");
    std::sort(out.begin(), out.end(),
              [](const Poly& x, const Poly& y) { return x.str() < y.str(); });
    return out;
}

bool is_irreducible(const Poly& f) {
    if (f.is_zero() || f.is_unit()) return false;
    return factor_poly(f).size() == 1;
}

// ---------------------------------------------------------------------------
// minimal primes

namespace {

bool is_variable_gen(const Poly& g) {
    if (g.terms().size() != 1) return false;
    const Term& t = g.terms()[0];
    if (!t.c.is_one()) return false;
    int sum = 0;
    for (int e : t.m) sum += e;
    return sum == 1;
}

void split_primes(const Ideal& I, std::vector<Ideal>& out, int depth) {
    if (depth > 64) throw error("minimal primes: recursion too deep");
    if (ideal_is_trivial(I)) return;
    const auto& G = I.gens;

    size_t nonvar = 0;
    const Poly* extra = nullptr;
    for (const auto& g : G) {
        if (!is_variable_gen(g)) {
            nonvar++;
            extra = &g;
        }
    }
    if (nonvar == 0) {  // generated by variables (possibly none): prime
        out.push_back(I);
        return;
    }
    if (nonvar == 1) {
        try {
            if (factor_poly(*extra).size() == 1) {  // variables + one irreducible
                out.push_back(I);
                return;
            }
        } catch (const error&) {
            // cannot certify; fall through to the splitting phase
        }
    }

    for (const auto& g : G) {
        std::vector<Poly> fs;
        try {
            fs = factor_poly(g);
        } catch (const error&) {
            continue;
        }
        std::vector<Poly> distinct;
        for (const auto& h : fs) {
            bool seen = false;
            for (const auto& d : distinct) seen |= d == h;
            if (!seen) distinct.push_back(h);
        }
        if (distinct.size() == 1 && distinct[0] == g.monic()) continue;
        std::vector<Ideal> branches;
        for (const auto& h : distinct) {
            Ideal J{I.ring, I.gens};
            J.gens.push_back(h);
            J = ideal_canon(J);
            if (!ideal_equal(J, I)) branches.push_back(J);
        }
        if (branches.empty()) continue;
        for (const auto& J : branches) split_primes(J, out, depth + 1);
        return;
    }

    auto gb = ideal_gb(I);
    for (size_t i = 0; i < I.ring->nvars(); i++) {
        Poly x = I.ring->var_poly(i);
        if (ideal_member(x, gb)) continue;
        Ideal S = ideal_saturate(I, x);
        if (ideal_equal(S, I)) continue;
        Ideal J{I.ring, I.gens};
        J.gens.push_back(x);
        split_primes(ideal_canon(J), out, depth + 1);
        split_primes(S, out, depth + 1);
        return;
    }

    std::string desc;
    for (const auto& g : G) desc += (desc.empty() ? "" : ", ") + g.str();
    throw error("minimal primes: no splitting step applies to (" + desc + ")");
}

}  // namespace

bool prime_order(const Ideal& a, const Ideal& b) {
    size_t n = std::min(a.gens.size(), b.gens.size());
    for (size_t i = 0; i < n; i++) {
        std::string x = a.gens[i].str(), y = b.gens[i].str();
        if (x != y) return x < y;
    }
    return a.gens.size() < b.gens.size();
}

std::vector<Ideal> minimal_primes(const Ideal& I) {
    std::vector<Ideal> found;
    split_primes(ideal_canon(I), found, 0);
    std::vector<Ideal> unique;
    for (const auto& P : found) {
        bool dup = false;
        for (const auto& Q : unique) dup |= ideal_equal(P, Q);
        if (!dup) unique.push_back(P);
    }
    std::vector<Ideal> out;
    for (const auto& P : unique) {
        bool minimal = true;
        for (const auto& Q : unique)
            if (!ideal_equal(P, Q) && ideal_contains_ideal(P, Q)) minimal = false;
        if (minimal) out.push_back(P);
    }
    std::sort(out.begin(), out.end(), prime_order);
    return out;
}

}  // namespace nflocus
