#include "nflocus/ring.hpp"

#include <algorithm>
#include <cassert>
#include <cctype>
#include <sstream>

namespace nflocus {

// ---------------------------------------------------------------- Coeff

static uint64_t norm_mod(long v, uint32_t p) {
    long r = v % (long)p;
    if (r < 0) r += p;
    return (uint64_t)r;
}

Coeff Coeff::zero(uint32_t p) {
    Coeff c;
    c.p_ = p;
    return c;
}

Coeff Coeff::one(uint32_t p) { return integer(p, 1); }

Coeff Coeff::rational(mpq_class v) {
    Coeff c;
    c.q_ = std::move(v);
    c.q_.canonicalize();
    return c;
}

Coeff Coeff::integer(uint32_t p, long v) {
    Coeff c;
    c.p_ = p;
    if (p)
        c.r_ = norm_mod(v, p);
    else
        c.q_ = v;
    return c;
}

Coeff Coeff::modp(uint32_t p, uint64_t v) {
    assert(p);
    Coeff c;
    c.p_ = p;
    c.r_ = v % p;
    return c;
}

static uint64_t pow_mod(uint64_t b, uint64_t e, uint64_t p) {
    uint64_t r = 1;
    b %= p;
    while (e) {
        if (e & 1) r = r * b % p;
        b = b * b % p;
        e >>= 1;
    }
    return r;
}

Coeff Coeff::operator+(const Coeff& o) const {
    assert(p_ == o.p_);
    return p_ ? modp(p_, r_ + o.r_) : rational(q_ + o.q_);
}

Coeff Coeff::operator-(const Coeff& o) const {
    assert(p_ == o.p_);
    return p_ ? modp(p_, r_ + (p_ - o.r_)) : rational(q_ - o.q_);
}

Coeff Coeff::operator*(const Coeff& o) const {
    assert(p_ == o.p_);
    return p_ ? modp(p_, r_ * o.r_) : rational(q_ * o.q_);
}

Coeff Coeff::operator/(const Coeff& o) const { return *this * o.inv(); }

Coeff Coeff::operator-() const {
    return p_ ? modp(p_, r_ ? p_ - r_ : 0) : rational(-q_);
}

Coeff Coeff::inv() const {
    if (is_zero()) throw error("division by zero coefficient");
    return p_ ? modp(p_, pow_mod(r_, p_ - 2, p_)) : rational(1 / q_);
}

bool Coeff::operator==(const Coeff& o) const {
    assert(p_ == o.p_);
    return p_ ? r_ == o.r_ : q_ == o.q_;
}

std::string Coeff::str() const {
    if (p_) return std::to_string(r_);
    return q_.get_str();
}

// ---------------------------------------------------------------- Monomial

bool mono_divides(const Monomial& a, const Monomial& b) {
    for (size_t i = 0; i < a.size(); i++)
        if (a[i] > b[i]) return false;
    return true;
}

Monomial mono_mul(const Monomial& a, const Monomial& b) {
    Monomial r(a.size());
    for (size_t i = 0; i < a.size(); i++) r[i] = a[i] + b[i];
    return r;
}

Monomial mono_div(const Monomial& a, const Monomial& b) {
    Monomial r(a.size());
    for (size_t i = 0; i < a.size(); i++) {
        r[i] = a[i] - b[i];
        assert(r[i] >= 0);
    }
    return r;
}

Monomial mono_lcm(const Monomial& a, const Monomial& b) {
    Monomial r(a.size());
    for (size_t i = 0; i < a.size(); i++) r[i] = std::max(a[i], b[i]);
    return r;
}

// ---------------------------------------------------------------- BaseRing

std::shared_ptr<const BaseRing> BaseRing::make(std::vector<std::string> vars, uint32_t p,
                                               std::vector<int> weights) {
    auto r = std::make_shared<BaseRing>();
    if (weights.empty()) weights.assign(vars.size(), 1);
    if (weights.size() != vars.size()) throw error("weights/vars length mismatch");
    for (int w : weights)
        if (w <= 0) throw error("weights must be positive");
    r->vars = std::move(vars);
    r->weights = std::move(weights);
    r->p = p;
    return r;
}

int BaseRing::wdeg(const Monomial& m) const {
    int d = 0;
    for (size_t i = 0; i < m.size(); i++) d += weights[i] * m[i];
    return d;
}

int BaseRing::mono_cmp(const Monomial& a, const Monomial& b) const {
    int da = wdeg(a), db = wdeg(b);
    if (da != db) return da > db ? 1 : -1;
    for (size_t i = a.size(); i-- > 0;) {
        int d = a[i] - b[i];
        if (d) return d < 0 ? 1 : -1;
    }
    return 0;
}

int BaseRing::var_index(const std::string& name) const {
    for (size_t i = 0; i < vars.size(); i++)
        if (vars[i] == name) return (int)i;
    return -1;
}

Poly BaseRing::var_poly(size_t i) const {
    Monomial m(nvars(), 0);
    m[i] = 1;
    return Poly(this, {{m, Coeff::one(p)}});
}

Poly BaseRing::constant(const Coeff& c) const {
    if (c.is_zero()) return Poly(this);
    return Poly(this, {{Monomial(nvars(), 0), c}});
}

std::shared_ptr<const BaseRing> BaseRing::extended(const std::string& fresh) const {
    auto v = vars;
    v.push_back(fresh);
    auto w = weights;
    w.push_back(1);
    return make(std::move(v), p, std::move(w));
}

// ---------------------------------------------------------------- Poly

Poly::Poly(const BaseRing* r, std::vector<Term> terms) : ring_(r), t_(std::move(terms)) {
    std::sort(t_.begin(), t_.end(),
              [r](const Term& a, const Term& b) { return r->mono_cmp(a.m, b.m) > 0; });
    // merge duplicates, drop zeros
    std::vector<Term> out;
    for (auto& t : t_) {
        if (!out.empty() && out.back().m == t.m)
            out.back().c = out.back().c + t.c;
        else
            out.push_back(t);
        if (!out.empty() && out.back().c.is_zero()) out.pop_back();
    }
    t_ = std::move(out);
}

bool Poly::is_constant() const {
    if (t_.empty()) return true;
    return t_.size() == 1 && ring_->wdeg(t_[0].m) == 0;
}

const Term& Poly::lead() const {
    if (t_.empty()) throw error("lead term of zero polynomial");
    return t_[0];
}

int Poly::wdeg() const {
    if (t_.empty()) return -1;
    int d = 0;
    for (auto& t : t_) d = std::max(d, ring_->wdeg(t.m));
    return d;
}

bool Poly::is_homogeneous() const {
    if (t_.empty()) return true;
    int d = ring_->wdeg(t_[0].m);
    for (auto& t : t_)
        if (ring_->wdeg(t.m) != d) return false;
    return true;
}

bool Poly::is_homogeneous_of(int d) const {
    for (auto& t : t_)
        if (ring_->wdeg(t.m) != d) return false;
    return true;
}

Poly Poly::operator+(const Poly& o) const {
    if (is_zero()) return o;
    if (o.is_zero()) return *this;
    assert(ring_ == o.ring_);
    std::vector<Term> out;
    size_t i = 0, j = 0;
    while (i < t_.size() || j < o.t_.size()) {
        if (j == o.t_.size() || (i < t_.size() && ring_->mono_cmp(t_[i].m, o.t_[j].m) > 0)) {
            out.push_back(t_[i++]);
        } else if (i == t_.size() || ring_->mono_cmp(t_[i].m, o.t_[j].m) < 0) {
            out.push_back(o.t_[j++]);
        } else {
            Coeff c = t_[i].c + o.t_[j].c;
            if (!c.is_zero()) out.push_back({t_[i].m, c});
            i++, j++;
        }
    }
    Poly r(ring_);
    r.t_ = std::move(out);
    return r;
}

Poly Poly::operator-() const {
    Poly r(ring_);
    r.t_ = t_;
    for (auto& t : r.t_) t.c = -t.c;
    return r;
}

Poly Poly::operator-(const Poly& o) const { return *this + (-o); }

Poly Poly::mul_term(const Monomial& m, const Coeff& c) const {
    if (c.is_zero()) return Poly(ring_);
    Poly r(ring_);
    r.t_.reserve(t_.size());
    for (auto& t : t_) r.t_.push_back({mono_mul(t.m, m), t.c * c});
    return r;
}

Poly Poly::operator*(const Poly& o) const {
    if (is_zero()) return *this;
    if (o.is_zero()) return o;
    assert(ring_ == o.ring_);
    Poly acc(ring_);
    for (auto& t : o.t_) acc = acc + mul_term(t.m, t.c);
    return acc;
}

bool Poly::operator==(const Poly& o) const {
    if (t_.size() != o.t_.size()) return false;
    for (size_t i = 0; i < t_.size(); i++)
        if (t_[i].m != o.t_[i].m || t_[i].c != o.t_[i].c) return false;
    return true;
}

Poly Poly::scale(const Coeff& c) const { return mul_term(Monomial(ring_ ? ring_->nvars() : 0, 0), c); }

Poly Poly::monic() const {
    if (is_zero()) return *this;
    return scale(lead().c.inv());
}

std::vector<int> Poly::support() const {
    std::vector<int> s;
    if (!ring_) return s;
    std::vector<bool> seen(ring_->nvars(), false);
    for (auto& t : t_)
        for (size_t i = 0; i < t.m.size(); i++)
            if (t.m[i]) seen[i] = true;
    for (size_t i = 0; i < seen.size(); i++)
        if (seen[i]) s.push_back((int)i);
    return s;
}

Poly Poly::subst_ring(const BaseRing* other) const {
    std::vector<Term> ts;
    ts.reserve(t_.size());
    for (auto& t : t_) {
        Monomial m(other->nvars(), 0);
        for (size_t i = 0; i < t.m.size(); i++) {
            if (t.m[i]) {
                if (i >= other->nvars()) throw error("variable lost in ring change");
                m[i] = t.m[i];
            }
        }
        ts.push_back({std::move(m), t.c});
    }
    return Poly(other, std::move(ts));
}

Poly Poly::derivative(size_t var) const {
    std::vector<Term> ts;
    for (auto& t : t_) {
        if (t.m[var] == 0) continue;
        Coeff c = t.c * Coeff::integer(t.c.characteristic(), t.m[var]);
        if (c.is_zero()) continue;
        Monomial m = t.m;
        m[var]--;
        ts.push_back({std::move(m), c});
    }
    return Poly(ring_, std::move(ts));
}

// canonical printing: descending terms, '*' between factors, '^' powers
std::string Poly::str() const {
    if (t_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (auto& t : t_) {
        Coeff c = t.c;
        std::string cs = c.str();
        bool neg = !cs.empty() && cs[0] == '-';
        if (first) {
            if (neg) os << "-", cs = cs.substr(1);
        } else {
            os << (neg ? " - " : " + ");
            if (neg) cs = cs.substr(1);
        }
        first = false;
        bool any_var = false;
        for (int e : t.m)
            if (e) any_var = true;
        if (!any_var) {
            os << cs;
            continue;
        }
        bool need_star = false;
        if (cs != "1") {
            os << cs;
            need_star = true;
        }
        for (size_t i = 0; i < t.m.size(); i++) {
            if (!t.m[i]) continue;
            if (need_star) os << "*";
            os << ring_->vars[i];
            if (t.m[i] > 1) os << "^" << t.m[i];
            need_star = true;
        }
    }
    return os.str();
}

// ---------------------------------------------------------------- parsing

namespace {

struct PolyParser {
    const BaseRing* ring;
    const std::string& s;
    size_t i = 0;

    void skip() {
        while (i < s.size() && std::isspace((unsigned char)s[i])) i++;
    }
    bool eat(char c) {
        skip();
        if (i < s.size() && s[i] == c) {
            i++;
            return true;
        }
        return false;
    }
    [[noreturn]] void fail(const std::string& what) {
        throw error("polynomial parse error at position " + std::to_string(i) + ": " + what +
                    " in '" + s + "'");
    }

    Poly parse_expr() {
        Poly acc = parse_term(true);
        while (true) {
            skip();
            if (i < s.size() && (s[i] == '+' || s[i] == '-')) {
                bool minus = s[i] == '-';
                i++;
                Poly t = parse_term(false);
                acc = minus ? acc - t : acc + t;
            } else
                break;
        }
        return acc;
    }

    Poly parse_term(bool allow_sign) {
        skip();
        bool neg = false;
        if (allow_sign && i < s.size() && (s[i] == '+' || s[i] == '-')) {
            neg = s[i] == '-';
            i++;
        }
        Poly acc = parse_factor();
        while (true) {
            skip();
            if (i >= s.size()) break;
            char c = s[i];
            if (c == '*') {
                i++;
                acc = acc * parse_factor();
            } else if (std::isalpha((unsigned char)c) || c == '(' || std::isdigit((unsigned char)c)) {
                acc = acc * parse_factor();  // juxtaposition
            } else
                break;
        }
        return neg ? -acc : acc;
    }

    Poly parse_factor() {
        skip();
        if (i >= s.size()) fail("unexpected end");
        char c = s[i];
        Poly base(ring);
        if (c == '(') {
            i++;
            base = parse_expr();
            if (!eat(')')) fail("expected ')'");
        } else if (std::isdigit((unsigned char)c)) {
            base = parse_number();
        } else if (std::isalpha((unsigned char)c) || c == '_') {
            size_t j = i;
            while (j < s.size() && (std::isalnum((unsigned char)s[j]) || s[j] == '_')) j++;
            std::string name = s.substr(i, j - i);
            int vi = ring->var_index(name);
            if (vi < 0) fail("unknown variable '" + name + "'");
            i = j;
            base = ring->var_poly((size_t)vi);
        } else
            fail("unexpected character");
        skip();
        if (i < s.size() && s[i] == '^') {
            i++;
            skip();
            size_t j = i;
            while (j < s.size() && std::isdigit((unsigned char)s[j])) j++;
            if (j == i) fail("expected exponent");
            int e = std::stoi(s.substr(i, j - i));
            i = j;
            Poly r = ring->constant(Coeff::one(ring->p));
            for (int k = 0; k < e; k++) r = r * base;
            base = r;
        }
        return base;
    }

    Poly parse_number() {
        size_t j = i;
        while (j < s.size() && std::isdigit((unsigned char)s[j])) j++;
        std::string num = s.substr(i, j - i);
        i = j;
        skip();
        // rational a/b only when the next factor is a digit run (avoid eating x/y)
        if (i < s.size() && s[i] == '/') {
            size_t k = i + 1;
            while (k < s.size() && std::isspace((unsigned char)s[k])) k++;
            if (k < s.size() && std::isdigit((unsigned char)s[k])) {
                size_t l = k;
                while (l < s.size() && std::isdigit((unsigned char)s[l])) l++;
                std::string den = s.substr(k, l - k);
                i = l;
                if (ring->p) {
                    Coeff a = Coeff::integer(ring->p, std::stol(num));
                    Coeff b = Coeff::integer(ring->p, std::stol(den));
                    return ring->constant(a / b);
                }
                return ring->constant(Coeff::rational(mpq_class(num + "/" + den)));
            }
        }
        if (ring->p) return ring->constant(Coeff::integer(ring->p, std::stol(num)));
        return ring->constant(Coeff::rational(mpq_class(num)));
    }
};

}  // namespace

Poly BaseRing::parse(const std::string& text) const {
    PolyParser pp{this, text};
    Poly r = pp.parse_expr();
    pp.skip();
    if (pp.i != text.size()) pp.fail("trailing input");
    return r;
}

// ---------------------------------------------------------------- QuotRing

bool QuotRing::is_unit_quotient() const {
    for (auto& g : defining_gb)
        if (g.is_unit()) return true;
    return false;
}

std::string QuotRing::desc() const {
    std::ostringstream os;
    os << (base->p ? "F" + std::to_string(base->p) : "Q") << "[";
    for (size_t i = 0; i < base->vars.size(); i++) os << (i ? "," : "") << base->vars[i];
    os << "]";
    if (!defining.empty()) {
        os << "/(";
        for (size_t i = 0; i < defining.size(); i++) os << (i ? ", " : "") << defining[i].str();
        os << ")";
    }
    return os.str();
}

bool same_ring(const QuotRing& a, const QuotRing& b) {
    if (a.base->vars != b.base->vars || a.base->weights != b.base->weights || a.base->p != b.base->p)
        return false;
    if (a.defining_gb.size() != b.defining_gb.size()) return false;
    for (size_t i = 0; i < a.defining_gb.size(); i++)
        if (!(a.defining_gb[i] == b.defining_gb[i])) return false;
    return true;
}

}  // namespace nflocus
