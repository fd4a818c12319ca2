#ifndef NFLOCUS_RING_HPP
#define NFLOCUS_RING_HPP

#include <gmpxx.h>

#include <cstdint>
#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

namespace nflocus {

struct error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Field element: exact rational (char 0) or residue mod a prime p < 2^31.
/// Every nonzero coefficient carries its characteristic so mixed-field bugs
/// surface immediately instead of corrupting data.
class Coeff {
  public:
    Coeff() = default;
    static Coeff zero(uint32_t p);
    static Coeff one(uint32_t p);
    static Coeff rational(mpq_class v);
    static Coeff integer(uint32_t p, long v);
    static Coeff modp(uint32_t p, uint64_t v);

    uint32_t characteristic() const { return p_; }
    bool is_zero() const { return p_ ? r_ == 0 : q_ == 0; }
    bool is_one() const { return p_ ? r_ == 1 : q_ == 1; }
    const mpq_class& rat() const { return q_; }
    uint64_t residue() const { return r_; }

    Coeff operator+(const Coeff& o) const;
    Coeff operator-(const Coeff& o) const;
    Coeff operator*(const Coeff& o) const;
    Coeff operator/(const Coeff& o) const;
    Coeff operator-() const;
    Coeff inv() const;
    bool operator==(const Coeff& o) const;
    bool operator!=(const Coeff& o) const { return !(*this == o); }

    std::string str() const;

  private:
    uint32_t p_ = 0;
    mpq_class q_;
    uint64_t r_ = 0;
};

using Monomial = std::vector<int>;  // exponent vector

bool mono_divides(const Monomial& a, const Monomial& b);  // a | b
Monomial mono_mul(const Monomial& a, const Monomial& b);
Monomial mono_div(const Monomial& a, const Monomial& b);  // a / b, assumes divisible
Monomial mono_lcm(const Monomial& a, const Monomial& b);

struct Term {
    Monomial m;
    Coeff c;
};

class Poly;

/// Polynomial ring k[x_1..x_n] with positive integer weights and the
/// weighted-grevlex order on the declared variable order.
class BaseRing {
  public:
    std::vector<std::string> vars;
    std::vector<int> weights;
    uint32_t p = 0;  // characteristic; 0 = rationals

    static std::shared_ptr<const BaseRing> make(std::vector<std::string> vars, uint32_t p,
                                                std::vector<int> weights = {});

    size_t nvars() const { return vars.size(); }
    int wdeg(const Monomial& m) const;
    /// weighted grevlex: higher weighted degree wins, ties broken by the last
    /// nonzero entry of a-b being negative. Returns +1 if a > b.
    int mono_cmp(const Monomial& a, const Monomial& b) const;
    int var_index(const std::string& name) const;  // -1 if absent

    Poly var_poly(size_t i) const;
    Poly constant(const Coeff& c) const;
    Poly parse(const std::string& text) const;

    /// Same ring with one fresh variable appended (used for radical membership).
    std::shared_ptr<const BaseRing> extended(const std::string& fresh) const;
};

/// Sparse polynomial; terms kept sorted descending in the ring's order.
/// Holds a non-owning ring pointer: rings are shared_ptr-owned by the
/// surrounding Ideal/QuotRing/FPModule objects and outlive all polynomials.
class Poly {
  public:
    Poly() = default;
    explicit Poly(const BaseRing* r) : ring_(r) {}
    Poly(const BaseRing* r, std::vector<Term> terms);  // normalizes

    const BaseRing* ring() const { return ring_; }
    const std::vector<Term>& terms() const { return t_; }
    bool is_zero() const { return t_.empty(); }
    bool is_constant() const;
    bool is_unit() const { return is_constant() && !is_zero(); }
    const Term& lead() const;
    int wdeg() const;  // weighted degree of the lead term; -1 for zero
    bool is_homogeneous() const;
    bool is_homogeneous_of(int d) const;

    Poly operator+(const Poly& o) const;
    Poly operator-(const Poly& o) const;
    Poly operator-() const;
    Poly operator*(const Poly& o) const;
    bool operator==(const Poly& o) const;
    bool operator!=(const Poly& o) const { return !(*this == o); }

    Poly mul_term(const Monomial& m, const Coeff& c) const;
    Poly scale(const Coeff& c) const;
    Poly monic() const;

    /// Support: which variables occur.
    std::vector<int> support() const;
    Poly subst_ring(const BaseRing* other) const;  // same var prefix, reinterpret
    Poly derivative(size_t var) const;

    std::string str() const;

  private:
    const BaseRing* ring_ = nullptr;
    std::vector<Term> t_;
};

struct Ideal {
    std::shared_ptr<const BaseRing> ring;
    std::vector<Poly> gens;
};

/// Graded quotient R = base/I. The reduced Groebner basis of the defining
/// ideal is computed once at construction; normal forms against it give
/// canonical representatives for R-elements.
class QuotRing {
  public:
    std::shared_ptr<const BaseRing> base;
    std::vector<Poly> defining;     // original generators
    std::vector<Poly> defining_gb;  // reduced basis, possibly empty
    std::string name;

    static std::shared_ptr<const QuotRing> make(std::shared_ptr<const BaseRing> base,
                                                std::vector<Poly> defining,
                                                std::string name = "R");

    bool is_unit_quotient() const;  // defining ideal = (1)
    Poly nf(const Poly& f) const;   // canonical representative
    Poly maximal_ideal_gen(size_t i) const { return base->var_poly(i); }
    std::string desc() const;
};

bool same_ring(const QuotRing& a, const QuotRing& b);

}  // namespace nflocus

#endif
