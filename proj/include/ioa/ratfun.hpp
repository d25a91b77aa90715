#pragma once

#include <map>
#include <string>
#include <vector>

#include "ioa/series.hpp"

namespace ioa {

// Sparse bivariate polynomial over Q(zeta), exponents in N x N.
using Poly2 = std::map<std::pair<long, long>, Cyclo>;

struct NotInSpanError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Exact element of Q(zeta)[v1^+-, v2^+-, (v1 -+ v2)^{-1}] times a rational-exponent
// monomial prefactor:
//     f = v1^P v2^Q (v1 diff v2)^S * g(v1, v2)
// with g a polynomial of minimal exponent 0 in each variable and not divisible by
// the binomial.  `diff` selects the inverted linear form: true for v1 - v2 (the
// product-side ring), false for v1 + v2 (the iterate-side ring in (x0, x2)).
class LaurentRational {
public:
    LaurentRational() = default;
    LaurentRational(std::string v1, std::string v2, bool diff, long order);

    static LaurentRational zero(std::string v1, std::string v2, bool diff, long order);
    static LaurentRational constant(std::string v1, std::string v2, bool diff, long order, const Cyclo& c);
    static LaurentRational monomial(std::string v1, std::string v2, bool diff, long order, const Cyclo& c,
                                    const Rat& e1, const Rat& e2, const Rat& ebin);

    const std::string& v1() const { return v1_; }
    const std::string& v2() const { return v2_; }
    bool diff() const { return diff_; }
    long scalar_order() const { return order_; }
    const Rat& pre1() const { return P_; }
    const Rat& pre2() const { return Q_; }
    const Rat& prebin() const { return S_; }
    const Poly2& poly() const { return g_; }

    bool is_zero() const { return g_.empty(); }
    bool is_monomial() const { return g_.size() == 1; }

    LaurentRational operator+(const LaurentRational& o) const;
    LaurentRational operator-(const LaurentRational& o) const;
    LaurentRational operator*(const LaurentRational& o) const;
    LaurentRational scaled(const Cyclo& c) const;

    // exact division; divisor must be a unit of the ring (monomial times binomial powers)
    LaurentRational divided_by_unit(const LaurentRational& unit) const;

    // true when all three prefactor exponents are integers (element of the plain ring)
    bool integral() const { return is_integer(P_) && is_integer(Q_) && is_integer(S_); }

    // substitute v1 = y1 - y2, v2 = y2 (only for diff=false, i.e. (x0,x2) ring);
    // the result lives in the diff=true ring over (y1, y2).  This realizes
    // x0 -> x1 - x2, x0 + x2 -> x1.
    LaurentRational substituted_difference(const std::string& y1, const std::string& y2) const;

    std::string to_string() const;
    static LaurentRational parse(const std::string& text, std::string v1, std::string v2, bool diff,
                                 long order);

private:
    std::string v1_ = "x1", v2_ = "x2";
    bool diff_ = true;
    long order_ = 1;
    Rat P_, Q_, S_;
    Poly2 g_;  // canonical: min exponent 0 per variable, not divisible by the binomial

    void canonicalize();
};

bool rat_equal(const LaurentRational& f, const LaurentRational& g);

// expansion maps, exact on the given (finite) window
FormalSeries iota12(const LaurentRational& f, const Window& w);  // in x2/x1
FormalSeries iota21(const LaurentRational& f, const Window& w);  // in x1/x2, lower phase e^{-i pi S}
FormalSeries iota20(const LaurentRational& f, const Window& w);  // substitute x1 = x2 + x0, expand in x0/x2

struct GBasisElement {
    std::string label;
    Rat a, b, c;  // f = x1^a x2^b (1 - x2/x1)^c = x1^{a-c} x2^b (x1-x2)^c

    LaurentRational as_rational(long order) const;
};

// f = sum_alpha coeff_alpha * f_alpha with integer-exponent coefficients; errors
// with NotInSpanError when f's coset triple matches no basis element or the
// quotient fails to be integral.
std::map<std::string, LaurentRational> decompose_in_gbasis(const LaurentRational& f,
                                                           const std::vector<GBasisElement>& basis);

}  // namespace ioa
