#include "ioa/ratfun.hpp"

#include <algorithm>
#include <sstream>

#include "ioa/scalar_io.hpp"

namespace ioa {

namespace {

Poly2 poly_mul(const Poly2& a, const Poly2& b) {
    Poly2 r;
    for (const auto& [ea, ca] : a)
        for (const auto& [eb, cb] : b) {
            auto key = std::make_pair(ea.first + eb.first, ea.second + eb.second);
            auto it = r.find(key);
            if (it == r.end()) {
                Cyclo v = ca * cb;
                if (!v.is_zero()) r.emplace(key, v);
            } else {
                it->second += ca * cb;
                if (it->second.is_zero()) r.erase(it);
            }
        }
    return r;
}

Poly2 poly_add(const Poly2& a, const Poly2& b) {
    Poly2 r = a;
    for (const auto& [e, c] : b) {
        auto it = r.find(e);
        if (it == r.end()) {
            if (!c.is_zero()) r.emplace(e, c);
        } else {
            it->second += c;
            if (it->second.is_zero()) r.erase(it);
        }
    }
    return r;
}

// divide by (v1 -+ v2) exactly; returns false when not divisible.
// binomial = v1 - v2 (diff) or v1 + v2.
bool poly_div_binomial(const Poly2& g, bool diff, long order, Poly2* out) {
    // treat as polynomial in v1 with Poly-in-v2 coefficients; synthetic division
    if (g.empty()) {
        out->clear();
        return true;
    }
    long d1 = 0;
    for (const auto& [e, c] : g) d1 = std::max(d1, e.first);
    // rows[i] = coefficient of v1^i as map v2exp -> Cyclo
    std::vector<std::map<long, Cyclo>> rows(d1 + 1), q(std::max<long>(d1, 1));
    for (const auto& [e, c] : g) rows[e.first][e.second] = c;
    // dividing by v1 + s*v2 with s = -1 (diff) or +1
    const Rat s = diff ? Rat(-1) : Rat(1);
    for (long i = d1; i >= 1; --i) {
        // q_{i-1} = rows_i ; rows_{i-1} -= s*v2 * q_{i-1}
        q[i - 1] = rows[i];
        for (const auto& [j, c] : rows[i]) {
            Cyclo sub = c * Cyclo(order, s);
            auto it = rows[i - 1].find(j + 1);
            if (it == rows[i - 1].end()) {
                if (!sub.is_zero()) rows[i - 1][j + 1] = -sub;
            } else {
                it->second -= sub;
                if (it->second.is_zero()) rows[i - 1].erase(it);
            }
        }
        rows[i].clear();
    }
    for (const auto& [j, c] : rows[0])
        if (!c.is_zero()) return false;  // remainder
    out->clear();
    for (long i = 0; i < (long)q.size(); ++i)
        for (const auto& [j, c] : q[i])
            if (!c.is_zero()) (*out)[{i, j}] = c;
    return true;
}

}  // namespace

LaurentRational::LaurentRational(std::string v1, std::string v2, bool diff, long order)
    : v1_(std::move(v1)), v2_(std::move(v2)), diff_(diff), order_(order) {}

LaurentRational LaurentRational::zero(std::string v1, std::string v2, bool diff, long order) {
    return LaurentRational(std::move(v1), std::move(v2), diff, order);
}

LaurentRational LaurentRational::constant(std::string v1, std::string v2, bool diff, long order,
                                          const Cyclo& c) {
    LaurentRational r(std::move(v1), std::move(v2), diff, order);
    if (!c.is_zero()) r.g_[{0, 0}] = c;
    return r;
}

LaurentRational LaurentRational::monomial(std::string v1, std::string v2, bool diff, long order,
                                          const Cyclo& c, const Rat& e1, const Rat& e2, const Rat& ebin) {
    LaurentRational r = constant(std::move(v1), std::move(v2), diff, order, c);
    r.P_ = e1;
    r.Q_ = e2;
    r.S_ = ebin;
    return r;
}

void LaurentRational::canonicalize() {
    if (g_.empty()) {
        P_ = Q_ = S_ = Rat(0);
        return;
    }
    long m1 = g_.begin()->first.first, m2 = g_.begin()->first.second;
    for (const auto& [e, c] : g_) {
        m1 = std::min(m1, e.first);
        m2 = std::min(m2, e.second);
    }
    if (m1 != 0 || m2 != 0) {
        Poly2 h;
        for (const auto& [e, c] : g_) h[{e.first - m1, e.second - m2}] = c;
        g_ = std::move(h);
        P_ += m1;
        Q_ += m2;
    }
    Poly2 q;
    while (g_.size() > 1 && poly_div_binomial(g_, diff_, order_, &q)) {
        g_ = q;
        S_ += 1;
        // re-strip monomial content after binomial division
        long n1 = g_.begin()->first.first, n2 = g_.begin()->first.second;
        for (const auto& [e, c] : g_) {
            n1 = std::min(n1, e.first);
            n2 = std::min(n2, e.second);
        }
        if (n1 != 0 || n2 != 0) {
            Poly2 h;
            for (const auto& [e, c] : g_) h[{e.first - n1, e.second - n2}] = c;
            g_ = std::move(h);
            P_ += n1;
            Q_ += n2;
        }
    }
}

static void require_same_ring(const LaurentRational& a, const LaurentRational& b) {
    if (a.v1() != b.v1() || a.v2() != b.v2() || a.diff() != b.diff())
        throw std::invalid_argument("Laurent rationals live in different rings");
}

LaurentRational LaurentRational::operator+(const LaurentRational& o) const {
    require_same_ring(*this, o);
    if (is_zero()) return o;
    if (o.is_zero()) return *this;
    // common prefactor: exponent-wise minimum; differences must be integral
    Rat dP = P_ - o.P_, dQ = Q_ - o.Q_, dS = S_ - o.S_;
    if (!is_integer(dP) || !is_integer(dQ) || !is_integer(dS))
        throw std::invalid_argument("sum of Laurent rationals across exponent cosets");
    LaurentRational r(v1_, v2_, diff_, std::max(order_, o.order_));
    r.P_ = std::min(P_, o.P_);
    r.Q_ = std::min(Q_, o.Q_);
    r.S_ = std::min(S_, o.S_);
    auto lifted = [&](const LaurentRational& f) {
        Poly2 m;
        long k = to_long(rat_num(f.S_ - r.S_));
        Poly2 bin;
        bin[{1, 0}] = Cyclo(r.order_, Rat(1));
        bin[{0, 1}] = Cyclo(r.order_, diff_ ? Rat(-1) : Rat(1));
        Poly2 acc;
        acc[{to_long(rat_num(f.P_ - r.P_)), to_long(rat_num(f.Q_ - r.Q_))}] = Cyclo(r.order_, Rat(1));
        for (long i = 0; i < k; ++i) acc = poly_mul(acc, bin);
        return poly_mul(acc, f.g_);
    };
    r.g_ = poly_add(lifted(*this), lifted(o));
    r.canonicalize();
    return r;
}

LaurentRational LaurentRational::operator-(const LaurentRational& o) const {
    return *this + o.scaled(Cyclo(o.order_, Rat(-1)));
}

LaurentRational LaurentRational::operator*(const LaurentRational& o) const {
    require_same_ring(*this, o);
    LaurentRational r(v1_, v2_, diff_, std::max(order_, o.order_));
    r.P_ = P_ + o.P_;
    r.Q_ = Q_ + o.Q_;
    r.S_ = S_ + o.S_;
    r.g_ = poly_mul(g_, o.g_);
    r.canonicalize();
    return r;
}

LaurentRational LaurentRational::scaled(const Cyclo& c) const {
    LaurentRational r = *this;
    if (c.is_zero()) return zero(v1_, v2_, diff_, order_);
    for (auto& [e, v] : r.g_) v *= c;
    return r;
}

LaurentRational LaurentRational::divided_by_unit(const LaurentRational& unit) const {
    require_same_ring(*this, unit);
    if (!unit.is_monomial()) throw std::invalid_argument("division only by ring units");
    const auto& [e, c] = *unit.g_.begin();
    LaurentRational r = *this;
    r.P_ -= unit.P_ + Rat(e.first);
    r.Q_ -= unit.Q_ + Rat(e.second);
    r.S_ -= unit.S_;
    Cyclo inv = c.inverse();
    for (auto& [ee, v] : r.g_) v *= inv;
    return r;
}

LaurentRational LaurentRational::substituted_difference(const std::string& y1, const std::string& y2) const {
    if (diff_) throw std::logic_error("substitution expects the (x0, x2) ring");
    // x0 -> (y1 - y2), x2 -> y2, x0 + x2 -> y1
    LaurentRational r(y1, y2, true, order_);
    r.P_ = S_;       // (x0+x2)^S -> y1^S
    r.Q_ = Q_;       // x2 -> y2
    r.S_ = P_;       // x0 -> (y1-y2)
    Poly2 acc;
    Poly2 bin;  // y1 - y2
    bin[{1, 0}] = Cyclo(order_, Rat(1));
    bin[{0, 1}] = Cyclo(order_, Rat(-1));
    for (const auto& [e, c] : g_) {
        Poly2 term;
        term[{0, e.second}] = c;  // x2^j -> y2^j
        Poly2 sum;                // (x0+x2)^0 stays 1; x0^i -> (y1-y2)^i
        sum[{0, 0}] = Cyclo(order_, Rat(1));
        for (long i = 0; i < e.first; ++i) sum = poly_mul(sum, bin);
        acc = poly_add(acc, poly_mul(term, sum));
    }
    r.g_ = acc;
    r.canonicalize();
    return r;
}

bool rat_equal(const LaurentRational& f, const LaurentRational& g) {
    require_same_ring(f, g);
    if (f.is_zero() || g.is_zero()) return f.is_zero() && g.is_zero();
    Rat dP = f.pre1() - g.pre1(), dQ = f.pre2() - g.pre2(), dS = f.prebin() - g.prebin();
    if (!is_integer(dP) || !is_integer(dQ) || !is_integer(dS)) return false;
    LaurentRational d = f - g;
    return d.is_zero();
}

namespace {

// expand (va sign vb)^t in nonnegative powers of vb, producing a series in (v1name, v2name)
// with the exponents placed at positions (pos_a, pos_b)
FormalSeries expand_binpow(const std::string& v1name, const std::string& v2name, int pos_a, const Rat& t,
                           bool diff, const Window& w, long order) {
    // pos_a = 0: (v1 sign v2)^t, exponents of v1 fractional
    std::string xi = pos_a == 0 ? v1name : v2name;
    std::string xj = pos_a == 0 ? v2name : v1name;
    Window bw = Window::all(2);
    bw.lo[0] = pos_a == 0 ? w.lo[0] : w.lo[1];
    bw.hi[0] = pos_a == 0 ? w.hi[0] : w.hi[1];
    bw.lo[1] = pos_a == 0 ? w.lo[1] : w.lo[0];
    bw.hi[1] = pos_a == 0 ? w.hi[1] : w.hi[0];
    FormalSeries e = binomial_expand(xi, diff ? -1 : +1, xj, t, bw, order);
    if (pos_a == 0) return e;
    return e.with_vars({v1name, v2name}, {1, 0});
}

}  // namespace

FormalSeries iota12(const LaurentRational& f, const Window& w) {
    const long order = f.scalar_order();
    FormalSeries acc({f.v1(), f.v2()}, order);
    acc.set_window(w);
    if (f.is_zero()) {
        acc.mark_complete();
        acc.set_window(Window::all(2));
        return acc;
    }
    // (v1 - v2)^S expanded in v2/v1, within a window widened by the poly support
    long d1 = 0, d2 = 0;
    for (const auto& [e, c] : f.poly()) {
        d1 = std::max(d1, e.first);
        d2 = std::max(d2, e.second);
    }
    Window bw = w;
    for (int v = 0; v < 2; ++v) {
        if (!bw.lo[v].infinite) bw.lo[v].value -= (v == 0 ? Rat(d1) + f.pre1() : Rat(d2) + f.pre2());
        if (!bw.hi[v].infinite) bw.hi[v].value -= (v == 0 ? f.pre1() : f.pre2());
    }
    FormalSeries bin = expand_binpow(f.v1(), f.v2(), 0, f.prebin(), f.diff(), bw, order);
    FormalSeries poly({f.v1(), f.v2()}, order);
    for (const auto& [e, c] : f.poly()) poly.add_term({f.pre1() + Rat(e.first), f.pre2() + Rat(e.second)}, c);
    poly.mark_complete();
    return bin.multiplied(poly).restricted(w);
}

FormalSeries iota21(const LaurentRational& f, const Window& w) {
    const long order = f.scalar_order();
    if (!f.diff()) throw std::logic_error("iota21 expects the (x1, x2) ring");
    FormalSeries acc({f.v1(), f.v2()}, order);
    acc.set_window(w);
    if (f.is_zero()) {
        acc.mark_complete();
        acc.set_window(Window::all(2));
        return acc;
    }
    long d1 = 0, d2 = 0;
    for (const auto& [e, c] : f.poly()) {
        d1 = std::max(d1, e.first);
        d2 = std::max(d2, e.second);
    }
    Window bw = w;
    if (!bw.lo[0].infinite) bw.lo[0].value -= Rat(d1) + f.pre1();
    if (!bw.hi[0].infinite) bw.hi[0].value -= f.pre1();
    if (!bw.lo[1].infinite) bw.lo[1].value -= Rat(d2) + f.pre2();
    if (!bw.hi[1].infinite) bw.hi[1].value -= f.pre2();
    // (x1 - x2)^S = e^{-i pi S} (x2 - x1)^S, expanded in x1/x2
    FormalSeries bin = expand_binpow(f.v1(), f.v2(), 1, f.prebin(), true, bw, order);
    bin = bin.scaled(Cyclo::e_i_pi(order, -f.prebin()));
    FormalSeries poly({f.v1(), f.v2()}, order);
    for (const auto& [e, c] : f.poly()) poly.add_term({f.pre1() + Rat(e.first), f.pre2() + Rat(e.second)}, c);
    poly.mark_complete();
    return bin.multiplied(poly).restricted(w);
}

FormalSeries iota20(const LaurentRational& f, const Window& w) {
    const long order = f.scalar_order();
    // f lives over (x1, x2) with (x1 - x2)^{-1}; result over (x0, x2):
    //   x1 -> x2 + x0 (expanded in x0/x2), (x1 - x2) -> x0.
    if (!f.diff()) throw std::logic_error("iota20 expects the (x1, x2) ring");
    FormalSeries acc({"x0", f.v2()}, order);
    acc.set_window(w);
    if (f.is_zero()) {
        acc.mark_complete();
        acc.set_window(Window::all(2));
        return acc;
    }
    bool first = true;
    for (const auto& [e, c] : f.poly()) {
        Rat t = f.pre1() + Rat(e.first);  // (x2 + x0)^t
        Window bw = Window::all(2);       // (x2, x0) ordering for the expansion
        bw.lo[0] = w.lo[1];
        bw.hi[0] = w.hi[1];
        bw.lo[1] = w.lo[0];
        bw.hi[1] = w.hi[0];
        if (!bw.lo[0].infinite) bw.lo[0].value -= f.pre2() + Rat(e.second);
        if (!bw.hi[0].infinite) bw.hi[0].value -= f.pre2() + Rat(e.second);
        if (!bw.lo[1].infinite) bw.lo[1].value -= f.prebin();
        if (!bw.hi[1].infinite) bw.hi[1].value -= f.prebin();
        FormalSeries term = binomial_expand(f.v2(), +1, "x0", t, bw, order);
        term = term.with_vars({"x0", f.v2()}, {1, 0});
        term = term.shifted({f.prebin(), f.pre2() + Rat(e.second)});
        term = term.scaled(c).restricted(w);
        acc = first ? term : acc + term;
        first = false;
    }
    return acc;
}

std::string LaurentRational::to_string() const {
    if (is_zero()) return "0";
    std::ostringstream os;
    os << v1_ << "^(" << rat_to_string(P_) << ") * " << v2_ << "^(" << rat_to_string(Q_) << ") * (" << v1_
       << (diff_ ? "-" : "+") << v2_ << ")^(" << rat_to_string(S_) << ") * [";
    bool first = true;
    for (const auto& [e, c] : g_) {
        if (!first) os << " + ";
        os << "(" << c.to_string() << ")";
        if (e.first) os << " " << v1_ << "^" << e.first;
        if (e.second) os << " " << v2_ << "^" << e.second;
        first = false;
    }
    os << "]";
    return os.str();
}

LaurentRational GBasisElement::as_rational(long order) const {
    return LaurentRational::monomial("x1", "x2", true, order, Cyclo(order, Rat(1)), a - c, b, c);
}

std::map<std::string, LaurentRational> decompose_in_gbasis(const LaurentRational& f,
                                                           const std::vector<GBasisElement>& basis) {
    std::map<std::string, LaurentRational> out;
    if (f.is_zero()) return out;
    Rat f1 = frac_part(f.pre1() + f.prebin());  // x1 exponent coset under iota12
    Rat f2 = frac_part(f.pre2());
    Rat fb = frac_part(f.prebin());
    for (const auto& el : basis) {
        if (frac_part(el.a) != f1 || frac_part(el.b) != f2 || frac_part(el.c) != fb) continue;
        LaurentRational unit = el.as_rational(f.scalar_order());
        LaurentRational q = f.divided_by_unit(unit);
        if (!q.integral())
            throw NotInSpanError("quotient by basis element '" + el.label + "' is not integral");
        out.emplace(el.label, q);
        return out;
    }
    throw NotInSpanError("no basis element matches the coset triple of " + f.to_string());
}

}  // namespace ioa
