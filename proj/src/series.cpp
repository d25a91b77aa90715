#include "ioa/series.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace ioa {

Window Window::all(size_t nvars) {
    Window w;
    w.lo.assign(nvars, Bound::inf());
    w.hi.assign(nvars, Bound::inf());
    return w;
}

Window Window::box(const Rat& lo, const Rat& hi, size_t nvars) {
    Window w;
    w.lo.assign(nvars, Bound::at(lo));
    w.hi.assign(nvars, Bound::at(hi));
    return w;
}

bool Window::contains(const std::vector<Rat>& e) const {
    for (size_t i = 0; i < lo.size(); ++i) {
        if (!lo[i].infinite && e[i] < lo[i].value) return false;
        if (!hi[i].infinite && e[i] > hi[i].value) return false;
    }
    return true;
}

Window Window::intersect(const Window& o) const {
    Window w = *this;
    for (size_t i = 0; i < lo.size(); ++i) {
        if (!o.lo[i].infinite && (w.lo[i].infinite || o.lo[i].value > w.lo[i].value)) w.lo[i] = o.lo[i];
        if (!o.hi[i].infinite && (w.hi[i].infinite || o.hi[i].value < w.hi[i].value)) w.hi[i] = o.hi[i];
    }
    return w;
}

Window Window::shifted(const std::vector<Rat>& by) const {
    Window w = *this;
    for (size_t i = 0; i < lo.size(); ++i) {
        if (!w.lo[i].infinite) w.lo[i].value += by[i];
        if (!w.hi[i].infinite) w.hi[i].value += by[i];
    }
    return w;
}

bool Window::empty() const {
    for (size_t i = 0; i < lo.size(); ++i)
        if (!lo[i].infinite && !hi[i].infinite && lo[i].value > hi[i].value) return true;
    return false;
}

std::string Window::to_string() const {
    std::ostringstream os;
    for (size_t i = 0; i < lo.size(); ++i) {
        os << (i ? " x " : "") << "[" << (lo[i].infinite ? "-inf" : rat_to_string(lo[i].value)) << ","
           << (hi[i].infinite ? "+inf" : rat_to_string(hi[i].value)) << "]";
    }
    return os.str();
}

FormalSeries::FormalSeries(std::vector<std::string> vars, long order)
    : vars_(std::move(vars)), order_(order), window_(Window::all(vars_.size())),
      zero_below_(vars_.size(), false), zero_above_(vars_.size(), false) {}

bool FormalSeries::complete() const {
    for (size_t v = 0; v < vars_.size(); ++v)
        if (!zero_below_[v] || !zero_above_[v]) return false;
    return true;
}

void FormalSeries::mark_complete() {
    // tighten the window to the support hull and certify vanishing outside
    for (size_t v = 0; v < vars_.size(); ++v) {
        zero_below_[v] = zero_above_[v] = true;
        if (terms_.empty()) continue;
        Rat lo = terms_.begin()->first[v], hi = lo;
        for (const auto& [e, c] : terms_) {
            lo = std::min(lo, e[v]);
            hi = std::max(hi, e[v]);
        }
        window_.lo[v] = Bound::at(lo);
        window_.hi[v] = Bound::at(hi);
    }
    if (terms_.empty()) window_ = Window::all(vars_.size());
}

void FormalSeries::add_term(const ExpKey& e, const Cyclo& c) {
    if (e.size() != vars_.size()) throw std::invalid_argument("exponent arity mismatch");
    if (c.is_zero()) return;
    auto it = terms_.find(e);
    if (it == terms_.end()) {
        terms_.emplace(e, c);
    } else {
        it->second += c;
        if (it->second.is_zero()) terms_.erase(it);
    }
}

bool FormalSeries::certified_at(const ExpKey& e) const {
    if (window_.contains(e)) return true;
    for (size_t v = 0; v < vars_.size(); ++v) {
        bool below = !window_.lo[v].infinite && e[v] < window_.lo[v].value;
        bool above = !window_.hi[v].infinite && e[v] > window_.hi[v].value;
        if (below && zero_below_[v]) return true;  // certified zero
        if (above && zero_above_[v]) return true;
        if (below || above) return false;
    }
    return false;
}

Cyclo FormalSeries::coefficient(const ExpKey& e) const {
    if (!certified_at(e))
        throw UncertifiedRegionError("coefficient requested outside the certified window");
    auto it = terms_.find(e);
    return it == terms_.end() ? Cyclo(order_) : it->second;
}

static void require_same_vars(const FormalSeries& a, const FormalSeries& b) {
    if (a.vars() != b.vars()) throw std::invalid_argument("formal series variable mismatch");
}

FormalSeries FormalSeries::operator+(const FormalSeries& o) const {
    require_same_vars(*this, o);
    FormalSeries r(vars_, std::max(order_, o.order_));
    r.window_ = window_.intersect(o.window_);
    auto same_bound = [](const Bound& a, const Bound& b) {
        return (a.infinite && b.infinite) || (!a.infinite && !b.infinite && a.value == b.value);
    };
    for (size_t v = 0; v < vars_.size(); ++v) {
        // the truncation claim is tied to the window edge, so it survives the sum
        // only when both operands certify vanishing below/above the same edge
        r.zero_below_[v] = zero_below_[v] && o.zero_below_[v] && same_bound(window_.lo[v], o.window_.lo[v]);
        r.zero_above_[v] = zero_above_[v] && o.zero_above_[v] && same_bound(window_.hi[v], o.window_.hi[v]);
    }
    for (const auto& [e, c] : terms_)
        if (r.window_.contains(e)) r.add_term(e, c);
    for (const auto& [e, c] : o.terms_)
        if (r.window_.contains(e)) r.add_term(e, c);
    return r;
}

FormalSeries FormalSeries::operator-(const FormalSeries& o) const {
    return *this + o.scaled(Cyclo(o.scalar_order(), Rat(-1)));
}

FormalSeries FormalSeries::scaled(const Cyclo& c) const {
    FormalSeries r(vars_, std::max(order_, c.order()));
    r.window_ = window_;
    r.zero_below_ = zero_below_;
    r.zero_above_ = zero_above_;
    if (c.is_zero()) return r;
    for (const auto& [e, v] : terms_) r.add_term(e, v * c);
    return r;
}

namespace {
struct IVal {  // interval with infinities
    bool lo_inf, hi_inf;
    Rat lo, hi;
};
}  // namespace

FormalSeries FormalSeries::multiplied(const FormalSeries& o) const {
    require_same_vars(*this, o);
    const size_t nv = vars_.size();
    const FormalSeries& a = *this;
    const FormalSeries& b = o;

    auto support = [&](const FormalSeries& s, size_t v) {
        IVal iv;
        iv.lo_inf = !(s.zero_below_[v] && !s.window_.lo[v].infinite);
        iv.hi_inf = !(s.zero_above_[v] && !s.window_.hi[v].infinite);
        if (!iv.lo_inf) iv.lo = s.window_.lo[v].value;
        if (!iv.hi_inf) iv.hi = s.window_.hi[v].value;
        return iv;
    };

    // summability: per variable, one factor bounded below and the other above
    for (size_t v = 0; v < nv; ++v) {
        IVal sa = support(a, v), sb = support(b, v);
        bool ok = (!sa.lo_inf && !sb.hi_inf) || (!sb.lo_inf && !sa.hi_inf) ||
                  (!sa.lo_inf && !sa.hi_inf) || (!sb.lo_inf && !sb.hi_inf);
        if (!ok)
            throw InfiniteConvolutionError("product coefficient in '" + vars_[v] +
                                           "' is an infinite sum");
    }

    FormalSeries r(vars_, std::max(order_, o.order_));
    // certified window: e safe iff no unknown coefficient of either factor can reach e
    for (size_t v = 0; v < nv; ++v) {
        Bound lo = Bound::inf(), hi = Bound::inf();
        IVal sa = support(a, v), sb = support(b, v);
        auto tighten_lo = [&](const FormalSeries& s, const IVal& other) {
            // unknown region of s below its window: e < s.lo + other.hi unsafe
            if (!s.window_.lo[v].infinite && !s.zero_below_[v]) {
                if (other.hi_inf) { lo = Bound::at(Rat(1)); hi = Bound::at(Rat(0)); return; }  // empty
                Rat m = s.window_.lo[v].value + other.hi;
                if (lo.infinite || m > lo.value) lo = Bound::at(m);
            }
        };
        auto tighten_hi = [&](const FormalSeries& s, const IVal& other) {
            if (!s.window_.hi[v].infinite && !s.zero_above_[v]) {
                if (other.lo_inf) { lo = Bound::at(Rat(1)); hi = Bound::at(Rat(0)); return; }
                Rat m = s.window_.hi[v].value + other.lo;
                if (hi.infinite || m < hi.value) hi = Bound::at(m);
            }
        };
        tighten_lo(a, sb);
        tighten_lo(b, sa);
        tighten_hi(a, sb);
        tighten_hi(b, sa);
        r.window_.lo[v] = lo;
        r.window_.hi[v] = hi;
        r.zero_below_[v] = !sa.lo_inf && !sb.lo_inf && lo.infinite;
        r.zero_above_[v] = !sa.hi_inf && !sb.hi_inf && hi.infinite;
        if (r.zero_below_[v]) r.window_.lo[v] = Bound::at(sa.lo + sb.lo);
        if (r.zero_above_[v]) r.window_.hi[v] = Bound::at(sa.hi + sb.hi);
    }

    for (const auto& [ea, ca] : a.terms_) {
        for (const auto& [eb, cb] : b.terms_) {
            ExpKey e(nv);
            for (size_t v = 0; v < nv; ++v) e[v] = ea[v] + eb[v];
            if (r.window_.contains(e)) r.add_term(e, ca * cb);
        }
    }
    return r;
}

FormalSeries FormalSeries::residue(const std::string& var) const {
    size_t vi = var_index(var);
    {
        ExpKey probe(vars_.size(), Rat(0));
        probe[vi] = Rat(-1);
        bool in_range = (window_.lo[vi].infinite || window_.lo[vi].value <= Rat(-1)) &&
                        (window_.hi[vi].infinite || window_.hi[vi].value >= Rat(-1));
        if (!in_range && !(zero_below_[vi] && !window_.lo[vi].infinite && window_.lo[vi].value > Rat(-1)) &&
            !(zero_above_[vi] && !window_.hi[vi].infinite && window_.hi[vi].value < Rat(-1)))
            throw UncertifiedRegionError("residue exponent -1 outside the certified window of '" + var + "'");
    }
    std::vector<std::string> nvars;
    std::vector<size_t> keep;
    for (size_t v = 0; v < vars_.size(); ++v)
        if (v != vi) { nvars.push_back(vars_[v]); keep.push_back(v); }
    FormalSeries r(nvars, order_);
    for (size_t j = 0; j < keep.size(); ++j) {
        r.window_.lo[j] = window_.lo[keep[j]];
        r.window_.hi[j] = window_.hi[keep[j]];
        r.zero_below_[j] = zero_below_[keep[j]];
        r.zero_above_[j] = zero_above_[keep[j]];
    }
    for (const auto& [e, c] : terms_) {
        if (e[vi] != Rat(-1)) continue;
        ExpKey k;
        for (size_t v : keep) k.push_back(e[v]);
        r.add_term(k, c);
    }
    return r;
}

FormalSeries FormalSeries::derivative(const std::string& var) const {
    size_t vi = var_index(var);
    FormalSeries r(vars_, order_);
    r.window_ = window_;
    if (!r.window_.lo[vi].infinite) r.window_.lo[vi].value -= 1;
    if (!r.window_.hi[vi].infinite) r.window_.hi[vi].value -= 1;
    r.zero_below_ = zero_below_;
    r.zero_above_ = zero_above_;
    for (const auto& [e, c] : terms_) {
        if (e[vi] == 0) continue;
        ExpKey k = e;
        k[vi] -= 1;
        r.add_term(k, c * Cyclo(order_, e[vi]));
    }
    return r;
}

FormalSeries FormalSeries::phase_substituted(const std::string& var, long half_turns) const {
    size_t vi = var_index(var);
    FormalSeries r(vars_, order_);
    r.window_ = window_;
    r.zero_below_ = zero_below_;
    r.zero_above_ = zero_above_;
    for (const auto& [e, c] : terms_) {
        Cyclo phase = Cyclo::e_i_pi(order_, Rat(half_turns) * e[vi]);
        r.add_term(e, c * phase);
    }
    return r;
}

FormalSeries FormalSeries::restricted(const Window& w) const {
    FormalSeries r(vars_, order_);
    r.window_ = window_.intersect(w);
    r.zero_below_ = zero_below_;
    r.zero_above_ = zero_above_;
    for (const auto& [e, c] : terms_)
        if (r.window_.contains(e)) r.add_term(e, c);
    return r;
}

FormalSeries FormalSeries::shifted(const ExpKey& by) const {
    FormalSeries r(vars_, order_);
    r.window_ = window_.shifted(by);
    r.zero_below_ = zero_below_;
    r.zero_above_ = zero_above_;
    for (const auto& [e, c] : terms_) {
        ExpKey k = e;
        for (size_t v = 0; v < k.size(); ++v) k[v] += by[v];
        r.add_term(k, c);
    }
    return r;
}

FormalSeries FormalSeries::with_vars(std::vector<std::string> vars, const std::vector<size_t>& perm) const {
    FormalSeries r(std::move(vars), order_);
    for (size_t j = 0; j < perm.size(); ++j) {
        r.window_.lo[j] = window_.lo[perm[j]];
        r.window_.hi[j] = window_.hi[perm[j]];
        r.zero_below_[j] = zero_below_[perm[j]];
        r.zero_above_[j] = zero_above_[perm[j]];
    }
    for (const auto& [e, c] : terms_) {
        ExpKey k(perm.size());
        for (size_t j = 0; j < perm.size(); ++j) k[j] = e[perm[j]];
        r.add_term(k, c);
    }
    return r;
}

bool FormalSeries::equal_on(const FormalSeries& o, const Window& w, ExpKey* witness) const {
    require_same_vars(*this, o);
    Window cmp = w.intersect(window_).intersect(o.window_);
    std::map<ExpKey, int> keys;
    for (const auto& [e, c] : terms_)
        if (cmp.contains(e)) keys[e] = 1;
    for (const auto& [e, c] : o.terms_)
        if (cmp.contains(e)) keys[e] = 1;
    for (const auto& [e, tag] : keys) {
        auto ia = terms_.find(e);
        auto ib = o.terms_.find(e);
        Cyclo ca = ia == terms_.end() ? Cyclo(order_) : ia->second;
        Cyclo cb = ib == o.terms_.end() ? Cyclo(o.order_) : ib->second;
        if (!(ca == cb)) {
            if (witness) *witness = e;
            return false;
        }
    }
    return true;
}

std::string FormalSeries::dump() const {
    std::ostringstream os;
    for (const auto& [e, c] : terms_) {
        for (size_t v = 0; v < e.size(); ++v) os << (v ? " " : "") << rat_to_string(e[v]);
        os << " : " << c.to_string() << "\n";
    }
    return os.str();
}

// tensor product of one-variable series into a two-variable series
FormalSeries tensor_product(const FormalSeries& f, const FormalSeries& g, const std::string& v1,
                            const std::string& v2) {
    long order = std::max(f.scalar_order(), g.scalar_order());
    FormalSeries r({v1, v2}, order);
    Window w = Window::all(2);
    w.lo[0] = f.window().lo[0];
    w.hi[0] = f.window().hi[0];
    w.lo[1] = g.window().lo[0];
    w.hi[1] = g.window().hi[0];
    r.set_window(w);
    r.set_zero_below(0, f.zero_below(0));
    r.set_zero_above(0, f.zero_above(0));
    r.set_zero_below(1, g.zero_below(0));
    r.set_zero_above(1, g.zero_above(0));
    for (const auto& [ef, cf] : f.terms())
        for (const auto& [eg, cg] : g.terms()) r.add_term({ef[0], eg[0]}, cf * cg);
    return r;
}

// lift a two-variable series to (x0, x1, x2) with the named free variable at exponent 0
FormalSeries lift_to_three(const FormalSeries& s, const std::string& freevar, size_t freepos) {
    std::vector<std::string> vars(3);
    vars[freepos] = freevar;
    size_t p = 0;
    std::vector<size_t> spots;
    for (size_t i = 0; i < 3; ++i)
        if (i != freepos) {
            vars[i] = s.vars()[p++];
            spots.push_back(i);
        }
    FormalSeries r(vars, s.scalar_order());
    Window w = Window::all(3);
    w.lo[freepos] = Bound::at(Rat(0));
    w.hi[freepos] = Bound::at(Rat(0));
    for (size_t j = 0; j < 2; ++j) {
        w.lo[spots[j]] = s.window().lo[j];
        w.hi[spots[j]] = s.window().hi[j];
    }
    r.set_window(w);
    r.set_zero_below(freepos, true);
    r.set_zero_above(freepos, true);
    for (size_t j = 0; j < 2; ++j) {
        r.set_zero_below(spots[j], s.zero_below(j));
        r.set_zero_above(spots[j], s.zero_above(j));
    }
    for (const auto& [e, c] : s.terms()) {
        ExpKey k(3, Rat(0));
        k[spots[0]] = e[0];
        k[spots[1]] = e[1];
        r.add_term(k, c);
    }
    return r;
}


size_t FormalSeries::var_index(const std::string& v) const {
    for (size_t i = 0; i < vars_.size(); ++i)
        if (vars_[i] == v) return i;
    throw std::invalid_argument("unknown variable '" + v + "'");
}

FormalSeries delta_series(const std::string& var, const Window& w, long order) {
    FormalSeries r({var}, order);
    r.set_window(w);
    if (w.lo[0].infinite || w.hi[0].infinite)
        throw std::invalid_argument("delta series needs a finite window");
    for (Int n = floor_int(w.lo[0].value) + (frac_part(w.lo[0].value) == 0 ? 0 : 1); Rat(n) <= w.hi[0].value; ++n)
        r.add_term({Rat(n)}, Cyclo(order, Rat(1)));
    return r;
}

FormalSeries binomial_expand(const std::string& xi, int sign, const std::string& xj, const Rat& exponent,
                             const Window& w, long order) {
    FormalSeries r({xi, xj}, order);
    r.set_window(w);
    r.set_zero_above(0, true);   // exponents of xi are at most `exponent`
    r.set_zero_below(1, true);   // exponents of xj are nonnegative
    {
        Window tw = r.window();
        if (tw.hi[0].infinite || tw.hi[0].value > exponent) tw.hi[0] = Bound::at(exponent);
        if (tw.lo[1].infinite || tw.lo[1].value < Rat(0)) tw.lo[1] = Bound::at(Rat(0));
        r.set_window(tw);
    }
    // m bounded by the window in both variables
    long m_lo = 0, m_hi = -1;
    const Window& rw = r.window();
    {
        // xj exponent = m in [lo1, hi1]; xi exponent = exponent - m in [lo0, hi0]
        Rat lo1 = rw.lo[1].value;
        if (rw.hi[1].infinite || rw.lo[0].infinite)
            throw std::invalid_argument("binomial expansion needs a finite window");
        Rat hi1 = rw.hi[1].value;
        Rat lo0 = rw.lo[0].value;
        Rat hi_from_x0 = exponent - lo0;
        if (hi_from_x0 < hi1) hi1 = hi_from_x0;
        m_lo = (long)to_long(floor_int(lo1)) + (frac_part(lo1) == 0 ? 0 : 1);
        m_lo = std::max<long>(m_lo, 0);
        m_hi = (long)to_long(floor_int(hi1));
    }
    for (long m = m_lo; m <= m_hi; ++m) {
        Rat coef = binom(exponent, m);
        if (coef == 0) continue;
        Cyclo c(order, coef);
        if (sign < 0 && (m % 2)) c = -c;
        r.add_term({exponent - Rat(m), Rat(m)}, c);
    }
    // finite expansions are complete
    if (is_integer(exponent) && exponent >= 0) {
        // support is m in [0, exponent]: complete iff the window covered it
        if (m_lo == 0 && Rat(m_hi) >= exponent) r.mark_complete();
    }
    return r;
}

FormalSeries delta_two_summand(const std::string& xa, int sign, const std::string& xb,
                               const std::string& x0, int denom_sign, const Rat& coset, const Window& w,
                               long order) {
    if (w.size() != 3) throw std::invalid_argument("delta_two_summand wants a 3-variable window (x0, xa, xb)");
    FormalSeries r({x0, xa, xb}, order);
    r.set_window(w);
    for (size_t v = 0; v < 3; ++v)
        if (w.lo[v].infinite || w.hi[v].infinite)
            throw std::invalid_argument("delta_two_summand needs a finite window");
    // n ranges over coset + Z with -n-1 inside the x0 window
    Rat n_lo = -w.hi[0].value - 1, n_hi = -w.lo[0].value - 1;
    Rat fc = frac_part(coset);
    Rat n_start = Rat(floor_int(n_lo)) + fc;
    while (n_start < n_lo) n_start += 1;
    r.set_zero_below(2, true);  // xb exponents are m >= 0
    {
        Window tw = r.window();
        if (tw.lo[2].value < Rat(0)) tw.lo[2] = Bound::at(Rat(0));
        r.set_window(tw);
    }
    for (Rat n = n_start; n <= n_hi; n += 1) {
        Cyclo x0phase(order, Rat(1));
        if (denom_sign < 0) x0phase = Cyclo::e_i_pi(order, -(n + 1));  // (-x0)^{-n-1} lower continuation
        // m over the xb window, xa exponent n-m within its window
        Rat m_hi_r = r.window().hi[2].value;
        Rat m_from_xa = n - r.window().lo[1].value;
        if (m_from_xa < m_hi_r) m_hi_r = m_from_xa;
        Rat m_lo_r = r.window().lo[2].value;
        Rat m_from_xa_hi = n - r.window().hi[1].value;
        if (m_from_xa_hi > m_lo_r) m_lo_r = m_from_xa_hi;
        if (!is_integer(m_lo_r)) m_lo_r = Rat(floor_int(m_lo_r)) + 1;
        for (Rat mr = m_lo_r; mr <= m_hi_r; mr += 1) {
            long m = to_long(rat_num(mr));
            if (m < 0) continue;
            Rat coef = binom(n, m);
            if (coef == 0) continue;
            Cyclo c(order, coef);
            if (sign < 0 && (m % 2)) c = -c;
            c = c * x0phase;
            r.add_term({-n - 1, n - Rat(m), Rat(m)}, c);
        }
    }
    return r;
}

}  // namespace ioa
