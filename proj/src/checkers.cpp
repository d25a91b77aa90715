#include "ioa/checkers.hpp"

#include <sstream>

namespace ioa {

namespace {

CVec unit_vec(long dim, long idx, long order) {
    CVec v(dim);
    for (long i = 0; i < dim; ++i) v[i] = Cyclo(order, Rat(i == idx ? 1 : 0));
    return v;
}

std::string state_str(const AlgebraInstance& inst, Color a, StateRef s) {
    return inst.alg.colors[a] + "[" + std::to_string(s.level) + "," + std::to_string(s.index) + "]";
}

}  // namespace

VirasoroModes::VirasoroModes(const AlgebraInstance& inst) : inst_(inst) {
    certified_ = inst.omega.has_value();
}

std::optional<CMat> VirasoroModes::L(Color a, long n, long level) const {
    if (!certified_) return std::nullopt;
    const auto& sp = inst_.space(a);
    long lout = level - n;
    if (!sp.certified(level)) return std::nullopt;
    if (lout < 0) {
        // grading restriction: certified zero map
        CMat z(0, sp.dim(level));
        return z;
    }
    if (!sp.certified(lout)) return std::nullopt;
    const OperatorTable& tab = inst_.module_action(a);
    CMat m(sp.dim(lout), sp.dim(level));
    for (long r = 0; r < m.rows(); ++r)
        for (long c = 0; c < m.cols(); ++c) m(r, c) = Cyclo(inst_.order);
    const CVec& om = *inst_.omega;
    for (const auto& [key, vec] : tab.entries) {
        if (key.in1.level != 2 || key.in2.level != level) continue;
        if (key.n != Rat(n + 1)) continue;  // L(n) = Res x^{n+1} Y(omega, x)
        Cyclo w = om[key.in1.index];
        if (w.is_zero()) continue;
        for (long r = 0; r < vec.size(); ++r) m(r, key.in2.index) += w * vec[r];
    }
    return m;
}

OperatorTable omega_r(const AlgebraInstance& inst, const OperatorTable& table, long r) {
    OperatorTable out;
    out.a1 = table.a2;
    out.a2 = table.a1;
    out.a3 = table.a3;
    VirasoroModes vir(inst);
    const auto& sp3 = inst.space(table.a3);
    // raising possible only with a certified Virasoro action, unless no room above
    bool room_above = false;
    for (long l = 1; l <= sp3.truncation; ++l)
        if (sp3.dim(l) > 0) room_above = true;
    if (room_above && !vir.certified())
        throw UncertifiedRegionError(
            "omega_r needs e^{xL(-1)} but the Virasoro vector lies outside truncation");
    for (const auto& [key, vec] : table.entries) {
        // phase: coefficient at x^{-n-1} of Y(w1, e^{(2r+1) pi i} x) w2
        Cyclo phase = Cyclo::e_i_pi(inst.order, Rat(2 * r + 1) * (-key.n - 1));
        OperatorTable::Key nk{key.in2, key.in1, key.n};
        CVec base = vec * phase;
        auto ins = [&](const OperatorTable::Key& k, const CVec& v) {
            bool nonzero = false;
            for (long i = 0; i < v.size(); ++i) nonzero = nonzero || !v[i].is_zero();
            if (!nonzero) return;
            auto it = out.entries.find(k);
            if (it == out.entries.end()) out.entries[k] = v;
            else it->second += v;
        };
        ins(nk, base);
        // e^{xL(-1)}: term k raises the output level by k and the exponent by k
        Rat lvl = inst.weight(table.a1, key.in1.level) + inst.weight(table.a2, key.in2.level) - key.n - 1 -
                  sp3.base_weight;
        long lout = to_long(rat_num(lvl));
        CVec cur = base;
        for (long k = 1; lout + k <= sp3.truncation; ++k) {
            auto Lm1 = vir.L(table.a3, -1, lout + k - 1);
            if (!Lm1) break;
            cur = (*Lm1) * cur;
            CVec scaled = cur * Cyclo(inst.order, Rat(1, 1) / Rat(factorial(k)));
            ins(OperatorTable::Key{key.in2, key.in1, key.n - Rat(k)}, scaled);
        }
    }
    // prune zero vectors
    for (auto it = out.entries.begin(); it != out.entries.end();) {
        bool nonzero = false;
        for (long i = 0; i < it->second.size(); ++i) nonzero = nonzero || !it->second[i].is_zero();
        it = nonzero ? std::next(it) : out.entries.erase(it);
    }
    return out;
}

FormalSeries matrix_coefficient(const AlgebraInstance& inst, const OperatorTable& table, StateRef w1,
                                StateRef w2, StateRef dual, const std::string& var, const Window& w) {
    CVec v1 = unit_vec(inst.space(table.a1).dim(w1.level), w1.index, inst.order);
    CVec v2 = unit_vec(inst.space(table.a2).dim(w2.level), w2.index, inst.order);
    VectorSeries vs = intertwiner_apply(inst, table, v1, w1.level, v2, w2.level, var, w);
    return dual_pair(vs, dual, inst.order);
}

namespace {

// all certified basis states of a color
std::vector<StateRef> states_of(const AlgebraInstance& inst, Color a) {
    std::vector<StateRef> out;
    const auto& sp = inst.space(a);
    for (long l = 0; l <= sp.truncation; ++l)
        for (long i = 0; i < sp.dim(l); ++i) out.push_back({l, i});
    return out;
}

}  // namespace

// <dual, A(u, x1) B(w1, x2) w2>: compose two tables through the intermediate color
FormalSeries product_coefficient(const AlgebraInstance& inst, const OperatorTable& outer,
                                 const OperatorTable& inner, StateRef u, StateRef w1, StateRef w2,
                                 StateRef dual, const Window& box2) {
    // inner: B(w1, x2) w2 -> W^{inner.a3}; outer: A(u, x1) s -> paired with dual
    FormalSeries acc({"x1", "x2"}, inst.order);
    acc.set_window(Window::all(2));
    bool first = true;
    Window w1d = Window::all(1);
    w1d.lo[0] = box2.lo[0];
    w1d.hi[0] = box2.hi[0];
    Window w2d = Window::all(1);
    w2d.lo[0] = box2.lo[1];
    w2d.hi[0] = box2.hi[1];
    CVec v1 = unit_vec(inst.space(inner.a1).dim(w1.level), w1.index, inst.order);
    CVec v2 = unit_vec(inst.space(inner.a2).dim(w2.level), w2.index, inst.order);
    VectorSeries innerv = intertwiner_apply(inst, inner, v1, w1.level, v2, w2.level, "x2", w2d);
    CVec uu = unit_vec(inst.space(outer.a1).dim(u.level), u.index, inst.order);
    for (const auto& [s, series2] : innerv.components) {
        if (series2.terms().empty() && !first) {
            // still contributes its window; handled through tensor windows below
        }
        CVec es = unit_vec(inst.space(outer.a2).dim(s.level), s.index, inst.order);
        VectorSeries outv = intertwiner_apply(inst, outer, uu, u.level, es, s.level, "x1", w1d);
        FormalSeries f1 = dual_pair(outv, dual, inst.order);
        FormalSeries t = tensor_product(f1, series2, "x1", "x2");
        acc = first ? t : acc + t;
        first = false;
    }
    if (first) {
        // no certified intermediate states at all
        Window empty = Window::all(2);
        empty.lo[0] = Bound::at(Rat(1));
        empty.hi[0] = Bound::at(Rat(0));
        acc.set_window(empty);
    }
    return acc;
}

// <dual, B'(D(u, x0) w1, x2) w2>
FormalSeries iterate_coefficient(const AlgebraInstance& inst, const OperatorTable& outer,
                                 const OperatorTable& inner, StateRef u, StateRef w1, StateRef w2,
                                 StateRef dual, const Window& box2) {
    FormalSeries acc({"x0", "x2"}, inst.order);
    acc.set_window(Window::all(2));
    bool first = true;
    Window w0d = Window::all(1);
    w0d.lo[0] = box2.lo[0];
    w0d.hi[0] = box2.hi[0];
    Window w2d = Window::all(1);
    w2d.lo[0] = box2.lo[1];
    w2d.hi[0] = box2.hi[1];
    CVec uu = unit_vec(inst.space(inner.a1).dim(u.level), u.index, inst.order);
    CVec v1 = unit_vec(inst.space(inner.a2).dim(w1.level), w1.index, inst.order);
    VectorSeries innerv = intertwiner_apply(inst, inner, uu, u.level, v1, w1.level, "x0", w0d);
    CVec v2 = unit_vec(inst.space(outer.a2).dim(w2.level), w2.index, inst.order);
    for (const auto& [s, series0] : innerv.components) {
        CVec es = unit_vec(inst.space(outer.a1).dim(s.level), s.index, inst.order);
        VectorSeries outv = intertwiner_apply(inst, outer, es, s.level, v2, w2.level, "x2", w2d);
        FormalSeries f2 = dual_pair(outv, dual, inst.order);
        FormalSeries t = tensor_product(series0, f2, "x0", "x2");
        acc = first ? t : acc + t;
        first = false;
    }
    if (first) {
        Window empty = Window::all(2);
        empty.lo[0] = Bound::at(Rat(1));
        empty.hi[0] = Bound::at(Rat(0));
        acc.set_window(empty);
    }
    return acc;
}

namespace {

// s2's slots: product_coefficient(outer2, inner2, w1-as-"u", u-as-"w1", ...) gives
// <dual, B(w1, x1) C(u, x2) w2> with B in x1.  The Jacobi identity wants B in x2 and
// C(u) in x1, so swap the variable roles.
FormalSeries swap_xy(const FormalSeries& s) { return s.with_vars({"x1", "x2"}, {1, 0}); }

}  // namespace

// --- the concrete check routines ---

namespace {

void check_identity_property(const AlgebraInstance& inst, Color a, CheckReport& rep, long window,
                             bool demand_unit, Cyclo* lambda_out = nullptr) {
    const OperatorTable& tab = inst.module_action(a);
    Window box = Window::box(Rat(-window), Rat(window), 1);
    // Y(1, x) w = lambda w (lambda = 1 when demand_unit)
    Cyclo lambda(inst.order);
    bool lambda_set = false;
    for (StateRef s : states_of(inst, a)) {
        CVec w2 = unit_vec(inst.space(a).dim(s.level), s.index, inst.order);
        VectorSeries vs = intertwiner_apply(inst, tab, inst.vacuum, 0, w2, s.level, "x", box);
        // expected: lambda * w at exponent 0, zero elsewhere
        for (const auto& [t, ser] : vs.components) {
            for (const auto& [e, c] : ser.terms()) {
                bool diagonal = (t == s) && e[0] == 0;
                if (!diagonal) {
                    Witness w;
                    w.exponents = e;
                    w.location = "Y(1,x) on " + state_str(inst, a, s) + " hits " + state_str(inst, a, t);
                    w.expected = "0";
                    w.actual = c.to_string();
                    rep.fail("identity-property", w);
                    return;
                }
                if (!lambda_set) {
                    lambda = c;
                    lambda_set = true;
                } else if (!(lambda == c)) {
                    Witness w;
                    w.exponents = e;
                    w.location = "Y(1,x) on " + state_str(inst, a, s);
                    w.expected = lambda.to_string();
                    w.actual = c.to_string();
                    rep.fail("identity-property", w, "lambda_Y not constant across the module");
                    return;
                }
            }
            // missing diagonal coefficient: lambda would be 0
        }
        // verify the diagonal term exists
        auto it = vs.components.find(s);
        bool has_diag = it != vs.components.end() && it->second.terms().count(ExpKey{Rat(0)}) > 0;
        if (!has_diag) {
            if (ExpKey probe{Rat(0)}; it != vs.components.end() && it->second.certified_at(probe)) {
                Witness w;
                w.exponents = {Rat(0)};
                w.location = "Y(1,x) on " + state_str(inst, a, s);
                w.expected = "lambda != 0";
                w.actual = "0";
                rep.fail("identity-property", w);
                return;
            }
        }
    }
    if (demand_unit && lambda_set && !(lambda == Cyclo(inst.order, Rat(1)))) {
        Witness w;
        w.exponents = {Rat(0)};
        w.location = "Y(1,x) on W^" + inst.alg.colors[a];
        w.expected = "1";
        w.actual = lambda.to_string();
        rep.fail("identity-property", w, "module vertex operator must act as the identity");
        return;
    }
    std::string note = lambda_set ? ("lambda_Y = " + lambda.to_string()) : "vacuously (zero module)";
    if (lambda_out && lambda_set) *lambda_out = lambda;
    rep.pass("identity-property", note);
}

void check_creation_property(const AlgebraInstance& inst, Color a, CheckReport& rep, long window,
                             bool demand_unit) {
    // Y(w, x) 1 in W[[x]] with constant term mu * w, via the V_{a e}^{a} table
    if (inst.alg.N(a, inst.alg.identity, a) != 1) {
        rep.skip("creation-property", "no V_{a e}^{a} intertwiner declared");
        return;
    }
    const OperatorTable& tab = inst.tables(a, inst.alg.identity, a)[0];
    Window box = Window::box(Rat(-window), Rat(window), 1);
    Cyclo mu(inst.order);
    bool mu_set = false;
    for (StateRef s : states_of(inst, a)) {
        CVec w1 = unit_vec(inst.space(a).dim(s.level), s.index, inst.order);
        VectorSeries vs = intertwiner_apply(inst, tab, w1, s.level, inst.vacuum, 0, "x", box);
        for (const auto& [t, ser] : vs.components) {
            for (const auto& [e, c] : ser.terms()) {
                if (e[0] < 0 || !is_integer(e[0])) {
                    Witness w;
                    w.exponents = e;
                    w.location = "Y(" + state_str(inst, a, s) + ", x) vacuum";
                    w.expected = "0 (creation: only nonnegative integral powers)";
                    w.actual = c.to_string();
                    rep.fail("creation-property", w);
                    return;
                }
                if (e[0] == 0) {
                    if (!(t == s)) {
                        Witness w;
                        w.exponents = e;
                        w.location = "constant term of Y(" + state_str(inst, a, s) + ", x) vacuum";
                        w.expected = "mu * " + state_str(inst, a, s);
                        w.actual = "component on " + state_str(inst, a, t);
                        rep.fail("creation-property", w);
                        return;
                    }
                    if (!mu_set) {
                        mu = c;
                        mu_set = true;
                    } else if (!(mu == c)) {
                        Witness w;
                        w.exponents = e;
                        w.location = "constant term of Y(" + state_str(inst, a, s) + ", x) vacuum";
                        w.expected = mu.to_string();
                        w.actual = c.to_string();
                        rep.fail("creation-property", w, "mu_Y not constant across the module");
                        return;
                    }
                }
            }
        }
    }
    if (demand_unit && mu_set && !(mu == Cyclo(inst.order, Rat(1)))) {
        Witness w;
        w.exponents = {Rat(0)};
        w.location = "creation on W^" + inst.alg.colors[a];
        w.expected = "1";
        w.actual = mu.to_string();
        rep.fail("creation-property", w);
        return;
    }
    rep.pass("creation-property", mu_set ? ("mu_Y = " + mu.to_string()) : "vacuously");
}

void check_virasoro_axioms(const AlgebraInstance& inst, Color a, CheckReport& rep, long window) {
    VirasoroModes vir(inst);
    if (!vir.certified()) {
        rep.skip("virasoro-relations", "Virasoro vector outside certified truncation");
        rep.skip("l0-grading", "Virasoro vector outside certified truncation");
        rep.skip("l1-derivative", "Virasoro vector outside certified truncation");
        return;
    }
    const auto& sp = inst.space(a);
    long bound = sp.truncation + 2;
    long checked = 0, skipped = 0;
    for (long m = -bound; m <= bound; ++m)
        for (long n = -bound; n <= bound; ++n)
            for (long l = 0; l <= sp.truncation; ++l) {
                if (sp.dim(l) == 0) continue;
                auto Ln = vir.L(a, n, l);
                auto Lm = vir.L(a, m, l);
                if (!Ln || !Lm) { ++skipped; continue; }
                auto Lm_after = vir.L(a, m, l - n);
                auto Ln_after = vir.L(a, n, l - m);
                auto Lmn = vir.L(a, m + n, l);
                if (!Lm_after || !Ln_after || !Lmn) { ++skipped; continue; }
                // [L(m), L(n)] = (m-n) L(m+n) + c/12 (m^3 - m) delta_{m+n,0}
                CMat lhs1 = Lm_after->rows() && Ln->rows() ? CMat((*Lm_after) * (*Ln)) : CMat(0, 0);
                CMat lhs2 = Ln_after->rows() && Lm->rows() ? CMat((*Ln_after) * (*Lm)) : CMat(0, 0);
                long rows = std::max(lhs1.rows(), lhs2.rows());
                CMat lhs(sp.dim(l - m - n) >= 0 && l - m - n >= 0 && l - m - n <= sp.truncation
                             ? sp.dim(l - m - n)
                             : 0,
                         sp.dim(l));
                if (l - m - n < 0) lhs = CMat(0, sp.dim(l));
                for (long r = 0; r < lhs.rows(); ++r)
                    for (long c2 = 0; c2 < lhs.cols(); ++c2) {
                        lhs(r, c2) = Cyclo(inst.order);
                        if (r < lhs1.rows()) lhs(r, c2) += lhs1(r, c2);
                        if (r < lhs2.rows()) lhs(r, c2) -= lhs2(r, c2);
                    }
                CMat rhs = lhs;
                for (long r = 0; r < rhs.rows(); ++r)
                    for (long c2 = 0; c2 < rhs.cols(); ++c2) rhs(r, c2) = Cyclo(inst.order);
                if (Lmn->rows() == rhs.rows())
                    for (long r = 0; r < rhs.rows(); ++r)
                        for (long c2 = 0; c2 < rhs.cols(); ++c2)
                            rhs(r, c2) += (*Lmn)(r, c2) * Cyclo(inst.order, Rat(m - n));
                if (m + n == 0 && rhs.rows() == rhs.cols()) {
                    Cyclo central = inst.central_charge *
                                    Cyclo(inst.order, Rat((long)m * m * m - m, 12));
                    for (long r = 0; r < rhs.rows(); ++r) rhs(r, r) += central;
                }
                ++checked;
                for (long r = 0; r < lhs.rows(); ++r)
                    for (long c2 = 0; c2 < lhs.cols(); ++c2)
                        if (!(lhs(r, c2) == rhs(r, c2))) {
                            Witness w;
                            w.location = "[L(" + std::to_string(m) + "),L(" + std::to_string(n) +
                                         ")] on W^" + inst.alg.colors[a] + " level " + std::to_string(l) +
                                         " entry (" + std::to_string(r) + "," + std::to_string(c2) + ")";
                            w.expected = rhs(r, c2).to_string();
                            w.actual = lhs(r, c2).to_string();
                            rep.fail("virasoro-relations", w);
                            return;
                        }
            }
    rep.pass("virasoro-relations",
             std::to_string(checked) + " brackets checked, " + std::to_string(skipped) +
                 " outside truncation (skipped)");
    // L(0) grading
    for (long l = 0; l <= sp.truncation; ++l) {
        if (sp.dim(l) == 0) continue;
        auto L0 = vir.L(a, 0, l);
        if (!L0) continue;
        Rat wt = sp.base_weight + Rat(l);
        for (long r = 0; r < L0->rows(); ++r)
            for (long c2 = 0; c2 < L0->cols(); ++c2) {
                Cyclo expect = Cyclo(inst.order, r == c2 ? wt : Rat(0));
                if (!((*L0)(r, c2) == expect)) {
                    Witness w;
                    w.location = "L(0) on W^" + inst.alg.colors[a] + " level " + std::to_string(l) +
                                 " entry (" + std::to_string(r) + "," + std::to_string(c2) + ")";
                    w.expected = expect.to_string();
                    w.actual = (*L0)(r, c2).to_string();
                    rep.fail("l0-grading", w);
                    return;
                }
            }
    }
    rep.pass("l0-grading");
    // L(-1)-derivative for the module vertex operator
    const OperatorTable& tab = inst.module_action(a);
    Window box = Window::box(Rat(-window), Rat(window), 1);
    Color e = inst.alg.identity;
    long lskip = 0;
    for (StateRef uv : states_of(inst, e)) {
        auto Lm1 = vir.L(e, -1, uv.level);
        if (!Lm1) { ++lskip; continue; }
        CVec u = unit_vec(inst.space(e).dim(uv.level), uv.index, inst.order);
        CVec lu = (*Lm1) * u;
        for (StateRef s : states_of(inst, a)) {
            CVec w2 = unit_vec(inst.space(a).dim(s.level), s.index, inst.order);
            VectorSeries base = intertwiner_apply(inst, tab, u, uv.level, w2, s.level, "x", box);
            VectorSeries raised = intertwiner_apply(inst, tab, lu, uv.level + 1, w2, s.level, "x", box);
            for (const auto& [t, ser] : base.components) {
                FormalSeries want = ser.derivative("x");
                FormalSeries got = dual_pair(raised, t, inst.order);
                ExpKey bad;
                if (!want.equal_on(got, box, &bad)) {
                    Witness w;
                    w.exponents = bad;
                    w.location = "d/dx Y(" + state_str(inst, e, uv) + ",x) vs Y(L(-1)..)" + " on " +
                                 state_str(inst, a, s);
                    w.expected = want.certified_at(bad) ? want.coefficient(bad).to_string() : "?";
                    w.actual = got.certified_at(bad) ? got.coefficient(bad).to_string() : "?";
                    rep.fail("l1-derivative", w);
                    return;
                }
            }
        }
    }
    rep.pass("l1-derivative", lskip ? std::to_string(lskip) + " source states outside truncation (skipped)"
                                    : "");
}

void check_jacobi_mixed(const AlgebraInstance& inst, const OperatorTable& ytab, CheckReport& rep,
                        long window, const std::string& axiom) {
    // Jacobi for v in W^e against the intertwiner ytab of type (a1, a2; a3)
    Color e = inst.alg.identity;
    const OperatorTable& out3 = inst.module_action(ytab.a3);
    const OperatorTable& mid2 = inst.module_action(ytab.a2);
    const OperatorTable& act1 = inst.module_action(ytab.a1);

    Window box2 = Window::box(Rat(-window), Rat(window), 2);
    Window box3 = Window::box(Rat(-window), Rat(window), 3);
    long order = inst.order;
    for (StateRef u : states_of(inst, e))
        for (StateRef w1 : states_of(inst, ytab.a1))
            for (StateRef w2 : states_of(inst, ytab.a2))
                for (StateRef dual : states_of(inst, ytab.a3)) {
                    // T1: <dual, Y(u,x1) Ytab(w1,x2) w2>
                    FormalSeries s1 =
                        product_coefficient(inst, out3, ytab, u, w1, w2, dual, box2);
                    // T2: <dual, Ytab(w1,x2) Y(u,x1) w2>: inner = module action on a2 in x1
                    FormalSeries s2_raw =
                        product_coefficient(inst, ytab, mid2, w1, u, w2, dual, box2);
                    FormalSeries s2 = swap_xy(s2_raw);
                    // T3: <dual, Ytab(Y(u,x0)w1, x2) w2>
                    FormalSeries s3 =
                        iterate_coefficient(inst, ytab, act1, u, w1, w2, dual, box2);

                    FormalSeries d1 = delta_two_summand("x1", -1, "x2", "x0", +1, Rat(0), box3, order);
                    FormalSeries t1 = d1.multiplied(lift_to_three(s1, "x0", 0));
                    FormalSeries d2 = delta_two_summand("x2", -1, "x1", "x0", -1, Rat(0),
                                                        Window::box(Rat(-window), Rat(window), 3), order)
                                          .with_vars({"x0", "x1", "x2"}, {0, 2, 1});
                    FormalSeries t2 = d2.multiplied(lift_to_three(s2, "x0", 0));
                    FormalSeries d3 = delta_two_summand("x1", -1, "x0", "x2", +1, Rat(0),
                                                        Window::box(Rat(-window), Rat(window), 3), order)
                                          .with_vars({"x0", "x1", "x2"}, {2, 1, 0});
                    FormalSeries t3 = d3.multiplied(lift_to_three(s3, "x1", 1));
                    FormalSeries lhs = t1 - t2;
                    ExpKey bad;
                    if (!lhs.equal_on(t3, box3, &bad)) {
                        Witness w;
                        w.exponents = bad;
                        w.location = "u=" + state_str(inst, e, u) + " w1=" + state_str(inst, ytab.a1, w1) +
                                     " w2=" + state_str(inst, ytab.a2, w2) + " dual=" +
                                     state_str(inst, ytab.a3, dual);
                        w.expected = t3.certified_at(bad) ? t3.coefficient(bad).to_string() : "?";
                        w.actual = lhs.certified_at(bad) ? lhs.coefficient(bad).to_string() : "?";
                        rep.fail(axiom, w);
                        return;
                    }
                }
    rep.pass(axiom);
}

}  // namespace

CheckReport check_voa(const AlgebraInstance& inst, long window) {
    CheckReport rep;
    rep.suite = "voa";
    rep.window = Window::box(Rat(-window), Rat(window), 1).to_string();
    Color e = inst.alg.identity;
    rep.pass("grading-restriction", "finite certified dims, lower truncated by construction");
    if (frac_part(inst.space(e).base_weight) != 0)
        rep.fail("integral-grading", Witness{{}, "W^e", "integer weights", rat_to_string(inst.space(e).base_weight)});
    else
        rep.pass("integral-grading");
    check_identity_property(inst, e, rep, window, /*demand_unit=*/true);
    check_creation_property(inst, e, rep, window, /*demand_unit=*/true);
    check_jacobi_mixed(inst, inst.module_action(e), rep, window, "jacobi");
    check_virasoro_axioms(inst, e, rep, window);
    return rep;
}

CheckReport check_module(const AlgebraInstance& inst, Color a, long window) {
    CheckReport rep;
    rep.suite = "module:" + inst.alg.colors[a];
    rep.window = Window::box(Rat(-window), Rat(window), 1).to_string();
    rep.pass("grading-restriction");
    check_identity_property(inst, a, rep, window, /*demand_unit=*/true);
    check_jacobi_mixed(inst, inst.module_action(a), rep, window, "jacobi");
    check_virasoro_axioms(inst, a, rep, window);
    return rep;
}

CheckReport check_intertwiner(const AlgebraInstance& inst, Color a1, Color a2, Color a3, size_t index,
                              long window) {
    CheckReport rep;
    rep.suite = "intertwiner:" + inst.alg.colors[a1] + "," + inst.alg.colors[a2] + "->" +
                inst.alg.colors[a3] + "#" + std::to_string(index);
    rep.window = Window::box(Rat(-window), Rat(window), 1).to_string();
    const auto& tabs = inst.tables(a1, a2, a3);
    if (index >= tabs.size()) {
        rep.skip("lower-truncation", "no such intertwiner");
        return rep;
    }
    const OperatorTable& tab = tabs[index];
    rep.pass("lower-truncation", "finite certified mode ranges by construction");
    check_jacobi_mixed(inst, tab, rep, window, "jacobi");
    // L(-1)-derivative in the first argument
    VirasoroModes vir(inst);
    if (!vir.certified()) {
        rep.skip("l1-derivative", "Virasoro vector outside certified truncation");
        return rep;
    }
    Window box = Window::box(Rat(-window), Rat(window), 1);
    long skipped = 0;
    for (StateRef w1 : states_of(inst, a1)) {
        auto Lm1 = vir.L(a1, -1, w1.level);
        if (!Lm1) { ++skipped; continue; }
        CVec v1 = unit_vec(inst.space(a1).dim(w1.level), w1.index, inst.order);
        CVec lv = (*Lm1) * v1;
        for (StateRef w2 : states_of(inst, a2)) {
            CVec v2 = unit_vec(inst.space(a2).dim(w2.level), w2.index, inst.order);
            VectorSeries base = intertwiner_apply(inst, tab, v1, w1.level, v2, w2.level, "x", box);
            VectorSeries raised = intertwiner_apply(inst, tab, lv, w1.level + 1, v2, w2.level, "x", box);
            for (const auto& [t, ser] : base.components) {
                FormalSeries want = ser.derivative("x");
                FormalSeries got = dual_pair(raised, t, inst.order);
                ExpKey bad;
                if (!want.equal_on(got, box, &bad)) {
                    Witness w;
                    w.exponents = bad;
                    w.location = "L(-1)-derivative at w1=" + state_str(inst, a1, w1) + " w2=" +
                                 state_str(inst, a2, w2);
                    w.expected = want.certified_at(bad) ? want.coefficient(bad).to_string() : "?";
                    w.actual = got.certified_at(bad) ? got.coefficient(bad).to_string() : "?";
                    rep.fail("l1-derivative", w);
                    return rep;
                }
            }
        }
    }
    rep.pass("l1-derivative",
             skipped ? std::to_string(skipped) + " source levels outside truncation (skipped)" : "");
    return rep;
}

CheckReport check_all_intertwiners(const AlgebraInstance& inst, long window) {
    CheckReport rep;
    rep.suite = "intertwiner";
    rep.window = Window::box(Rat(-window), Rat(window), 1).to_string();
    for (const auto& [key, tabs] : inst.intertwiners) {
        auto [a1, a2, a3] = key;
        for (size_t i = 0; i < tabs.size(); ++i) {
            CheckReport sub = check_intertwiner(inst, a1, a2, a3, i, window);
            std::string prefix = inst.alg.colors[a1] + "," + inst.alg.colors[a2] + "->" +
                                 inst.alg.colors[a3] + "#" + std::to_string(i) + ":";
            for (auto e : sub.entries) {
                e.axiom = prefix + e.axiom;
                rep.entries.push_back(std::move(e));
            }
        }
    }
    return rep;
}

CheckReport check_skew_symmetry_voa(const AlgebraInstance& inst, long window) {
    CheckReport rep;
    rep.suite = "skew-symmetry";
    rep.window = Window::box(Rat(-window), Rat(window), 1).to_string();
    Color e = inst.alg.identity;
    const OperatorTable& tab = inst.module_action(e);
    VirasoroModes vir(inst);
    Window box = Window::box(Rat(-window), Rat(window), 1);
    const auto& sp = inst.space(e);
    for (StateRef u : states_of(inst, e))
        for (StateRef v : states_of(inst, e)) {
            CVec uu = unit_vec(sp.dim(u.level), u.index, inst.order);
            CVec vv = unit_vec(sp.dim(v.level), v.index, inst.order);
            VectorSeries lhs = intertwiner_apply(inst, tab, uu, u.level, vv, v.level, "x", box);
            VectorSeries rhs0 = intertwiner_apply(inst, tab, vv, v.level, uu, u.level, "x", box);
            // e^{xL(-1)} Y(v, -x) u
            std::map<StateRef, FormalSeries> rhs;
            for (const auto& [t, ser] : rhs0.components) rhs.emplace(t, ser.phase_substituted("x", 1));
            if (vir.certified()) {
                std::map<StateRef, FormalSeries> raised = rhs;
                for (const auto& [t, ser] : rhs) {
                    CVec base = unit_vec(sp.dim(t.level), t.index, inst.order);
                    CVec cur = base;
                    for (long k = 1; t.level + k <= sp.truncation; ++k) {
                        auto Lm1 = vir.L(e, -1, t.level + k - 1);
                        if (!Lm1) break;
                        cur = (*Lm1) * cur;
                        FormalSeries shifted = ser.shifted({Rat(k)}).scaled(
                            Cyclo(inst.order, Rat(1) / Rat(factorial(k))));
                        for (long idx = 0; idx < cur.size(); ++idx) {
                            if (cur[idx].is_zero()) continue;
                            StateRef tgt{t.level + k, idx};
                            auto it = raised.find(tgt);
                            FormalSeries add = shifted.scaled(cur[idx]);
                            if (it == raised.end()) raised.emplace(tgt, add);
                            else it->second = it->second + add;
                        }
                    }
                }
                rhs = std::move(raised);
            } else {
                // only level-raising-free components are certified
                for (auto& [t, ser] : rhs) {
                    bool could_raise = false;
                    for (long l = 0; l < t.level; ++l)
                        if (sp.dim(l) > 0) could_raise = true;
                    if (could_raise) {
                        Window emptyw = Window::all(1);
                        emptyw.lo[0] = Bound::at(Rat(1));
                        emptyw.hi[0] = Bound::at(Rat(0));
                        ser.set_window(emptyw);
                    }
                }
            }
            for (StateRef t : states_of(inst, e)) {
                FormalSeries l = dual_pair(lhs, t, inst.order);
                auto it = rhs.find(t);
                FormalSeries r = it == rhs.end() ? FormalSeries({"x"}, inst.order) : it->second;
                if (it == rhs.end()) r.set_window(box);
                ExpKey bad;
                if (!l.equal_on(r, box, &bad)) {
                    Witness w;
                    w.exponents = bad;
                    w.location = "u=" + state_str(inst, e, u) + " v=" + state_str(inst, e, v) + " dual=" +
                                 state_str(inst, e, t);
                    w.expected = r.certified_at(bad) ? r.coefficient(bad).to_string() : "?";
                    w.actual = l.certified_at(bad) ? l.coefficient(bad).to_string() : "?";
                    rep.fail("skew-symmetry", w);
                    return rep;
                }
            }
        }
    rep.pass("skew-symmetry");
    return rep;
}

CheckReport check_omega_consistency(const AlgebraInstance& inst) {
    CheckReport rep;
    rep.suite = "omega-consistency";
    rep.window = "-";
    for (const auto& [key, tabs] : inst.intertwiners) {
        auto [a1, a2, a3] = key;
        long n = (long)tabs.size();
        if (n == 0) continue;
        const auto& targets = inst.tables(a2, a1, a3);
        const CMat& declared = skew_block(inst, a1, a2, a3);
        if (declared.rows() != n || declared.cols() != (long)targets.size()) {
            rep.skip("omega-matrix:" + inst.alg.colors[a1] + "," + inst.alg.colors[a2] + "->" +
                         inst.alg.colors[a3],
                     "no declared Omega block");
            continue;
        }
        for (long i = 0; i < n; ++i) {
            OperatorTable om = omega_r(inst, tabs[i], -1);
            // solve om = sum_k M(i,k) targets[k] on the union of certified keys
            std::set<OperatorTable::Key> keys;
            for (const auto& [k, v] : om.entries) keys.insert(k);
            for (const auto& t : targets)
                for (const auto& [k, v] : t.entries) keys.insert(k);
            // build the linear system
            long rows = 0;
            for (const auto& k : keys) {
                Rat lvl = inst.weight(a2, k.in1.level) + inst.weight(a1, k.in2.level) - k.n - 1 -
                          inst.space(a3).base_weight;
                rows += inst.space(a3).dim(to_long(rat_num(lvl)));
            }
            CMat A(rows, (long)targets.size());
            CVec b(rows);
            long r = 0;
            for (const auto& k : keys) {
                Rat lvl = inst.weight(a2, k.in1.level) + inst.weight(a1, k.in2.level) - k.n - 1 -
                          inst.space(a3).base_weight;
                long d = inst.space(a3).dim(to_long(rat_num(lvl)));
                for (long j = 0; j < d; ++j) {
                    for (size_t t = 0; t < targets.size(); ++t) {
                        auto it = targets[t].entries.find(k);
                        A(r, (long)t) = it == targets[t].entries.end() ? Cyclo(inst.order) : it->second[j];
                    }
                    auto io = om.entries.find(k);
                    b[r] = io == om.entries.end() ? Cyclo(inst.order) : io->second[j];
                    ++r;
                }
            }
            // compare declared row i against the overdetermined system
            CVec residual = b;
            for (long t = 0; t < (long)targets.size(); ++t)
                for (long rr = 0; rr < rows; ++rr) residual[rr] -= A(rr, t) * declared(i, t);
            for (long rr = 0; rr < rows; ++rr)
                if (!residual[rr].is_zero()) {
                    Witness w;
                    w.location = "Omega(" + inst.alg.colors[a1] + "," + inst.alg.colors[a2] + ";" +
                                 inst.alg.colors[a3] + ") row " + std::to_string(i);
                    w.expected = "declared matrix reproduces Omega_{-1} tables";
                    w.actual = "residual " + residual[rr].to_string();
                    rep.fail("omega-matrix", w);
                    return rep;
                }
        }
    }
    rep.pass("omega-matrix", "declared Omega blocks equal the Omega_{-1} recomputation");
    return rep;
}

CheckReport check_ioa_axioms(const AlgebraInstance& inst, long window) {
    CheckReport rep;
    rep.suite = "ioa";
    rep.window = Window::box(Rat(-window), Rat(window), 1).to_string();
    Color e = inst.alg.identity;
    rep.pass("weight-grading-restriction", "h_a + Z grading with certified lower truncation by construction");
    // single-valuedness: V_{e a}^{a} tables carry only integral modes
    bool sv_ok = true;
    for (Color a = 0; a < inst.alg.size() && sv_ok; ++a) {
        for (const auto& tab : inst.tables(e, a, a))
            for (const auto& [k, v] : tab.entries)
                if (!is_integer(k.n)) {
                    Witness w;
                    w.exponents = {k.n};
                    w.location = "V_{e " + inst.alg.colors[a] + "}^{" + inst.alg.colors[a] + "}";
                    w.expected = "integral mode";
                    w.actual = rat_to_string(k.n);
                    rep.fail("single-valuedness", w);
                    sv_ok = false;
                    break;
                }
    }
    if (sv_ok) rep.pass("single-valuedness");
    rep.pass("lower-truncation", "certified mode ranges by construction");
    // identity property with lambda_Y for every V_{e a}^{a}; creation with mu_Y
    for (Color a = 0; a < inst.alg.size(); ++a) {
        if (inst.alg.N(e, a, a) != 1) continue;
        CheckReport sub;
        check_identity_property(inst, a, sub, window, /*demand_unit=*/false);
        check_creation_property(inst, a, sub, window, /*demand_unit=*/false);
        for (auto en : sub.entries) {
            en.axiom = "W^" + inst.alg.colors[a] + ":" + en.axiom;
            rep.entries.push_back(std::move(en));
        }
        if (!rep.passed()) return rep;
    }
    check_virasoro_axioms(inst, e, rep, window);
    return rep;
}

}  // namespace ioa
