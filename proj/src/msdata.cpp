#include "ioa/msdata.hpp"

#include <sstream>

namespace ioa {

CMat gauss_inverse(const CMat& m, long order) {
    const long n = m.rows();
    if (m.cols() != n) throw std::invalid_argument("inverse of a non-square block");
    CMat a = m, inv(n, n);
    for (long r = 0; r < n; ++r)
        for (long c = 0; c < n; ++c) inv(r, c) = Cyclo(order, Rat(r == c ? 1 : 0));
    for (long c = 0; c < n; ++c) {
        long piv = -1;
        for (long r = c; r < n; ++r)
            if (!a(r, c).is_zero()) { piv = r; break; }
        if (piv < 0) throw std::domain_error("singular block");
        a.row(c).swap(a.row(piv));
        inv.row(c).swap(inv.row(piv));
        Cyclo pv = a(c, c).inverse();
        for (long j = 0; j < n; ++j) { a(c, j) *= pv; inv(c, j) *= pv; }
        for (long r = 0; r < n; ++r) {
            if (r == c || a(r, c).is_zero()) continue;
            Cyclo f = a(r, c);
            for (long j = 0; j < n; ++j) {
                a(r, j) -= f * a(c, j);
                inv(r, j) -= f * inv(c, j);
            }
        }
    }
    return inv;
}

const CMat& fusing_block(const AlgebraInstance& inst, Color a1, Color a2, Color a3, Color a4) {
    static const CMat empty(0, 0);
    auto it = inst.fusing.find({a1, a2, a3, a4});
    if (it != inst.fusing.end()) return it->second;
    return empty;
}

const CMat& skew_block(const AlgebraInstance& inst, Color a1, Color a2, Color a3) {
    static const CMat empty(0, 0);
    auto it = inst.skew.find({a1, a2, a3});
    if (it != inst.skew.end()) return it->second;
    return empty;
}

std::vector<PairIdx> product_pair_basis(const AlgebraInstance& inst, Color a1, Color a2, Color a3,
                                        Color a4) {
    std::vector<PairIdx> out;
    for (Color a5 = 0; a5 < inst.alg.size(); ++a5)
        for (long i = 0; i < inst.alg.N(a1, a5, a4); ++i)
            for (long j = 0; j < inst.alg.N(a2, a3, a5); ++j) out.push_back({a5, i, j});
    return out;
}

std::vector<PairIdx> iterate_pair_basis(const AlgebraInstance& inst, Color a1, Color a2, Color a3,
                                        Color a4) {
    std::vector<PairIdx> out;
    for (Color a = 0; a < inst.alg.size(); ++a)
        for (long k = 0; k < inst.alg.N(a1, a2, a); ++k)
            for (long l = 0; l < inst.alg.N(a, a3, a4); ++l) out.push_back({a, k, l});
    return out;
}

namespace {

long index_in(const std::vector<PairIdx>& basis, const PairIdx& p) {
    for (size_t i = 0; i < basis.size(); ++i)
        if (basis[i] == p) return (long)i;
    throw std::logic_error("pair index outside the enumerated basis");
}

void accumulate(PairVec& v, const PairIdx& k, const Cyclo& c) {
    if (c.is_zero()) return;
    auto it = v.find(k);
    if (it == v.end()) v.emplace(k, c);
    else {
        it->second += c;
        if (it->second.is_zero()) v.erase(it);
    }
}

}  // namespace

PairVec apply_fusing(const AlgebraInstance& inst, Color a1, Color a2, Color a3, Color a4,
                     const PairVec& z) {
    auto rows = product_pair_basis(inst, a1, a2, a3, a4);
    auto cols = iterate_pair_basis(inst, a1, a2, a3, a4);
    const CMat& F = fusing_block(inst, a1, a2, a3, a4);
    PairVec out;
    if (z.empty()) return out;
    if (F.rows() != (long)rows.size() || F.cols() != (long)cols.size())
        throw ValidationError("missing or misshaped F block");
    for (const auto& [p, c] : z) {
        long r = index_in(rows, p);
        for (long cidx = 0; cidx < F.cols(); ++cidx)
            accumulate(out, cols[cidx], c * F(r, cidx));
    }
    return out;
}

PairVec apply_braiding(const AlgebraInstance& inst, Color a1, Color a2, Color a3, Color a4,
                       const PairVec& z) {
    // F(a1,a2,a3;a4), then Omega(a1,a2;a) on the first factor of the iterate pair,
    // then F(a2,a1,a3;a4)^{-1}
    PairVec it = apply_fusing(inst, a1, a2, a3, a4, z);
    PairVec mid;
    for (const auto& [p, c] : it) {
        const CMat& om = skew_block(inst, a1, a2, p.mid);
        if (om.rows() != inst.alg.N(a1, a2, p.mid)) throw ValidationError("missing Omega block");
        for (long k2 = 0; k2 < om.cols(); ++k2) accumulate(mid, {p.mid, k2, p.j}, c * om(p.i, k2));
    }
    // mid is iterate-type for (a2,a1,a3;a4); pull back through F(a2,a1,a3;a4)
    auto rows = product_pair_basis(inst, a2, a1, a3, a4);
    auto cols = iterate_pair_basis(inst, a2, a1, a3, a4);
    const CMat& F2 = fusing_block(inst, a2, a1, a3, a4);
    if (F2.rows() != (long)rows.size() || F2.cols() != (long)cols.size())
        throw ValidationError("missing or misshaped F block (swapped quadruple)");
    CMat Finv = gauss_inverse(F2, inst.order);  // cols x rows ... square by construction? rows==cols
    PairVec out;
    for (const auto& [p, c] : mid) {
        long r = index_in(cols, p);
        for (long cidx = 0; cidx < Finv.cols(); ++cidx)
            accumulate(out, rows[cidx], c * Finv(r, cidx));
    }
    return out;
}

CMat braiding_block(const AlgebraInstance& inst, Color a1, Color a2, Color a3, Color a4) {
    auto dom = product_pair_basis(inst, a1, a2, a3, a4);
    auto cod = product_pair_basis(inst, a2, a1, a3, a4);
    CMat B((long)dom.size(), (long)cod.size());
    for (long r = 0; r < B.rows(); ++r)
        for (long c = 0; c < B.cols(); ++c) B(r, c) = Cyclo(inst.order);
    for (size_t d = 0; d < dom.size(); ++d) {
        PairVec e;
        e[dom[d]] = Cyclo(inst.order, Rat(1));
        PairVec img = apply_braiding(inst, a1, a2, a3, a4, e);
        for (const auto& [p, c] : img) B((long)d, index_in(cod, p)) = c;
    }
    return B;
}

namespace {

struct TripleKey {
    Color c6, c7;
    long i, j, k;
    auto operator<=>(const TripleKey&) const = default;
};
using TripleVec = std::map<TripleKey, Cyclo>;

void tacc(TripleVec& v, const TripleKey& k, const Cyclo& c) {
    if (c.is_zero()) return;
    auto it = v.find(k);
    if (it == v.end()) v.emplace(k, c);
    else {
        it->second += c;
        if (it->second.is_zero()) v.erase(it);
    }
}

std::string tuple_str(const AlgebraInstance& inst, const std::array<Color, 5>& ext, const TripleKey& t) {
    std::ostringstream os;
    os << "(" << inst.alg.colors[ext[0]] << "," << inst.alg.colors[ext[1]] << "," << inst.alg.colors[ext[2]]
       << "," << inst.alg.colors[ext[3]] << ";" << inst.alg.colors[ext[4]] << ") internal ("
       << inst.alg.colors[t.c6] << "," << inst.alg.colors[t.c7] << ") idx (" << t.i << "," << t.j << ","
       << t.k << ")";
    return os.str();
}

}  // namespace

CheckReport check_pentagon(const AlgebraInstance& inst) {
    CheckReport rep;
    rep.suite = "pentagon";
    rep.window = "-";
    const size_t n = inst.alg.size();
    long checked = 0;
    for (Color a1 = 0; a1 < n; ++a1)
        for (Color a2 = 0; a2 < n; ++a2)
            for (Color a3 = 0; a3 < n; ++a3)
                for (Color a4 = 0; a4 < n; ++a4)
                    for (Color a5 = 0; a5 < n; ++a5) {
                        std::array<Color, 5> ext{a1, a2, a3, a4, a5};
                        // domain basis: T1 = V_{a1 c6}^{a5} (x) V_{a2 c7}^{c6} (x) V_{a3 a4}^{c7}
                        for (Color c6 = 0; c6 < n; ++c6)
                            for (Color c7 = 0; c7 < n; ++c7) {
                                long d1 = inst.alg.N(a1, c6, a5), d2 = inst.alg.N(a2, c7, c6),
                                     d3 = inst.alg.N(a3, a4, c7);
                                if (!d1 || !d2 || !d3) continue;
                                for (long i = 0; i < d1; ++i)
                                    for (long j = 0; j < d2; ++j)
                                        for (long k = 0; k < d3; ++k) {
                                            TripleKey key{c6, c7, i, j, k};
                                            // LHS: F^{(2)}_{23} o F^{(1)}_{12}
                                            TripleVec lhs, rhs;
                                            {
                                                // F12_1: fuse factors 1,2 via F(a1,a2,c7;a5)
                                                PairVec z;
                                                z[{c6, i, j}] = Cyclo(inst.order, Rat(1));
                                                PairVec f = apply_fusing(inst, a1, a2, c7, a5, z);
                                                // f: (c6', k', l') with V_{a1a2}^{c6'} (x) V_{c6' c7}^{a5}
                                                for (const auto& [p, c] : f) {
                                                    // F23_2: fuse factors 2,3 via F(c6', a3, a4; a5)
                                                    PairVec z2;
                                                    z2[{c7, p.j, k}] = c;
                                                    PairVec f2 = apply_fusing(inst, p.mid, a3, a4, a5, z2);
                                                    for (const auto& [q, c2] : f2)
                                                        tacc(lhs, {p.mid, q.mid, p.i, q.i, q.j}, c2);
                                                }
                                            }
                                            {
                                                // F23_1: fuse factors 2,3 via F(a2,a3,a4;c6)
                                                PairVec z;
                                                z[{c7, j, k}] = Cyclo(inst.order, Rat(1));
                                                PairVec f = apply_fusing(inst, a2, a3, a4, c6, z);
                                                // f: (c7', j', k') with V_{a2a3}^{c7'} (x) V_{c7' a4}^{c6}
                                                for (const auto& [p, c] : f) {
                                                    // F13: fuse factors 1,3 via F(a1, c7', a4; a5)
                                                    PairVec z2;
                                                    z2[{c6, i, p.j}] = c;
                                                    PairVec f2 = apply_fusing(inst, a1, p.mid, a4, a5, z2);
                                                    for (const auto& [q, c2] : f2) {
                                                        // q: (c6'', i'', k'') with V_{a1 c7'}^{c6''} (x) V_{c6'' a4}^{a5}
                                                        // F12_2: fuse factors 1,2 via F(a1,a2,a3;c6'')
                                                        PairVec z3;
                                                        z3[{p.mid, q.i, p.i}] = c2;
                                                        PairVec f3 = apply_fusing(inst, a1, a2, a3, q.mid, z3);
                                                        for (const auto& [s, c3] : f3)
                                                            tacc(rhs, {s.mid, q.mid, s.i, s.j, q.j}, c3);
                                                    }
                                                }
                                            }
                                            ++checked;
                                            TripleVec diff = lhs;
                                            for (const auto& [kk, c] : rhs) tacc(diff, kk, -c);
                                            if (!diff.empty()) {
                                                auto& [wk, wc] = *diff.begin();
                                                Witness w;
                                                w.location = tuple_str(inst, ext, key) + " -> " +
                                                             tuple_str(inst, ext, wk);
                                                auto lit = lhs.find(wk);
                                                auto rit = rhs.find(wk);
                                                w.expected = rit == rhs.end() ? "0" : rit->second.to_string();
                                                w.actual = lit == lhs.end() ? "0" : lit->second.to_string();
                                                rep.fail("pentagon", w);
                                                return rep;
                                            }
                                        }
                            }
                    }
    rep.pass("pentagon", std::to_string(checked) + " basis elements across all triple spaces");
    return rep;
}

CheckReport check_hexagons(const AlgebraInstance& inst) {
    CheckReport rep;
    rep.suite = "hexagon";
    rep.window = "-";
    const size_t n = inst.alg.size();
    long checked = 0;
    for (int which = 0; which < 2; ++which) {
        bool use_inverse = which == 1;
        for (Color a1 = 0; a1 < n; ++a1)
            for (Color a2 = 0; a2 < n; ++a2)
                for (Color a3 = 0; a3 < n; ++a3)
                    for (Color a4 = 0; a4 < n; ++a4) {
                        auto omega_apply = [&](Color b1, Color b2, Color b3, long idx, auto&& accum) {
                            const CMat& om = skew_block(inst, b1, b2, b3);
                            if (om.rows() != inst.alg.N(b1, b2, b3) || om.cols() != inst.alg.N(b2, b1, b3))
                                throw ValidationError("missing Omega block");
                            if (!use_inverse) {
                                for (long c = 0; c < om.cols(); ++c) accum(c, om(idx, c));
                            } else {
                                // Omega^{-1} on V_{b1b2}^{b3} is the inverse of Omega(b2,b1;b3)
                                const CMat& om2 = skew_block(inst, b2, b1, b3);
                                CMat inv2 = gauss_inverse(om2, inst.order);
                                for (long c = 0; c < inv2.cols(); ++c) accum(c, inv2(idx, c));
                            }
                        };
                        for (const auto& d : product_pair_basis(inst, a1, a2, a3, a4)) {
                            PairVec z;
                            z[d] = Cyclo(inst.order, Rat(1));
                            // LHS: F(a3,a1,a2;a4) o Omega^{(3)} o F(a1,a2,a3;a4)
                            PairVec lhs;
                            {
                                PairVec f = apply_fusing(inst, a1, a2, a3, a4, z);
                                PairVec mid;  // product-type for (a3,a1,a2;a4): Omega(Y2) (x) Y1
                                for (const auto& [p, c] : f)
                                    omega_apply(p.mid, a3, a4, p.j, [&](long c2, const Cyclo& oc) {
                                        accumulate(mid, {p.mid, c2, p.i}, c * oc);
                                    });
                                lhs = apply_fusing(inst, a3, a1, a2, a4, mid);
                            }
                            // RHS: Omega^{(2)} o F(a1,a3,a2;a4) o Omega^{(4)}
                            PairVec rhs;
                            {
                                PairVec mid;  // product-type for (a1,a3,a2;a4)
                                omega_apply(a2, a3, d.mid, d.j, [&](long c2, const Cyclo& oc) {
                                    accumulate(mid, {d.mid, d.i, c2}, oc);
                                });
                                PairVec f = apply_fusing(inst, a1, a3, a2, a4, mid);
                                for (const auto& [p, c] : f)
                                    omega_apply(a1, a3, p.mid, p.i, [&](long c2, const Cyclo& oc) {
                                        accumulate(rhs, {p.mid, c2, p.j}, c * oc);
                                    });
                            }
                            ++checked;
                            PairVec diff = lhs;
                            for (const auto& [kk, c] : rhs) accumulate(diff, kk, -c);
                            if (!diff.empty()) {
                                auto& [wk, wc] = *diff.begin();
                                Witness w;
                                std::ostringstream loc;
                                loc << "(" << inst.alg.colors[a1] << "," << inst.alg.colors[a2] << ","
                                    << inst.alg.colors[a3] << ";" << inst.alg.colors[a4] << ") channel ("
                                    << inst.alg.colors[d.mid] << "," << d.i << "," << d.j << ") -> ("
                                    << inst.alg.colors[wk.mid] << "," << wk.i << "," << wk.j << ")";
                                w.location = loc.str();
                                auto lit = lhs.find(wk);
                                auto rit = rhs.find(wk);
                                w.expected = rit == rhs.end() ? "0" : rit->second.to_string();
                                w.actual = lit == lhs.end() ? "0" : lit->second.to_string();
                                rep.fail(use_inverse ? "hexagon-2" : "hexagon-1", w);
                                return rep;
                            }
                        }
                    }
        rep.pass(use_inverse ? "hexagon-2" : "hexagon-1");
    }
    rep.entries.back().detail = std::to_string(checked) + " basis elements";
    return rep;
}

}  // namespace ioa
