#include "ioa/algdata.hpp"

#include <boost/integer/common_factor_rt.hpp>
#include <fstream>
#include <sstream>

#include "ioa/scalar_io.hpp"

namespace ioa {

long ColorAlgebra::N(Color a1, Color a2, Color a3) const {
    auto it = fusion.find({a1, a2, a3});
    return it == fusion.end() ? 0 : it->second;
}

Color ColorAlgebra::index_of(const std::string& name) const {
    for (size_t i = 0; i < colors.size(); ++i)
        if (colors[i] == name) return i;
    throw ValidationError("unknown color '" + name + "'");
}

void ColorAlgebra::validate() const {
    if (colors.empty()) throw ValidationError("[colors] empty color set");
    if (identity >= colors.size()) throw ValidationError("[colors] identity out of range");
    const size_t n = colors.size();
    for (const auto& [key, v] : fusion)
        if (v < 0) throw ValidationError("[fusion] negative fusion rule");
    for (Color a1 = 0; a1 < n; ++a1)
        for (Color a2 = 0; a2 < n; ++a2) {
            for (Color a3 = 0; a3 < n; ++a3)
                if (N(a1, a2, a3) != N(a2, a1, a3))
                    throw ValidationError("[fusion] symmetry N_{" + colors[a1] + " " + colors[a2] + "}^{" +
                                          colors[a3] + "} != swapped value");
            if (N(identity, a1, a2) != (a1 == a2 ? 1 : 0))
                throw ValidationError("[fusion] identity column N_{e " + colors[a1] + "}^{" + colors[a2] +
                                      "} must be delta");
        }
    for (Color a1 = 0; a1 < n; ++a1)
        for (Color a2 = 0; a2 < n; ++a2)
            for (Color a3 = 0; a3 < n; ++a3)
                for (Color a4 = 0; a4 < n; ++a4) {
                    long lhs = 0, rhs = 0;
                    for (Color a = 0; a < n; ++a) {
                        lhs += N(a1, a2, a) * N(a, a3, a4);
                        rhs += N(a1, a, a4) * N(a2, a3, a);
                    }
                    if (lhs != rhs)
                        throw ValidationError("[fusion] associativity sum fails at (" + colors[a1] + "," +
                                              colors[a2] + "," + colors[a3] + ";" + colors[a4] + ")");
                }
}

long GradedSpace::total_dim() const {
    long t = 0;
    for (long d : dims) t += d;
    return t;
}

long GradedSpace::offset(long level) const {
    long t = 0;
    for (long l = 0; l < level; ++l) t += dims[l];
    return t;
}

const std::vector<OperatorTable>& AlgebraInstance::tables(Color a1, Color a2, Color a3) const {
    static const std::vector<OperatorTable> none;
    auto it = intertwiners.find({a1, a2, a3});
    return it == intertwiners.end() ? none : it->second;
}

const OperatorTable& AlgebraInstance::module_action(Color a) const {
    const auto& t = tables(alg.identity, a, a);
    if (t.size() != 1)
        throw ValidationError("module vertex operator of W^" + alg.colors[a] + " missing (dim V_{e a}^{a} != 1)");
    return t[0];
}

Rat AlgebraInstance::mode_coset(Color a1, Color a2, Color a3) const {
    return spaces[a1].base_weight + spaces[a2].base_weight - spaces[a3].base_weight;
}

std::set<Rat> AlgebraInstance::exponent_cosets(Color a1, Color a2) const {
    std::set<Rat> out;
    for (Color a = 0; a < alg.size(); ++a)
        out.insert(frac_part(spaces[a1].base_weight + spaces[a2].base_weight - spaces[a].base_weight));
    return out;
}

std::pair<Rat, Rat> AlgebraInstance::certified_mode_range(Color a1, Color a2, Color a3, long l1,
                                                          long l2) const {
    Rat top = mode_coset(a1, a2, a3) + Rat(l1) + Rat(l2) - 1;
    return {top - Rat(spaces[a3].truncation), top};
}

long AlgebraInstance::minimal_order() const {
    Int m = 1;
    for (const auto& sp : spaces) m = boost::integer::lcm(m, Int(2) * rat_den(sp.base_weight));
    return to_long(m);
}

void AlgebraInstance::validate() const {
    alg.validate();
    const size_t n = alg.size();
    if (spaces.size() != n) throw ValidationError("[dims] missing graded space declarations");
    if (order < 1) throw ValidationError("[meta] cyclotomic order must be positive");
    if (order % minimal_order() != 0)
        throw ValidationError("[meta] cyclotomic order " + std::to_string(order) +
                              " insufficient: weights need order divisible by " +
                              std::to_string(minimal_order()));
    for (Color a = 0; a < n; ++a) {
        const auto& sp = spaces[a];
        if (sp.color != a) throw ValidationError("[dims] space/color mismatch");
        if (sp.truncation < 0 || (long)sp.dims.size() != sp.truncation + 1)
            throw ValidationError("[dims] W^" + alg.colors[a] + ": need dims for levels 0..L");
        for (long d : sp.dims)
            if (d < 0) throw ValidationError("[dims] negative dimension");
    }
    const auto& se = spaces[alg.identity];
    if (se.base_weight != 0) throw ValidationError("[weights] identity color must have weight 0");
    if (se.dim(0) < 1) throw ValidationError("[dims] W^e level 0 must contain the vacuum");
    if (vacuum.size() != se.dim(0)) throw ValidationError("[vacuum] coordinate count != dim W^e_(0)");
    bool vac_zero = true;
    for (long i = 0; i < vacuum.size(); ++i)
        if (!vacuum[i].is_zero()) vac_zero = false;
    if (vac_zero) throw ValidationError("[vacuum] vacuum vector is zero");
    if (omega) {
        if (se.truncation < 2) throw ValidationError("[virasoro] omega declared outside truncation");
        if (omega->size() != se.dim(2)) throw ValidationError("[virasoro] omega coordinate count != dim W^e_(2)");
    }

    // intertwiner tables: counts and per-entry bookkeeping
    for (Color a1 = 0; a1 < n; ++a1)
        for (Color a2 = 0; a2 < n; ++a2)
            for (Color a3 = 0; a3 < n; ++a3) {
                long want = alg.N(a1, a2, a3);
                const auto& tabs = tables(a1, a2, a3);
                if ((long)tabs.size() != want)
                    throw ValidationError("[intertwiner] V_{" + alg.colors[a1] + " " + alg.colors[a2] + "}^{" +
                                          alg.colors[a3] + "}: declared " + std::to_string(tabs.size()) +
                                          " basis tables, fusion rule says " + std::to_string(want));
                Rat coset = mode_coset(a1, a2, a3);
                for (const auto& tab : tabs) {
                    for (const auto& [key, vec] : tab.entries) {
                        if (!spaces[a1].certified(key.in1.level) || key.in1.index >= spaces[a1].dim(key.in1.level) ||
                            !spaces[a2].certified(key.in2.level) || key.in2.index >= spaces[a2].dim(key.in2.level))
                            throw ValidationError("[intertwiner] input state out of range");
                        if (!is_integer(key.n - coset))
                            throw ValidationError("[intertwiner] mode " + rat_to_string(key.n) +
                                                  " outside the coset " + rat_to_string(coset) + "+Z for type (" +
                                                  alg.colors[a1] + " " + alg.colors[a2] + " -> " + alg.colors[a3] +
                                                  ")");
                        Rat lvl = weight(a1, key.in1.level) + weight(a2, key.in2.level) - key.n - 1 -
                                  spaces[a3].base_weight;
                        if (!is_integer(lvl))
                            throw ValidationError("[intertwiner] grading mismatch at mode " + rat_to_string(key.n));
                        long lout = to_long(rat_num(lvl));
                        if (lout < 0 || lout > spaces[a3].truncation)
                            throw ValidationError("[intertwiner] output level " + std::to_string(lout) +
                                                  " outside truncation of W^" + alg.colors[a3]);
                        if (vec.size() != spaces[a3].dim(lout))
                            throw ValidationError("[intertwiner] output coordinate count != dim at level " +
                                                  std::to_string(lout));
                    }
                }
            }

    // F / Omega shapes
    for (const auto& [key, mat] : fusing) {
        auto [a1, a2, a3, a4] = key;
        long rows = 0, cols = 0;
        for (Color a5 = 0; a5 < n; ++a5) rows += alg.N(a1, a5, a4) * alg.N(a2, a3, a5);
        for (Color a = 0; a < n; ++a) cols += alg.N(a1, a2, a) * alg.N(a, a3, a4);
        if (mat.rows() != rows || mat.cols() != cols)
            throw ValidationError("[F] block (" + alg.colors[a1] + "," + alg.colors[a2] + "," + alg.colors[a3] +
                                  ";" + alg.colors[a4] + ") has shape " + std::to_string(mat.rows()) + "x" +
                                  std::to_string(mat.cols()) + ", expected " + std::to_string(rows) + "x" +
                                  std::to_string(cols));
    }
    for (const auto& [key, mat] : skew) {
        auto [a1, a2, a3] = key;
        if (mat.rows() != alg.N(a1, a2, a3) || mat.cols() != alg.N(a2, a1, a3))
            throw ValidationError("[Omega] block shape mismatch at (" + alg.colors[a1] + "," + alg.colors[a2] +
                                  ";" + alg.colors[a3] + ")");
    }
    for (const auto& [key, elems] : gbasis) {
        std::set<std::tuple<Rat, Rat, Rat>> seen;
        for (const auto& el : elems) {
            auto t = std::make_tuple(frac_part(el.a), frac_part(el.b), frac_part(el.c));
            if (!seen.insert(t).second)
                throw ValidationError("[gbasis] duplicate coset triple for label '" + el.label + "'");
        }
    }
}

// ---------- apply ----------

VectorSeries intertwiner_apply(const AlgebraInstance& inst, const OperatorTable& table, const CVec& w1,
                               long level1, const CVec& w2, long level2, const std::string& var,
                               const Window& w) {
    const auto& sp3 = inst.space(table.a3);
    auto [n_lo, n_hi] = inst.certified_mode_range(table.a1, table.a2, table.a3, level1, level2);
    // exponent e = -n-1 certified for n in [n_lo, n_hi], i.e. e in [-n_hi-1, -n_lo-1]
    Window cw = Window::all(1);
    cw.lo[0] = Bound::at(-n_hi - 1);
    cw.hi[0] = Bound::at(-n_lo - 1);
    VectorSeries out;
    out.color = table.a3;
    out.window = cw.intersect(w);
    // exponents below -n_hi-1 have output level < 0: certified zero (lower truncation);
    // exponents above -n_lo-1 need output levels beyond the truncation: unknown
    bool at_zero_edge = !out.window.lo[0].infinite && out.window.lo[0].value == -n_hi - 1;
    for (long lout = 0; lout <= sp3.truncation; ++lout)
        for (long k = 0; k < sp3.dim(lout); ++k) {
            FormalSeries s({var}, inst.order);
            s.set_window(out.window);
            s.set_zero_below(0, at_zero_edge);
            out.components.emplace(StateRef{lout, k}, std::move(s));
        }
    for (const auto& [key, vec] : table.entries) {
        if (key.in1.level != level1 || key.in2.level != level2) continue;
        Cyclo c12 = w1[key.in1.index] * w2[key.in2.index];
        if (c12.is_zero()) continue;
        Rat lvl = inst.weight(table.a1, level1) + inst.weight(table.a2, level2) - key.n - 1 -
                  sp3.base_weight;
        long lout = to_long(rat_num(lvl));
        ExpKey e{-key.n - 1};
        if (!out.window.contains(e)) continue;
        for (long k = 0; k < vec.size(); ++k) {
            Cyclo v = c12 * vec[k];
            if (!v.is_zero()) out.components.at(StateRef{lout, k}).add_term(e, v);
        }
    }
    return out;
}

FormalSeries dual_pair(const VectorSeries& series, const StateRef& dual_state, long order) {
    auto it = series.components.find(dual_state);
    if (it != series.components.end()) return it->second;
    FormalSeries s({std::string("x")}, order);
    s.set_window(series.window);
    return s;
}

// ---------- text I/O ----------

namespace {

std::vector<std::string> tokens(const std::string& line) {
    std::vector<std::string> out;
    std::istringstream is(line);
    std::string t;
    while (is >> t) out.push_back(t);
    return out;
}

struct Section {
    std::string header;
    std::vector<std::pair<long, std::string>> lines;  // with line numbers
};

[[noreturn]] void perr(long lineno, const std::string& what) {
    throw ValidationError("line " + std::to_string(lineno) + ": " + what);
}

}  // namespace

AlgebraInstance AlgebraInstance::from_text(const std::string& text) {
    std::vector<Section> sections;
    {
        std::istringstream is(text);
        std::string line;
        long lineno = 0;
        while (std::getline(is, line)) {
            ++lineno;
            auto hash = line.find('#');
            if (hash != std::string::npos) line = line.substr(0, hash);
            std::string trimmed = line;
            while (!trimmed.empty() && std::isspace((unsigned char)trimmed.front())) trimmed.erase(trimmed.begin());
            while (!trimmed.empty() && std::isspace((unsigned char)trimmed.back())) trimmed.pop_back();
            if (trimmed.empty()) continue;
            if (trimmed.front() == '[') {
                if (trimmed.back() != ']') perr(lineno, "unterminated section header");
                sections.push_back({trimmed.substr(1, trimmed.size() - 2), {}});
            } else {
                if (sections.empty()) perr(lineno, "data before first section");
                sections.back().lines.push_back({lineno, trimmed});
            }
        }
    }

    AlgebraInstance inst;
    bool have_meta = false, have_colors = false, have_weights = false, have_dims = false;
    std::map<Color, Rat> weights;
    std::map<Color, std::pair<long, std::vector<long>>> dims;

    auto colon_split = [](const std::vector<std::string>& tok) {
        size_t i = 0;
        while (i < tok.size() && tok[i] != ":") ++i;
        return i;
    };

    for (const auto& sec : sections) {
        auto head = tokens(sec.header);
        if (head.empty()) throw ValidationError("empty section header");
        const std::string& kind = head[0];
        if (kind == "meta") {
            for (const auto& [ln, line] : sec.lines) {
                auto t = tokens(line);
                if (t.size() == 2 && t[0] == "order") inst.order = std::stol(t[1]);
                else perr(ln, "bad [meta] line");
            }
            have_meta = true;
        } else if (kind == "colors") {
            for (const auto& [ln, line] : sec.lines) {
                auto t = tokens(line);
                if (t.size() >= 2 && t[0] == "names") {
                    inst.alg.colors.assign(t.begin() + 1, t.end());
                } else if (t.size() == 2 && t[0] == "identity") {
                    inst.alg.identity = inst.alg.index_of(t[1]);
                } else {
                    perr(ln, "bad [colors] line");
                }
            }
            have_colors = true;
        } else if (kind == "fusion") {
            for (const auto& [ln, line] : sec.lines) {
                auto t = tokens(line);
                if (t.size() != 4) perr(ln, "bad [fusion] line, want: a1 a2 a3 N");
                long v = std::stol(t[3]);
                if (v != 0)
                    inst.alg.fusion[{inst.alg.index_of(t[0]), inst.alg.index_of(t[1]), inst.alg.index_of(t[2])}] = v;
            }
        } else if (kind == "weights") {
            for (const auto& [ln, line] : sec.lines) {
                auto t = tokens(line);
                if (t.size() != 2) perr(ln, "bad [weights] line, want: color h");
                weights[inst.alg.index_of(t[0])] = rat_from_string(t[1]);
            }
            have_weights = true;
        } else if (kind == "dims") {
            for (const auto& [ln, line] : sec.lines) {
                auto t = tokens(line);
                size_t ci = colon_split(t);
                if (ci != 2 || ci + 1 > t.size()) perr(ln, "bad [dims] line, want: color L : d0 ... dL");
                long L = std::stol(t[1]);
                std::vector<long> d;
                for (size_t i = ci + 1; i < t.size(); ++i) d.push_back(std::stol(t[i]));
                if ((long)d.size() != L + 1) perr(ln, "dims count != L+1");
                dims[inst.alg.index_of(t[0])] = {L, d};
            }
            have_dims = true;
        } else if (kind == "vacuum") {
            std::vector<Cyclo> v;
            for (const auto& [ln, line] : sec.lines)
                for (const auto& tok : tokens(line)) v.push_back(parse_scalar(tok, inst.order));
            inst.vacuum = CVec(v.size());
            for (size_t i = 0; i < v.size(); ++i) inst.vacuum[(long)i] = v[i];
        } else if (kind == "virasoro") {
            for (const auto& [ln, line] : sec.lines) {
                auto t = tokens(line);
                if (t.size() >= 2 && t[0] == "c") {
                    inst.central_charge = parse_scalar(line.substr(line.find('c') + 1), inst.order);
                } else if (!t.empty() && t[0] == "omega") {
                    std::vector<Cyclo> v;
                    for (size_t i = 1; i < t.size(); ++i) v.push_back(parse_scalar(t[i], inst.order));
                    CVec om(v.size());
                    for (size_t i = 0; i < v.size(); ++i) om[(long)i] = v[i];
                    inst.omega = om;
                } else {
                    perr(ln, "bad [virasoro] line");
                }
            }
        } else if (kind == "intertwiner") {
            // header: intertwiner a1 a2 -> a3 # i
            if (head.size() != 7 || head[3] != "->" || head[5] != "#")
                throw ValidationError("bad [intertwiner] header '" + sec.header + "'");
            Color a1 = inst.alg.index_of(head[1]), a2 = inst.alg.index_of(head[2]), a3 = inst.alg.index_of(head[4]);
            size_t idx = std::stoul(head[6]);
            auto& vec = inst.intertwiners[{a1, a2, a3}];
            if (vec.size() <= idx) vec.resize(idx + 1);
            OperatorTable& tab = vec[idx];
            tab.a1 = a1; tab.a2 = a2; tab.a3 = a3;
            for (const auto& [ln, line] : sec.lines) {
                auto t = tokens(line);
                size_t ci = colon_split(t);
                if (ci != 5) perr(ln, "bad intertwiner entry, want: n l1 i1 l2 i2 : coeffs");
                OperatorTable::Key key;
                key.n = rat_from_string(t[0]);
                key.in1 = {std::stol(t[1]), std::stol(t[2])};
                key.in2 = {std::stol(t[3]), std::stol(t[4])};
                std::vector<Cyclo> coeffs;
                for (size_t i = ci + 1; i < t.size(); ++i) coeffs.push_back(parse_scalar(t[i], inst.order));
                CVec cv(coeffs.size());
                bool nonzero = false;
                for (size_t i = 0; i < coeffs.size(); ++i) {
                    cv[(long)i] = coeffs[i];
                    nonzero = nonzero || !coeffs[i].is_zero();
                }
                if (nonzero) tab.entries[key] = cv;
            }
        } else if (kind == "F") {
            if (head.size() != 6 || head[4] != ";") throw ValidationError("bad [F] header '" + sec.header + "'");
            Color a1 = inst.alg.index_of(head[1]), a2 = inst.alg.index_of(head[2]), a3 = inst.alg.index_of(head[3]),
                  a4 = inst.alg.index_of(head[5]);
            long rows = 0, cols = 0;
            for (Color a5 = 0; a5 < inst.alg.size(); ++a5) rows += inst.alg.N(a1, a5, a4) * inst.alg.N(a2, a3, a5);
            for (Color a = 0; a < inst.alg.size(); ++a) cols += inst.alg.N(a1, a2, a) * inst.alg.N(a, a3, a4);
            CMat m(rows, cols);
            for (long r = 0; r < rows; ++r)
                for (long c = 0; c < cols; ++c) m(r, c) = Cyclo(inst.order);
            for (const auto& [ln, line] : sec.lines) {
                auto t = tokens(line);
                size_t ci = colon_split(t);
                if (ci != 2) perr(ln, "bad [F] entry, want: row col : scalar");
                long r = std::stol(t[0]), c = std::stol(t[1]);
                if (r < 0 || r >= rows || c < 0 || c >= cols) perr(ln, "[F] index out of range");
                std::string rest;
                for (size_t i = ci + 1; i < t.size(); ++i) rest += (i > ci + 1 ? " " : "") + t[i];
                m(r, c) = parse_scalar(rest, inst.order);
            }
            inst.fusing[{a1, a2, a3, a4}] = m;
        } else if (kind == "Omega") {
            if (head.size() != 5 || head[3] != ";") throw ValidationError("bad [Omega] header '" + sec.header + "'");
            Color a1 = inst.alg.index_of(head[1]), a2 = inst.alg.index_of(head[2]), a3 = inst.alg.index_of(head[4]);
            long rows = inst.alg.N(a1, a2, a3), cols = inst.alg.N(a2, a1, a3);
            CMat m(rows, cols);
            for (long r = 0; r < rows; ++r)
                for (long c = 0; c < cols; ++c) m(r, c) = Cyclo(inst.order);
            for (const auto& [ln, line] : sec.lines) {
                auto t = tokens(line);
                size_t ci = colon_split(t);
                if (ci != 2) perr(ln, "bad [Omega] entry, want: i k : scalar");
                long r = std::stol(t[0]), c = std::stol(t[1]);
                if (r < 0 || r >= rows || c < 0 || c >= cols) perr(ln, "[Omega] index out of range");
                std::string rest;
                for (size_t i = ci + 1; i < t.size(); ++i) rest += (i > ci + 1 ? " " : "") + t[i];
                m(r, c) = parse_scalar(rest, inst.order);
            }
            inst.skew[{a1, a2, a3}] = m;
        } else if (kind == "gbasis") {
            if (head.size() != 5) throw ValidationError("bad [gbasis] header '" + sec.header + "'");
            GBasisKey key{inst.alg.index_of(head[1]), inst.alg.index_of(head[2]), inst.alg.index_of(head[3]),
                          inst.alg.index_of(head[4])};
            for (const auto& [ln, line] : sec.lines) {
                auto t = tokens(line);
                if (t.size() != 4) perr(ln, "bad [gbasis] entry, want: label a b c");
                inst.gbasis[key].push_back(
                    GBasisElement{t[0], rat_from_string(t[1]), rat_from_string(t[2]), rat_from_string(t[3])});
            }
        } else {
            throw ValidationError("unknown section [" + sec.header + "]");
        }
    }

    if (!have_meta || !have_colors || !have_weights || !have_dims)
        throw ValidationError("missing required section ([meta]/[colors]/[weights]/[dims])");
    inst.spaces.resize(inst.alg.size());
    for (Color a = 0; a < inst.alg.size(); ++a) {
        auto wit = weights.find(a);
        auto dit = dims.find(a);
        if (wit == weights.end()) throw ValidationError("[weights] missing color " + inst.alg.colors[a]);
        if (dit == dims.end()) throw ValidationError("[dims] missing color " + inst.alg.colors[a]);
        inst.spaces[a] = GradedSpace{a, wit->second, dit->second.first, dit->second.second};
    }
    if (inst.vacuum.size() == 0) throw ValidationError("missing [vacuum] section");
    inst.validate();
    return inst;
}

std::string AlgebraInstance::to_text() const {
    std::ostringstream os;
    os << "[meta]\norder " << order << "\n";
    os << "[colors]\nnames";
    for (const auto& c : alg.colors) os << " " << c;
    os << "\nidentity " << alg.colors[alg.identity] << "\n";
    os << "[fusion]\n";
    for (const auto& [key, v] : alg.fusion) {
        auto [a1, a2, a3] = key;
        os << alg.colors[a1] << " " << alg.colors[a2] << " " << alg.colors[a3] << " " << v << "\n";
    }
    os << "[weights]\n";
    for (Color a = 0; a < alg.size(); ++a) os << alg.colors[a] << " " << rat_to_string(spaces[a].base_weight) << "\n";
    os << "[dims]\n";
    for (Color a = 0; a < alg.size(); ++a) {
        os << alg.colors[a] << " " << spaces[a].truncation << " :";
        for (long d : spaces[a].dims) os << " " << d;
        os << "\n";
    }
    os << "[vacuum]\n";
    for (long i = 0; i < vacuum.size(); ++i) os << (i ? " " : "") << vacuum[i].to_string();
    os << "\n[virasoro]\nc " << central_charge.to_string() << "\n";
    if (omega) {
        os << "omega";
        for (long i = 0; i < omega->size(); ++i) os << " " << (*omega)[i].to_string();
        os << "\n";
    }
    for (const auto& [key, tabs] : intertwiners) {
        auto [a1, a2, a3] = key;
        for (size_t i = 0; i < tabs.size(); ++i) {
            os << "[intertwiner " << alg.colors[a1] << " " << alg.colors[a2] << " -> " << alg.colors[a3] << " # "
               << i << "]\n";
            for (const auto& [k, vec] : tabs[i].entries) {
                os << rat_to_string(k.n) << " " << k.in1.level << " " << k.in1.index << " " << k.in2.level << " "
                   << k.in2.index << " :";
                for (long j = 0; j < vec.size(); ++j) os << " " << vec[j].to_string();
                os << "\n";
            }
        }
    }
    for (const auto& [key, m] : fusing) {
        auto [a1, a2, a3, a4] = key;
        os << "[F " << alg.colors[a1] << " " << alg.colors[a2] << " " << alg.colors[a3] << " ; " << alg.colors[a4]
           << "]\n";
        for (long r = 0; r < m.rows(); ++r)
            for (long c = 0; c < m.cols(); ++c)
                if (!m(r, c).is_zero()) os << r << " " << c << " : " << m(r, c).to_string() << "\n";
    }
    for (const auto& [key, m] : skew) {
        auto [a1, a2, a3] = key;
        os << "[Omega " << alg.colors[a1] << " " << alg.colors[a2] << " ; " << alg.colors[a3] << "]\n";
        for (long r = 0; r < m.rows(); ++r)
            for (long c = 0; c < m.cols(); ++c)
                if (!m(r, c).is_zero()) os << r << " " << c << " : " << m(r, c).to_string() << "\n";
    }
    for (const auto& [key, elems] : gbasis) {
        os << "[gbasis " << alg.colors[key.a1] << " " << alg.colors[key.a2] << " " << alg.colors[key.a3] << " "
           << alg.colors[key.a4] << "]\n";
        for (const auto& el : elems)
            os << el.label << " " << rat_to_string(el.a) << " " << rat_to_string(el.b) << " " << rat_to_string(el.c)
               << "\n";
    }
    return os.str();
}

AlgebraInstance AlgebraInstance::load(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ValidationError("cannot open '" + path + "'");
    std::stringstream ss;
    ss << in.rdbuf();
    return from_text(ss.str());
}

void AlgebraInstance::save(const std::string& path) const {
    std::ofstream out(path);
    if (!out) throw ValidationError("cannot write '" + path + "'");
    out << to_text();
}

}  // namespace ioa
