#pragma once

#include <Eigen/Core>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "ioa/ratfun.hpp"
#include "ioa/series.hpp"

namespace Eigen {
template <>
struct NumTraits<ioa::Cyclo> : GenericNumTraits<ioa::Cyclo> {
    typedef ioa::Cyclo Real;
    typedef ioa::Cyclo NonInteger;
    typedef ioa::Cyclo Nested;
    enum {
        IsComplex = 1,
        IsInteger = 0,
        IsSigned = 1,
        RequireInitialization = 1,
        ReadCost = 1,
        AddCost = 16,
        MulCost = 64
    };
    static inline Real epsilon() { return ioa::Cyclo(); }
    static inline Real dummy_precision() { return ioa::Cyclo(); }
    static inline int digits10() { return 0; }
};
}  // namespace Eigen

namespace ioa {

using CMat = Eigen::Matrix<Cyclo, Eigen::Dynamic, Eigen::Dynamic>;
using CVec = Eigen::Matrix<Cyclo, Eigen::Dynamic, 1>;

struct ValidationError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

using Color = size_t;

struct ColorAlgebra {
    std::vector<std::string> colors;
    Color identity = 0;
    std::map<std::tuple<Color, Color, Color>, long> fusion;  // N_{a1 a2}^{a3}, absent = 0

    size_t size() const { return colors.size(); }
    long N(Color a1, Color a2, Color a3) const;
    Color index_of(const std::string& name) const;
    void validate() const;  // symmetry, associativity sums, identity column
};

struct GradedSpace {
    Color color = 0;
    Rat base_weight;            // h_a
    long truncation = 0;        // levels 0..truncation are certified
    std::vector<long> dims;     // size truncation+1

    long dim(long level) const { return (level < 0 || level > truncation) ? 0 : dims[level]; }
    bool certified(long level) const { return level >= 0 && level <= truncation; }
    long total_dim() const;
    long offset(long level) const;  // offset of a level block in the stacked vector
};

// basis state of one graded space
struct StateRef {
    long level = 0;
    long index = 0;
    auto operator<=>(const StateRef&) const = default;
};

// table of one intertwiner basis element of type (a1, a2; a3)
struct OperatorTable {
    Color a1 = 0, a2 = 0, a3 = 0;
    // (in1, in2, mode n) -> output coefficients at the grading-forced level
    struct Key {
        StateRef in1, in2;
        Rat n;
        bool operator<(const Key& o) const {
            if (in1 != o.in1) return in1 < o.in1;
            if (in2 != o.in2) return in2 < o.in2;
            return n < o.n;
        }
    };
    std::map<Key, CVec> entries;
};

struct GBasisKey {
    Color a1, a2, a3, a4;
    auto operator<=>(const GBasisKey&) const = default;
};

struct AlgebraInstance {
    long order = 1;  // cyclotomic order N
    ColorAlgebra alg;
    std::vector<GradedSpace> spaces;  // per color
    CVec vacuum;                      // level-0 coordinates in W^e
    Cyclo central_charge;
    std::optional<CVec> omega;        // level-2 coordinates in W^e; nullopt = outside truncation
    // intertwiner tables: (a1,a2,a3) -> one table per basis element, count = N_{a1a2}^{a3}
    std::map<std::tuple<Color, Color, Color>, std::vector<OperatorTable>> intertwiners;
    // fusing blocks: (a1,a2,a3;a4) -> matrix, rows (a5,i,j), cols (a,k,l), lexicographic
    std::map<std::tuple<Color, Color, Color, Color>, CMat> fusing;
    // skew-symmetry blocks: (a1,a2;a3) -> matrix, rows index V_{a1a2}^{a3}, cols V_{a2a1}^{a3}
    std::map<std::tuple<Color, Color, Color>, CMat> skew;
    std::map<GBasisKey, std::vector<GBasisElement>> gbasis;

    const GradedSpace& space(Color a) const { return spaces[a]; }
    Rat weight(Color a, long level) const { return spaces[a].base_weight + Rat(level); }
    long ncolors() const { return (long)alg.size(); }

    const std::vector<OperatorTable>& tables(Color a1, Color a2, Color a3) const;
    const OperatorTable& module_action(Color a) const;  // the basis element of V_{e a}^{a}

    // mode exponent coset h_{a1}+h_{a2}-h_{a3} for a channel
    Rat mode_coset(Color a1, Color a2, Color a3) const;
    // P(a1,a2): coset representatives in [0,1)
    std::set<Rat> exponent_cosets(Color a1, Color a2) const;

    // certified mode range for given input levels: modes with output level in [0, L3]
    std::pair<Rat, Rat> certified_mode_range(Color a1, Color a2, Color a3, long l1, long l2) const;

    void validate() const;  // every loader invariant; throws ValidationError with location

    std::string to_text() const;
    static AlgebraInstance from_text(const std::string& text);
    static AlgebraInstance load(const std::string& path);
    void save(const std::string& path) const;

    // minimal-sufficiency helper: least admissible cyclotomic order for declared data
    long minimal_order() const;
};

// apply an intertwiner table: Y(w1, x) w2 truncated to the certified window.
// The result is a family of scalar series: one per output state of W^{a3}.
struct VectorSeries {
    Color color = 0;
    // stacked over output states (level, index) -> scalar series in one variable
    std::map<StateRef, FormalSeries> components;
    Window window;  // certified exponent window (shared)
};

VectorSeries intertwiner_apply(const AlgebraInstance& inst, const OperatorTable& table, const CVec& w1,
                               long level1, const CVec& w2, long level2, const std::string& var,
                               const Window& w);

// graded dual pairing <w', series>: selects the component of one output state
FormalSeries dual_pair(const VectorSeries& series, const StateRef& dual_state, long order);

}  // namespace ioa
