#pragma once

#include <optional>

#include "ioa/algdata.hpp"
#include "ioa/msdata.hpp"
#include "ioa/report.hpp"

namespace ioa {

// Virasoro modes read from the omega table; absent when omega lies outside truncation.
class VirasoroModes {
public:
    explicit VirasoroModes(const AlgebraInstance& inst);
    bool certified() const { return certified_; }
    // matrix of L(n): W^a level -> level-n block; nullopt when the target level is
    // outside truncation (uncertified)
    std::optional<CMat> L(Color a, long n, long level) const;

private:
    const AlgebraInstance& inst_;
    bool certified_ = false;
};

// Omega_r(Y)(w2, x) w1 = e^{x L(-1)} Y(w1, e^{(2r+1) pi i} x) w2, as a table of the
// transposed type (a2, a1; a3), exact on the certified mode range.
OperatorTable omega_r(const AlgebraInstance& inst, const OperatorTable& table, long r);

// <dual, A(u, x1) B(w1, x2) w2>: compose two tables through the intermediate color;
// the window box gives the (x1, x2) truncation
FormalSeries product_coefficient(const AlgebraInstance& inst, const OperatorTable& outer,
                                 const OperatorTable& inner, StateRef u, StateRef w1, StateRef w2,
                                 StateRef dual, const Window& box2);
// <dual, B'(D(u, x0) w1, x2) w2>
FormalSeries iterate_coefficient(const AlgebraInstance& inst, const OperatorTable& outer,
                                 const OperatorTable& inner, StateRef u, StateRef w1, StateRef w2,
                                 StateRef dual, const Window& box2);

// scalar matrix coefficients <dual, Y(w1, x) w2> for basis states
FormalSeries matrix_coefficient(const AlgebraInstance& inst, const OperatorTable& table, StateRef w1,
                                StateRef w2, StateRef dual, const std::string& var, const Window& w);

CheckReport check_voa(const AlgebraInstance& inst, long window);
CheckReport check_module(const AlgebraInstance& inst, Color a, long window);
CheckReport check_intertwiner(const AlgebraInstance& inst, Color a1, Color a2, Color a3, size_t index,
                              long window);
CheckReport check_skew_symmetry_voa(const AlgebraInstance& inst, long window);
CheckReport check_ioa_axioms(const AlgebraInstance& inst, long window);
CheckReport check_omega_consistency(const AlgebraInstance& inst);
// aggregate intertwiner suite over every declared basis element
CheckReport check_all_intertwiners(const AlgebraInstance& inst, long window);

}  // namespace ioa
