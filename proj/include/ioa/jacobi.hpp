#pragma once

#include "ioa/checkers.hpp"
#include "ioa/msdata.hpp"

namespace ioa {

// element of the coproduct of intertwiner pairs over a fixed color quadruple;
// product type: (a5,i,j) coordinates on V_{a1 a5}^{a4} (x) V_{a2 a3}^{a5},
// iterate type: (a,k,l) on V_{a1 a2}^{a} (x) V_{a a3}^{a4}
struct ChannelTensor {
    Color a1 = 0, a2 = 0, a3 = 0, a4 = 0;
    bool iterate = false;
    PairVec coeffs;
};

// <dual, (P(Z))(w1, w2, w3; x1, x2)> as a certified two-variable series
FormalSeries multiply_P(const AlgebraInstance& inst, const ChannelTensor& z, StateRef w1, StateRef w2,
                        StateRef w3, StateRef dual, const Window& box2);
// <dual, (I(Z))(w1, w2, w3; x0, x2)>
FormalSeries iterate_I(const AlgebraInstance& inst, const ChannelTensor& z, StateRef w1, StateRef w2,
                       StateRef w3, StateRef dual, const Window& box2);

// the shared basis for a quadruple: declared [gbasis], or the canonical family
// built from the instance's weights
std::vector<GBasisElement> shared_gbasis(const AlgebraInstance& inst, Color a1, Color a2, Color a3,
                                         Color a4);

// adic decomposition of a certified series against the basis expansions
// (iota12 on the product side, iota20 on the iterate side); coefficients are
// elements of the integer-exponent ring.  Throws NotInSpanError.
std::map<std::string, LaurentRational> decompose_product_series(const FormalSeries& s,
                                                                const std::vector<GBasisElement>& basis,
                                                                long order);
std::map<std::string, LaurentRational> decompose_iterate_series(const FormalSeries& s,
                                                                const std::vector<GBasisElement>& basis,
                                                                long order);

// full suites over every quadruple, channel tensor and state tuple
CheckReport check_duality_formal(const AlgebraInstance& inst, long window);
CheckReport check_jacobi_suite(const AlgebraInstance& inst, long window);

}  // namespace ioa
