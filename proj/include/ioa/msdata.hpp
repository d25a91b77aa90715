#pragma once

#include "ioa/algdata.hpp"
#include "ioa/report.hpp"

namespace ioa {

// coordinates on the pair coproduct spaces: product type (a5, i, j) means
// Y^{a4}_{a1 a5; i} (x) Y^{a5}_{a2 a3; j}; iterate type (a, k, l) means
// Y^{a}_{a1 a2; k} (x) Y^{a4}_{a a3; l}.
struct PairIdx {
    Color mid;
    long i, j;
    auto operator<=>(const PairIdx&) const = default;
};
using PairVec = std::map<PairIdx, Cyclo>;

// exact inverse by Gaussian elimination; throws on a singular block
CMat gauss_inverse(const CMat& m, long order);

// F(a1,a2,a3;a4) block of an instance (zero-sized when absent)
const CMat& fusing_block(const AlgebraInstance& inst, Color a1, Color a2, Color a3, Color a4);
const CMat& skew_block(const AlgebraInstance& inst, Color a1, Color a2, Color a3);

// dense index <-> PairIdx for the two pair-space shapes
std::vector<PairIdx> product_pair_basis(const AlgebraInstance& inst, Color a1, Color a2, Color a3, Color a4);
std::vector<PairIdx> iterate_pair_basis(const AlgebraInstance& inst, Color a1, Color a2, Color a3, Color a4);

// apply F(a1,a2,a3;a4) to a product-type pair vector, yielding an iterate-type one
PairVec apply_fusing(const AlgebraInstance& inst, Color a1, Color a2, Color a3, Color a4, const PairVec& z);

// braiding B(a1,a2;a3,a4) = F^{-1}(a2,a1,a3;a4) o (Omega (x) I) o F(a1,a2,a3;a4):
// product-type over (a1,a2,a3;a4)  ->  product-type over (a2,a1,a3;a4)
PairVec apply_braiding(const AlgebraInstance& inst, Color a1, Color a2, Color a3, Color a4, const PairVec& z);
// the full braiding block as a matrix in the two product-type bases
CMat braiding_block(const AlgebraInstance& inst, Color a1, Color a2, Color a3, Color a4);

CheckReport check_pentagon(const AlgebraInstance& inst);
CheckReport check_hexagons(const AlgebraInstance& inst);

}  // namespace ioa
