#pragma once

#include "ioa/algdata.hpp"

namespace ioa {

// desk-scale abelian instance data: a cyclic group with a rational weight map
struct AbelianSpec {
    long cyclic_order = 2;          // G = Z/n
    std::vector<Rat> weights;       // q(g) for g = 0..n-1, q(0) = 0
    std::vector<long> lift_shifts;  // filled by the generator when weights needed adjusting
};

AlgebraInstance make_trivial_voa();

// monomial instance on C[G]: one-dimensional W^g at level 0 with h_g = q(g),
// Y(v_a, x) v_b = lambda(a,b) x^{q(a+b)-q(a)-q(b)} v_{a+b}, with F and Omega
// assembled so that the Omega_{-1} formula, both hexagons and the pentagon hold.
// Integer lift shifts are applied to the weights when the literal lift admits no
// consistent fusing data; the shifts used are reported in spec.lift_shifts.
AlgebraInstance make_abelian_monomial(AbelianSpec& spec);

struct FaultDescriptor {
    enum class Kind { FusingEntry, OmegaEntry, TableEntry, VacuumEntry };
    Kind kind = Kind::TableEntry;
    Color a1 = 0, a2 = 0, a3 = 0, a4 = 0;
    long row = 0, col = 0;      // matrix entries
    size_t table_index = 0;     // which basis element
    long entry_ordinal = 0;     // which table entry (in key order)
    bool zero = false;          // zero the scalar instead of scaling it
    std::string label;          // stable description for reports
};

AlgebraInstance inject_fault(const AlgebraInstance& inst, const FaultDescriptor& fault);

// canonical corpus of detectable single-scalar faults for an instance
std::vector<FaultDescriptor> fault_corpus(const AlgebraInstance& inst);

}  // namespace ioa
