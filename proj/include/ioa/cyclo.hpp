#pragma once

#include <map>
#include <memory>
#include <vector>

#include "ioa/rational.hpp"

namespace ioa {

// Shared per-order data: the N-th cyclotomic polynomial and reduction rows
// expressing zeta^k (0 <= k <= 2*phi-2) in the power basis 1, zeta, ..., zeta^{phi-1}.
struct CycloContext {
    long order = 1;
    long degree = 1;                         // phi(order)
    std::vector<Int> phi_poly;               // monic, length degree+1
    std::vector<std::vector<Rat>> pow_red;   // zeta^k in the power basis

    static const CycloContext& get(long order);
};

// Exact element of Q(zeta_N), canonical coordinates w.r.t. the power basis.
class Cyclo {
public:
    Cyclo() : order_(1), coeffs_(1, Rat(0)) {}
    explicit Cyclo(long order) : order_(order), coeffs_(CycloContext::get(order).degree, Rat(0)) {}
    Cyclo(long order, const Rat& r) : Cyclo(order) { coeffs_[0] = r; }

    static Cyclo from_rational(long order, const Rat& r) { return Cyclo(order, r); }
    // zeta_M^k embedded in Q(zeta_N); requires M | N
    static Cyclo root_of_unity(long order, long k, long M);
    // e^{i pi r} for rational r; requires 2*den(r) | N
    static Cyclo e_i_pi(long order, const Rat& r);

    long order() const { return order_; }
    const std::vector<Rat>& coeffs() const { return coeffs_; }

    bool is_zero() const;
    bool is_rational() const;
    Rat rational_part() const { return coeffs_[0]; }

    Cyclo operator-() const;
    Cyclo operator+(const Cyclo& o) const;
    Cyclo operator-(const Cyclo& o) const;
    Cyclo operator*(const Cyclo& o) const;
    Cyclo& operator+=(const Cyclo& o) { *this = *this + o; return *this; }
    Cyclo& operator-=(const Cyclo& o) { *this = *this - o; return *this; }
    Cyclo& operator*=(const Cyclo& o) { *this = *this * o; return *this; }
    Cyclo operator*(const Rat& r) const;
    Cyclo operator/(const Cyclo& o) const { return *this * o.inverse(); }

    bool operator==(const Cyclo& o) const;
    bool operator!=(const Cyclo& o) const { return !(*this == o); }

    Cyclo inverse() const;                // errors on zero
    Cyclo conjugate() const;              // zeta -> zeta^{-1}
    bool is_unit_modulus() const;         // z * conj(z) == 1
    bool is_root_of_unity() const;        // z == zeta_N^k for some k

    // lift to a larger order (order_ |新 order)
    Cyclo embedded(long new_order) const;

    std::string to_string() const;

private:
    long order_;
    std::vector<Rat> coeffs_;

    void reduce_from_raw(const std::vector<Rat>& raw);  // raw in powers 0..order-1 or longer
    friend struct CycloOps;
};

inline Cyclo operator*(const Rat& r, const Cyclo& c) { return c * r; }

// Common ambient order for two scalars (errors if incompatible per the fixed-order policy).
long require_same_order(const Cyclo& a, const Cyclo& b);

}  // namespace ioa
