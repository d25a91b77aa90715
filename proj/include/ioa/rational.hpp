#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <limits>
#include <stdexcept>
#include <string>

namespace ioa {

using Int = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;  // canonical: lowest terms, denominator > 0

inline Rat rat(long n, long d = 1) { return Rat(Int(n), Int(d)); }

inline Int rat_num(const Rat& r) { return numerator(r); }
inline Int rat_den(const Rat& r) { return denominator(r); }

inline bool is_integer(const Rat& r) { return denominator(r) == 1; }

inline Int floor_int(const Rat& r) {
    Int q = numerator(r) / denominator(r);
    if (numerator(r) < 0 && q * denominator(r) != numerator(r)) --q;
    return q;
}

// fractional part in [0,1)
inline Rat frac_part(const Rat& r) { return r - Rat(floor_int(r)); }

inline long to_long(const Int& v) {
    if (v > std::numeric_limits<long>::max() || v < std::numeric_limits<long>::min())
        throw std::overflow_error("integer too large for index use");
    return static_cast<long>(v);
}

// binom(r, m) for rational r and integer m >= 0, exact
inline Rat binom(const Rat& r, long m) {
    if (m < 0) return Rat(0);
    Rat acc(1);
    for (long i = 0; i < m; ++i) acc *= (r - Rat(i)) / Rat(i + 1);
    return acc;
}

inline Int factorial(long n) {
    Int f = 1;
    for (long i = 2; i <= n; ++i) f *= i;
    return f;
}

std::string rat_to_string(const Rat& r);
Rat rat_from_string(const std::string& s);

}  // namespace ioa
