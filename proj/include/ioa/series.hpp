#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "ioa/cyclo.hpp"

namespace ioa {

// Per-variable exponent range on which coefficients are certified exact.
struct Bound {
    bool infinite = true;  // -inf for lo, +inf for hi
    Rat value;

    static Bound inf() { return Bound{}; }
    static Bound at(const Rat& v) { return Bound{false, v}; }
};

struct Window {
    std::vector<Bound> lo, hi;

    static Window all(size_t nvars);
    static Window box(const Rat& lo, const Rat& hi, size_t nvars);
    size_t size() const { return lo.size(); }
    bool contains(const std::vector<Rat>& e) const;
    Window intersect(const Window& o) const;
    Window shifted(const std::vector<Rat>& by) const;
    bool empty() const;  // some variable has lo > hi
    std::string to_string() const;
};

using ExpKey = std::vector<Rat>;

struct InfiniteConvolutionError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct UncertifiedRegionError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Sparse multivariate formal series with rational exponents and certified windows.
//
// Stored exponents lie inside the window and carry no explicit zeros.  Inside the
// window the coefficients are exactly the stored values (absence = certified zero).
// Outside the window nothing is claimed, except where the per-variable truncation
// flags certify vanishing: zero_below[v] says every coefficient with exponent_v
// strictly below window.lo[v] vanishes (W((x))-style lower truncation), and
// zero_above[v] the mirror statement.
class FormalSeries {
public:
    FormalSeries() = default;
    FormalSeries(std::vector<std::string> vars, long order);

    const std::vector<std::string>& vars() const { return vars_; }
    long scalar_order() const { return order_; }
    const std::map<ExpKey, Cyclo>& terms() const { return terms_; }
    const Window& window() const { return window_; }

    bool zero_below(size_t v) const { return zero_below_[v]; }
    bool zero_above(size_t v) const { return zero_above_[v]; }
    void set_zero_below(size_t v, bool b) { zero_below_[v] = b; }
    void set_zero_above(size_t v, bool b) { zero_above_[v] = b; }
    // full support stored: certified everywhere
    bool complete() const;
    void mark_complete();

    void set_window(Window w) { window_ = std::move(w); }
    void add_term(const ExpKey& e, const Cyclo& c);

    bool is_zero_on_window() const { return terms_.empty(); }

    bool certified_at(const ExpKey& e) const;
    // exact coefficient; throws UncertifiedRegionError outside the certified region
    Cyclo coefficient(const ExpKey& e) const;

    FormalSeries operator+(const FormalSeries& o) const;
    FormalSeries operator-(const FormalSeries& o) const;
    FormalSeries scaled(const Cyclo& c) const;

    // exact product on the largest certifiable window; throws
    // InfiniteConvolutionError when some coefficient would be an infinite sum
    // (e.g. delta(x) * delta(x)).
    FormalSeries multiplied(const FormalSeries& o) const;

    // coefficient of var^{-1}, as a series in the remaining variables
    FormalSeries residue(const std::string& var) const;

    // d/dvar, exponent-wise n x^{n-1}
    FormalSeries derivative(const std::string& var) const;

    // multiply the coefficient at exponent n of `var` by e^{half_turns * i pi * n}
    FormalSeries phase_substituted(const std::string& var, long half_turns) const;

    FormalSeries restricted(const Window& w) const;

    // shift all exponents by `by` (monomial multiplication)
    FormalSeries shifted(const ExpKey& by) const;

    // rename/reorder variables
    FormalSeries with_vars(std::vector<std::string> vars, const std::vector<size_t>& perm) const;

    bool equal_on(const FormalSeries& o, const Window& w, ExpKey* witness = nullptr) const;

    std::string dump() const;  // "exponents : coefficient" lines, lex sorted

private:
    std::vector<std::string> vars_;
    long order_ = 1;
    std::map<ExpKey, Cyclo> terms_;
    Window window_;
    std::vector<bool> zero_below_, zero_above_;

    size_t var_index(const std::string& v) const;
    friend FormalSeries series_mul(const FormalSeries&, const FormalSeries&);
};

// tensor product of two one-variable series into a two-variable series
FormalSeries tensor_product(const FormalSeries& f, const FormalSeries& g, const std::string& v1,
                            const std::string& v2);

// lift a two-variable series to three variables with `freevar` complete at exponent 0
FormalSeries lift_to_three(const FormalSeries& s, const std::string& freevar, size_t freepos);

// delta(var) = sum over integer n of var^n, truncated to the window
FormalSeries delta_series(const std::string& var, const Window& w, long order);

// (x_i sign x_j)^{exponent} expanded in nonnegative powers of the second summand
FormalSeries binomial_expand(const std::string& xi, int sign, const std::string& xj, const Rat& exponent,
                             const Window& w, long order);

// x0^{-1} delta((x_a sign x_b)/(denom_sign x0)) with exponents n in coset+Z:
//   sum_n (x_a sign x_b)^n (denom_sign x0)^{-n-1}
// For fractional n and denom_sign=-1 the (-x0)-powers use the lower continuation
// (-x0)^s = e^{-i pi s} x0^s.  Result variables: (x0, x_a, x_b).
FormalSeries delta_two_summand(const std::string& xa, int sign, const std::string& xb,
                               const std::string& x0, int denom_sign, const Rat& coset, const Window& w,
                               long order);

}  // namespace ioa
