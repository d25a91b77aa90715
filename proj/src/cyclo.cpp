#include "ioa/cyclo.hpp"

#include <mutex>
#include <sstream>
#include <stdexcept>

namespace ioa {

namespace {

// exact division of integer polynomials, quotient known to be integral
std::vector<Int> poly_div_exact(const std::vector<Int>& num, const std::vector<Int>& den) {
    std::vector<Int> r = num;
    std::vector<Int> q(num.size() - den.size() + 1, Int(0));
    const Int lead = den.back();
    for (long i = (long)r.size() - 1; i >= (long)den.size() - 1; --i) {
        if (r[i] == 0) continue;
        Int c = r[i] / lead;
        if (c * lead != r[i]) throw std::logic_error("cyclotomic division not exact");
        long shift = i - ((long)den.size() - 1);
        q[shift] = c;
        for (size_t j = 0; j < den.size(); ++j) r[shift + j] -= c * den[j];
    }
    for (size_t j = 0; j + 1 < den.size(); ++j)
        if (r[j] != 0) throw std::logic_error("cyclotomic division remainder");
    while (q.size() > 1 && q.back() == 0) q.pop_back();
    return q;
}

std::vector<Int> cyclotomic_poly(long n) {
    // Phi_n = (x^n - 1) / prod_{d | n, d < n} Phi_d
    std::vector<Int> num(n + 1, Int(0));
    num[0] = -1;
    num[n] = 1;
    for (long d = 1; d < n; ++d) {
        if (n % d != 0) continue;
        num = poly_div_exact(num, cyclotomic_poly(d));
    }
    return num;
}

std::map<long, std::unique_ptr<CycloContext>>& context_cache() {
    static std::map<long, std::unique_ptr<CycloContext>> cache;
    return cache;
}
std::mutex context_mutex;

}  // namespace

const CycloContext& CycloContext::get(long order) {
    if (order < 1) throw std::invalid_argument("cyclotomic order must be positive");
    std::lock_guard<std::mutex> lk(context_mutex);
    auto& cache = context_cache();
    auto it = cache.find(order);
    if (it != cache.end()) return *it->second;

    auto ctx = std::make_unique<CycloContext>();
    ctx->order = order;
    ctx->phi_poly = cyclotomic_poly(order);
    ctx->degree = (long)ctx->phi_poly.size() - 1;
    const long deg = ctx->degree;

    // rows zeta^k for k = 0 .. 2*deg-2 (enough for products of reduced elements)
    long rows = std::max<long>(2 * deg - 1, order);
    ctx->pow_red.resize(rows);
    for (long k = 0; k < deg; ++k) {
        ctx->pow_red[k].assign(deg, Rat(0));
        ctx->pow_red[k][k] = 1;
    }
    for (long k = deg; k < rows; ++k) {
        // x^k = x * x^{k-1}, then reduce the top term via phi: x^deg = -(phi_0 + ... + phi_{deg-1} x^{deg-1})
        std::vector<Rat> prev = ctx->pow_red[k - 1];
        std::vector<Rat> cur(deg, Rat(0));
        for (long i = 0; i + 1 < deg; ++i) cur[i + 1] += prev[i];
        Rat top = prev[deg - 1];
        if (top != 0) {
            for (long i = 0; i < deg; ++i) cur[i] -= top * Rat(ctx->phi_poly[i]);
        }
        ctx->pow_red[k] = std::move(cur);
    }
    auto* ptr = ctx.get();
    cache[order] = std::move(ctx);
    return *ptr;
}

void Cyclo::reduce_from_raw(const std::vector<Rat>& raw) {
    const auto& ctx = CycloContext::get(order_);
    coeffs_.assign(ctx.degree, Rat(0));
    for (size_t k = 0; k < raw.size(); ++k) {
        if (raw[k] == 0) continue;
        long kk = (long)k % order_;
        if (kk < ctx.degree) {
            coeffs_[kk] += raw[k];
        } else {
            const auto& row = ctx.pow_red[kk];
            for (long i = 0; i < ctx.degree; ++i) coeffs_[i] += raw[k] * row[i];
        }
    }
}

Cyclo Cyclo::root_of_unity(long order, long k, long M) {
    if (M <= 0) throw std::invalid_argument("root-of-unity order must be positive");
    if (order % M != 0)
        throw std::domain_error("incompatible cyclotomic order: zeta_" + std::to_string(M) +
                                " does not embed in Q(zeta_" + std::to_string(order) + ")");
    long kk = ((k % M) + M) % M;
    long e = kk * (order / M) % order;
    Cyclo z(order);
    std::vector<Rat> raw(order, Rat(0));
    raw[e] = 1;
    z.reduce_from_raw(raw);
    return z;
}

Cyclo Cyclo::e_i_pi(long order, const Rat& r) {
    // e^{i pi p/q} = zeta_{2q}^p
    Int den = rat_den(r), num = rat_num(r);
    long q = to_long(den);
    if (order % (2 * q) != 0)
        throw std::domain_error("phase e^{i pi " + rat_to_string(r) + "} not representable in Q(zeta_" +
                                std::to_string(order) + ")");
    long p = to_long(((num % (2 * q)) + 2 * q) % (2 * q));
    return root_of_unity(order, p, 2 * q);
}

bool Cyclo::is_zero() const {
    for (const auto& c : coeffs_)
        if (c != 0) return false;
    return true;
}

bool Cyclo::is_rational() const {
    for (size_t i = 1; i < coeffs_.size(); ++i)
        if (coeffs_[i] != 0) return false;
    return true;
}

Cyclo Cyclo::operator-() const {
    Cyclo r = *this;
    for (auto& c : r.coeffs_) c = -c;
    return r;
}

long require_same_order(const Cyclo& a, const Cyclo& b) {
    if (a.order() == b.order()) return a.order();
    // rational values embed in any order
    if (a.is_rational() || b.is_rational()) return std::max(a.order(), b.order());
    throw std::domain_error("incompatible cyclotomic orders " + std::to_string(a.order()) + " vs " +
                            std::to_string(b.order()));
}

Cyclo Cyclo::embedded(long new_order) const {
    if (new_order == order_) return *this;
    if (new_order % order_ != 0) {
        if (is_rational()) return Cyclo(new_order, coeffs_[0]);
        throw std::domain_error("cannot embed Q(zeta_" + std::to_string(order_) + ") into Q(zeta_" +
                                std::to_string(new_order) + ")");
    }
    Cyclo r(new_order);
    std::vector<Rat> raw(new_order, Rat(0));
    long f = new_order / order_;
    for (size_t k = 0; k < coeffs_.size(); ++k) raw[(long)k * f] = coeffs_[k];
    r.reduce_from_raw(raw);
    return r;
}

Cyclo Cyclo::operator+(const Cyclo& o) const {
    long n = require_same_order(*this, o);
    Cyclo a = embedded(n), b = o.embedded(n), r(n);
    for (size_t i = 0; i < r.coeffs_.size(); ++i) r.coeffs_[i] = a.coeffs_[i] + b.coeffs_[i];
    return r;
}

Cyclo Cyclo::operator-(const Cyclo& o) const { return *this + (-o); }

Cyclo Cyclo::operator*(const Cyclo& o) const {
    long n = require_same_order(*this, o);
    Cyclo a = embedded(n), b = o.embedded(n), r(n);
    const auto& ctx = CycloContext::get(n);
    std::vector<Rat> raw(2 * ctx.degree - 1, Rat(0));
    for (size_t i = 0; i < a.coeffs_.size(); ++i) {
        if (a.coeffs_[i] == 0) continue;
        for (size_t j = 0; j < b.coeffs_.size(); ++j) {
            if (b.coeffs_[j] == 0) continue;
            raw[i + j] += a.coeffs_[i] * b.coeffs_[j];
        }
    }
    r.reduce_from_raw(raw);
    return r;
}

Cyclo Cyclo::operator*(const Rat& s) const {
    Cyclo r = *this;
    for (auto& c : r.coeffs_) c *= s;
    return r;
}

bool Cyclo::operator==(const Cyclo& o) const {
    if (order_ != o.order_) {
        long n = require_same_order(*this, o);
        return embedded(n) == o.embedded(n);
    }
    return coeffs_ == o.coeffs_;
}

Cyclo Cyclo::inverse() const {
    if (is_zero()) throw std::domain_error("division by zero in Q(zeta_N)");
    if (is_rational()) return Cyclo(order_, Rat(1) / coeffs_[0]);
    const auto& ctx = CycloContext::get(order_);
    const long n = ctx.degree;
    // columns: this * zeta^j in the power basis
    std::vector<std::vector<Rat>> mat(n, std::vector<Rat>(n, Rat(0)));
    Cyclo col = *this;
    for (long j = 0; j < n; ++j) {
        for (long i = 0; i < n; ++i) mat[i][j] = col.coeffs_[i];
        // col *= zeta
        std::vector<Rat> raw(n + 1, Rat(0));
        for (long i = 0; i < n; ++i) raw[i + 1] = col.coeffs_[i];
        col.reduce_from_raw(raw);
    }
    std::vector<Rat> rhs(n, Rat(0));
    rhs[0] = 1;
    // gaussian elimination
    for (long c = 0; c < n; ++c) {
        long piv = -1;
        for (long r2 = c; r2 < n; ++r2)
            if (mat[r2][c] != 0) { piv = r2; break; }
        if (piv < 0) throw std::domain_error("division by zero in Q(zeta_N)");
        std::swap(mat[c], mat[piv]);
        std::swap(rhs[c], rhs[piv]);
        Rat pv = mat[c][c];
        for (long j = 0; j < n; ++j) mat[c][j] /= pv;
        rhs[c] /= pv;
        for (long r2 = 0; r2 < n; ++r2) {
            if (r2 == c || mat[r2][c] == 0) continue;
            Rat f = mat[r2][c];
            for (long j = 0; j < n; ++j) mat[r2][j] -= f * mat[c][j];
            rhs[r2] -= f * rhs[c];
        }
    }
    Cyclo out(order_);
    out.coeffs_ = rhs;
    return out;
}

Cyclo Cyclo::conjugate() const {
    Cyclo r(order_);
    std::vector<Rat> raw(order_, Rat(0));
    for (size_t k = 0; k < coeffs_.size(); ++k) {
        long e = (order_ - (long)k) % order_;
        raw[e] += coeffs_[k];
    }
    r.reduce_from_raw(raw);
    return r;
}

bool Cyclo::is_unit_modulus() const { return (*this * conjugate()) == Cyclo(order_, Rat(1)); }

bool Cyclo::is_root_of_unity() const {
    for (long k = 0; k < order_; ++k)
        if (*this == root_of_unity(order_, k, order_)) return true;
    Cyclo m = -*this;
    for (long k = 0; k < order_; ++k)
        if (m == root_of_unity(order_, k, order_)) return true;  // -zeta^k is a 2N-th root
    return false;
}

std::string Cyclo::to_string() const {
    if (is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    for (size_t k = 0; k < coeffs_.size(); ++k) {
        if (coeffs_[k] == 0) continue;
        Rat c = coeffs_[k];
        if (!first) {
            os << (c > 0 ? " + " : " - ");
            if (c < 0) c = -c;
        } else if (c < 0 && k > 0) {
            // keep the sign attached for leading non-constant terms
        }
        if (k == 0) {
            os << rat_to_string(c);
        } else {
            if (first && c < 0) { os << "-"; c = -c; }
            if (c != 1) os << rat_to_string(c) << "*";
            os << "z(" << k << "," << order_ << ")";
        }
        first = false;
    }
    return os.str();
}

}  // namespace ioa
