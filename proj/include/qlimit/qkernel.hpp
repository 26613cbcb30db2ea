#pragma once

#include <cmath>
#include <complex>
#include <initializer_list>
#include <stdexcept>
#include <string>

namespace qlimit {

using cplx = std::complex<double>;

struct SeriesTolerance {
    double abs_tail = 1e-15;
    int max_terms = 10000;
};

struct DomainError : std::domain_error {
    using std::domain_error::domain_error;
};

struct AccuracyError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Raised when an elliptic gamma argument sits within the guard of p^{-k} q^{-l}.
struct PoleError : std::runtime_error {
    int k, l;
    PoleError(int k_, int l_)
        : std::runtime_error("elliptic gamma pole at p^-" + std::to_string(k_) + " q^-" + std::to_string(l_)),
          k(k_), l(l_)
    {
    }
};

inline constexpr double kPoleGuard = 1e-8;
inline constexpr double kProductTail = 1e-17;

/// Complex value m * 2^e. Long products of large or tiny factors stay representable.
struct Scaled {
    cplx m{1.0, 0.0};
    long e = 0;

    Scaled() = default;
    explicit Scaled(cplx v) : m(v) { renorm(); }

    void renorm()
    {
        double a = std::max(std::abs(m.real()), std::abs(m.imag()));
        if (a == 0.0 || !std::isfinite(a)) return;
        if (a > 0x1p300 || a < 0x1p-300) {
            int ex;
            std::frexp(a, &ex);
            m = {std::ldexp(m.real(), -ex), std::ldexp(m.imag(), -ex)};
            e += ex;
        }
    }
    Scaled& operator*=(cplx f)
    {
        m *= f;
        renorm();
        return *this;
    }
    Scaled& operator*=(const Scaled& o)
    {
        m *= o.m;
        e += o.e;
        renorm();
        return *this;
    }
    Scaled& operator/=(const Scaled& o)
    {
        m /= o.m;
        e -= o.e;
        renorm();
        return *this;
    }
    cplx value() const { return {std::ldexp(m.real(), static_cast<int>(e)), std::ldexp(m.imag(), static_cast<int>(e))}; }
    /// Some branch of the logarithm; callers only exponentiate sums of these.
    cplx log() const { return std::log(m) + static_cast<double>(e) * 0.69314718055994530942; }
    bool is_zero() const { return m == cplx(0.0, 0.0); }
};

inline Scaled operator*(Scaled a, const Scaled& b)
{
    a *= b;
    return a;
}

inline Scaled operator/(Scaled a, const Scaled& b)
{
    a /= b;
    return a;
}

/// Neumaier-compensated complex accumulator.
struct CompensatedSum {
    double re = 0, im = 0, cre = 0, cim = 0;

    static void add1(double& s, double& c, double x)
    {
        double t = s + x;
        if (std::abs(s) >= std::abs(x)) c += (s - t) + x;
        else c += (x - t) + s;
        s = t;
    }
    void add(cplx v)
    {
        add1(re, cre, v.real());
        add1(im, cim, v.imag());
    }
    cplx value() const { return {re + cre, im + cim}; }
};

inline void require_nome(cplx q, const char* who)
{
    if (!(std::abs(q) < 1.0)) throw DomainError(std::string(who) + ": nome must satisfy |q| < 1");
}

/// Principal-branch power w^a.
inline cplx cpow(cplx w, double a)
{
    if (w == cplx(0.0, 0.0)) return a == 0.0 ? cplx(1.0) : cplx(0.0);
    return std::exp(a * std::log(w));
}

/// Finite product (x;q)_n, built by the same multiplication sequence for every n.
inline cplx qpoch(cplx x, cplx q, long n)
{
    cplx acc = 1.0, w = x;
    for (long k = 0; k < n; ++k) {
        acc *= (1.0 - w);
        w *= q;
    }
    return acc;
}

/// (x;q)_∞ truncated once |x q^k| / (1-|q|) drops below tail.
inline Scaled qpoch_inf_scaled(cplx x, cplx q, double tail = kProductTail)
{
    require_nome(q, "qpoch");
    const double aq = std::abs(q);
    const double scale = 1.0 - aq;
    Scaled acc;
    cplx w = x;
    for (long k = 0;; ++k) {
        if (std::abs(w) * aq <= tail * scale) {
            acc *= (1.0 - w);
            break;
        }
        acc *= (1.0 - w);
        w *= q;
        if (k > 50'000'000) throw AccuracyError("qpoch: product did not converge");
    }
    return acc;
}

inline cplx qpoch_inf(cplx x, cplx q, double tail = kProductTail) { return qpoch_inf_scaled(x, q, tail).value(); }

inline cplx theta(cplx x, cplx q)
{
    if (x == cplx(0.0, 0.0)) throw DomainError("theta: argument must be nonzero");
    Scaled s = qpoch_inf_scaled(x, q);
    s *= qpoch_inf_scaled(q / x, q);
    return s.value();
}

inline Scaled theta_scaled(cplx x, cplx q)
{
    if (x == cplx(0.0, 0.0)) throw DomainError("theta: argument must be nonzero");
    Scaled s = qpoch_inf_scaled(x, q);
    s *= qpoch_inf_scaled(q / x, q);
    return s;
}

/// ∏ (a_i;q)_∞ over the listed arguments.
inline Scaled poch_scaled(std::initializer_list<cplx> args, cplx q)
{
    Scaled s;
    for (cplx a : args) s *= qpoch_inf_scaled(a, q);
    return s;
}

inline cplx poch(std::initializer_list<cplx> args, cplx q) { return poch_scaled(args, q).value(); }

/// ∏ θ(a_i;q) over the listed arguments.
inline Scaled thetas_scaled(std::initializer_list<cplx> args, cplx q)
{
    Scaled s;
    for (cplx a : args) s *= theta_scaled(a, q);
    return s;
}

inline cplx thetas(std::initializer_list<cplx> args, cplx q) { return thetas_scaled(args, q).value(); }

namespace detail {

/// Double product ∏_{r,s≥0}(1 - x p^r q^s). With guard > 0 a factor closer than guard to
/// zero raises PoleError(r,s).
inline Scaled pq_product(cplx x, cplx p, cplx q, double guard, double tail)
{
    require_nome(p, "pq_symbol");
    require_nome(q, "pq_symbol");
    const double ap = std::abs(p), aq = std::abs(q);
    const double rowscale = (1.0 - ap) * (1.0 - aq);
    Scaled acc;
    cplx y = x;
    for (int r = 0;; ++r) {
        cplx w = y;
        for (int s = 0;; ++s) {
            cplx f = 1.0 - w;
            if (guard > 0.0 && std::abs(f) < guard) throw PoleError(r, s);
            acc *= f;
            if (std::abs(w) * aq <= tail * (1.0 - aq)) break;
            w *= q;
            if (s > 50'000'000) throw AccuracyError("pq_symbol: row did not converge");
        }
        if (std::abs(y) * ap <= tail * rowscale) break;
        y *= p;
        if (r > 50'000'000) throw AccuracyError("pq_symbol: rows did not converge");
    }
    return acc;
}

} // namespace detail

inline Scaled pq_symbol_scaled(cplx x, cplx p, cplx q, double tail = kProductTail)
{
    return detail::pq_product(x, p, q, 0.0, tail);
}

inline cplx pq_symbol(cplx x, cplx p, cplx q, double tail = kProductTail) { return pq_symbol_scaled(x, p, q, tail).value(); }

/// Γ(z;p,q) = (pq/z;p,q)/(z;p,q), refusing arguments inside the pole guard.
inline Scaled ell_gamma_scaled(cplx z, cplx p, cplx q)
{
    if (z == cplx(0.0, 0.0)) throw DomainError("ell_gamma: argument must be nonzero");
    Scaled den = detail::pq_product(z, p, q, kPoleGuard, kProductTail);
    Scaled num = detail::pq_product(p * q / z, p, q, 0.0, kProductTail);
    num /= den;
    return num;
}

inline cplx ell_gamma(cplx z, cplx p, cplx q) { return ell_gamma_scaled(z, p, q).value(); }

/// Residue of Γ(·;p,q) at p^{-k} q^{-l}, as Scaled.
inline Scaled gamma_residue_scaled(int k, int l, cplx p, cplx q)
{
    if (k < 0 || l < 0) throw DomainError("gamma_residue: indices must be nonnegative");
    Scaled res(-1.0);
    res /= qpoch_inf_scaled(p, p);
    res /= qpoch_inf_scaled(q, q);
    // Γ(z)/Γ(z p^k q^l) at the pole z0 via the quasi-periodicity factors.
    Scaled z0;
    for (int i = 0; i < k; ++i) z0 *= 1.0 / p;
    for (int i = 0; i < l; ++i) z0 *= 1.0 / q;
    const cplx z0v = z0.value();
    Scaled den;
    for (long i = 0; i < static_cast<long>(l) * (k * (k - 1) / 2); ++i) den *= 1.0 / p;
    for (long i = 0; i < static_cast<long>(k) * (l * (l - 1) / 2); ++i) den *= 1.0 / q;
    for (long i = 0; i < static_cast<long>(k) * l; ++i) den *= -1.0 / z0v;
    cplx w = z0v;
    for (int s = 0; s < l; ++s) {
        den *= theta_scaled(w, p);
        w *= q;
    }
    w = z0v;
    for (int r = 0; r < k; ++r) {
        den *= theta_scaled(w, q);
        w *= p;
    }
    res /= den;
    // dz = d(z p^k q^l) / (p^k q^l)
    for (int i = 0; i < k; ++i) res *= 1.0 / p;
    for (int i = 0; i < l; ++i) res *= 1.0 / q;
    return res;
}

inline cplx gamma_residue(int k, int l, cplx p, cplx q) { return gamma_residue_scaled(k, l, p, q).value(); }

} // namespace qlimit
