#pragma once

#include "qkernel.hpp"

#include <cmath>
#include <string>
#include <vector>

namespace qlimit {

struct DivergenceError : DomainError {
    using DomainError::DomainError;
};

enum class SeriesKind { phi, psi };

/// ᵣφₛ(upper; lower; q, z) = Σ_{n≥0} (upper)_n/(q,lower)_n [(-1)^n q^{C(n,2)}]^{1+s-r} z^n,
/// ᵣψₛ(upper; lower; q, z) = Σ_{n∈Z} (upper)_n/(lower)_n [(-1)^n q^{C(n,2)}]^{s-r} z^n.
/// Zero entries are allowed in both lists.
struct SeriesSpec {
    SeriesKind kind = SeriesKind::phi;
    std::vector<cplx> upper, lower;
    cplx q;
    cplx z;
};

struct SeriesResult {
    cplx value;
    int terms = 0;
    double abs_sum = 0; ///< Σ|term|; abs_sum/|value| measures cancellation
};

namespace detail {

/// Exponent of the quadratic power [(-1)^n q^{C(n,2)}] in the summand.
inline int quadratic_exponent(const SeriesSpec& s)
{
    const int r = static_cast<int>(s.upper.size()), sl = static_cast<int>(s.lower.size());
    return s.kind == SeriesKind::phi ? 1 + sl - r : sl - r;
}

/// |a q^n - 1| below this counts as an exact Pochhammer zero (terminating series).
inline constexpr double kTerminationGuard = 1e-13;

/// Ratio t_{n+1}/t_n of the forward tail.
inline cplx forward_ratio(const SeriesSpec& s, long n, cplx qn, int e)
{
    cplx num = s.z, den = 1.0;
    for (cplx a : s.upper) num *= (1.0 - a * qn);
    for (cplx b : s.lower) den *= (1.0 - b * qn);
    if (s.kind == SeriesKind::phi) den *= (1.0 - qn * s.q);
    cplx pw = 1.0;
    for (int i = 0; i < std::abs(e); ++i) pw *= -qn;
    if (e < 0) num /= pw;
    else num *= pw;
    (void)n;
    return num / den;
}

/// Upper bound for |t_{m+1}/t_m| over all m ≥ n (forward tail), or +inf when none is available.
inline double forward_ratio_bound(const SeriesSpec& s, long n, int e)
{
    const double aq = std::abs(s.q);
    const double qn = std::pow(aq, double(n));
    double num = std::abs(s.z), den = 1.0;
    for (cplx a : s.upper) num *= 1.0 + std::abs(a) * qn;
    for (cplx b : s.lower) {
        double f = 1.0 - std::abs(b) * qn;
        if (f <= 0) return INFINITY;
        den *= f;
    }
    if (s.kind == SeriesKind::phi) den *= 1.0 - qn * aq;
    if (e < 0) return INFINITY;
    // Each factor is monotone in m once |b| q^m < 1, so the value at m = n bounds the tail.
    return num / den * std::pow(qn, double(e));
}

/// Ratio t_{-n-1}/t_{-n} of the backward tail of a bilateral series, written with
/// (1 - b q^{-n-1}) = q^{-n-1}(q^{n+1} - b) so no factor overflows; the q-powers cancel.
inline cplx backward_ratio(const SeriesSpec& s, int e, cplx qn1)
{
    cplx num = 1.0, den = s.z;
    for (cplx b : s.lower) num *= (qn1 - b);
    for (cplx a : s.upper) den *= (qn1 - a);
    return (e % 2 == 0 ? 1.0 : -1.0) * num / den;
}

/// Growth exponent of the backward ratio: it behaves like |q|^{(n+1)κ}.
inline int backward_kappa(const SeriesSpec& s, int e)
{
    int na = 0, nb = 0;
    for (cplx a : s.upper) na += a != cplx(0.0, 0.0);
    for (cplx b : s.lower) nb += b != cplx(0.0, 0.0);
    return e - nb + na;
}

inline double backward_ratio_bound(const SeriesSpec& s, long n, int e)
{
    // For m ≥ n: |1 - b q^{-m-1}| ≤ |b| q^{-m-1}(1 + q^{m+1}/|b|), and the reverse bound for a.
    const double aq = std::abs(s.q);
    const double qn1 = std::pow(aq, double(n + 1));
    double num = 1.0, den = std::abs(s.z);
    for (cplx b : s.lower)
        if (b != cplx(0.0, 0.0)) num *= std::abs(b) * (1.0 + qn1 / std::abs(b));
    for (cplx a : s.upper) {
        if (a == cplx(0.0, 0.0)) continue;
        double f = std::abs(a) * (1.0 - qn1 / std::abs(a));
        if (f <= 0) return INFINITY;
        den *= f;
    }
    const int kappa = backward_kappa(s, e);
    if (kappa < 0) return INFINITY;
    return num / den * std::pow(qn1, double(kappa));
}

inline bool hits_zero(const std::vector<cplx>& params, cplx qn)
{
    for (cplx a : params)
        if (std::abs(1.0 - a * qn) < kTerminationGuard) return true;
    return false;
}

} // namespace detail

/// Forward terms t_0, t_1, … until the series terminates or max_terms is reached.
inline std::vector<cplx> series_terms(const SeriesSpec& s, int max_terms)
{
    require_nome(s.q, "series");
    const int e = detail::quadratic_exponent(s);
    std::vector<cplx> out;
    cplx t = 1.0, qn = 1.0;
    for (long n = 0; n < max_terms; ++n) {
        out.push_back(t);
        if (detail::hits_zero(s.upper, qn)) break;
        t *= detail::forward_ratio(s, n, qn, e);
        qn *= s.q;
    }
    return out;
}

inline SeriesResult sum_series(const SeriesSpec& s, const SeriesTolerance& tol = {})
{
    require_nome(s.q, "series");
    const int e = detail::quadratic_exponent(s);
    {
        // A lower parameter q^{-n} makes a denominator vanish unless the series stops first.
        long stop = -1;
        cplx qn = 1.0;
        for (long n = 0; n < 400 && stop < 0; ++n, qn *= s.q)
            if (detail::hits_zero(s.upper, qn)) stop = n;
        qn = 1.0;
        for (long n = 0; n < 400; ++n, qn *= s.q) {
            if (stop >= 0 && n >= stop) break;
            for (cplx b : s.lower)
                if (std::abs(1.0 - b * qn) < detail::kTerminationGuard)
                    throw DomainError("series: lower parameter hits a Pochhammer zero");
        }
    }
    SeriesResult res;
    CompensatedSum acc;
    // Forward part, n ≥ 0.
    {
        cplx t = 1.0, qn = 1.0;
        bool done = false;
        for (long n = 0; !done; ++n) {
            acc.add(t);
            res.abs_sum += std::abs(t);
            ++res.terms;
            if (detail::hits_zero(s.upper, qn)) break;
            cplx next = t * detail::forward_ratio(s, n, qn, e);
            qn *= s.q;
            const double rho = detail::forward_ratio_bound(s, n + 1, e);
            const double scale = std::max(1.0, std::abs(acc.value()));
            if (rho < 1.0 && std::abs(next) / (1.0 - rho) <= tol.abs_tail * scale) {
                acc.add(next);
                res.abs_sum += std::abs(next);
                ++res.terms;
                done = true;
            }
            t = next;
            if (res.terms > tol.max_terms) {
                if (!(rho < 1.0)) throw DivergenceError("series: term ratio does not fall below 1");
                throw AccuracyError("series: max_terms exceeded");
            }
        }
    }
    if (s.kind == SeriesKind::psi) {
        const int kappa = detail::backward_kappa(s, e);
        if (kappa < 0) throw DivergenceError("bilateral series: backward tail diverges");
        cplx t = 1.0;
        cplx qn1 = s.q;
        int back_terms = 0;
        for (long n = 0;; ++n) {
            cplx next = t * detail::backward_ratio(s, e, qn1);
            acc.add(next);
            res.abs_sum += std::abs(next);
            ++res.terms;
            ++back_terms;
            qn1 *= s.q;
            const double rho = detail::backward_ratio_bound(s, n + 1, e);
            const double scale = std::max(1.0, std::abs(acc.value()));
            if (rho < 1.0 && std::abs(next) * rho / (1.0 - rho) <= tol.abs_tail * scale) break;
            t = next;
            if (back_terms > tol.max_terms) {
                if (!(rho < 1.0)) throw DivergenceError("bilateral series: backward term ratio does not fall below 1");
                throw AccuracyError("bilateral series: max_terms exceeded");
            }
        }
    }
    res.value = acc.value();
    return res;
}

/// Very-well-poised series with base a and parameters b_i:
/// φ(a, q√a, -q√a, b...; √a, -√a, qa/b...; q, z) with 1+s-r = 0.
inline SeriesSpec vwp_spec(cplx a, const std::vector<cplx>& b, cplx q, cplx z)
{
    SeriesSpec s;
    s.kind = SeriesKind::phi;
    const cplx ra = std::sqrt(a);
    s.upper = {a, q * ra, -q * ra};
    s.lower = {ra, -ra};
    for (cplx x : b) {
        s.upper.push_back(x);
        s.lower.push_back(q * a / x);
    }
    s.q = q;
    s.z = z;
    return s;
}

inline SeriesResult vwp_w(cplx a, const std::vector<cplx>& b, cplx q, cplx z, const SeriesTolerance& tol = {})
{
    return sum_series(vwp_spec(a, b, q, z), tol);
}

struct Psi66Result {
    cplx lhs, rhs;
    int terms = 0;
};

/// Very-well-poised ₆ψ₆ summation: Σ over Z of the series with base a and b,c,d,e at
/// argument qa²/(bcde), against its infinite product.
inline Psi66Result psi66(cplx a, cplx b, cplx c, cplx d, cplx e, cplx q, const SeriesTolerance& tol = {})
{
    SeriesSpec s;
    s.kind = SeriesKind::psi;
    const cplx ra = std::sqrt(a);
    s.upper = {q * ra, -q * ra, b, c, d, e};
    s.lower = {ra, -ra, a * q / b, a * q / c, a * q / d, a * q / e};
    s.q = q;
    s.z = q * a * a / (b * c * d * e);
    SeriesResult r = sum_series(s, tol);
    Scaled num = poch_scaled({a * q, a * q / (b * c), a * q / (b * d), a * q / (b * e), a * q / (c * d), a * q / (c * e),
                              a * q / (d * e), q, q / a},
                             q);
    Scaled den = poch_scaled({a * q / b, a * q / c, a * q / d, a * q / e, q / b, q / c, q / d, q / e, q * a * a / (b * c * d * e)}, q);
    num /= den;
    return {r.value, num.value(), r.terms};
}

} // namespace qlimit
