#pragma once

#include "rational.hpp"

#include <algorithm>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace qlimit {

/// Exponent direction of a limit: p-powers of the six parameters, summing to m+1.
struct BalancedVector {
    Vec6 alpha;
    int m = 0;

    BalancedVector() = default;
    explicit BalancedVector(const Vec6& a, int m_ = 0) : alpha(a), m(m_)
    {
        if (sum(alpha) != m + 1) throw std::invalid_argument("alpha must sum to m+1");
    }
    const Rational& operator[](std::size_t i) const { return alpha[i]; }
};

/// Monomial x^a z^b q^c ∏u_r^{d_r} with sign.
struct MonomialExponents {
    Rational x_exp, z_exp, q_exp;
    Vec6 u_exp;
    int sign = 1;
    /// Some α_r ± ζ or α_r + α_s is an integer; the one-sided derivatives agree there
    /// because g(x) - g({x}) is C^1, but the point is flagged for consumers.
    bool at_breakpoint = false;

    /// Rewrites using ∏u_r = q so the u-exponents sum to zero; makes equality canonical.
    MonomialExponents balanced() const
    {
        MonomialExponents out = *this;
        Rational mean = sum(u_exp) / 6;
        for (auto& e : out.u_exp) e -= mean;
        out.q_exp += mean;
        return out;
    }

    bool is_trivial() const
    {
        MonomialExponents b = balanced();
        if (b.sign != 1 || b.x_exp != 0 || b.z_exp != 0 || b.q_exp != 0) return false;
        return std::all_of(b.u_exp.begin(), b.u_exp.end(), [](const Rational& e) { return e == 0; });
    }
};

inline bool operator==(const MonomialExponents& a, const MonomialExponents& b)
{
    auto x = a.balanced(), y = b.balanced();
    return x.sign == y.sign && x.x_exp == y.x_exp && x.z_exp == y.z_exp && x.q_exp == y.q_exp && x.u_exp == y.u_exp;
}

inline Rational g_cubic(const Rational& x) { return x * (x - 1) * (2 * x - 1) / 6; }

inline Rational binom2(const Rational& a) { return a * (a - 1) / 2; }

inline Rational fob(const Vec6& a, const Rational& zeta)
{
    Rational f = 0;
    for (int r = 0; r < 6; ++r)
        for (int s = r + 1; s < 6; ++s) f += g_cubic(frac(a[r] + a[s]));
    for (int r = 0; r < 6; ++r) f -= g_cubic(frac(a[r] - zeta)) + g_cubic(frac(a[r] + zeta));
    return f;
}

inline Rational fob(const BalancedVector& a, const Rational& zeta) { return fob(a.alpha, zeta); }

/// ∂fob/∂ζ.
inline Rational fob_dzeta(const Vec6& a, const Rational& zeta)
{
    Rational d = 0;
    for (const auto& ar : a) d += binom2(frac(ar + zeta)) - binom2(frac(ar - zeta));
    return -2 * d;
}

/// Second ζ-derivative on the piece to the right of ζ.
inline Rational fob_d2zeta_right(const Vec6& a, const Rational& zeta)
{
    // {y} is right-continuous, so evaluating at ζ gives the right-hand piece for {α+ζ};
    // for {α-ζ} the right-hand piece has the left limit of {·} at α-ζ.
    Rational s = 0;
    for (const auto& ar : a) {
        Rational minus = frac(ar - zeta);
        if (minus == 0) minus = 1;
        s += frac(ar + zeta) + minus - 1;
    }
    return -2 * s;
}

inline MonomialExponents sob_exponents(const Vec6& a, const Rational& zeta)
{
    MonomialExponents m;
    m.x_exp = fob(a, zeta);
    m.z_exp = -fob_dzeta(a, zeta) / 2;
    for (int r = 0; r < 6; ++r) {
        // (1/2) ∂fob/∂α_r, using d/dy g({y}) = 2 binom({y},2) + 1/6.
        Rational d = 0;
        for (int s = 0; s < 6; ++s)
            if (s != r) d += 2 * binom2(frac(a[r] + a[s])) + Rational(1, 6);
        d -= 2 * binom2(frac(a[r] - zeta)) + Rational(1, 6);
        d -= 2 * binom2(frac(a[r] + zeta)) + Rational(1, 6);
        m.u_exp[r] = d / 2;
    }
    Rational qe = Rational(-1, 4) - binom2(frac(2 * zeta));
    for (const auto& ar : a) qe += (binom2(frac(ar - zeta)) + binom2(frac(ar + zeta))) / 2;
    for (int r = 0; r < 6; ++r)
        for (int s = r + 1; s < 6; ++s) qe -= binom2(frac(a[r] + a[s])) / 2;
    m.q_exp = qe;
    for (int r = 0; r < 6 && !m.at_breakpoint; ++r) {
        if (is_integer(a[r] + zeta) || is_integer(a[r] - zeta)) m.at_breakpoint = true;
        for (int s = r + 1; s < 6; ++s)
            if (is_integer(a[r] + a[s])) m.at_breakpoint = true;
    }
    return m;
}

inline MonomialExponents sob_exponents(const BalancedVector& a, const Rational& zeta) { return sob_exponents(a.alpha, zeta); }

/// Closed interval [lo,hi] in ζ; lo == hi for a point.
struct ZetaInterval {
    Rational lo, hi;
    bool contains(const Rational& z) const { return lo <= z && z <= hi; }
};

inline bool operator==(const ZetaInterval& a, const ZetaInterval& b) { return a.lo == b.lo && a.hi == b.hi; }

enum class Globality { certain, local_only };

struct ExtremaReport {
    std::vector<ZetaInterval> minima, maxima;
    std::vector<Globality> min_flags, max_flags;
    /// Index into minima/maxima of the candidates that are global after exact comparison.
    std::vector<std::size_t> global_min, global_max;
    int table_row = 0; ///< 1..4, or 0 when the exact piecewise analysis was used.
};

inline bool is_sorted_domain(const Vec6& a)
{
    for (int r = 0; r + 1 < 6; ++r)
        if (a[r] < a[r + 1]) return false;
    return a[5] >= a[0] - 1;
}

inline bool is_generic_pairs(const Vec6& a)
{
    for (int r = 0; r < 6; ++r)
        for (int s = r + 1; s < 6; ++s)
            if (is_integer(a[r] + a[s])) return false;
    return true;
}

/// Exact extrema of ζ ↦ fob(α,ζ) on [0,1/2] from the piecewise-quadratic structure.
/// Works for every α; returns the global minimum and maximum sets as merged intervals.
inline ExtremaReport fob_extrema_exact(const Vec6& a)
{
    const Rational half(1, 2);
    std::vector<Rational> bps{Rational(0), half};
    for (const auto& ar : a)
        for (const Rational& b : {frac(ar), frac(-ar)})
            if (b >= 0 && b <= half) bps.push_back(b);
    std::sort(bps.begin(), bps.end());
    bps.erase(std::unique(bps.begin(), bps.end()), bps.end());

    // Candidate points and constant pieces.
    struct Cand {
        ZetaInterval iv;
        Rational val;
    };
    std::vector<Cand> cands;
    for (const auto& b : bps) cands.push_back({{b, b}, fob(a, b)});
    for (std::size_t i = 0; i + 1 < bps.size(); ++i) {
        const Rational& lo = bps[i];
        const Rational& hi = bps[i + 1];
        Rational d_lo = fob_dzeta(a, lo), d_hi = fob_dzeta(a, hi);
        Rational c = (d_hi - d_lo) / (hi - lo);
        if (c == 0) {
            if (d_lo == 0) cands.push_back({{lo, hi}, fob(a, lo)});
            continue;
        }
        Rational zs = lo - d_lo / c;
        if (zs > lo && zs < hi) cands.push_back({{zs, zs}, fob(a, zs)});
    }
    Rational vmin = cands.front().val, vmax = cands.front().val;
    for (const auto& c : cands) {
        vmin = qmin(vmin, c.val);
        vmax = qmax(vmax, c.val);
    }
    auto collect = [&](const Rational& v) {
        std::vector<ZetaInterval> ivs;
        for (const auto& c : cands)
            if (c.val == v) ivs.push_back(c.iv);
        std::sort(ivs.begin(), ivs.end(), [](const ZetaInterval& x, const ZetaInterval& y) {
            return x.lo < y.lo || (x.lo == y.lo && x.hi > y.hi);
        });
        std::vector<ZetaInterval> merged;
        for (const auto& iv : ivs) {
            if (!merged.empty() && iv.lo <= merged.back().hi) {
                merged.back().hi = qmax(merged.back().hi, iv.hi);
            } else {
                merged.push_back(iv);
            }
        }
        return merged;
    };
    ExtremaReport rep;
    rep.minima = collect(vmin);
    rep.maxima = collect(vmax);
    rep.min_flags.assign(rep.minima.size(), Globality::certain);
    rep.max_flags.assign(rep.maxima.size(), Globality::certain);
    for (std::size_t i = 0; i < rep.minima.size(); ++i) rep.global_min.push_back(i);
    for (std::size_t i = 0; i < rep.maxima.size(); ++i) rep.global_max.push_back(i);
    return rep;
}

/// Extremal locations of fob(α,·) on [0,1/2] by the four-row table for sorted generic α.
/// Non-generic α falls back to the exact piecewise analysis.
inline ExtremaReport fob_extrema(const Vec6& a)
{
    if (!is_sorted_domain(a)) throw std::invalid_argument("fob_extrema: alpha must be sorted decreasing with alpha_6 >= alpha_1 - 1");
    if (!is_generic_pairs(a)) return fob_extrema_exact(a);

    const Rational half(1, 2), zero(0);
    const Rational s12 = a[0] + a[1], s45 = a[3] + a[4];
    const bool low12 = s12 <= 1, high45 = s45 >= 0;
    ExtremaReport rep;
    auto resolve = [](const std::vector<ZetaInterval>& ivs, const Vec6& av, bool want_max) {
        Rational best = fob(av, ivs[0].lo);
        std::vector<std::size_t> idx{0};
        for (std::size_t i = 1; i < ivs.size(); ++i) {
            Rational v = fob(av, ivs[i].lo);
            if (v == best) {
                idx.push_back(i);
            } else if (want_max ? v > best : v < best) {
                best = v;
                idx = {i};
            }
        }
        return idx;
    };
    if (low12 && high45) {
        rep.table_row = 1;
        rep.minima = {{zero, qmax(zero, -a[4])}};
        rep.maxima = {{qmin(half, 1 - a[0]), half}};
    } else if (!low12 && !high45) {
        rep.table_row = 2;
        rep.minima = {{qmin(half, a[1]), half}};
        rep.maxima = {{zero, qmax(zero, a[3])}};
    } else if (low12 && !high45) {
        rep.table_row = 3;
        Rational z = -a[3] - a[4] - a[5];
        rep.minima = {{z, z}};
        rep.maxima = {{zero, qmax(zero, a[3])}, {qmin(half, 1 - a[0]), half}};
    } else {
        rep.table_row = 4;
        Rational z = a[2] + a[3] + a[4];
        rep.minima = {{zero, qmax(zero, -a[4])}, {qmin(half, a[1]), half}};
        rep.maxima = {{z, z}};
    }
    rep.min_flags.assign(rep.minima.size(), rep.minima.size() > 1 ? Globality::local_only : Globality::certain);
    rep.max_flags.assign(rep.maxima.size(), rep.maxima.size() > 1 ? Globality::local_only : Globality::certain);
    rep.global_min = resolve(rep.minima, a, false);
    rep.global_max = resolve(rep.maxima, a, true);
    return rep;
}

inline ExtremaReport fob_extrema(const BalancedVector& a) { return fob_extrema(a.alpha); }

} // namespace qlimit
