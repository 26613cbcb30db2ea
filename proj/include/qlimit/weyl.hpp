#pragma once

#include "asym.hpp"
#include "rational.hpp"

#include <algorithm>
#include <array>
#include <stdexcept>
#include <string>
#include <vector>

namespace qlimit {

using Vec8 = std::array<Rational, 8>;

enum class RootSystem { E6, E7, E8 };

struct Root {
    Vec8 coords;
};

inline bool operator==(const Root& a, const Root& b) { return a.coords == b.coords; }
inline bool operator<(const Root& a, const Root& b) { return a.coords < b.coords; }

inline Rational dot(const Vec8& a, const Vec8& b)
{
    Rational s = 0;
    for (int i = 0; i < 8; ++i) s += a[i] * b[i];
    return s;
}

/// Point (α;ζ), embedded in R^8 as (α_1..α_6, 1/2-ζ, ζ-1/2).
struct PointAZ {
    Vec6 alpha;
    Rational zeta;

    Vec8 embed() const
    {
        Vec8 v;
        for (int i = 0; i < 6; ++i) v[i] = alpha[i];
        v[6] = Rational(1, 2) - zeta;
        v[7] = zeta - Rational(1, 2);
        return v;
    }
    static PointAZ from_embedding(const Vec8& v)
    {
        PointAZ p;
        for (int i = 0; i < 6; ++i) p.alpha[i] = v[i];
        p.zeta = Rational(1, 2) - v[6];
        return p;
    }
};

inline bool operator==(const PointAZ& a, const PointAZ& b) { return a.alpha == b.alpha && a.zeta == b.zeta; }

inline Rational fob(const PointAZ& v) { return fob(v.alpha, v.zeta); }

namespace detail {

inline void enumerate_roots(std::vector<Root>& out)
{
    // Norm 2 forces entries in {-1,0,1} (integral) or {±1/2} (half-integral).
    for (long code = 0; code < 6561; ++code) {
        long c = code;
        Vec8 v;
        int norm = 0;
        for (int i = 0; i < 8; ++i) {
            int e = static_cast<int>(c % 3) - 1;
            c /= 3;
            v[i] = e;
            norm += e * e;
        }
        if (norm == 2) out.push_back({v});
    }
    for (int mask = 0; mask < 256; ++mask) {
        Vec8 v;
        for (int i = 0; i < 8; ++i) v[i] = Rational((mask >> i) & 1 ? -1 : 1, 2);
        Rational s = 0;
        for (const auto& x : v) s += x / 2;
        if (is_integer(s)) out.push_back({v});
    }
}

} // namespace detail

/// Roots of E8 ⊃ E7 ⊃ E6 from the lattice predicates.
inline std::vector<Root> roots(RootSystem sys)
{
    std::vector<Root> all;
    detail::enumerate_roots(all);
    std::vector<Root> out;
    const Vec8 rho{Rational(1, 2), Rational(1, 2), Rational(1, 2), Rational(1, 2),
                   Rational(1, 2), Rational(1, 2), Rational(1, 2), Rational(1, 2)};
    for (const auto& r : all) {
        if (!is_integer(dot(r.coords, rho))) continue;
        if (sys != RootSystem::E8 && dot(r.coords, rho) != 0) continue;
        if (sys == RootSystem::E6 && r.coords[6] + r.coords[7] != 0) continue;
        out.push_back(r);
    }
    std::sort(out.begin(), out.end());
    return out;
}

inline Root simple_root(int i)
{
    // i = 0..4: e_{i+1} - e_{i+2}; i = 5: u = (-e1-e2-e3+e4+e5+e6+e7-e8)/2.
    Root r;
    for (auto& c : r.coords) c = 0;
    if (i < 5) {
        r.coords[i] = 1;
        r.coords[i + 1] = -1;
    } else {
        const int sg[8] = {-1, -1, -1, 1, 1, 1, 1, -1};
        for (int k = 0; k < 8; ++k) r.coords[k] = Rational(sg[k], 2);
    }
    return r;
}

inline Vec8 reflect(const Vec8& r, const Vec8& v)
{
    Rational c = dot(v, r);
    Vec8 out = v;
    for (int i = 0; i < 8; ++i) out[i] -= c * r[i];
    return out;
}

inline PointAZ reflect(const Root& r, const PointAZ& v) { return PointAZ::from_embedding(reflect(r.coords, v.embed())); }

/// Translation by a root-lattice vector with zero 7+8 component sum.
inline PointAZ translate(const Root& r, const PointAZ& v)
{
    Vec8 e = v.embed();
    for (int i = 0; i < 8; ++i) e[i] += r.coords[i];
    return PointAZ::from_embedding(e);
}

/// α ↦ w - α for integer w with Σw = 2; negates fob.
inline PointAZ negating_reflection(const std::array<long, 6>& w, const PointAZ& v)
{
    long s = 0;
    for (long x : w) s += x;
    if (s != 2) throw std::invalid_argument("negating reflection needs sum(w) = 2");
    PointAZ out = v;
    for (int i = 0; i < 6; ++i) out.alpha[i] = Rational(w[i]) - v.alpha[i];
    return out;
}

inline bool in_affine_domain(const PointAZ& v)
{
    for (int r = 0; r + 1 < 6; ++r)
        if (v.alpha[r] < v.alpha[r + 1]) return false;
    return v.alpha[3] + v.alpha[4] + v.alpha[5] >= v.zeta && v.zeta >= 0 && sum(v.alpha) == 1;
}

inline bool in_extended_domain(const PointAZ& v) { return in_affine_domain(v) && v.alpha[5] >= -v.zeta; }

struct Reduction {
    PointAZ point;
    std::vector<std::string> word; ///< generators applied, first to last
    int sign = 1;
};

/// Reduces into α_1≥…≥α_6, α_4+α_5+α_6 ≥ ζ ≥ 0 with the walls of the affine Weyl alcove:
/// adjacent transpositions "s1".."s5", the reflection "su", and "s0" for ζ ↦ −ζ.
inline Reduction reduce_affine(PointAZ v)
{
    if (sum(v.alpha) != 1) throw std::invalid_argument("reduce_affine: alpha must sum to 1");
    Reduction red;
    const Root u = simple_root(5);
    for (long iter = 0;; ++iter) {
        if (iter > 100000) throw std::logic_error("reduce_affine: iteration cap reached");
        bool moved = false;
        for (int i = 0; i < 5; ++i) {
            if (v.alpha[i] < v.alpha[i + 1]) {
                std::swap(v.alpha[i], v.alpha[i + 1]);
                red.word.push_back("s" + std::to_string(i + 1));
                moved = true;
                break;
            }
        }
        if (moved) continue;
        if (v.zeta < 0) {
            v.zeta = -v.zeta;
            red.word.push_back("s0");
            continue;
        }
        if (dot(v.embed(), u.coords) < 0) {
            v = reflect(u, v);
            red.word.push_back("su");
            continue;
        }
        break;
    }
    red.point = v;
    return red;
}

/// The composite map (α;ζ) ↦ (α_1+h,…,α_4+h, ζ−h, −ζ−h; (α_5−α_6)/2), h = (α_5+α_6)/2,
/// an element of the extended group that negates fob and α_6+ζ.
inline PointAZ fold_map(const PointAZ& v)
{
    Rational h = (v.alpha[4] + v.alpha[5]) / 2;
    PointAZ out;
    for (int i = 0; i < 4; ++i) out.alpha[i] = v.alpha[i] + h;
    out.alpha[4] = v.zeta - h;
    out.alpha[5] = -v.zeta - h;
    out.zeta = (v.alpha[4] - v.alpha[5]) / 2;
    return out;
}

/// Reduces into the affine domain restricted to α_6 ≥ −ζ; sign tracks fob negation.
inline Reduction reduce_extended(const PointAZ& v)
{
    Reduction red = reduce_affine(v);
    for (int iter = 0; red.point.alpha[5] + red.point.zeta < 0; ++iter) {
        if (iter > 64) throw std::logic_error("reduce_extended: iteration cap reached");
        Reduction again = reduce_affine(fold_map(red.point));
        red.word.push_back("fold");
        red.word.insert(red.word.end(), again.word.begin(), again.word.end());
        red.point = again.point;
        red.sign = -red.sign;
    }
    return red;
}

} // namespace qlimit
