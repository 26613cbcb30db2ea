#pragma once

#include "asym.hpp"
#include "quad.hpp"
#include "series.hpp"
#include "tiling.hpp"

#include <algorithm>
#include <array>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <functional>
#include <numbers>
#include <optional>
#include <random>
#include <string>
#include <vector>

namespace qlimit {

enum class EntryKind { integral, unilateral, bilateral, mixed };

inline std::string entry_kind_name(EntryKind k)
{
    switch (k) {
    case EntryKind::integral: return "integral";
    case EntryKind::unilateral: return "unilateral";
    case EntryKind::bilateral: return "bilateral";
    case EntryKind::mixed: return "mixed";
    }
    return "?";
}

/// One random parameter draw. Entries read the slots they need; t is balanced (∏t = q).
struct Draw {
    cplx q{0.3, 0.0};
    std::array<cplx, 6> t{};
    std::array<cplx, 5> u{};
    cplx x{1.0, 0.0}, w{1.0, 0.0}, v{1.0, 0.0};
};

enum class FactorKind { poch, theta, linear };

/// f(arg·z^zpow)^power with f = (·;q)_∞, θ(·;q) or 1 - (·). zpow = 0 for constants.
struct Factor {
    FactorKind kind = FactorKind::poch;
    cplx arg;
    int power = 1;
    int zpow = 0;
};

using Factors = std::vector<Factor>;

inline Factors operator+(Factors a, const Factors& b)
{
    a.insert(a.end(), b.begin(), b.end());
    return a;
}

/// coeff · ∏factors · (series value) · (q;q)-free contour integral ∮ ∏integrand dz/(2πiz) over |z| = 1.
struct Term {
    cplx coeff{1.0, 0.0};
    Factors factors;
    std::optional<SeriesSpec> series;
    std::optional<Factors> integrand;
};

struct Display {
    std::vector<Term> lhs, rhs;
};

struct IdentityEntry {
    std::string id;
    BalancedVector face_vector;
    Rational zeta;  ///< ζ at which the identity arises
    EntryKind kind;
    std::string anchor;  ///< short description of the display
    bool display_corrected = false;
    std::function<void(Draw&)> adjust;  ///< fixes dependent slots after the generic draw
    std::function<bool(const Draw&)> domain;
    std::function<Display(const Draw&)> display;
    /// Series obtained by picking up residues of the integral at the same face, so the face
    /// classifies as an integral limit.
    bool residue_expansion = false;

    double tolerance() const { return kind == EntryKind::mixed ? 1e-8 : 1e-10; }
};

namespace build {

inline Factors P(std::initializer_list<cplx> a, int pw = 1)
{
    Factors f;
    for (cplx x : a) f.push_back({FactorKind::poch, x, pw, 0});
    return f;
}
inline Factors T(std::initializer_list<cplx> a, int pw = 1)
{
    Factors f;
    for (cplx x : a) f.push_back({FactorKind::theta, x, pw, 0});
    return f;
}
/// (a z^k;q)^pw
inline Factor Pz(cplx a, int k, int pw = 1) { return {FactorKind::poch, a, pw, k}; }
inline Factor Tz(cplx a, int k, int pw = 1) { return {FactorKind::theta, a, pw, k}; }
inline Factor Lz(cplx a, int k) { return {FactorKind::linear, a, 1, k}; }

inline SeriesSpec phi(std::vector<cplx> up, std::vector<cplx> lo, cplx q, cplx z)
{
    return {SeriesKind::phi, std::move(up), std::move(lo), q, z};
}
inline SeriesSpec psi(std::vector<cplx> up, std::vector<cplx> lo, cplx q, cplx z)
{
    return {SeriesKind::psi, std::move(up), std::move(lo), q, z};
}

inline Term unit() { return Term{}; }

/// (q;q)/2 ∮ (z^{±2};q) ∏(a_r z^±;q)^{-1}: the symmetric q-integrand shape.
inline Factors symmetric_integrand(std::initializer_list<cplx> den)
{
    Factors f{Pz(1.0, 2), Pz(1.0, -2)};
    for (cplx a : den) {
        f.push_back(Pz(a, 1, -1));
        f.push_back(Pz(a, -1, -1));
    }
    return f;
}

/// θ(t1t2w/z, wz;q)/θ(t1w,t2w;q) ∏(a/z)^{-1} over inner parameters: the broken shape.
inline Factors broken_kernel(cplx t1, cplx t2, cplx w)
{
    return {Tz(t1 * t2 * w, -1), Tz(w, 1), Tz(t1 * w, 0, -1), Tz(t2 * w, 0, -1), Pz(t1, -1, -1), Pz(t2, -1, -1)};
}

} // namespace build

namespace detail {

inline BalancedVector face(const char* text) { return BalancedVector(parse_vec6(text)); }

/// Rescales t1..t5 so the balancing slot t6 has modulus at most cap.
inline void shrink_balancing_slot(Draw& d, double cap)
{
    const double m = std::abs(d.t[5]);
    if (m <= cap) return;
    const double f = std::pow(m / cap, 0.2);
    cplx prod = 1.0;
    for (int i = 0; i < 5; ++i) prod *= (d.t[i] *= f);
    d.t[5] = d.q / prod;
}

/// Maps the moduli of t1..t5 from [0.3,0.9] into a narrow band around |q|^{1/6}, keeping
/// phases, so all six parameters sit inside the unit disk together.
inline void concentrate_moduli(Draw& d)
{
    const double c = std::pow(std::abs(d.q), 1.0 / 6.0);
    cplx prod = 1.0;
    for (int i = 0; i < 5; ++i) {
        const double e = (std::abs(d.t[i]) - 0.6) * 0.2;
        d.t[i] = std::polar(c * std::exp(e), std::arg(d.t[i]));
        prod *= d.t[i];
    }
    d.t[5] = d.q / prod;
}

inline bool all_t_inside(const Draw& d, double r)
{
    for (cplx t : d.t)
        if (std::abs(t) >= r) return false;
    return true;
}

/// Adds the swap t1 <-> t2 image of a term builder.
template <class F>
void push_swapped(std::vector<Term>& side, const Draw& d, F make)
{
    side.push_back(make(d));
    Draw s = d;
    std::swap(s.t[0], s.t[1]);
    side.push_back(make(s));
}

} // namespace detail

/// Every catalog identity, transcribed as factor lists.
inline const std::vector<IdentityEntry>& entries()
{
    using namespace build;
    using detail::face;
    static const std::vector<IdentityEntry> all = [] {
        std::vector<IdentityEntry> E;
        auto add = [&](IdentityEntry e) { E.push_back(std::move(e)); };
        const Rational Z0 = 0, H = Rational(1, 2);

        // ---- top level ----
        add({"NR", face("0,0,0,0,0,1"), Z0, EntryKind::integral, "five-parameter symmetric integral", false, nullptr,
             nullptr, [](const Draw& d) {
                 const cplx q = d.q;
                 auto& t = d.t;
                 const cplx u = t[0] * t[1] * t[2] * t[3] * t[4];
                 Display D;
                 Term l{0.5, P({q})};
                 Factors f = symmetric_integrand({t[0], t[1], t[2], t[3], t[4]});
                 f.push_back(Pz(u, 1));
                 f.push_back(Pz(u, -1));
                 l.integrand = f;
                 D.lhs.push_back(l);
                 Term r;
                 for (int i = 0; i < 5; ++i) r.factors = r.factors + P({u / t[i]});
                 for (int i = 0; i < 5; ++i)
                     for (int j = i + 1; j < 5; ++j) r.factors = r.factors + P({t[i] * t[j]}, -1);
                 D.rhs.push_back(r);
                 return D;
             }});

        // t1, t2 inner; u_r = t3..t6 outer; w free.
        add({"TOP.broken", face("-1/2,-1/2,1/2,1/2,1/2,1/2"), H, EntryKind::integral,
             "symmetry-broken integral with two inner and four outer parameters", false,
             [](Draw& d) { detail::concentrate_moduli(d); }, [](const Draw& d) { return detail::all_t_inside(d, 0.95); },
             [](const Draw& d) {
                 const cplx q = d.q;
                 const cplx t1 = d.t[0], t2 = d.t[1];
                 const cplx* u = &d.t[2];
                 Display D;
                 Term l{1.0, P({q})};
                 Factors f = broken_kernel(t1, t2, d.w);
                 f.push_back(Pz(t1, 1, -1));
                 f.push_back(Pz(t2, 1, -1));
                 for (int r = 0; r < 4; ++r) {
                     f.push_back(Pz(q / u[r], 1));
                     f.push_back(Pz(u[r], 1, -1));
                 }
                 f.push_back(Lz(1.0, 2));
                 l.integrand = f;
                 D.lhs.push_back(l);
                 Term r{1.0, P({t1 * t2}, -1)};
                 for (int i = 0; i < 4; ++i) r.factors = r.factors + P({t1 * u[i], t2 * u[i]}, -1);
                 for (int i = 0; i < 4; ++i)
                     for (int j = i + 1; j < 4; ++j) r.factors = r.factors + P({q / (u[i] * u[j])});
                 D.rhs.push_back(r);
                 return D;
             }});

        add({"II.25", face("-1/2,-1/2,1/2,1/2,1/2,1/2"), H, EntryKind::unilateral,
             "two very-well-poised 8W7 series summing to a product", false, nullptr, nullptr, [](const Draw& d) {
                 const cplx q = d.q;
                 Display D;
                 detail::push_swapped(D.lhs, d, [q](const Draw& s) {
                     const cplx t1 = s.t[0], t2 = s.t[1];
                     const cplx* u = &s.t[2];
                     Term m{1.0, P({q * t1 * t1, t2 / t1}, -1)};
                     for (int r = 0; r < 4; ++r) m.factors = m.factors + P({q * t1 / u[r], t2 * u[r]});
                     m.series = vwp_spec(t1 * t1, {t1 * t2, t1 * u[0], t1 * u[1], t1 * u[2], t1 * u[3]}, q, q);
                     return m;
                 });
                 Term r;
                 const cplx* u = &d.t[2];
                 for (int i = 0; i < 4; ++i)
                     for (int j = i + 1; j < 4; ++j) r.factors = r.factors + P({q / (u[i] * u[j])});
                 D.rhs.push_back(r);
                 return D;
             }});

        // t = v, u1..u5 with u1⋯u5 = q t².
        add({"TOP.mixed", face("-3/2,1/2,1/2,1/2,1/2,1/2"), H, EntryKind::mixed,
             "two 8W7 terms with theta weights plus a bilateral 8psi8", false,
             [](Draw& d) { d.u[4] = d.q * d.v * d.v / (d.u[0] * d.u[1] * d.u[2] * d.u[3]); }, nullptr,
             [](const Draw& d) {
                 const cplx q = d.q, t = d.v, x = d.x;
                 auto& u = d.u;
                 Display D;
                 D.lhs.push_back(unit());
                 Factors A = P({q * t}, -1);
                 for (int r = 0; r < 5; ++r) A = A + P({q * t / u[r]});
                 for (int r = 0; r < 5; ++r)
                     for (int s = r + 1; s < 5; ++s) A = A + P({q * t / (u[r] * u[s])}, -1);
                 const SeriesSpec w8 = vwp_spec(t, {u[0], u[1], u[2], u[3], u[4]}, q, q);
                 Term b1{1.0, A + T({1.0 / (t * x), 1.0 / (t * x * x)}, -1), w8};
                 Term b2{1.0, A + T({t * x * x, x}, -1), w8};
                 for (int r = 0; r < 5; ++r) {
                     b1.factors = b1.factors + T({u[r] / (t * x)});
                     b2.factors = b2.factors + T({u[r] * x});
                 }
                 Term c{1.0, P({q, q * t * x * x, t * x, 1.0 / x, q / (t * x * x)}, -1)};
                 for (int r = 0; r < 5; ++r) c.factors = c.factors + P({u[r], q * t * x / u[r], q / (u[r] * x)});
                 for (int r = 0; r < 5; ++r)
                     for (int s = r + 1; s < 5; ++s) c.factors = c.factors + P({q * t / (u[r] * u[s])}, -1);
                 const cplx rt = std::sqrt(t);
                 std::vector<cplx> up{t * x, q * x * rt, -q * x * rt}, lo{q * x, x * rt, -x * rt};
                 for (int r = 0; r < 5; ++r) {
                     up.push_back(u[r] * x);
                     lo.push_back(q * t * x / u[r]);
                 }
                 c.series = psi(up, lo, q, q);
                 D.rhs = {b1, b2, c};
                 return D;
             }});

        // ---- first degeneration ----
        add({"AW", face("0,0,0,0,1/2,1/2"), Z0, EntryKind::integral, "four-parameter symmetric integral", false,
             nullptr, nullptr, [](const Draw& d) {
                 const cplx q = d.q;
                 auto& t = d.t;
                 Display D;
                 Term l{0.5, P({q})};
                 l.integrand = symmetric_integrand({t[0], t[1], t[2], t[3]});
                 D.lhs.push_back(l);
                 Term r{1.0, P({t[0] * t[1] * t[2] * t[3]})};
                 for (int i = 0; i < 4; ++i)
                     for (int j = i + 1; j < 4; ++j) r.factors = r.factors + P({t[i] * t[j]}, -1);
                 D.rhs.push_back(r);
                 return D;
             }});

        // t = v, u1..u3 = u[0..2]; needs |q/(t u1 u2 u3)| < 1.
        add({"II.20", face("-1/2,0,0,1/2,1/2,1/2"), H, EntryKind::unilateral, "very-well-poised 6W5 summation",
             false, nullptr, nullptr, [](const Draw& d) {
                 const cplx q = d.q, t = d.v, u1 = d.u[0], u2 = d.u[1], u3 = d.u[2];
                 Display D;
                 Term l;
                 l.series = vwp_spec(t * t, {t * u1, t * u2, t * u3}, q, q / (t * u1 * u2 * u3));
                 D.lhs.push_back(l);
                 D.rhs.push_back({1.0, P({q * t * t, q / (u1 * u2), q / (u1 * u3), q / (u2 * u3)}) +
                                           P({q * t / u1, q * t / u2, q * t / u3, q / (t * u1 * u2 * u3)}, -1)});
                 return D;
             }});

        add({"II.33", face("-1,0,1/2,1/2,1/2,1/2"), H, EntryKind::bilateral, "very-well-poised 6psi6 summation",
             true, nullptr, nullptr, [](const Draw& d) {
                 const cplx q = d.q, x = d.x;
                 auto& t = d.t;
                 const cplx a = t[0] / x;
                 Display D;
                 Term l;
                 std::vector<cplx> up{q * a, -q * a}, lo{a, -a};
                 for (int r = 2; r < 6; ++r) {
                     up.push_back(t[0] * t[r] / x);
                     lo.push_back(q * t[0] / (t[r] * x));
                 }
                 l.series = psi(up, lo, q, t[0] * t[1]);
                 D.lhs.push_back(l);
                 Term r{1.0, P({q, q * a * a, q / (a * a)}) + P({t[0] * t[1]}, -1)};
                 for (int i = 2; i < 6; ++i) {
                     r.factors = r.factors + P({q * t[0] / (t[i] * x), q * x / (t[0] * t[i])}, -1);
                     for (int j = i + 1; j < 6; ++j) r.factors = r.factors + P({q / (t[i] * t[j])});
                 }
                 D.rhs.push_back(r);
                 return D;
             }});

        add({"D1.quarter.int", face("-1/4,-1/4,1/4,1/4,1/4,3/4"), Rational(1, 4), EntryKind::integral,
             "broken integral with three outer parameters", false, nullptr, nullptr, [](const Draw& d) {
                 const cplx q = d.q;
                 auto& t = d.t;
                 Display D;
                 Term l{1.0, P({q})};
                 Factors f = broken_kernel(t[0], t[1], d.w);
                 f.push_back(Pz(q / t[5], 1));
                 for (int r = 2; r < 5; ++r) f.push_back(Pz(t[r], 1, -1));
                 l.integrand = f;
                 D.lhs.push_back(l);
                 Term r;
                 for (int i = 2; i < 5; ++i) r.factors = r.factors + P({q / (t[i] * t[5])}) + P({t[0] * t[i], t[1] * t[i]}, -1);
                 D.rhs.push_back(r);
                 return D;
             }});

        add({"II.24", face("-1/4,-1/4,1/4,1/4,1/4,3/4"), Rational(1, 4), EntryKind::unilateral,
             "two balanced 3phi2 series summing to one", false, nullptr, nullptr, [](const Draw& d) {
                 const cplx q = d.q;
                 Display D;
                 detail::push_swapped(D.lhs, d, [q](const Draw& s) {
                     auto& t = s.t;
                     Term m{1.0, P({q * t[0] / t[5]}) + P({t[1] / t[0]}, -1)};
                     for (int r = 2; r < 5; ++r) m.factors = m.factors + P({t[1] * t[r]}) + P({q / (t[r] * t[5])}, -1);
                     m.series = phi({t[0] * t[2], t[0] * t[3], t[0] * t[4]}, {q * t[0] / t[1], q * t[0] / t[5]}, q, q);
                     return m;
                 });
                 D.rhs.push_back(unit());
                 return D;
             }});

        add({"D1.quarter.tri", face("-3/4,-1/4,1/4,1/4,3/4,3/4"), Rational(1, 4), EntryKind::mixed,
             "two 3phi2 and one 3psi3 with theta weights", false, nullptr, nullptr, [](const Draw& d) {
                 const cplx q = d.q, x = d.x;
                 const cplx t1 = d.t[0], t2 = d.t[1], t3 = d.t[2], t4 = d.t[3], t5 = d.t[4], t6 = d.t[5];
                 const Factors den4 = P({q / (t3 * t5), q / (t4 * t5), q / (t3 * t6), q / (t4 * t6)}, -1);
                 Display D;
                 D.lhs.push_back(unit());
                 Term a{1.0, P({q * t1 / t3, t2 * t3, q * t1 / t4, t2 * t4}) + T({t5 * x / t1, t6 * x / t1}) + den4 +
                                 T({x / (t1 * t1), t5 * t6 * x}, -1),
                        phi({t1 * t2, t1 * t5, t1 * t6}, {q * t1 / t3, q * t1 / t4}, q, q)};
                 Term b{1.0, P({q * t2 / t5, t1 * t5, q * t2 / t6, t1 * t6}) + T({t1 * t3 / x, t1 * t4 / x}) + den4 +
                                 T({t1 / (t2 * x), t5 * t6 * x}, -1),
                        phi({t1 * t2, t2 * t3, t2 * t4}, {q * t2 / t5, q * t2 / t6}, q, q)};
                 Term c{1.0,
                        P({t1 * t2, t2 * t3, t2 * t4, t1 * t5, t1 * t6, q * t1 / (t5 * x), q * t1 / (t6 * x),
                           q * x / (t1 * t3), q * x / (t1 * t4)}) +
                            P({q, t1 * t1 / x, t2 * x / t1}, -1) + den4 + T({t5 * t6 * x}, -1),
                        psi({t1 * t1 / x, t1 * t3 / x, t1 * t4 / x}, {q * t1 / (t2 * x), q * t1 / (t5 * x), q * t1 / (t6 * x)},
                            q, q)};
                 D.rhs = {a, b, c};
                 return D;
             }});

        add({"D1.quarter.five", face("-5/4,1/4,1/4,1/4,3/4,3/4"), Rational(1, 4), EntryKind::mixed,
             "one 3phi2 with two theta weights plus two 3psi3", false, nullptr, nullptr, [](const Draw& d) {
                 const cplx q = d.q, x = d.x;
                 const cplx t1 = d.t[0], t2 = d.t[1], t3 = d.t[2], t4 = d.t[3], t5 = d.t[4], t6 = d.t[5];
                 const Factors den6 =
                     P({q / (t2 * t5), q / (t3 * t5), q / (t4 * t5), q / (t2 * t6), q / (t3 * t6), q / (t4 * t6)}, -1);
                 const SeriesSpec s3 = phi({t1 * t2, t1 * t3, t1 * t4}, {q * t1 / t5, q * t1 / t6}, q, q);
                 const Factors pre = P({q * t1 / t5, q * t1 / t6}) + den6;
                 Display D;
                 D.lhs.push_back(unit());
                 Term a1{1.0,
                         pre + T({t2 * x / t1, t3 * x / t1, t4 * x / t1, t5 * x * x / t1, t6 * x * x / t1}) +
                             T({x / (t1 * t1), x * x * x / (t1 * t1), t5 * t6 * x}, -1),
                         s3};
                 Term a2{1.0,
                         pre + T({t1 * t2 / (x * x), t1 * t3 / (x * x), t1 * t4 / (x * x), t1 * t5 / x, t1 * t6 / x}) +
                             T({t1 * t1 / (x * x * x), 1.0 / (x * x), t5 * t6 * x}, -1),
                         s3};
                 Term b{1.0,
                        P({t1 * t2, t1 * t3, t1 * t4, q * t1 / (t2 * x), q * t1 / (t3 * x), q * t1 / (t4 * x),
                           q * x / (t1 * t5), q * x / (t1 * t6)}) +
                            T({t5 * x * x / t1, t6 * x * x / t1}) + P({q, t1 * t1 / x}, -1) + den6 +
                            T({t5 * t6 * x, x * x * x / (t1 * t1)}, -1),
                        psi({t1 * t1 / x, t1 * t5 / x, t1 * t6 / x}, {q * t1 / (t2 * x), q * t1 / (t3 * x), q * t1 / (t4 * x)},
                            q, q)};
                 const cplx x2 = x * x;
                 Term c{1.0,
                        P({t1 * t2, t1 * t3, t1 * t4, q * x2 / (t1 * t2), q * x2 / (t1 * t3), q * x2 / (t1 * t4)}) +
                            T({t1 * t5 / x, t1 * t6 / x, t5 * x2 / t1, t6 * x2 / t1}) +
                            P({q, x2, t5 * x2 / t1, t6 * x2 / t1}, -1) + den6 +
                            T({t1 * t1 / (x2 * x), t5 * t6 * x}, -1),
                        psi({t1 * t2 / x2, t1 * t3 / x2, t1 * t4 / x2}, {q / x2, q * t1 / (t5 * x2), q * t1 / (t6 * x2)}, q,
                            q)};
                 D.rhs = {a1, a2, b, c};
                 return D;
             }});

        // Three-series evaluation at (-3/2,0,1/2,1/2,1/2,1); u_r = t_r, elliptic variable x.
        add({"D1.three", face("-3/2,0,1/2,1/2,1/2,1"), H, EntryKind::mixed,
             "two 6W5 terms with theta weights plus a 6psi6", true,
             [](Draw& d) { detail::shrink_balancing_slot(d, 0.8); }, [](const Draw& d) { return std::abs(d.t[1] * d.t[5]) < 0.9; }, [](const Draw& d) {
                 const cplx q = d.q, x = d.x, x2 = d.x * d.x;
                 const cplx u1 = d.t[0], u2 = d.t[1], u3 = d.t[2], u4 = d.t[3], u5 = d.t[4], u6 = d.t[5];
                 const Factors den = P({q / (u3 * u4), q / (u3 * u5), q / (u4 * u5), q / (u2 * u6)}, -1);
                 const Factors A = P({q * u1 / u3, q * u1 / u4, q * u1 / u5}) + P({q * u1 * u1}, -1) + den;
                 const Factors thd = T({u3 * u6 * x, u4 * u6 * x, u5 * u6 * x}, -1);
                 const SeriesSpec w6 = vwp_spec(u1 * u1, {u1 * u3, u1 * u4, u1 * u5}, q, u2 * u6);
                 Display D;
                 D.lhs.push_back(unit());
                 Term a{1.0,
                        A + T({u2 * x / u1, u6 * x / u1, u3 * x2 / u1, u4 * x2 / u1, u5 * x2 / u1, u6 * x2 * x / u1}) + thd +
                            T({x2 / (u1 * u1), x2 * x2 / (u1 * u1)}, -1),
                        w6};
                 Term b{1.0,
                        P({u1 * u3, u1 * u4, u1 * u5, q * x2 / (u1 * u3), q * x2 / (u1 * u4), q * x2 / (u1 * u5),
                           q * u1 / (u3 * x2), q * u1 / (u4 * x2), q * u1 / (u5 * x2)}) +
                            P({q, u1 * u1 / x2, x2, q * u1 * u1 / (x2 * x2), q * x2 * x2 / (u1 * u1)}, -1) + den +
                            T({u1 * u2 / x, u1 * u6 / x, u6 * x2 * x / u1}) + thd,
                        psi({u1 * u1 / x2, q * u1 / x2, -q * u1 / x2, u1 * u3 / x2, u1 * u4 / x2, u1 * u5 / x2},
                            {q / x2, u1 / x2, -u1 / x2, q * u1 / (u3 * x2), q * u1 / (u4 * x2), q * u1 / (u5 * x2)}, q,
                            u2 * u6)};
                 Term c{1.0,
                        A + T({u1 * u2 / (x2 * x), u1 * u3 / x2, u1 * u4 / x2, u1 * u5 / x2, u1 * u6 / x, u6 * x / u1}) +
                            T({u1 * u1 / (x2 * x2), 1.0 / x2}, -1) + thd,
                        w6};
                 D.rhs = {a, b, c};
                 return D;
             }});

        // ---- second degeneration ----
        add({"D2.AW3", face("0,0,0,1/3,1/3,1/3"), Z0, EntryKind::integral, "three-parameter symmetric integral",
             false, nullptr, nullptr, [](const Draw& d) {
                 const cplx q = d.q;
                 auto& t = d.t;
                 Display D;
                 Term l{0.5, P({q})};
                 l.integrand = symmetric_integrand({t[0], t[1], t[2]});
                 D.lhs.push_back(l);
                 D.rhs.push_back({1.0, P({t[0] * t[1], t[0] * t[2], t[1] * t[2]}, -1)});
                 return D;
             }});

        add({"D2.5phi5", face("-1/2,1/6,1/6,1/6,1/2,1/2"), H, EntryKind::unilateral, "well-poised 5phi5 summation",
             false, nullptr, nullptr, [](const Draw& d) {
                 const cplx q = d.q, t1 = d.t[0], t5 = d.t[4], t6 = d.t[5];
                 Display D;
                 Term l;
                 l.series = phi({t1 * t1, q * t1, -q * t1, t1 * t5, t1 * t6}, {t1, -t1, q * t1 / t5, q * t1 / t6, 0.0}, q,
                                q / (t5 * t6));
                 D.lhs.push_back(l);
                 D.rhs.push_back({1.0, P({q * t1 * t1, q / (t5 * t6)}) + P({q * t1 / t5, q * t1 / t6}, -1)});
                 return D;
             }});

        add({"D2.5psi6", face("-5/6,1/6,1/6,1/2,1/2,1/2"), H, EntryKind::bilateral, "well-poised 5psi6 summation",
             false, nullptr, nullptr, [](const Draw& d) {
                 const cplx q = d.q, x = d.x;
                 auto& t = d.t;
                 const cplx a = t[0] / x;
                 Display D;
                 Term l;
                 std::vector<cplx> up{q * a, -q * a}, lo{a, -a};
                 for (int r = 3; r < 6; ++r) {
                     up.push_back(t[0] * t[r] / x);
                     lo.push_back(q * t[0] / (t[r] * x));
                 }
                 lo.push_back(0.0);
                 l.series = psi(up, lo, q, q * t[0] / (t[3] * t[4] * t[5] * x));
                 D.lhs.push_back(l);
                 Term r{1.0, P({q, q / (t[3] * t[4]), q / (t[3] * t[5]), q / (t[4] * t[5]), q * a * a, q / (a * a)})};
                 for (int i = 3; i < 6; ++i) r.factors = r.factors + P({q * t[0] / (t[i] * x), q * x / (t[0] * t[i])}, -1);
                 D.rhs.push_back(r);
                 return D;
             }});

        // t1, t2 inner; u1, u2 = u[0], u[1] outer.
        add({"D2.int", face("-1/6,-1/6,1/6,1/6,1/2,1/2"), Rational(1, 6), EntryKind::integral,
             "broken integral with two outer parameters", false, nullptr, nullptr, [](const Draw& d) {
                 const cplx q = d.q, t1 = d.t[0], t2 = d.t[1], u1 = d.u[0], u2 = d.u[1];
                 Display D;
                 Term l{1.0, P({q})};
                 Factors f = broken_kernel(t1, t2, d.w);
                 f.push_back(Pz(u1, 1, -1));
                 f.push_back(Pz(u2, 1, -1));
                 l.integrand = f;
                 D.lhs.push_back(l);
                 D.rhs.push_back({1.0, P({t1 * t2 * u1 * u2}) + P({t1 * u1, t1 * u2, t2 * u1, t2 * u2}, -1)});
                 return D;
             }});

        add({"II.8", face("-1/3,0,0,1/3,1/3,2/3"), Rational(1, 3), EntryKind::unilateral, "q-Gauss summation",
             false, nullptr, nullptr, [](const Draw& d) {
                 const cplx q = d.q;
                 auto& t = d.t;
                 Display D;
                 Term l;
                 l.series = phi({t[0] * t[3], t[0] * t[4]}, {q * t[0] / t[5]}, q, t[1] * t[2]);
                 D.lhs.push_back(l);
                 D.rhs.push_back(
                     {1.0, P({q / (t[3] * t[5]), q / (t[4] * t[5])}) + P({t[1] * t[2], q * t[0] / t[5]}, -1)});
                 return D;
             }});

        add({"II.23", face("-1/6,-1/6,1/6,1/6,1/2,1/2"), Rational(1, 6), EntryKind::unilateral,
             "two 2phi1 series at argument q summing to one", false, nullptr, nullptr, [](const Draw& d) {
                 const cplx q = d.q;
                 Display D;
                 detail::push_swapped(D.lhs, d, [q](const Draw& s) {
                     auto& t = s.t;
                     return Term{1.0,
                                 P({t[1] * t[2], t[1] * t[3]}) + P({t[1] / t[0], t[0] * t[1] * t[2] * t[3]}, -1),
                                 phi({t[0] * t[2], t[0] * t[3]}, {q * t[0] / t[1]}, q, q)};
                 });
                 D.rhs.push_back(unit());
                 return D;
             }});

        add({"Ex5.10", face("-1,0,1/3,1/3,2/3,2/3"), Rational(1, 3), EntryKind::bilateral,
             "two 2psi2 series with theta weights", true, nullptr, nullptr, [](const Draw& d) {
                 const cplx q = d.q, x = d.x, x2 = d.x * d.x;
                 const cplx t1 = d.t[0], t2 = d.t[1], t3 = d.t[2], t4 = d.t[3], t5 = d.t[4], t6 = d.t[5];
                 const Factors den = P({q, q / (t3 * t5), q / (t4 * t5), q / (t3 * t6), q / (t4 * t6)}, -1);
                 Display D;
                 D.lhs.push_back(unit());
                 Term a{1.0,
                        P({t1 * t2, q * t1 / (t3 * x), q * t1 / (t4 * x), q * x / (t1 * t5), q * x / (t1 * t6)}) +
                            T({t5 * x2 / t1, t6 * x2 / t1}) + den + T({t5 * t6 * x, x2 * x / (t1 * t1)}, -1),
                        psi({t1 * t5 / x, t1 * t6 / x}, {q * t1 / (t3 * x), q * t1 / (t4 * x)}, q, q)};
                 Term b{1.0,
                        P({t1 * t2, q * t1 / (t5 * x2), q * t1 / (t6 * x2), q * x2 / (t1 * t3), q * x2 / (t1 * t4)}) +
                            T({t1 * t5 / x, t1 * t6 / x}) + den + T({t1 * t1 / (x2 * x), t5 * t6 * x}, -1),
                        psi({t1 * t3 / x2, t1 * t4 / x2}, {q * t1 / (t5 * x2), q * t1 / (t6 * x2)}, q, t1 * t2)};
                 D.rhs = {a, b};
                 return D;
             }});

        add({"D2.mixed", face("-1/2,-1/6,1/6,1/6,1/2,5/6"), Rational(1, 6), EntryKind::mixed,
             "a 2psi2 and a 2phi1 with theta weights", false, nullptr, nullptr, [](const Draw& d) {
                 const cplx q = d.q, x = d.x;
                 const cplx t1 = d.t[0], t2 = d.t[1], t3 = d.t[2], t4 = d.t[3], t5 = d.t[4], t6 = d.t[5];
                 Display D;
                 D.lhs.push_back(unit());
                 Term a{1.0,
                        P({t2 * t3, t2 * t4, t1 * t5, q * t1 / (t6 * x), q * x / (t1 * t3), q * x / (t1 * t4)}) +
                            P({q, q / (t3 * t6), q / (t4 * t6), t2 * x / t1}, -1) + T({t5 * t6 * x}, -1),
                        psi({t1 * t3 / x, t1 * t4 / x}, {q * t1 / (t2 * x), q * t1 / (t6 * x)}, q, q)};
                 Term b{1.0,
                        P({t1 * t5, q * t2 / t6}) + T({t1 * t3 / x, t1 * t4 / x}) + P({q / (t3 * t6), q / (t4 * t6)}, -1) +
                            T({t1 / (t2 * x), t5 * t6 * x}, -1),
                        phi({t2 * t3, t2 * t4}, {q * t2 / t6}, q, q)};
                 D.rhs = {a, b};
                 return D;
             }});

        // ---- third degeneration ----
        add({"D3.AW2", face("0,0,1/4,1/4,1/4,1/4"), Z0, EntryKind::integral, "two-parameter symmetric integral",
             false, nullptr, nullptr, [](const Draw& d) {
                 const cplx q = d.q;
                 Display D;
                 Term l{0.5, P({q})};
                 l.integrand = symmetric_integrand({d.t[0], d.t[1]});
                 D.lhs.push_back(l);
                 D.rhs.push_back({1.0, P({d.t[0] * d.t[1]}, -1)});
                 return D;
             }});

        add({"D3.4phi5", face("-1/2,1/4,1/4,1/4,1/4,1/2"), H, EntryKind::unilateral, "well-poised 4phi5 summation",
             false, nullptr, nullptr, [](const Draw& d) {
                 const cplx q = d.q, t1 = d.t[0], t6 = d.t[5];
                 Display D;
                 Term l;
                 l.series = phi({t1 * t1, q * t1, -q * t1, t1 * t6}, {t1, -t1, q * t1 / t6, 0.0, 0.0}, q, q * t1 / t6);
                 D.lhs.push_back(l);
                 D.rhs.push_back({1.0, P({q * t1 * t1}) + P({q * t1 / t6}, -1)});
                 return D;
             }});

        add({"D3.4psi6", face("-3/4,1/4,1/4,1/4,1/2,1/2"), H, EntryKind::bilateral, "well-poised 4psi6 summation",
             false, nullptr, nullptr, [](const Draw& d) {
                 const cplx q = d.q, x = d.x, t1 = d.t[0], t5 = d.t[4], t6 = d.t[5];
                 const cplx a = t1 / x;
                 Display D;
                 Term l;
                 l.series = psi({q * a, -q * a, t1 * t5 / x, t1 * t6 / x}, {a, -a, q * t1 / (t5 * x), q * t1 / (t6 * x), 0.0, 0.0},
                                q, q * a * a / (t5 * t6));
                 D.lhs.push_back(l);
                 D.rhs.push_back({1.0, P({q, q / (t5 * t6), q * a * a, q / (a * a)}) +
                                           P({q * t1 / (t5 * x), q * t1 / (t6 * x), q * x / (t1 * t5), q * x / (t1 * t6)}, -1)});
                 return D;
             }});

        add({"D3.int8", face("-1/8,-1/8,1/8,3/8,3/8,3/8"), Rational(1, 8), EntryKind::integral,
             "broken integral with one outer parameter", false, nullptr, nullptr, [](const Draw& d) {
                 const cplx q = d.q, t1 = d.t[0], t2 = d.t[1], u = d.u[0];
                 Display D;
                 Term l{1.0, P({q})};
                 Factors f = broken_kernel(t1, t2, d.w);
                 f.push_back(Pz(u, 1, -1));
                 l.integrand = f;
                 D.lhs.push_back(l);
                 D.rhs.push_back({1.0, P({t1 * u, t2 * u}, -1)});
                 return D;
             }});

        add({"D3.double_uni", face("-1/8,-1/8,1/8,3/8,3/8,3/8"), Rational(1, 8), EntryKind::unilateral,
             "two 2phi1 series with a zero parameter summing to one", false, nullptr, nullptr, [](const Draw& d) {
                 const cplx q = d.q;
                 Display D;
                 detail::push_swapped(D.lhs, d, [q](const Draw& s) {
                     auto& t = s.t;
                     return Term{1.0, P({t[1] * t[2]}) + P({t[1] / t[0]}, -1),
                                 phi({t[0] * t[2], 0.0}, {q * t[0] / t[1]}, q, q)};
                 });
                 D.rhs.push_back(unit());
                 return D;
             }});

        add({"II.5", face("-3/8,1/8,1/8,1/8,3/8,5/8"), Rational(3, 8), EntryKind::unilateral, "1phi1 summation",
             false, nullptr, nullptr, [](const Draw& d) {
                 const cplx q = d.q, t1 = d.t[0], t5 = d.t[4], t6 = d.t[5];
                 Display D;
                 Term l;
                 l.series = phi({t1 * t5}, {q * t1 / t6}, q, q / (t5 * t6));
                 D.lhs.push_back(l);
                 D.rhs.push_back({1.0, P({q / (t5 * t6)}) + P({q * t1 / t6}, -1)});
                 return D;
             }});

        add({"D3.uni_bi", face("-3/8,-1/8,1/8,1/8,5/8,5/8"), Rational(1, 8), EntryKind::mixed,
             "a 2phi1 and a 2psi2 with zero parameters", false, nullptr, nullptr, [](const Draw& d) {
                 const cplx q = d.q, x = d.x;
                 const cplx t1 = d.t[0], t2 = d.t[1], t3 = d.t[2], t4 = d.t[3], t5 = d.t[4], t6 = d.t[5];
                 Display D;
                 D.lhs.push_back(unit());
                 Term a{1.0, T({t1 * t3 / x, t1 * t4 / x}) + T({t1 / (t2 * x), t5 * t6 * x}, -1),
                        phi({t2 * t3, t2 * t4}, {0.0}, q, q)};
                 Term b{1.0,
                        P({t2 * t3, t2 * t4, q * x / (t1 * t3), q * x / (t1 * t4)}) + P({q, t2 * x / t1}, -1) +
                            T({t5 * t6 * x}, -1),
                        psi({t1 * t3 / x, t1 * t4 / x}, {q * t1 / (t2 * x), 0.0}, q, q)};
                 D.rhs = {a, b};
                 return D;
             }});

        add({"D3.double_bi", face("-3/8,-3/8,1/8,1/8,5/8,7/8"), Rational(1, 8), EntryKind::bilateral,
             "two 2psi2 series with a zero parameter summing to one", false, nullptr, nullptr, [](const Draw& d) {
                 const cplx q = d.q, x = d.x;
                 Display D;
                 detail::push_swapped(D.lhs, d, [q, x](const Draw& s) {
                     const cplx t1 = s.t[0], t2 = s.t[1], t3 = s.t[2], t4 = s.t[3], t5 = s.t[4], t6 = s.t[5];
                     return Term{1.0,
                                 P({q * t1 / (t6 * x), q * x / (t1 * t3), q * x / (t1 * t4)}) +
                                     T({t2 * t3 / x, t2 * t4 / x}) + P({q, q / (t3 * t6), q / (t4 * t6)}, -1) +
                                     T({t2 / t1, t5 * t6 * x * x}, -1),
                                 psi({t1 * t3 / x, t1 * t4 / x}, {q * t1 / (t6 * x), 0.0}, q, q)};
                 });
                 D.rhs.push_back(unit());
                 return D;
             }});

        // t, u, v = t[0], u[0], v.
        add({"D3.int4", face("-1/4,0,0,1/4,1/2,1/2"), Rational(1, 4), EntryKind::integral,
             "broken integral with one inner and one outer parameter", false, nullptr, nullptr, [](const Draw& d) {
                 const cplx q = d.q, t = d.t[0], u = d.u[0], v = d.v;
                 Display D;
                 Term l{1.0, P({q})};
                 l.integrand = Factors{Tz(t * v, -1), Pz(t, -1, -1), Pz(u, 1, -1)};
                 D.lhs.push_back(l);
                 D.rhs.push_back({1.0, P({q / v, t * u * v}) + P({t * u}, -1)});
                 return D;
             }});

        add({"II.3", face("-1/4,0,0,1/4,1/2,1/2"), Rational(1, 4), EntryKind::unilateral, "q-binomial theorem",
             false, nullptr, nullptr, [](const Draw& d) {
                 const cplx q = d.q;
                 auto& t = d.t;
                 Display D;
                 Term l;
                 l.series = phi({t[0] * t[3]}, {}, q, t[1] * t[2]);
                 D.lhs.push_back(l);
                 D.rhs.push_back({1.0, P({t[0] * t[1] * t[2] * t[3]}) + P({t[1] * t[2]}, -1)});
                 return D;
             }});

        add({"II.29", face("-1/2,0,0,1/4,1/2,3/4"), Rational(1, 4), EntryKind::bilateral, "1psi1 summation", false,
             nullptr, nullptr, [](const Draw& d) {
                 const cplx q = d.q, x = d.x;
                 auto& t = d.t;
                 Display D;
                 Term l;
                 l.series = psi({t[0] * t[3] / x}, {q * t[0] / (t[5] * x)}, q, t[1] * t[2]);
                 D.lhs.push_back(l);
                 D.rhs.push_back({1.0, P({q, q / (t[3] * t[5])}) + T({t[4] * t[5] * x}) +
                                           P({t[1] * t[2], t[0] * t[4], q * t[0] / (t[5] * x), q * x / (t[0] * t[3])}, -1)});
                 return D;
             }});

        // ---- fourth degeneration ----
        add({"D4.AW1", face("0,1/5,1/5,1/5,1/5,1/5"), Z0, EntryKind::integral, "one-parameter symmetric integral",
             false, nullptr, nullptr, [](const Draw& d) {
                 Display D;
                 Term l{0.5, P({d.q})};
                 l.integrand = symmetric_integrand({d.t[0]});
                 D.lhs.push_back(l);
                 D.rhs.push_back(unit());
                 return D;
             }});

        add({"D4.3phi5", face("-1/2,3/10,3/10,3/10,3/10,3/10"), H, EntryKind::unilateral,
             "well-poised 3phi5 summation", false, nullptr, nullptr, [](const Draw& d) {
                 const cplx q = d.q, t1 = d.t[0];
                 Display D;
                 Term l;
                 l.series = phi({t1 * t1, q * t1, -q * t1}, {t1, -t1, 0.0, 0.0, 0.0}, q, q * t1 * t1);
                 D.lhs.push_back(l);
                 D.rhs.push_back({1.0, P({q * t1 * t1})});
                 return D;
             }});

        add({"D4.3psi6", face("-7/10,3/10,3/10,3/10,3/10,1/2"), H, EntryKind::bilateral,
             "well-poised 3psi6 summation", false, nullptr, nullptr, [](const Draw& d) {
                 const cplx q = d.q, x = d.x, t1 = d.t[0], t6 = d.t[5];
                 const cplx a = t1 / x;
                 Display D;
                 Term l;
                 l.series = psi({q * a, -q * a, t1 * t6 / x}, {a, -a, q * t1 / (t6 * x), 0.0, 0.0, 0.0}, q,
                                q * a * a * a / t6);
                 D.lhs.push_back(l);
                 D.rhs.push_back({1.0, P({q, q * a * a, q / (a * a)}) + P({q * t1 / (t6 * x), q * x / (t1 * t6)}, -1)});
                 return D;
             }});

        add({"D4.int", face("-1/10,-1/10,3/10,3/10,3/10,3/10"), Rational(1, 10), EntryKind::integral,
             "broken integral with no outer parameters", false, nullptr, nullptr, [](const Draw& d) {
                 Display D;
                 Term l{1.0, P({d.q})};
                 l.integrand = broken_kernel(d.t[0], d.t[1], d.w);
                 D.lhs.push_back(l);
                 D.rhs.push_back(unit());
                 return D;
             }});

        add({"D4.double_uni", face("-1/10,-1/10,3/10,3/10,3/10,3/10"), Rational(1, 10), EntryKind::unilateral,
             "two 2phi1 series with two zero parameters summing to one", false, nullptr, nullptr, [](const Draw& d) {
                 const cplx q = d.q;
                 Display D;
                 detail::push_swapped(D.lhs, d, [q](const Draw& s) {
                     return Term{1.0, P({s.t[1] / s.t[0]}, -1), phi({0.0, 0.0}, {q * s.t[0] / s.t[1]}, q, q)};
                 });
                 D.rhs.push_back(unit());
                 return D;
             }});

        add({"D4.0phi1", face("-2/5,1/5,1/5,1/5,1/5,3/5"), Rational(2, 5), EntryKind::unilateral, "0phi1 summation",
             false, nullptr, nullptr, [](const Draw& d) {
                 const cplx q = d.q, c = q * d.t[0] / d.t[5];
                 Display D;
                 Term l;
                 l.series = phi({}, {c}, q, c);
                 D.lhs.push_back(l);
                 D.rhs.push_back({1.0, P({c}, -1)});
                 return D;
             }});

        add({"D4.double_bi", face("-3/10,-3/10,1/10,1/10,7/10,7/10"), Rational(1, 10), EntryKind::bilateral,
             "two 2psi2 series with two zero parameters summing to one", false, nullptr, nullptr, [](const Draw& d) {
                 const cplx q = d.q, x = d.x;
                 Display D;
                 detail::push_swapped(D.lhs, d, [q, x](const Draw& s) {
                     const cplx t1 = s.t[0], t2 = s.t[1], t3 = s.t[2], t4 = s.t[3], t5 = s.t[4], t6 = s.t[5];
                     return Term{1.0,
                                 P({q * x / (t1 * t3), q * x / (t1 * t4)}) + T({t2 * t3 / x, t2 * t4 / x}) + P({q}, -1) +
                                     T({t2 / t1, t5 * t6 * x * x}, -1),
                                 psi({t1 * t3 / x, t1 * t4 / x}, {0.0, 0.0}, q, q)};
                 });
                 D.rhs.push_back(unit());
                 return D;
             }});

        // t, u = t[0], u[0].
        add({"D4.int5", face("-1/5,0,0,2/5,2/5,2/5"), Rational(1, 5), EntryKind::integral,
             "broken integral with one inner parameter", false, nullptr, nullptr, [](const Draw& d) {
                 const cplx q = d.q, t = d.t[0], u = d.u[0];
                 Display D;
                 Term l{1.0, P({q})};
                 l.integrand = Factors{Tz(t * u, -1), Pz(t, -1, -1)};
                 D.lhs.push_back(l);
                 D.rhs.push_back({1.0, P({q / u})});
                 return D;
             }});

        add({"II.1", face("-1/5,0,0,2/5,2/5,2/5"), Rational(1, 5), EntryKind::unilateral, "q-exponential sum",
             false, nullptr, nullptr, [](const Draw& d) {
                 Display D;
                 Term l;
                 l.series = phi({0.0}, {}, d.q, d.t[1] * d.t[2]);
                 D.lhs.push_back(l);
                 D.rhs.push_back({1.0, P({d.t[1] * d.t[2]}, -1)});
                 return D;
             }});

        add({"II.2", face("-3/10,1/10,1/10,1/10,1/2,1/2"), Rational(3, 10), EntryKind::unilateral,
             "second q-exponential sum", false, nullptr, nullptr, [](const Draw& d) {
                 const cplx z = d.q / (d.t[4] * d.t[5]);
                 Display D;
                 Term l;
                 l.series = phi({}, {}, d.q, z);
                 D.lhs.push_back(l);
                 D.rhs.push_back({1.0, P({z})});
                 return D;
             }});

        add({"D4.1psi1", face("-2/5,0,0,1/5,3/5,3/5"), Rational(1, 5), EntryKind::bilateral,
             "1psi1 with a zero lower parameter", false, nullptr, nullptr, [](const Draw& d) {
                 const cplx q = d.q, x = d.x;
                 auto& t = d.t;
                 Display D;
                 Term l;
                 l.series = psi({t[0] * t[3] / x}, {0.0}, q, t[1] * t[2]);
                 D.lhs.push_back(l);
                 D.rhs.push_back({1.0, P({q}) + T({t[4] * t[5] * x}) + P({t[1] * t[2], q * x / (t[0] * t[3])}, -1)});
                 return D;
             }});

        // ---- fifth degeneration ----
        add({"D5.AW0", face("1/6,1/6,1/6,1/6,1/6,1/6"), Z0, EntryKind::integral, "parameter-free symmetric integral",
             false, nullptr, nullptr, [](const Draw& d) {
                 Display D;
                 Term l{0.5, P({d.q})};
                 l.integrand = symmetric_integrand({});
                 D.lhs.push_back(l);
                 D.rhs.push_back(unit());
                 return D;
             }});

        add({"D5.int", face("-1/12,-1/12,-1/12,5/12,5/12,5/12"), Rational(1, 4), EntryKind::integral,
             "theta integral", false, nullptr, nullptr, [](const Draw& d) {
                 Display D;
                 Term l{1.0, P({d.q})};
                 l.integrand = Factors{Tz(d.t[0] * d.t[1] * d.t[2], -1)};
                 D.lhs.push_back(l);
                 D.rhs.push_back(unit());
                 return D;
             }});

        add({"D5.2psi6", face("-2/3,1/3,1/3,1/3,1/3,1/3"), H, EntryKind::bilateral, "well-poised 2psi6 summation",
             false, nullptr, nullptr, [](const Draw& d) {
                 const cplx q = d.q, a = d.t[0] / d.x;
                 Display D;
                 Term l;
                 l.series = psi({q * a, -q * a}, {a, -a, 0.0, 0.0, 0.0, 0.0}, q, q * a * a * a * a);
                 D.lhs.push_back(l);
                 D.rhs.push_back({1.0, P({q, q * a * a, q / (a * a)})});
                 return D;
             }});

        add({"II.28", face("-5/12,1/12,1/12,1/12,7/12,7/12"), Rational(1, 4), EntryKind::bilateral,
             "triple product identity", false, nullptr, nullptr, [](const Draw& d) {
                 const cplx q = d.q, y = d.t[4] * d.t[5] * d.x;
                 Display D;
                 Term l;
                 l.series = psi({}, {0.0}, q, q / y);
                 D.lhs.push_back(l);
                 D.rhs.push_back({1.0, P({q}) + T({y})});
                 return D;
             }});

        for (auto& e : E)
            for (const char* id : {"II.25", "II.24", "II.23", "D3.double_uni", "D4.double_uni", "II.3", "II.1"})
                if (e.id == id) e.residue_expansion = true;
        return E;
    }();
    return all;
}

inline const IdentityEntry& find_entry(const std::string& id)
{
    for (const auto& e : entries())
        if (e.id == id) return e;
    throw DomainError("unknown identity id: " + id);
}

// ---------------------------------------------------------------- evaluation

namespace detail {

inline Scaled factor_value(const Factor& f, cplx z, cplx q)
{
    cplx a = f.arg;
    for (int i = 0; i < std::abs(f.zpow); ++i) a = f.zpow > 0 ? a * z : a / z;
    Scaled v;
    switch (f.kind) {
    case FactorKind::poch: v = qpoch_inf_scaled(a, q); break;
    case FactorKind::theta: v = theta_scaled(a, q); break;
    case FactorKind::linear: v = Scaled(1.0 - a); break;
    }
    if (v.is_zero()) {
        if (f.power < 0) throw DomainError("catalog: vanishing denominator factor");
        return v;
    }
    Scaled out;
    for (int i = 0; i < std::abs(f.power); ++i) {
        if (f.power > 0) out *= v;
        else out /= v;
    }
    return out;
}

inline Scaled factors_value(const Factors& fs, cplx z, cplx q)
{
    Scaled v;
    for (const auto& f : fs) v *= factor_value(f, z, q);
    return v;
}

/// Relative margin kept between the unit circle and every pole of a contour integrand.
inline constexpr double kIntegralPoleMargin = 0.05;

inline void check_contour(const Factors& fs)
{
    // Poles of (a z^k;q)^{-1}: |z|^k = |q|^{-n}/|a| with k > 0, or |q|^n |a| with k < 0; unit circle needs |a| < 1.
    for (const auto& f : fs)
        if (f.zpow != 0 && f.power < 0 && f.kind == FactorKind::poch && std::abs(f.arg) > 1.0 - kIntegralPoleMargin)
            throw DomainError("catalog: integrand pole too close to the unit circle");
}

struct SideValue {
    cplx value;
    double abs_sum = 0;        ///< Σ|term|, for conditioning
    double inner_condition = 1;  ///< worst cancellation inside one series or quadrature
    int terms = 0;
    int nodes = 0;
};

inline SideValue evaluate_side(const std::vector<Term>& side, cplx q, const SeriesTolerance& tol)
{
    SideValue out;
    CompensatedSum acc;
    for (const auto& t : side) {
        Scaled v = factors_value(t.factors, 1.0, q);
        v *= t.coeff;
        if (t.series) {
            SeriesResult r = sum_series(*t.series, tol);
            v *= r.value;
            out.terms += r.terms;
            out.inner_condition = std::max(out.inner_condition, r.abs_sum / std::max(std::abs(r.value), 1e-300));
        }
        if (t.integrand) {
            check_contour(*t.integrand);
            const Factors& fs = *t.integrand;
            auto f = [&](cplx z) { return factors_value(fs, z, q).value(); };
            QuadResult qr = circle_integral(f, QuadOptions{});
            v *= qr.value;
            out.nodes = std::max(out.nodes, qr.nodes);
            out.inner_condition = std::max(out.inner_condition, qr.scale / std::max(std::abs(qr.value), 1e-300));
        }
        const cplx c = v.value();
        if (!std::isfinite(c.real()) || !std::isfinite(c.imag())) throw DomainError("catalog: non-finite term");
        acc.add(c);
        out.abs_sum += std::abs(c);
    }
    out.value = acc.value();
    return out;
}

} // namespace detail

struct Evaluation {
    cplx lhs, rhs;
    double abs_err = 0, rel_err = 0;
    int terms_used = 0, quadrature_n = 0;
    double condition = 1;  ///< worst of Σ|terms|/|sum| over sides, series and quadratures
};

inline Evaluation evaluate(const IdentityEntry& e, const Draw& d, const SeriesTolerance& tol = {})
{
    Display D = e.display(d);
    auto l = detail::evaluate_side(D.lhs, d.q, tol);
    auto r = detail::evaluate_side(D.rhs, d.q, tol);
    Evaluation ev;
    ev.lhs = l.value;
    ev.rhs = r.value;
    ev.abs_err = std::abs(ev.lhs - ev.rhs);
    ev.rel_err = ev.abs_err / std::max(std::abs(ev.rhs), 1e-300);
    ev.terms_used = l.terms + r.terms;
    ev.quadrature_n = std::max(l.nodes, r.nodes);
    ev.condition = std::max({l.abs_sum / std::max(std::abs(l.value), 1e-300), r.abs_sum / std::max(std::abs(r.value), 1e-300),
                             l.inner_condition, r.inner_condition});
    return ev;
}

// ---------------------------------------------------------------- sampling

/// Draws with larger cancellation between terms are treated as outside the domain.
inline constexpr double kMaxCondition = 1e4;
inline constexpr int kMaxRedraws = 100;

inline cplx random_point(std::mt19937_64& rng, double lo, double hi)
{
    std::uniform_real_distribution<double> mod(lo, hi), ph(-std::numbers::pi, std::numbers::pi);
    const double r = mod(rng);
    return std::polar(r, ph(rng));
}

/// Generic draw: |q| in [0.15,0.45], t1..t5 in [0.3,0.9] with t6 = q/∏, u in [0.3,0.9],
/// x, w in [0.5,2], v in [0.5,1.5]. A fixed q (nonzero) overrides the random nome.
inline Draw generic_draw(std::mt19937_64& rng, std::optional<cplx> fixed_q = std::nullopt)
{
    Draw d;
    d.q = random_point(rng, 0.15, 0.45);
    if (fixed_q) d.q = *fixed_q;
    cplx prod = 1.0;
    for (int i = 0; i < 5; ++i) {
        d.t[i] = random_point(rng, 0.3, 0.9);
        prod *= d.t[i];
    }
    d.t[5] = d.q / prod;
    for (auto& u : d.u) u = random_point(rng, 0.3, 0.9);
    d.x = random_point(rng, 0.5, 2.0);
    d.w = random_point(rng, 0.5, 2.0);
    d.v = random_point(rng, 0.5, 1.5);
    return d;
}

/// Per-sample seed derived from a run seed, stable under reordering.
inline std::uint64_t sample_seed(std::uint64_t seed, std::uint64_t index)
{
    std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (index + 1);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

struct IdentityReport {
    std::string id;
    std::uint64_t draw_seed = 0;
    Draw draw;
    cplx lhs, rhs;
    double abs_err = 0, rel_err = 0;
    int terms_used = 0, quadrature_n = 0;
    double elapsed = 0;
    int attempts = 0;
    double condition = 1;
    double tolerance = 0;
    bool display_corrected = false;
    bool pass = false;
};

/// Draws admissible parameters from draw_seed (redrawing up to 100 times) and compares both sides.
/// tol <= 0 selects the entry's own threshold.
inline IdentityReport verify(const std::string& id, std::uint64_t draw_seed, double tol = 0,
                             std::optional<cplx> fixed_q = std::nullopt)
{
    const IdentityEntry& e = find_entry(id);
    const auto start = std::chrono::steady_clock::now();
    std::mt19937_64 rng(draw_seed);
    IdentityReport rep;
    rep.id = id;
    rep.draw_seed = draw_seed;
    rep.tolerance = tol > 0 ? tol : e.tolerance();
    rep.display_corrected = e.display_corrected;
    std::string last = "no attempt";
    for (int attempt = 1; attempt <= kMaxRedraws; ++attempt) {
        Draw d = generic_draw(rng, fixed_q);
        if (e.adjust) e.adjust(d);
        if (e.domain && !e.domain(d)) {
            last = "domain predicate";
            continue;
        }
        Evaluation ev;
        try {
            ev = evaluate(e, d);
        } catch (const DomainError& err) {
            last = err.what();
            continue;
        } catch (const AccuracyError& err) {
            last = err.what();
            continue;
        }
        if (!(ev.condition <= kMaxCondition)) {
            last = "ill-conditioned draw";
            continue;
        }
        rep.attempts = attempt;
        rep.draw = d;
        rep.lhs = ev.lhs;
        rep.rhs = ev.rhs;
        rep.abs_err = ev.abs_err;
        rep.rel_err = ev.rel_err;
        rep.terms_used = ev.terms_used;
        rep.quadrature_n = ev.quadrature_n;
        rep.condition = ev.condition;
        rep.pass = ev.rel_err < rep.tolerance;
        rep.elapsed = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        return rep;
    }
    throw DomainError("verify " + id + ": no admissible draw in " + std::to_string(kMaxRedraws) + " attempts (last: " + last + ")");
}

// ---------------------------------------------------------------- cross-identity checks

struct DegenerationCheck {
    cplx nr_value, aw_value;
    double rel_gap = 0;
};

/// Both sides of the five-parameter integral with t5 = small approach the four-parameter evaluation.
inline DegenerationCheck nr_to_aw(std::uint64_t seed, double small = 1e-9)
{
    std::mt19937_64 rng(seed);
    Draw d = generic_draw(rng);
    d.t[4] = small;
    Evaluation nr = evaluate(find_entry("NR"), d);
    Evaluation aw = evaluate(find_entry("AW"), d);
    DegenerationCheck c;
    c.nr_value = nr.lhs;
    c.aw_value = aw.rhs;
    c.rel_gap = std::max(std::abs(nr.lhs - aw.rhs), std::abs(nr.rhs - aw.rhs)) / std::abs(aw.rhs);
    return c;
}

struct EllipticityCheck {
    cplx ratio_x, ratio_qx;  ///< lhs/rhs at x and at qx
    double gap = 0;          ///< |ratio_qx - ratio_x|
};

/// A bilateral identity written as 1 = lhs/rhs is an elliptic function of x; compares that
/// normalized form at x and qx for one admissible draw.
inline EllipticityCheck x_shift_invariance(const std::string& id, std::uint64_t seed)
{
    const IdentityEntry& e = find_entry(id);
    IdentityReport base = verify(id, seed);
    Draw d = base.draw;
    d.x *= d.q;
    Evaluation s = evaluate(e, d);
    EllipticityCheck c;
    c.ratio_x = base.lhs / base.rhs;
    c.ratio_qx = s.lhs / s.rhs;
    c.gap = std::abs(c.ratio_qx - c.ratio_x);
    return c;
}

struct ConsistencyCheck {
    bool zeta_match = false;
    bool kind_match = false;
    Rational classified_zeta;
    LimitKind classified_kind = LimitKind::one_sided;
};

/// Compares an entry's ζ and kind with the tiling classification of its face. Where fob is
/// constant on [0,1/2] the face admits both limit kinds.
inline ConsistencyCheck tiling_consistency(const IdentityEntry& e)
{
    TileAssignment a = classify(e.face_vector);
    ConsistencyCheck c;
    c.classified_zeta = a.correct_zeta;
    c.classified_kind = a.limit_kind;
    c.zeta_match = std::find(a.correct_zetas.begin(), a.correct_zetas.end(), e.zeta) != a.correct_zetas.end();
    const Rational half(1, 2);
    const bool flat = a.extrema.minima.size() == 1 && a.extrema.minima[0].lo == 0 && a.extrema.minima[0].hi == half;
    if (flat) {
        c.kind_match = true;
    } else if (e.kind == EntryKind::integral || e.residue_expansion) {
        c.kind_match = a.limit_kind == LimitKind::integral_at_min;
    } else {
        c.kind_match = a.limit_kind == LimitKind::series_at_max;
    }
    return c;
}

// ---------------------------------------------------------------- limit traces

struct TraceReport {
    Vec6 alpha;
    cplx x, q;
    Rational zeta;
    std::string recipe;
    MonomialExponents sob;  ///< second-order behavior at the correct ζ
    long step = 0;          ///< v advances in multiples of this
    std::vector<long> step_exponents;
    std::vector<cplx> values;
    cplx target;
    std::vector<double> errors;
    std::vector<std::string> notes;
    bool eventually_decreasing = false;
    double final_error = 0;
};

/// Fixed trace parameters u1..u5 with u6 = q/∏ (so ∏u = q).
/// Integral directions: for |q| ≤ 0.4 every |u_r| < 1, which keeps the unit circle separating,
/// and |u2u3| < 1. Residue direction: only t2 = u2 stays unscaled, so u3..u5 may exceed 1; the
/// error decays like |u2u6|^{v/2}, which these choices make small.
inline std::array<cplx, 6> default_trace_parameters(cplx q, bool residue_direction = false)
{
    std::array<cplx, 6> u{std::polar(0.9, 0.4), std::polar(0.7, -0.9), std::polar(0.9, 1.3), std::polar(0.85, -2.1),
                          std::polar(0.9, 2.6), 0.0};
    if (residue_direction) {
        u[2] = std::polar(1.4, 1.3);
        u[3] = std::polar(1.3, -2.1);
        u[4] = std::polar(1.5, 2.6);
    }
    cplx prod = 1.0;
    for (int i = 0; i < 5; ++i) prod *= u[i];
    u[5] = q / prod;
    return u;
}

namespace detail {

/// w^a on the branch exp(a log w) times q^{v a}, for v a an integer.
inline cplx power_along(cplx w, const Rational& a, cplx q, long v)
{
    const Rational va = a * v;
    if (!is_integer(va)) throw DomainError("trace: v·alpha must be an integer");
    return cpow(w, a.get_d()) * std::pow(q, static_cast<int>(mpz_class(va.get_num()).get_si()));
}

inline bool tail_decreasing(const std::vector<double>& e)
{
    // Non-increasing from some point on, allowing roundoff-level jitter once below 1e-13.
    if (e.size() < 2) return false;
    std::size_t start = e.size() - 1;
    while (start > 0 && (e[start] < e[start - 1] || (e[start] < 1e-13 && e[start - 1] < 1e-13))) --start;
    return start + 2 <= e.size() - 1 || (e.size() <= 3 && start == 0);
}

inline Vec6 vec6(std::initializer_list<Rational> r)
{
    Vec6 v;
    std::size_t i = 0;
    for (const auto& x : r) v[i++] = x;
    return v;
}

} // namespace detail

/// Follows p along the admissible sequence p = x q^{v}, v = step·k, k = 1..K, and compares the
/// normalized elliptic integral with its classified limit. Three directions are supported:
/// (0,0,0,0,1/2,1/2) with the symmetric integrand, (-1/2,0,0,1/2,1/2,1/2) with the broken integrand
/// at ζ = 1/2, and (-3/2,0,1/2,1/2,1/2,1) through its crossed residues, where p = x² q^{v}.
inline TraceReport trace(const BalancedVector& alpha, cplx x, cplx q, int K,
                         std::optional<std::array<cplx, 6>> params = std::nullopt)
{
    require_nome(q, "trace");
    if (K < 1) throw DomainError("trace: need at least one step");
    const Rational h(1, 2);
    const Vec6 aw = detail::vec6({0, 0, 0, 0, h, h});
    const Vec6 br = detail::vec6({-h, 0, 0, h, h, h});
    const Vec6 tri = detail::vec6({Rational(-3, 2), 0, h, h, h, 1});

    TraceReport rep;
    rep.alpha = alpha.alpha;
    rep.x = x;
    rep.q = q;
    TileAssignment cls = classify(alpha);
    rep.zeta = cls.correct_zeta;
    rep.sob = sob_exponents(alpha, rep.zeta).balanced();
    rep.step = admissible_step(std::vector<Rational>(alpha.alpha.begin(), alpha.alpha.end()));
    const std::array<cplx, 6> u = params ? *params : default_trace_parameters(q, alpha.alpha == tri);
    {
        cplx prod = 1.0;
        for (cplx v : u) prod *= v;
        if (std::abs(prod - q) > 1e-12 * std::abs(q)) throw DomainError("trace: parameters must satisfy prod u = q");
    }

    enum class Recipe { symmetric, broken, residues } recipe;
    if (alpha.alpha == aw) {
        recipe = Recipe::symmetric;
        rep.recipe = "symmetric integral at zeta = 0";
    } else if (alpha.alpha == br) {
        recipe = Recipe::broken;
        rep.recipe = "broken integral at zeta = 1/2";
        if (!(std::abs(u[1] * u[2]) < 1)) throw DomainError("trace: needs |u2 u3| < 1");
        for (cplx v : u)
            if (!(std::abs(v) < 1)) throw DomainError("trace: the broken integrand needs every |u_r| < 1");
    } else if (alpha.alpha == tri) {
        recipe = Recipe::residues;
        rep.recipe = "crossed residues, p = x^2 q^v";
        if (!(std::abs(u[1] * u[5]) < 1)) throw DomainError("trace: needs |u2 u6| < 1");
    } else {
        throw DomainError("trace: no catalog target for this direction");
    }

    // Targets.
    if (recipe == Recipe::symmetric) {
        Scaled t = poch_scaled({u[0] * u[1] * u[2] * u[3]}, q);
        for (int r = 0; r < 4; ++r)
            for (int s = r + 1; s < 4; ++s) t /= qpoch_inf_scaled(u[r] * u[s], q);
        rep.target = t.value();
    } else if (recipe == Recipe::broken) {
        Scaled t;
        for (int r = 3; r < 6; ++r) t /= qpoch_inf_scaled(u[0] * u[r], q);
        t /= qpoch_inf_scaled(u[1] * u[2], q);
        for (int r = 3; r < 6; ++r)
            for (int s = r + 1; s < 6; ++s) t *= qpoch_inf_scaled(q / (u[r] * u[s]), q);
        rep.target = t.value();
    } else {
        Draw d;
        d.q = q;
        d.x = x;
        for (int i = 0; i < 6; ++i) d.t[i] = u[i];
        Display D = find_entry("D1.three").display(d);
        rep.target = detail::evaluate_side(D.rhs, q, {}).value;
    }

    for (int k = 1; k <= K; ++k) {
        const long v = rep.step * k;
        const cplx xp = recipe == Recipe::residues ? x * x : x;
        IntegrandSpec s;
        s.q = q;
        s.p = xp * std::pow(q, static_cast<int>(v));
        s.t.resize(6);
        for (int r = 0; r < 6; ++r) s.t[r] = u[r] * detail::power_along(xp, alpha[r], q, v);
        try {
            cplx value;
            if (recipe == Recipe::symmetric) {
                s.validate();
                auto f = [&](cplx z) { return integrand(s, z); };
                value = (integral_prefactor(s) * Scaled(circle_integral(f).value)).value();
            } else if (recipe == Recipe::broken) {
                s.broken = std::array<cplx, 3>{s.t[0], s.t[1], s.t[2]};
                s.validate();
                // y = z p^{-1/2}; θ(t1t2), θ(t1t3) diverge and are divided out.
                const cplx shift = 1.0 / detail::power_along(xp, h, q, v);
                const Scaled keep = theta_scaled(s.t[0] * s.t[1], q) * theta_scaled(s.t[0] * s.t[2], q);
                auto f = [&](cplx z) { return (integrand_scaled(s, z * shift) * keep).value(); };
                value = (integral_prefactor(s) * Scaled(circle_integral(f).value)).value();
            } else {
                s.validate();
                double rho = 1.0;
                std::vector<PoleRef> poles;
                for (int attempt = 0;; ++attempt) {
                    try {
                        poles = crossed_poles(s, rho);
                        break;
                    } catch (const ContourError& ce) {
                        if (attempt > 4) throw;
                        rho = ce.suggested_radius;
                        rep.notes.push_back("v=" + std::to_string(v) + ": circle moved to radius " + std::to_string(rho));
                    }
                }
                const Scaled pref = integral_prefactor(s) / beta_rhs_scaled(s);
                CompensatedSum acc;
                for (const auto& pr : poles) {
                    cplx r = (residue_scaled(s, pr) * pref).value();
                    acc.add(pr.inner ? r : -r);
                }
                value = acc.value();
            }
            rep.step_exponents.push_back(v);
            rep.values.push_back(value);
            rep.errors.push_back(std::abs(value - rep.target) / std::max(std::abs(rep.target), 1e-300));
        } catch (const DomainError& e) {
            rep.notes.push_back("v=" + std::to_string(v) + " skipped: " + e.what());
        } catch (const AccuracyError& e) {
            rep.notes.push_back("v=" + std::to_string(v) + " skipped: " + e.what());
        }
    }
    rep.eventually_decreasing = detail::tail_decreasing(rep.errors);
    rep.final_error = rep.errors.empty() ? INFINITY : rep.errors.back();
    if (!rep.eventually_decreasing) rep.notes.push_back("error sequence is not eventually decreasing");
    return rep;
}

} // namespace qlimit
