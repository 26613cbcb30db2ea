#pragma once

#include "asym.hpp"
#include "rational.hpp"

#include <algorithm>
#include <array>
#include <cstdint>
#include <optional>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

namespace qlimit {

enum class Family { I, I_hat, II, III, III_hat };

inline std::string family_name(Family f)
{
    switch (f) {
    case Family::I: return "P_I";
    case Family::I_hat: return "P_I_hat";
    case Family::II: return "P_II";
    case Family::III: return "P_III";
    case Family::III_hat: return "P_III_hat";
    }
    return "?";
}

struct Tile {
    Family family = Family::I;
    Vec6 base;
    std::optional<int> axis;              ///< 0-based, cross-polytopes only
    std::optional<std::array<int, 3>> subset; ///< 0-based sorted triple, P_III families only
};

inline bool operator==(const Tile& a, const Tile& b)
{
    return a.family == b.family && a.base == b.base && a.axis == b.axis && a.subset == b.subset;
}

/// Affine form Σ c_r α_r + d, read as "≥ 0".
struct Inequality {
    Vec6 c;
    Rational d;
    Rational eval(const Vec6& a) const
    {
        Rational s = d;
        for (int r = 0; r < 6; ++r) s += c[r] * a[r];
        return s;
    }
};

struct TileGeometry {
    std::vector<Vec6> vertices;
    std::vector<Inequality> inequalities;
};

namespace detail {

inline Vec6 unit(int r)
{
    Vec6 v;
    for (auto& x : v) x = 0;
    v[r] = 1;
    return v;
}

inline Vec6 half_vec()
{
    Vec6 v;
    for (auto& x : v) x = Rational(1, 2);
    return v;
}

inline Vec6 add(Vec6 a, const Vec6& b)
{
    for (int r = 0; r < 6; ++r) a[r] += b[r];
    return a;
}

inline Vec6 sub(Vec6 a, const Vec6& b)
{
    for (int r = 0; r < 6; ++r) a[r] -= b[r];
    return a;
}

inline bool all_integer(const Vec6& v)
{
    return std::all_of(v.begin(), v.end(), [](const Rational& x) { return is_integer(x); });
}

inline bool all_half_odd(const Vec6& v)
{
    return std::all_of(v.begin(), v.end(), [](const Rational& x) { return !is_integer(x) && is_integer(2 * x); });
}

/// c·α + d ≥ 0 with c = Σ coef_i e_{idx_i}.
inline Inequality form(std::initializer_list<std::pair<int, int>> terms, Rational d)
{
    Inequality q;
    for (auto& x : q.c) x = 0;
    for (auto [idx, coef] : terms) q.c[idx] += coef;
    q.d = d;
    return q;
}

inline std::array<int, 3> complement(const std::array<int, 3>& s)
{
    std::array<int, 3> out{};
    int k = 0;
    for (int r = 0; r < 6; ++r)
        if (r != s[0] && r != s[1] && r != s[2]) out[k++] = r;
    return out;
}

/// Rank of a list of rational vectors, by exact elimination.
inline int rank(std::vector<Vec6> rows)
{
    int rk = 0;
    for (int col = 0; col < 6 && rk < static_cast<int>(rows.size()); ++col) {
        int piv = -1;
        for (int i = rk; i < static_cast<int>(rows.size()); ++i)
            if (rows[i][col] != 0) {
                piv = i;
                break;
            }
        if (piv < 0) continue;
        std::swap(rows[rk], rows[piv]);
        for (int i = rk + 1; i < static_cast<int>(rows.size()); ++i) {
            if (rows[i][col] == 0) continue;
            Rational f = rows[i][col] / rows[rk][col];
            for (int c = col; c < 6; ++c) rows[i][c] -= f * rows[rk][c];
        }
        ++rk;
    }
    return rk;
}

} // namespace detail

inline void validate_tile(const Tile& t)
{
    const Rational s = sum(t.base);
    const bool hatted = t.family == Family::I_hat || t.family == Family::III_hat;
    if (s != (hatted ? 2 : 0)) throw std::invalid_argument("tile base has the wrong coordinate sum");
    const bool integral = detail::all_integer(t.base);
    if (!integral && !detail::all_half_odd(t.base)) throw std::invalid_argument("tile base must lie in Z^6 or Z^6 + 1/2");
    if ((t.family == Family::III || t.family == Family::III_hat) && !integral)
        throw std::invalid_argument("P_III bases are integral");
    if (t.family == Family::II && (!t.axis || *t.axis < 0 || *t.axis > 5)) throw std::invalid_argument("P_II needs an axis");
    if (t.family == Family::III || t.family == Family::III_hat) {
        if (!t.subset) throw std::invalid_argument("P_III needs a 3-subset");
        auto s3 = *t.subset;
        if (!(0 <= s3[0] && s3[0] < s3[1] && s3[1] < s3[2] && s3[2] < 6)) throw std::invalid_argument("bad 3-subset");
    }
}

inline TileGeometry tile_geometry(const Tile& t)
{
    using namespace detail;
    validate_tile(t);
    TileGeometry g;
    const Vec6& b = t.base;
    const Vec6 rho = half_vec();
    auto bsum = [&](int r, int s) { return b[r] + b[s]; };
    switch (t.family) {
    case Family::I:
        for (int r = 0; r < 6; ++r) {
            g.vertices.push_back(add(b, unit(r)));
            g.inequalities.push_back(form({{r, 1}}, -b[r]));
        }
        break;
    case Family::I_hat:
        for (int r = 0; r < 6; ++r) {
            g.vertices.push_back(sub(b, unit(r)));
            g.inequalities.push_back(form({{r, -1}}, b[r]));
        }
        break;
    case Family::III:
    case Family::III_hat: {
        const bool hat = t.family == Family::III_hat;
        const auto abc = *t.subset;
        const auto def = complement(abc);
        const int sg = hat ? -1 : 1;
        for (int r : abc) g.vertices.push_back(hat ? sub(b, unit(r)) : add(b, unit(r)));
        for (int i = 0; i < 3; ++i) {
            int r = def[i], s = def[(i + 1) % 3];
            Vec6 shift = sub(rho, add(unit(r), unit(s)));
            g.vertices.push_back(hat ? sub(b, shift) : add(b, shift));
        }
        // Unhatted: α_x+α_y ≤ β_x+β_y+1 on abc pairs, ≤ β_x+β_y on def pairs; hatted mirrors.
        for (int i = 0; i < 3; ++i)
            for (int j = i + 1; j < 3; ++j) {
                int r = abc[i], s = abc[j];
                g.inequalities.push_back(form({{r, -sg}, {s, -sg}}, sg * (bsum(r, s) + sg)));
            }
        for (int i = 0; i < 3; ++i)
            for (int j = i + 1; j < 3; ++j) {
                int r = def[i], s = def[j];
                g.inequalities.push_back(form({{r, -sg}, {s, -sg}}, sg * bsum(r, s)));
            }
        break;
    }
    case Family::II: {
        const int a = *t.axis;
        for (int r = 0; r < 6; ++r)
            if (r != a) g.vertices.push_back(add(b, unit(r)));
        for (int r = 0; r < 6; ++r)
            if (r != a) g.vertices.push_back(sub(add(b, rho), add(unit(a), unit(r))));
        // -1/2 ≤ α_a - β_a ≤ 0
        g.inequalities.push_back(form({{a, 1}}, -b[a] + Rational(1, 2)));
        g.inequalities.push_back(form({{a, -1}}, b[a]));
        for (int r = 0; r < 6; ++r) {
            if (r == a) continue;
            // α_a - β_a ≤ α_r - β_r ≤ 1 + α_a - β_a
            g.inequalities.push_back(form({{r, 1}, {a, -1}}, b[a] - b[r]));
            g.inequalities.push_back(form({{a, 1}, {r, -1}}, 1 + b[r] - b[a]));
        }
        for (int r = 0; r < 6; ++r)
            for (int s = r + 1; s < 6; ++s) {
                if (r == a || s == a) continue;
                g.inequalities.push_back(form({{r, 1}, {s, 1}}, -bsum(r, s)));
                g.inequalities.push_back(form({{r, -1}, {s, -1}}, 1 + bsum(r, s)));
            }
        break;
    }
    }
    return g;
}

inline bool contains(const TileGeometry& g, const Vec6& a)
{
    return std::all_of(g.inequalities.begin(), g.inequalities.end(), [&](const Inequality& q) { return q.eval(a) >= 0; });
}

/// Dimension of the smallest face of the tile containing α (5 for interior points).
inline int face_dimension(const TileGeometry& g, const Vec6& a)
{
    std::vector<const Inequality*> tight;
    for (const auto& q : g.inequalities)
        if (q.eval(a) == 0) tight.push_back(&q);
    if (tight.empty()) return 5;
    std::vector<Vec6> on;
    for (const auto& v : g.vertices)
        if (std::all_of(tight.begin(), tight.end(), [&](const Inequality* q) { return q->eval(v) == 0; })) on.push_back(v);
    if (on.empty()) return -1;
    std::vector<Vec6> diffs;
    for (std::size_t i = 1; i < on.size(); ++i) diffs.push_back(detail::sub(on[i], on[0]));
    return detail::rank(diffs);
}

enum class LimitKind { integral_at_min, series_at_max, one_sided };

inline std::string limit_kind_name(LimitKind k)
{
    switch (k) {
    case LimitKind::integral_at_min: return "integral_at_min";
    case LimitKind::series_at_max: return "series_at_max";
    case LimitKind::one_sided: return "one_sided";
    }
    return "?";
}

struct TileHit {
    Tile tile;
    int face_dim = 5;
    Rational correct_zeta;                 ///< in [0,1/2]
    std::vector<Rational> table_max, table_min; ///< theorem-table entries, normalized; "0 or 1/2" lists both
};

struct TileAssignment {
    Vec6 alpha;
    std::vector<TileHit> tiles;
    std::vector<Rational> correct_zetas; ///< deduplicated, sorted
    Rational correct_zeta;               ///< first of correct_zetas
    LimitKind limit_kind = LimitKind::one_sided;
    ExtremaReport extrema;               ///< exact global extrema of fob(α,·) on [0,1/2]
};

/// Correct ζ and tabulated extremal ζ for a tile at α.
inline void tile_zeta_table(const Tile& t, const Vec6& a, TileHit& hit)
{
    const Rational zero(0), half(1, 2);
    const bool integral = detail::all_integer(t.base);
    switch (t.family) {
    case Family::I:
        hit.correct_zeta = integral ? zero : half;
        hit.table_max = {integral ? half : zero};
        hit.table_min = {integral ? zero : half};
        break;
    case Family::I_hat:
        hit.correct_zeta = integral ? zero : half;
        hit.table_max = {integral ? zero : half};
        hit.table_min = {integral ? half : zero};
        break;
    case Family::III: {
        auto s = *t.subset;
        hit.correct_zeta = normalize_zeta(a[s[0]] + a[s[1]] + a[s[2]]);
        hit.table_max = {zero, half};
        hit.table_min = {hit.correct_zeta};
        break;
    }
    case Family::III_hat: {
        auto s = *t.subset;
        hit.correct_zeta = normalize_zeta(a[s[0]] + a[s[1]] + a[s[2]]);
        hit.table_max = {hit.correct_zeta};
        hit.table_min = {zero, half};
        break;
    }
    case Family::II:
        hit.correct_zeta = normalize_zeta(a[*t.axis]);
        hit.table_max = {integral ? half : zero};
        hit.table_min = {integral ? zero : half};
        break;
    }
}

namespace detail {

/// Lattice points x ∈ (Z or Z+1/2) with lo ≤ x ≤ hi.
inline std::vector<Rational> lattice_range(const Rational& lo, const Rational& hi, bool half_shift)
{
    std::vector<Rational> out;
    const Rational off = half_shift ? Rational(1, 2) : Rational(0);
    for (Rational x = ceil_q(lo - off) + off; x <= hi; x += 1) out.push_back(x);
    return out;
}

/// Enumerates bases with b_r ∈ [a_r + lo, a_r + hi] on one lattice coset and Σb = target.
template <class F>
void for_each_base(const Vec6& a, const Rational& lo, const Rational& hi, bool half_shift, const Rational& target, F&& f)
{
    std::array<std::vector<Rational>, 6> choices;
    for (int r = 0; r < 6; ++r) choices[r] = lattice_range(a[r] + lo, a[r] + hi, half_shift);
    Vec6 b;
    std::array<std::size_t, 6> idx{};
    for (auto& c : choices)
        if (c.empty()) return;
    while (true) {
        Rational s = 0;
        for (int r = 0; r < 6; ++r) {
            b[r] = choices[r][idx[r]];
            s += b[r];
        }
        if (s == target) f(b);
        int r = 0;
        while (r < 6 && ++idx[r] == choices[r].size()) idx[r++] = 0;
        if (r == 6) break;
    }
}

inline std::vector<std::array<int, 3>> three_subsets()
{
    std::vector<std::array<int, 3>> out;
    for (int a = 0; a < 6; ++a)
        for (int b = a + 1; b < 6; ++b)
            for (int c = b + 1; c < 6; ++c) out.push_back({a, b, c});
    return out;
}

} // namespace detail

/// All tiles containing α (closed), searched over the lattice window each family's vertex
/// offsets allow: a base coordinate differs from α_r by at most one unit.
inline std::vector<TileHit> containing_tiles(const Vec6& a)
{
    if (sum(a) != 1) throw std::invalid_argument("classify: alpha must sum to 1");
    std::vector<TileHit> hits;
    auto consider = [&](const Tile& t) {
        TileGeometry g = tile_geometry(t);
        if (!contains(g, a)) return;
        TileHit h;
        h.tile = t;
        h.face_dim = face_dimension(g, a);
        tile_zeta_table(t, a, h);
        hits.push_back(std::move(h));
    };
    const Rational m1(-1), m12(-1, 2), z(0), p12(1, 2), p1(1), two(2);
    for (bool hs : {false, true}) {
        // Vertex offsets from the base: P_I in [0,1], hat P_I in [-1,0], P_II and P_III in [-1/2,1], hat P_III in [-1,1/2].
        detail::for_each_base(a, m1, z, hs, z, [&](const Vec6& b) { consider({Family::I, b, {}, {}}); });
        detail::for_each_base(a, z, p1, hs, two, [&](const Vec6& b) { consider({Family::I_hat, b, {}, {}}); });
        detail::for_each_base(a, m1, p12, hs, z, [&](const Vec6& b) {
            for (int ax = 0; ax < 6; ++ax) consider({Family::II, b, ax, {}});
        });
    }
    const auto subsets = detail::three_subsets();
    detail::for_each_base(a, m1, p12, false, z, [&](const Vec6& b) {
        for (const auto& s : subsets) consider({Family::III, b, {}, s});
    });
    detail::for_each_base(a, m12, p1, false, two, [&](const Vec6& b) {
        for (const auto& s : subsets) consider({Family::III_hat, b, {}, s});
    });
    return hits;
}

inline bool in_intervals(const std::vector<ZetaInterval>& ivs, const Rational& z)
{
    return std::any_of(ivs.begin(), ivs.end(), [&](const ZetaInterval& iv) { return iv.contains(z); });
}

inline TileAssignment classify(const Vec6& a)
{
    TileAssignment out;
    out.alpha = a;
    out.tiles = containing_tiles(a);
    if (out.tiles.empty()) throw std::logic_error("classify: no tile contains alpha; the tiling search is broken");
    for (const auto& h : out.tiles) out.correct_zetas.push_back(h.correct_zeta);
    std::sort(out.correct_zetas.begin(), out.correct_zetas.end());
    out.correct_zetas.erase(std::unique(out.correct_zetas.begin(), out.correct_zetas.end()), out.correct_zetas.end());
    out.correct_zeta = out.correct_zetas.front();
    out.extrema = fob_extrema_exact(a);
    // Any correct ζ that is extremal decides the kind; minima take precedence.
    out.limit_kind = LimitKind::one_sided;
    for (const auto& z : out.correct_zetas)
        if (in_intervals(out.extrema.minima, z)) {
            out.limit_kind = LimitKind::integral_at_min;
            return out;
        }
    for (const auto& z : out.correct_zetas)
        if (in_intervals(out.extrema.maxima, z)) out.limit_kind = LimitKind::series_at_max;
    return out;
}

inline TileAssignment classify(const BalancedVector& a) { return classify(a.alpha); }

/// α_r, α_r ± α_s all avoid (1/2)Z, so α lies on no facet hyperplane of any tile.
inline bool is_generic_for_tiling(const Vec6& a)
{
    for (int r = 0; r < 6; ++r) {
        if (is_half_integer_lattice(a[r])) return false;
        for (int s = r + 1; s < 6; ++s)
            if (is_half_integer_lattice(a[r] + a[s]) || is_half_integer_lattice(a[r] - a[s])) return false;
    }
    return true;
}

/// Random balanced α with α_1..α_5 of denominator `den` in [-range, range].
inline Vec6 random_balanced(std::mt19937_64& rng, long den = 997, long range = 2)
{
    std::uniform_int_distribution<long> d(-range * den, range * den);
    Vec6 a;
    Rational s = 0;
    for (int r = 0; r < 5; ++r) {
        a[r] = rat(d(rng), den);
        s += a[r];
    }
    a[5] = 1 - s;
    return a;
}

inline Vec6 random_generic_balanced(std::mt19937_64& rng)
{
    for (;;) {
        Vec6 a = random_balanced(rng);
        if (is_generic_for_tiling(a)) return a;
    }
}

struct CoverViolation {
    std::size_t index;
    Vec6 alpha;
    std::size_t interior_hits;
    std::size_t total_hits;
};

struct CoverReport {
    std::size_t samples = 0, unique_interior = 0;
    std::size_t fob_zero = 0, sob_trivial = 0;
    std::vector<CoverViolation> violations;
    /// Samples whose correct-ζ monomial is not trivial, by tile family.
    std::vector<std::pair<std::string, std::size_t>> nontrivial_sob_by_family;
};

struct CoverSample {
    Vec6 alpha;
    TileAssignment assignment;
    bool unique_interior = false;
    bool fob_zero = false;
    bool sob_trivial = false;
};

inline CoverSample cover_sample(const Vec6& a)
{
    CoverSample s;
    s.alpha = a;
    s.assignment = classify(a);
    std::size_t interior = 0;
    for (const auto& h : s.assignment.tiles)
        if (h.face_dim == 5) ++interior;
    s.unique_interior = interior == 1 && s.assignment.tiles.size() == 1;
    s.fob_zero = fob(a, s.assignment.correct_zeta) == 0;
    s.sob_trivial = sob_exponents(a, s.assignment.correct_zeta).is_trivial();
    return s;
}

/// Seed-indexed draws: sample i uses its own generator seeded from (seed, i), so
/// results do not depend on how samples are partitioned across workers.
inline Vec6 cover_draw(std::uint64_t seed, std::size_t i)
{
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32), static_cast<std::uint32_t>(i),
                      static_cast<std::uint32_t>(static_cast<std::uint64_t>(i) >> 32)};
    std::mt19937_64 rng(seq);
    return random_generic_balanced(rng);
}

inline CoverReport summarize_cover(const std::vector<CoverSample>& samples)
{
    CoverReport rep;
    rep.samples = samples.size();
    for (std::size_t i = 0; i < samples.size(); ++i) {
        const auto& s = samples[i];
        if (s.unique_interior) {
            ++rep.unique_interior;
        } else {
            std::size_t interior = 0;
            for (const auto& h : s.assignment.tiles)
                if (h.face_dim == 5) ++interior;
            rep.violations.push_back({i, s.alpha, interior, s.assignment.tiles.size()});
        }
        if (s.fob_zero) ++rep.fob_zero;
        if (s.sob_trivial) {
            ++rep.sob_trivial;
        } else {
            std::string fam = family_name(s.assignment.tiles.front().tile.family);
            auto it = std::find_if(rep.nontrivial_sob_by_family.begin(), rep.nontrivial_sob_by_family.end(),
                                   [&](const auto& p) { return p.first == fam; });
            if (it == rep.nontrivial_sob_by_family.end())
                rep.nontrivial_sob_by_family.push_back({fam, 1});
            else
                ++it->second;
        }
    }
    return rep;
}

inline CoverReport verify_cover(std::size_t count, std::uint64_t seed)
{
    std::vector<CoverSample> samples;
    samples.reserve(count);
    for (std::size_t i = 0; i < count; ++i) samples.push_back(cover_sample(cover_draw(seed, i)));
    return summarize_cover(samples);
}

} // namespace qlimit
