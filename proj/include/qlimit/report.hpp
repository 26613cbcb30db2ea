#pragma once

// JSON records for reports. Rationals travel as "a/b" strings and complex numbers as [re, im].

#include "catalog.hpp"
#include "tiling.hpp"
#include "weyl.hpp"

#include <json.hpp>

#include <string>
#include <vector>

namespace qlimit {

using json = nlohmann::json;

inline json to_json_value(cplx z) { return json::array({z.real(), z.imag()}); }
inline json to_json_value(const Rational& r) { return to_string(r); }

inline json to_json_value(const Vec6& a)
{
    json out = json::array();
    for (const auto& r : a) out.push_back(to_string(r));
    return out;
}

template <std::size_t N>
json to_json_value(const std::array<cplx, N>& a)
{
    json out = json::array();
    for (cplx z : a) out.push_back(to_json_value(z));
    return out;
}

inline json to_json_value(const std::vector<cplx>& a)
{
    json out = json::array();
    for (cplx z : a) out.push_back(to_json_value(z));
    return out;
}

inline json to_json_value(const MonomialExponents& m)
{
    return {{"x_exp", to_string(m.x_exp)}, {"z_exp", to_string(m.z_exp)}, {"q_exp", to_string(m.q_exp)},
            {"u_exp", to_json_value(m.u_exp)}, {"sign", m.sign}, {"at_breakpoint", m.at_breakpoint},
            {"trivial", m.is_trivial()}};
}

inline json to_json_value(const std::vector<ZetaInterval>& ivs)
{
    json out = json::array();
    for (const auto& iv : ivs) out.push_back(json::array({to_string(iv.lo), to_string(iv.hi)}));
    return out;
}

inline json to_json_value(const ExtremaReport& e)
{
    return {{"min_zeta", to_json_value(e.minima)}, {"max_zeta", to_json_value(e.maxima)},
            {"global_min", e.global_min}, {"global_max", e.global_max}, {"table_row", e.table_row}};
}

inline json to_json_value(const Tile& t)
{
    json out{{"family", family_name(t.family)}, {"base", to_json_value(t.base)}};
    out["axis"] = t.axis ? json(*t.axis + 1) : json(nullptr);
    if (t.subset) {
        out["subset"] = json::array({(*t.subset)[0] + 1, (*t.subset)[1] + 1, (*t.subset)[2] + 1});
    } else {
        out["subset"] = nullptr;
    }
    return out;
}

inline json to_json_value(const TileAssignment& a)
{
    json tiles = json::array();
    for (const auto& h : a.tiles) {
        json t = to_json_value(h.tile);
        t["face_dim"] = h.face_dim;
        t["correct_zeta"] = to_string(h.correct_zeta);
        tiles.push_back(t);
    }
    json zs = json::array();
    for (const auto& z : a.correct_zetas) zs.push_back(to_string(z));
    return {{"alpha", to_json_value(a.alpha)},
            {"tiles", tiles},
            {"correct_zeta", to_string(a.correct_zeta)},
            {"correct_zetas", zs},
            {"limit_kind", limit_kind_name(a.limit_kind)},
            {"extrema", to_json_value(a.extrema)}};
}

inline json to_json_value(const Draw& d)
{
    return {{"q", to_json_value(d.q)}, {"t", to_json_value(d.t)}, {"u", to_json_value(d.u)},
            {"x", to_json_value(d.x)}, {"w", to_json_value(d.w)}, {"v", to_json_value(d.v)}};
}

/// elapsed is wall time and therefore the only field that varies between identical runs.
inline json to_json_value(const IdentityReport& r)
{
    return {{"id", r.id},
            {"draw_seed", r.draw_seed},
            {"draw", to_json_value(r.draw)},
            {"lhs", to_json_value(r.lhs)},
            {"rhs", to_json_value(r.rhs)},
            {"abs_err", r.abs_err},
            {"rel_err", r.rel_err},
            {"terms_used", r.terms_used},
            {"quadrature_N", r.quadrature_n},
            {"elapsed", r.elapsed},
            {"attempts", r.attempts},
            {"condition", r.condition},
            {"tolerance", r.tolerance},
            {"display_corrected", r.display_corrected},
            {"pass", r.pass}};
}

inline json to_json_value(const TraceReport& r)
{
    json values = json::array();
    for (cplx z : r.values) values.push_back(to_json_value(z));
    return {{"alpha", to_json_value(r.alpha)},
            {"x", to_json_value(r.x)},
            {"q", to_json_value(r.q)},
            {"zeta", to_string(r.zeta)},
            {"recipe", r.recipe},
            {"sob", to_json_value(r.sob)},
            {"step", r.step},
            {"step_exponents", r.step_exponents},
            {"values", values},
            {"target", to_json_value(r.target)},
            {"errors", r.errors},
            {"notes", r.notes},
            {"eventually_decreasing", r.eventually_decreasing},
            {"final_error", r.final_error}};
}

inline json to_json_value(const CoverReport& r)
{
    json viol = json::array();
    for (const auto& v : r.violations)
        viol.push_back({{"index", v.index}, {"alpha", to_json_value(v.alpha)}, {"interior_hits", v.interior_hits},
                        {"total_hits", v.total_hits}});
    json fam = json::object();
    for (const auto& [name, n] : r.nontrivial_sob_by_family) fam[name] = n;
    return {{"samples", r.samples},       {"unique_interior", r.unique_interior}, {"fob_zero", r.fob_zero},
            {"sob_trivial", r.sob_trivial}, {"violations", viol},                 {"nontrivial_sob_by_family", fam}};
}

inline json to_json_value(const PointAZ& p) { return {{"alpha", to_json_value(p.alpha)}, {"zeta", to_string(p.zeta)}}; }

inline json to_json_value(const Reduction& r)
{
    return {{"point", to_json_value(r.point)}, {"word", r.word}, {"sign", r.sign}};
}

inline json to_json_value(const BetaResult& b)
{
    return {{"lhs", to_json_value(b.lhs)}, {"rhs", to_json_value(b.rhs)}, {"rel_err", b.rel_err}, {"quadrature_N", b.nodes}};
}

/// One JSONL line.
inline std::string jsonl(const json& j) { return j.dump() + "\n"; }

} // namespace qlimit
