// Acceptance run: one PASS/FAIL line per criterion, nonzero exit if any fails.

#include <qlimit/qlimit.hpp>

#include <chrono>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <string>

using namespace qlimit;

namespace {

using Clock = std::chrono::steady_clock;

struct Outcome {
    bool pass = true;
    std::string detail;
};

double rel(cplx a, cplx b) { return std::abs(a - b) / std::max(std::abs(b), 1e-300); }

cplx polar_draw(std::mt19937_64& rng, double lo, double hi)
{
    std::uniform_real_distribution<double> r(lo, hi), a(-3.14159, 3.14159);
    return std::polar(r(rng), a(rng));
}

std::string fmt(const char* f, double x)
{
    char buf[64];
    std::snprintf(buf, sizeof buf, f, x);
    return buf;
}

double seconds_since(Clock::time_point t) { return std::chrono::duration<double>(Clock::now() - t).count(); }

// 1 -------------------------------------------------------------------------------------------
Outcome beta_evaluation()
{
    std::mt19937_64 rng(101);
    double worst = 0, slowest = 0;
    int max_nodes = 0, bad = 0;
    for (int i = 0; i < 100; ++i) {
        IntegrandSpec s = random_beta_spec(rng);
        const auto t0 = Clock::now();
        BetaResult b = beta_eval(s);
        const double dt = seconds_since(t0);
        worst = std::max(worst, b.rel_err);
        slowest = std::max(slowest, dt);
        max_nodes = std::max(max_nodes, b.nodes);
        bad += !(b.rel_err < 1e-9 && b.nodes <= 4096 && dt < 1.0);
    }
    return {bad == 0, "100 draws, max rel_err " + fmt("%.2e", worst) + ", max N " + std::to_string(max_nodes) +
                          ", slowest " + fmt("%.3f", slowest) + " s"};
}

// 2 -------------------------------------------------------------------------------------------
Outcome kernel_equations()
{
    std::mt19937_64 rng(202);
    double worst = 0;
    const int n = 1000;
    auto track = [&](cplx a, cplx b) { worst = std::max(worst, rel(a, b)); };
    for (int i = 0; i < n; ++i) {
        const cplx p = polar_draw(rng, 0.05, 0.6), q = polar_draw(rng, 0.05, 0.6);
        const cplx z = polar_draw(rng, 0.3, 2.0), x = polar_draw(rng, 0.3, 2.0);
        track(ell_gamma(z, p, q) * ell_gamma(p * q / z, p, q), 1.0);
        track(ell_gamma(p * z, p, q), theta(z, q) * ell_gamma(z, p, q));
        track(ell_gamma(q * z, p, q), theta(z, p) * ell_gamma(z, p, q));
        track(ell_gamma(z, q, p), ell_gamma(z, p, q));
        track(theta(q / x, q), theta(x, q));
        track(theta(q * x, q), -theta(x, q) / x);
    }
    return {worst < 1e-12, "6 equations x 1000 points, max rel err " + fmt("%.2e", worst)};
}

// 3 -------------------------------------------------------------------------------------------
Outcome residue_suite()
{
    std::mt19937_64 rng(303);
    double numeric_worst = 0;
    std::array<double, 4> sym_worst{};
    for (int i = 0; i < 100; ++i) {
        IntegrandSpec s = random_beta_spec(rng);
        const int k = i % 3;
        // Closed form against a small circle around one pole per draw.
        const PoleRef probe{i % 6, i % 2, (i / 2) % 2, i % 3 != 0};
        const cplx z0 = pole_location(s, probe);
        const double spacing = std::abs(z0) * std::min(std::abs(s.q), std::abs(s.p));
        const cplx numeric = residue_numeric([&](cplx z) { return integrand(s, z); }, z0, 1e-3 * spacing);
        numeric_worst = std::max(numeric_worst, rel(residue_at(s, probe), numeric));

        const PoleRef base{1, k, 0, true};
        const cplx a = pole_location(s, base);
        const cplx r0 = residue_at(s, base);
        IntegrandSpec b = s;
        b.broken = std::array<cplx, 3>{polar_draw(rng, 0.5, 1.2), polar_draw(rng, 0.5, 1.2), polar_draw(rng, 0.5, 1.2)};
        const auto& w = *b.broken;
        sym_worst[0] = std::max(sym_worst[0], rel(residue_at(b, base), sb_factor(w[0], w[1], w[2], a, s.q) * r0));
        sym_worst[1] = std::max(sym_worst[1], rel(residue_at(s, PoleRef{1, k, 0, false}), -r0));
        sym_worst[2] = std::max(sym_worst[2], rel(residue_at(s, PoleRef{1, k, 1, true}), integrand_p_ratio(s, a) * r0));
        IntegrandSpec t = s;
        if (i % 2 == 0) {
            t.t[1] /= s.p;
            t.t[4] *= s.p;
            const cplx ratio = integrand_shift_ratio(s, {0, -1, 0, 0, 1, 0}, a);
            sym_worst[3] = std::max(sym_worst[3], rel(residue_at(t, PoleRef{1, k, 1, true}), ratio * r0));
        } else {
            // Half-integer shift paired with z -> z p^½.
            const cplx h = std::sqrt(s.p);
            const std::array<int, 6> twice{1, -1, 1, -1, 1, -1};
            Scaled ratio;
            for (int r = 0; r < 6; ++r) {
                t.t[r] *= twice[r] > 0 ? h : 1.0 / h;
                ratio *= gamma_p_shift_ratio((twice[r] + 1) / 2, s.t[r] * a, s.p, s.q);
                ratio *= gamma_p_shift_ratio((twice[r] - 1) / 2, s.t[r] / a, s.p, s.q);
            }
            ratio *= detail::inverse_gamma_square(a * h, s.p, s.q);
            ratio /= detail::inverse_gamma_square(a, s.p, s.q);
            sym_worst[3] = std::max(sym_worst[3], rel(residue_at(t, PoleRef{1, k, 1, true}), ratio.value() * r0));
        }
    }
    bool ok = numeric_worst < 1e-10;
    std::string d = "closed vs numeric " + fmt("%.2e", numeric_worst) + "; symmetries";
    for (double x : sym_worst) {
        ok = ok && x < 1e-10;
        d += " " + fmt("%.2e", x);
    }
    return {ok, d + " (100 draws each)"};
}

// 4 -------------------------------------------------------------------------------------------
Outcome contour_shift()
{
    std::mt19937_64 rng(404);
    const std::vector<std::array<double, 6>> patterns{
        {-0.5, 0, 0, 0.5, 0.5, 0.5}, {-1, 0, 0.5, 0.5, 0.5, 0.5}, {-1.5, 0, 0.5, 0.5, 0.5, 1}};
    double worst = 0;
    int runs = 0, failures = 0;
    for (const auto& alpha : patterns)
        for (int i = 0; i < 20; ++i) {
            const cplx p = polar_draw(rng, 0.01, 0.05), q = polar_draw(rng, 0.2, 0.4);
            IntegrandSpec s;
            s.p = p;
            s.q = q;
            std::array<cplx, 6> u;
            cplx prod = 1.0;
            for (int r = 0; r < 5; ++r) prod *= u[r] = polar_draw(rng, 0.5, 0.9);
            u[5] = q / prod;
            for (int r = 0; r < 6; ++r) s.t.push_back(u[r] * std::exp(alpha[r] * std::log(p)));
            double rho = 1.0;
            for (int attempt = 0;; ++attempt) {
                try {
                    ContourShiftReport r = contour_shift_check(s, rho);
                    worst = std::max(worst, r.rel_err);
                    ++runs;
                    break;
                } catch (const ContourError& e) {
                    if (attempt > 4) {
                        ++failures;
                        break;
                    }
                    rho = e.suggested_radius;
                } catch (const std::exception&) {
                    ++failures;
                    break;
                }
            }
        }
    return {failures == 0 && worst < 1e-8,
            "3 patterns x 20 draws, " + std::to_string(runs) + " evaluated, max rel err " + fmt("%.2e", worst)};
}

// 5 -------------------------------------------------------------------------------------------
Outcome fob_invariance()
{
    std::mt19937_64 rng(505);
    std::uniform_int_distribution<int> d(-1500, 1500);
    std::uniform_int_distribution<long> w(-3, 3);
    long checks = 0, mismatches = 0;
    for (int i = 0; i < 1000; ++i) {
        PointAZ v;
        Rational s = 0;
        for (int r = 0; r < 5; ++r) s += v.alpha[r] = rat(d(rng), 499);
        v.alpha[5] = 1 - s;
        v.zeta = rat(d(rng), 503);
        const Rational f = fob(v);
        auto same = [&](const PointAZ& x, const Rational& want) {
            ++checks;
            mismatches += fob(x) != want;
        };
        for (int j = 0; j < 6; ++j) {
            same(reflect(simple_root(j), v), f);
            same(translate(simple_root(j), v), f);
        }
        PointAZ z = v;
        z.zeta = -v.zeta;
        same(z, f);
        z.zeta = v.zeta + 1;
        same(z, f);
        std::array<long, 6> ww{};
        long t = 0;
        for (int r = 0; r < 5; ++r) t += ww[r] = w(rng);
        ww[5] = 2 - t;
        same(negating_reflection(ww, v), -f);
    }
    return {mismatches == 0, std::to_string(checks) + " exact comparisons, " + std::to_string(mismatches) + " mismatches"};
}

// 6 -------------------------------------------------------------------------------------------
Outcome tiling_cover()
{
    CoverReport r = verify_cover(1000, 606);
    const bool ok = r.samples == 1000 && r.unique_interior == r.samples && r.fob_zero == r.samples &&
                    r.sob_trivial == r.samples && r.violations.empty();
    std::string d = std::to_string(r.unique_interior) + "/1000 unique interior tile, " + std::to_string(r.fob_zero) +
                    " fob = 0, " + std::to_string(r.sob_trivial) + " trivial sob";
    for (const auto& [fam, n] : r.nontrivial_sob_by_family) d += "; non-trivial sob on " + fam + ": " + std::to_string(n);
    return {ok, d};
}

// 7 -------------------------------------------------------------------------------------------
Vec6 random_sorted_generic(std::mt19937_64& rng)
{
    std::uniform_int_distribution<int> d(-1200, 1800);
    for (;;) {
        Vec6 a;
        Rational s = 0;
        for (int r = 0; r < 5; ++r) s += a[r] = rat(d(rng), 1999);
        a[5] = 1 - s;
        std::sort(a.begin(), a.end(), [](const Rational& x, const Rational& y) { return x > y; });
        if (is_sorted_domain(a) && is_generic_pairs(a)) return a;
    }
}

/// Every grid extremizer lies within one step of a tabulated global extremum, and the
/// tabulated value is at least as extreme as the whole grid.
bool scan_confirms(const Vec6& a, const ExtremaReport& e)
{
    const Rational step(1, 1024);
    std::vector<Rational> vals;
    for (int k = 0; k <= 512; ++k) vals.push_back(fob(a, step * k));
    const Rational gmin = *std::min_element(vals.begin(), vals.end()), gmax = *std::max_element(vals.begin(), vals.end());
    auto near = [&](const Rational& z, const std::vector<ZetaInterval>& ivs, const std::vector<std::size_t>& idx) {
        for (std::size_t i : idx)
            if (z >= ivs[i].lo - step && z <= ivs[i].hi + step) return true;
        return false;
    };
    for (int k = 0; k <= 512; ++k) {
        if (vals[k] == gmin && !near(step * k, e.minima, e.global_min)) return false;
        if (vals[k] == gmax && !near(step * k, e.maxima, e.global_max)) return false;
    }
    return fob(a, e.minima[e.global_min[0]].lo) <= gmin && fob(a, e.maxima[e.global_max[0]].lo) >= gmax;
}

Outcome extrema_table()
{
    std::mt19937_64 rng(707);
    std::array<int, 5> count{}, bad{};
    long draws = 0;
    while (*std::min_element(count.begin() + 1, count.end()) < 200 && draws < 5'000'000) {
        ++draws;
        const Vec6 a = random_sorted_generic(rng);
        const ExtremaReport e = fob_extrema(a);
        if (e.table_row < 1 || count[e.table_row] >= 200) continue;
        ++count[e.table_row];
        bad[e.table_row] += !scan_confirms(a, e);
    }
    bool ok = true;
    std::string d;
    for (int row = 1; row <= 4; ++row) {
        ok = ok && count[row] == 200 && bad[row] == 0;
        d += "row " + std::to_string(row) + ": " + std::to_string(count[row] - bad[row]) + "/" + std::to_string(count[row]) +
             (row < 4 ? ", " : "");
    }
    return {ok, d};
}

// 8 -------------------------------------------------------------------------------------------
Outcome catalog_sweep()
{
    const auto t0 = Clock::now();
    int entries_checked = 0, failures = 0;
    std::string first_failure;
    double worst = 0;
    for (const auto& e : entries()) {
        ++entries_checked;
        for (std::uint64_t i = 0; i < 20; ++i) {
            try {
                IdentityReport r = verify(e.id, sample_seed(808, i));
                worst = std::max(worst, r.rel_err / r.tolerance);
                if (!r.pass) {
                    ++failures;
                    if (first_failure.empty()) first_failure = e.id;
                }
            } catch (const std::exception& ex) {
                ++failures;
                if (first_failure.empty()) first_failure = e.id + " (" + ex.what() + ")";
            }
        }
    }
    const double dt = seconds_since(t0);
    std::string d = std::to_string(entries_checked) + " entries x 20 draws, " + std::to_string(failures) +
                    " failures, worst rel_err/tolerance " + fmt("%.2e", worst) + ", " + fmt("%.1f", dt) + " s";
    if (!first_failure.empty()) d += ", first failure " + first_failure;
    return {failures == 0 && dt < 300, d};
}

// 9 -------------------------------------------------------------------------------------------
Outcome limit_traces()
{
    bool ok = true;
    std::string d;
    for (const char* a : {"0,0,0,0,1/2,1/2", "-1/2,0,0,1/2,1/2,1/2", "-3/2,0,1/2,1/2,1/2,1"}) {
        TraceReport r = trace(BalancedVector(parse_vec6(a)), 0.3, 0.35, 8);
        ok = ok && r.errors.size() <= 8 && r.final_error < 1e-6 && r.eventually_decreasing;
        d += std::string(d.empty() ? "" : "; ") + "(" + a + ") final " + fmt("%.2e", r.final_error) +
             (r.eventually_decreasing ? "" : " not decreasing");
    }
    return {ok, d};
}

// 10 ------------------------------------------------------------------------------------------
Outcome boundedness()
{
    std::mt19937_64 rng(1010);
    std::uniform_int_distribution<int> d(-36, 36);
    double worst = 0;
    int diverging = 0;
    for (int i = 0; i < 20; ++i) {
        const Rational a = rat(d(rng), 12);
        const cplx z = polar_draw(rng, 0.8, 1.25), x = polar_draw(rng, 0.5, 1.5);
        BoundednessReport r = boundedness_band(a, z, x, 0.3);
        worst = std::max(worst, r.band_ratio);
        diverging += r.diverging();
    }
    return {worst < 1e3 && diverging == 0,
            "20 (alpha, z), v <= 40, max band ratio " + fmt("%.2f", worst) + ", " + std::to_string(diverging) + " diverging"};
}

} // namespace

int main()
{
    const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria{
        {"elliptic beta evaluation", beta_evaluation},
        {"kernel functional equations", kernel_equations},
        {"residue suite", residue_suite},
        {"contour-shift decomposition", contour_shift},
        {"exact fob invariance", fob_invariance},
        {"tiling cover", tiling_cover},
        {"extrema table", extrema_table},
        {"identity catalog", catalog_sweep},
        {"limit traces", limit_traces},
        {"boundedness", boundedness},
    };
    int failed = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        Outcome o;
        try {
            o = criteria[i].second();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        failed += !o.pass;
        std::printf("%s criterion %zu: %s: %s\n", o.pass ? "PASS" : "FAIL", i + 1, criteria[i].first, o.detail.c_str());
        std::fflush(stdout);
    }
    return failed == 0 ? 0 : 1;
}
