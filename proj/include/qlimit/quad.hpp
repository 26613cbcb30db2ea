#pragma once

#include "qkernel.hpp"
#include "rational.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <optional>
#include <random>
#include <string>
#include <vector>

namespace qlimit {

struct QuadOptions {
    double radius = 1.0;
    cplx center{0.0, 0.0};
    int n_min = 32;
    int n_max = 1 << 16;
    /// Successive doublings must agree to rel_tol times the mean node magnitude.
    double rel_tol = 1e-15;
};

struct QuadResult {
    cplx value;
    int nodes = 0;
    double scale = 0; ///< mean |f| over the final nodes
};

/// (1/2πi)∮ f(z) dz/(z - center) over |z - center| = radius by the trapezoid rule with
/// node doubling. For center 0 this is the mean of f on the circle.
template <class F>
QuadResult circle_integral(F&& f, const QuadOptions& opt = {})
{
    if (opt.n_min < 4) throw DomainError("circle_integral: need at least 4 nodes");
    const double two_pi = 2.0 * std::numbers::pi;
    CompensatedSum sum;
    double abs_sum = 0;
    auto node = [&](int j, int n) {
        const double phi = two_pi * j / n;
        cplx v = f(opt.center + opt.radius * std::polar(1.0, phi));
        if (!std::isfinite(v.real()) || !std::isfinite(v.imag()))
            throw AccuracyError("circle_integral: non-finite integrand value");
        sum.add(v);
        abs_sum += std::abs(v);
    };
    int n = opt.n_min;
    for (int j = 0; j < n; ++j) node(j, n);
    cplx prev = sum.value() / double(n);
    while (n < opt.n_max) {
        // Doubling: the new nodes are the odd ones of the 2n-grid.
        for (int j = 1; j < 2 * n; j += 2) node(j, 2 * n);
        n *= 2;
        cplx cur = sum.value() / double(n);
        double scale = abs_sum / n;
        if (std::abs(cur - prev) <= opt.rel_tol * std::max(scale, 1e-300) || std::abs(cur - prev) == 0.0)
            return {cur, n, scale};
        prev = cur;
    }
    throw AccuracyError("circle_integral: no convergence with " + std::to_string(opt.n_max) + " nodes");
}

/// Fixed-N trapezoid value; used for convergence-rate checks.
template <class F>
cplx circle_mean_fixed(F&& f, int n, double radius = 1.0)
{
    CompensatedSum sum;
    for (int j = 0; j < n; ++j) sum.add(f(radius * std::polar(1.0, 2.0 * std::numbers::pi * j / n)));
    return sum.value() / double(n);
}

/// Residue of g(z)/z at z0 from a small circle; oracle for the closed forms.
/// Near the pole a factor 1 - z/z0 loses digits in proportion to 1/radius, hence the looser default.
template <class F>
cplx residue_numeric(F&& g, cplx z0, double radius, double rel_tol = 1e-13)
{
    QuadOptions opt;
    opt.center = z0;
    opt.radius = radius;
    opt.rel_tol = rel_tol;
    // Res = (1/2πi)∮ g(z)/z dz = mean over the circle of g(z)/z · (z - z0).
    auto h = [&](cplx z) { return g(z) / z * (z - z0); };
    return circle_integral(h, opt).value;
}

/// Parameters of the integrand with 2m+6 elliptic gamma pairs.
struct IntegrandSpec {
    int m = 0;
    std::vector<cplx> t;
    cplx p, q;
    /// Symmetry-breaking triple (w1,w2,w3).
    std::optional<std::array<cplx, 3>> broken;

    void validate(double balance_tol = 1e-12) const
    {
        require_nome(p, "integrand");
        require_nome(q, "integrand");
        if (m < 0 || t.size() != static_cast<std::size_t>(2 * m + 6))
            throw DomainError("integrand: expected 2m+6 parameters");
        cplx prod = 1.0, target = 1.0;
        for (cplx x : t) prod *= x;
        for (int i = 0; i <= m; ++i) target *= p * q;
        if (std::abs(prod - target) > balance_tol * std::abs(target))
            throw DomainError("integrand: balancing condition violated");
        if (broken) {
            const auto& w = *broken;
            for (int i = 0; i < 3; ++i)
                for (int j = i + 1; j < 3; ++j)
                    if (std::abs(theta(w[i] * w[j], q)) < 1e-12)
                        throw DomainError("symmetry breaking: theta(w_i w_j;q) vanishes (degenerate specialization)");
        }
    }
};

/// θ(s1z,s2z,s3z,s1s2s3/z;q)/θ(z²,s1s2,s1s3,s2s3;q); sums with its z -> 1/z image to 1.
inline Scaled sb_factor_scaled(cplx s1, cplx s2, cplx s3, cplx z, cplx q)
{
    for (cplx a : {s1 * s2, s1 * s3, s2 * s3})
        if (std::abs(theta(a, q)) < 1e-12) throw DomainError("sb_factor: theta(s_i s_j;q) vanishes (degenerate specialization)");
    Scaled den = thetas_scaled({s1 * s2, s1 * s3, s2 * s3}, q);
    Scaled num = thetas_scaled({s1 * z, s2 * z, s3 * z, s1 * s2 * s3 / z}, q);
    num /= den;
    num /= theta_scaled(z * z, q);
    return num;
}

inline cplx sb_factor(cplx s1, cplx s2, cplx s3, cplx z, cplx q) { return sb_factor_scaled(s1, s2, s3, z, q).value(); }

namespace detail {

/// 1/Γ(z^{±2};p,q) = θ(z²;q) θ(z^{-2};p).
inline Scaled inverse_gamma_square(cplx z, cplx p, cplx q)
{
    Scaled s = theta_scaled(z * z, q);
    s *= theta_scaled(1.0 / (z * z), p);
    return s;
}

/// Which elliptic gamma factor to leave out: Γ(t_r/z) (inner) or Γ(t_r z) (outer).
enum class Skip { none, inner, outer };

inline Scaled integrand_core(const IntegrandSpec& s, cplx z, int skip_r, Skip skip)
{
    Scaled v;
    if (s.broken) {
        // θ(z²;q) of 1/Γ(z^{±2}) cancels against the sb denominator.
        const auto& w = *s.broken;
        v = thetas_scaled({w[0] * z, w[1] * z, w[2] * z, w[0] * w[1] * w[2] / z}, s.q);
        v /= thetas_scaled({w[0] * w[1], w[0] * w[2], w[1] * w[2]}, s.q);
        v *= theta_scaled(1.0 / (z * z), s.p);
    } else {
        v = inverse_gamma_square(z, s.p, s.q);
    }
    for (std::size_t r = 0; r < s.t.size(); ++r) {
        const bool this_r = static_cast<int>(r) == skip_r;
        if (!(this_r && skip == Skip::outer)) v *= ell_gamma_scaled(s.t[r] * z, s.p, s.q);
        if (!(this_r && skip == Skip::inner)) v *= ell_gamma_scaled(s.t[r] / z, s.p, s.q);
    }
    return v;
}

} // namespace detail

/// I(z) = ∏Γ(t_r z^{±1})/Γ(z^{±2}), times sb(w;z) when broken.
inline Scaled integrand_scaled(const IntegrandSpec& s, cplx z) { return detail::integrand_core(s, z, -1, detail::Skip::none); }

inline cplx integrand(const IntegrandSpec& s, cplx z) { return integrand_scaled(s, z).value(); }

/// Constant in front of ∮: (p;p)(q;q)/2 symmetric, (p;p)(q;q) broken.
inline Scaled integral_prefactor(const IntegrandSpec& s)
{
    Scaled c = qpoch_inf_scaled(s.p, s.p);
    c *= qpoch_inf_scaled(s.q, s.q);
    if (!s.broken) c *= cplx(0.5);
    return c;
}

/// ∏_{r<s} Γ(t_r t_s): the value of the normalized m = 0 integral.
inline Scaled beta_rhs_scaled(const IntegrandSpec& s)
{
    if (s.m != 0) throw DomainError("beta evaluation is only known for m = 0");
    Scaled v;
    for (std::size_t r = 0; r < s.t.size(); ++r)
        for (std::size_t u = r + 1; u < s.t.size(); ++u) v *= ell_gamma_scaled(s.t[r] * s.t[u], s.p, s.q);
    return v;
}

struct BetaResult {
    cplx lhs, rhs;
    int nodes = 0;
    double rel_err = 0;
};

/// Both sides of the evaluation on the unit circle. Requires |t_r| < 1.
inline BetaResult beta_eval(const IntegrandSpec& s, const QuadOptions& opt = {})
{
    s.validate();
    if (s.m != 0) throw DomainError("beta_eval: m must be 0");
    for (std::size_t r = 0; r < s.t.size(); ++r)
        if (!(std::abs(s.t[r]) < 1.0))
            throw DomainError("beta_eval: unit circle is not a valid contour, |t_" + std::to_string(r + 1) + "| >= 1");
    auto f = [&](cplx z) { return integrand(s, z); };
    QuadResult qr = circle_integral(f, opt);
    BetaResult out;
    out.lhs = (integral_prefactor(s) * Scaled(qr.value)).value();
    out.rhs = beta_rhs_scaled(s).value();
    out.nodes = qr.nodes;
    out.rel_err = std::abs(out.lhs - out.rhs) / std::max(std::abs(out.rhs), 1e-300);
    return out;
}

/// Random m = 0 parameters with |p|,|q| in [0.1,0.35], |t_r| <= 0.8 and t_6 fixed by balancing.
inline IntegrandSpec random_beta_spec(std::mt19937_64& rng)
{
    std::uniform_real_distribution<double> nome(0.1, 0.35), mod(0.5, 0.8), ang(-std::numbers::pi, std::numbers::pi);
    for (;;) {
        IntegrandSpec s;
        s.p = std::polar(nome(rng), ang(rng));
        s.q = std::polar(nome(rng), ang(rng));
        cplx prod = 1.0;
        for (int r = 0; r < 5; ++r) {
            s.t.push_back(std::polar(mod(rng), ang(rng)));
            prod *= s.t.back();
        }
        const cplx t6 = s.p * s.q / prod;
        if (std::abs(t6) > 0.8 || std::abs(t6) < 0.05) continue;
        s.t.push_back(t6);
        return s;
    }
}

/// Pole of I(z)/z: inner z = t_r q^k p^l (from Γ(t_r/z)) or outer z = 1/(t_r q^k p^l).
struct PoleRef {
    int r = 0, k = 0, l = 0;
    bool inner = true;
};

inline cplx pole_location(const IntegrandSpec& s, const PoleRef& pr)
{
    cplx z = s.t[pr.r];
    for (int i = 0; i < pr.k; ++i) z *= s.q;
    for (int i = 0; i < pr.l; ++i) z *= s.p;
    return pr.inner ? z : 1.0 / z;
}

/// Closed-form residue of I(z)/z (including sb when broken), as Scaled.
inline Scaled residue_scaled(const IntegrandSpec& s, const PoleRef& pr)
{
    if (pr.r < 0 || pr.r >= static_cast<int>(s.t.size()) || pr.k < 0 || pr.l < 0)
        throw DomainError("residue_at: pole index out of range");
    const cplx z0 = pole_location(s, pr);
    Scaled rest;
    try {
        rest = detail::integrand_core(s, z0, pr.r, pr.inner ? detail::Skip::inner : detail::Skip::outer);
    } catch (const PoleError&) {
        throw DomainError("residue_at: pole is not simple (parameters not generic)");
    }
    // Γ(y) ~ R/(y - y0) with y = t_r/z or t_r z; chain rule gives ∓R p^l q^k.
    Scaled res = gamma_residue_scaled(pr.l, pr.k, s.p, s.q);
    for (int i = 0; i < pr.k; ++i) res *= s.q;
    for (int i = 0; i < pr.l; ++i) res *= s.p;
    if (pr.inner) res *= cplx(-1.0);
    res *= rest;
    return res;
}

inline cplx residue_at(const IntegrandSpec& s, const PoleRef& pr) { return residue_scaled(s, pr).value(); }

/// I(pz)/I(z) for the symmetric integrand, in closed form via the difference equations.
inline cplx integrand_p_ratio(const IntegrandSpec& s, cplx z)
{
    if (s.broken) throw DomainError("integrand_p_ratio: symmetric integrand only");
    // Γ(p t z)/Γ(t z) = θ(tz;q); Γ(t/(pz))/Γ(t/z) = 1/θ(t/(pz);q).
    Scaled v;
    for (cplx t : s.t) {
        v *= theta_scaled(t * z, s.q);
        v /= theta_scaled(t / (s.p * z), s.q);
    }
    v *= detail::inverse_gamma_square(s.p * z, s.p, s.q);
    v /= detail::inverse_gamma_square(z, s.p, s.q);
    return v.value();
}

/// Γ(p^n y)/Γ(y) for integer n as a theta product.
inline Scaled gamma_p_shift_ratio(long n, cplx y, cplx p, cplx q)
{
    Scaled v;
    cplx w = y;
    if (n >= 0) {
        for (long j = 0; j < n; ++j) {
            v *= theta_scaled(w, q);
            w *= p;
        }
    } else {
        for (long j = 1; j <= -n; ++j) {
            w /= p;
            v /= theta_scaled(w, q);
        }
    }
    return v;
}

/// I(t p^a; z)/I(t; z) for integer a with Σa = 0.
inline cplx integrand_shift_ratio(const IntegrandSpec& s, const std::vector<long>& a, cplx z)
{
    if (a.size() != s.t.size()) throw DomainError("integrand_shift_ratio: size mismatch");
    long total = 0;
    for (long x : a) total += x;
    if (total != 0) throw DomainError("integrand_shift_ratio: shift must preserve balancing");
    Scaled v;
    for (std::size_t r = 0; r < s.t.size(); ++r) {
        v *= gamma_p_shift_ratio(a[r], s.t[r] * z, s.p, s.q);
        v *= gamma_p_shift_ratio(a[r], s.t[r] / z, s.p, s.q);
    }
    return v.value();
}

struct PoleRecord {
    PoleRef pole;
    cplx location;
    cplx residue; ///< of the normalized integrand
};

struct ContourShiftReport {
    cplx lhs;          ///< normalized integral over the separating contour, from the evaluation
    cplx rhs;          ///< normalized circle integral plus crossed residues
    cplx circle_value; ///< normalized circle integral alone
    std::vector<PoleRecord> poles;
    int nodes = 0;
    double rel_err = 0;
};

/// A pole sits on or too near the requested circle.
struct ContourError : DomainError {
    double suggested_radius;
    ContourError(const std::string& msg, double r) : DomainError(msg), suggested_radius(r) {}
};

/// Relative width around a circle kept free of poles.
inline constexpr double kContourGuard = 2e-2;

/// Every inner pole outside |z| = rho and outer pole inside it; these separate C from the circle.
inline std::vector<PoleRef> crossed_poles(const IntegrandSpec& s, double rho, int max_index = 4000)
{
    std::vector<PoleRef> out;
    const double ap = std::abs(s.p), aq = std::abs(s.q);
    for (int r = 0; r < static_cast<int>(s.t.size()); ++r) {
        const double at = std::abs(s.t[r]);
        for (int l = 0; l <= max_index; ++l) {
            const double al = at * std::pow(ap, l);
            if (al <= std::min(rho, 1.0 / rho) * (1.0 - kContourGuard)) break;
            for (int k = 0; k <= max_index; ++k) {
                const double mod = al * std::pow(aq, k);
                if (mod <= std::min(rho, 1.0 / rho) * (1.0 - kContourGuard)) break;
                for (bool inner : {true, false}) {
                    const double loc = inner ? mod : 1.0 / mod;
                    const bool crossed = inner ? loc > rho : loc < rho;
                    if (std::abs(loc - rho) <= kContourGuard * rho) {
                        const double nudged = rho * (loc > rho ? 1.0 - 1.5 * kContourGuard : 1.0 + 1.5 * kContourGuard);
                        throw ContourError("pole on contour |z| = " + std::to_string(rho), nudged);
                    }
                    if (crossed) out.push_back({r, k, l, inner});
                }
            }
        }
    }
    return out;
}

/// Checks ∮_C = ∮_{|z|=rho} + Σ Res(inner, outside) − Σ Res(outer, inside) for m = 0, with the
/// separating contour C evaluated by the closed form. All values are normalized by ∏Γ(t_r t_s).
inline ContourShiftReport contour_shift_check(const IntegrandSpec& s, double rho, const QuadOptions& base = {})
{
    s.validate();
    if (s.m != 0) throw DomainError("contour_shift_check: closed form needs m = 0");
    if (!(rho > 0)) throw DomainError("contour_shift_check: radius must be positive");
    const std::vector<PoleRef> poles = crossed_poles(s, rho);
    const Scaled norm = beta_rhs_scaled(s);
    Scaled pref = integral_prefactor(s);
    pref /= norm;

    ContourShiftReport rep;
    rep.lhs = 1.0;
    CompensatedSum acc;
    for (const auto& pr : poles) {
        Scaled res = residue_scaled(s, pr) * pref;
        // ∮_C - ∮_circle = 2πi Σ over the region between; orientation flips for outer poles.
        cplx val = res.value();
        PoleRecord rec{pr, pole_location(s, pr), val};
        rep.poles.push_back(rec);
        acc.add(pr.inner ? val : -val);
    }
    QuadOptions opt = base;
    opt.radius = rho;
    auto f = [&](cplx z) { return (integrand_scaled(s, z) * pref).value(); };
    QuadResult qr = circle_integral(f, opt);
    rep.circle_value = qr.value;
    rep.nodes = qr.nodes;
    acc.add(qr.value);
    rep.rhs = acc.value();
    rep.rel_err = std::abs(rep.rhs - rep.lhs) / std::abs(rep.lhs);
    return rep;
}

/// Smallest v > 0 with v·a an even integer for every listed a.
inline long admissible_step(const std::vector<Rational>& values)
{
    mpz_class step = 1;
    for (const auto& a : values) {
        if (a == 0) continue;
        mpz_class d = a.get_den();
        mpz_class need = (a.get_num() % 2 == 0) ? d : mpz_class(2 * d);
        mpz_class g;
        mpz_lcm(g.get_mpz_t(), step.get_mpz_t(), need.get_mpz_t());
        step = g;
    }
    if (!step.fits_slong_p()) throw DomainError("admissible_step: step too large");
    return step.get_si();
}

/// log of |Γ(p^a z) q^{v²G/2} (z^B x^G q^{-B/2})^v| with p = x q^v, q real in (0,1),
/// G = g(a) - g({a}) and B = C(a,2) - C({a},2). Bounded in v by the asymptotics theorem.
inline double rescaled_gamma_log(const Rational& a, cplx z, cplx x, double q, long v)
{
    if (!(q > 0 && q < 1)) throw DomainError("rescaled_gamma_log: q must be real in (0,1)");
    auto g = [](const Rational& y) { return Rational(y * (y - 1) * (2 * y - 1) / 6); };
    auto b2 = [](const Rational& y) { return Rational(y * (y - 1) / 2); };
    const Rational fa = frac(a);
    const double G = Rational(g(a) - g(fa)).get_d();
    const double B = Rational(b2(a) - b2(fa)).get_d();
    const double ad = a.get_d();
    const cplx p = x * std::pow(q, double(v));
    // p^a on the branch x^a q^{va}.
    const cplx arg = cpow(x, ad) * std::pow(q, double(v) * ad) * z;
    Scaled gam = ell_gamma_scaled(arg, p, cplx(q));
    const double lq = std::log(q);
    double out = gam.log().real();
    out += 0.5 * double(v) * double(v) * G * lq;
    out += double(v) * (B * std::log(std::abs(z)) + G * std::log(std::abs(x)) - 0.5 * B * lq);
    return out;
}

struct BoundednessReport {
    std::vector<long> vs;
    std::vector<double> log_values;
    double band_ratio = 0; ///< max/min of the rescaled magnitude
    bool monotone = false; ///< strictly monotone over every sampled v
    /// Monotone drift large enough to read as divergence rather than convergence to a limit.
    bool diverging() const { return monotone && band_ratio > 10.0; }
};

inline BoundednessReport boundedness_band(const Rational& a, cplx z, cplx x, double q, long v_min = 4, long v_max = 40)
{
    const long step = admissible_step({a});
    BoundednessReport rep;
    long v = ((v_min + step - 1) / step) * step;
    for (; v <= v_max; v += step) {
        if (!(std::abs(x) * std::pow(q, double(v)) < q)) continue;
        rep.vs.push_back(v);
        rep.log_values.push_back(rescaled_gamma_log(a, z, x, q, v));
    }
    if (rep.vs.empty()) throw DomainError("boundedness_band: no admissible v in range");
    auto [lo, hi] = std::minmax_element(rep.log_values.begin(), rep.log_values.end());
    rep.band_ratio = std::exp(*hi - *lo);
    bool inc = rep.vs.size() > 2, dec = rep.vs.size() > 2;
    for (std::size_t i = 1; i < rep.log_values.size(); ++i) {
        inc = inc && rep.log_values[i] > rep.log_values[i - 1];
        dec = dec && rep.log_values[i] < rep.log_values[i - 1];
    }
    rep.monotone = inc || dec;
    return rep;
}

} // namespace qlimit
