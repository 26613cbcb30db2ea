#include <qlimit/quad.hpp>

#include <gtest/gtest.h>

#include <random>

using namespace qlimit;

namespace {

double rel(cplx a, cplx b) { return std::abs(a - b) / std::max(std::abs(b), 1e-300); }

cplx polar_draw(std::mt19937_64& rng, double lo, double hi)
{
    std::uniform_real_distribution<double> r(lo, hi), a(-3.14159, 3.14159);
    return std::polar(r(rng), a(rng));
}

/// t_r = u_r p^{α_r} with ∏u = q, so the balancing holds for Σα = 1.
IntegrandSpec pattern_spec(std::mt19937_64& rng, const std::array<double, 6>& alpha, cplx p, cplx q)
{
    IntegrandSpec s;
    s.p = p;
    s.q = q;
    cplx prod = 1.0;
    std::array<cplx, 6> u;
    for (int r = 0; r < 5; ++r) prod *= u[r] = polar_draw(rng, 0.5, 0.9);
    u[5] = q / prod;
    for (int r = 0; r < 6; ++r) s.t.push_back(u[r] * std::exp(alpha[r] * std::log(p)));
    return s;
}

} // namespace

TEST(CircleIntegral, Monomials)
{
    for (int k = -4; k <= 4; ++k) {
        QuadResult r = circle_integral([k](cplx z) { return std::pow(z, k); });
        EXPECT_LT(std::abs(r.value - (k == 0 ? 1.0 : 0.0)), 1e-15) << k;
    }
}

TEST(CircleIntegral, GeometricKernel)
{
    const cplx a = std::polar(0.5, 0.7);
    QuadResult r = circle_integral([a](cplx z) { return 1.0 / (1.0 - a * z); });
    EXPECT_LT(std::abs(r.value - 1.0), 1e-13);
    EXPECT_THROW(circle_integral([](cplx z) { return z; }, QuadOptions{1.0, 0.0, 2}), DomainError);
}

TEST(CircleIntegral, NonConvergenceIsReported)
{
    QuadOptions opt;
    opt.n_max = 64;
    EXPECT_THROW(circle_integral([](cplx z) { return 1.0 / (1.0 - 0.999 * z); }, opt), AccuracyError);
}

TEST(BetaEval, RandomDraws)
{
    std::mt19937_64 rng(1);
    for (int i = 0; i < 20; ++i) {
        IntegrandSpec s = random_beta_spec(rng);
        BetaResult b = beta_eval(s);
        EXPECT_LT(b.rel_err, 1e-9);
        EXPECT_LE(b.nodes, 4096);
    }
}

TEST(BetaEval, ContourViolationNamesParameter)
{
    IntegrandSpec s;
    s.p = 0.2;
    s.q = 0.3;
    s.t = {1.2, 0.5, 0.5, 0.5, 0.5, 0.2 * 0.3 / (1.2 * 0.0625)};
    try {
        beta_eval(s);
        FAIL();
    } catch (const DomainError& e) {
        EXPECT_NE(std::string(e.what()).find("t_1"), std::string::npos);
    }
    s.t[5] *= 1.1;
    EXPECT_THROW(s.validate(), DomainError);
}

TEST(BetaEval, SpectralConvergence)
{
    std::mt19937_64 rng(2);
    IntegrandSpec s = random_beta_spec(rng);
    const cplx exact = (beta_rhs_scaled(s) / integral_prefactor(s)).value();
    std::vector<double> err;
    for (int n : {64, 128, 256, 512})
        err.push_back(std::abs(circle_mean_fixed([&](cplx z) { return integrand(s, z); }, n) - exact) / std::abs(exact));
    for (std::size_t i = 1; i < err.size(); ++i)
        if (err[i - 1] > 1e-14) EXPECT_LT(err[i], 0.5 * err[i - 1]);
}

TEST(Integrand, SymmetriesAndEllipticDifference)
{
    std::mt19937_64 rng(3);
    for (int i = 0; i < 50; ++i) {
        IntegrandSpec s = random_beta_spec(rng);
        const cplx z = polar_draw(rng, 0.8, 1.25);
        EXPECT_LT(rel(integrand(s, 1.0 / z), integrand(s, z)), 1e-12);
        IntegrandSpec perm = s;
        std::shuffle(perm.t.begin(), perm.t.end(), rng);
        EXPECT_LT(rel(integrand(perm, z), integrand(s, z)), 1e-12);
        const cplx lhs = integrand(s, s.p * z) * integrand(s, s.q * z);
        const cplx rhs = integrand(s, s.p * s.q * z) * integrand(s, z);
        EXPECT_LT(rel(lhs, rhs), 1e-11);
    }
}

TEST(SbFactor, Symmetries)
{
    std::mt19937_64 rng(4);
    for (int i = 0; i < 100; ++i) {
        const cplx q = polar_draw(rng, 0.1, 0.5);
        const cplx s1 = polar_draw(rng, 0.3, 1.5), s2 = polar_draw(rng, 0.3, 1.5), s3 = polar_draw(rng, 0.3, 1.5);
        const cplx z = polar_draw(rng, 0.7, 1.4);
        EXPECT_LT(std::abs(sb_factor(s1, s2, s3, z, q) + sb_factor(s1, s2, s3, 1.0 / z, q) - 1.0), 1e-12);
        EXPECT_LT(rel(sb_factor(s1, s2, s3, q * z, q), sb_factor(s1, s2, s3, z, q)), 1e-12);
    }
    EXPECT_THROW(sb_factor(0.5, 0.3 / 0.5, 0.7, 1.1, 0.3), DomainError);
}

TEST(SbFactor, BrokenIntegralEqualsSymmetric)
{
    std::mt19937_64 rng(5);
    for (int i = 0; i < 10; ++i) {
        IntegrandSpec s = random_beta_spec(rng);
        IntegrandSpec b = s;
        b.broken = std::array<cplx, 3>{polar_draw(rng, 0.5, 1.2), polar_draw(rng, 0.5, 1.2), polar_draw(rng, 0.5, 1.2)};
        const cplx sym = beta_eval(s).lhs;
        QuadResult r = circle_integral([&](cplx z) { return integrand(b, z); });
        const cplx broken = (integral_prefactor(b) * Scaled(r.value)).value();
        EXPECT_LT(rel(broken, sym), 1e-9);
    }
}

TEST(Residue, ClosedFormMatchesSmallCircle)
{
    std::mt19937_64 rng(6);
    for (int i = 0; i < 10; ++i) {
        IntegrandSpec s = random_beta_spec(rng);
        for (PoleRef pr : {PoleRef{0, 0, 0, true}, PoleRef{2, 1, 0, true}, PoleRef{3, 0, 1, false}, PoleRef{5, 2, 1, false}}) {
            const cplx z0 = pole_location(s, pr);
            const double spacing = std::abs(z0) * std::min(std::abs(s.q), std::abs(s.p));
            const cplx numeric = residue_numeric([&](cplx z) { return integrand(s, z); }, z0, 1e-3 * spacing);
            EXPECT_LT(rel(residue_at(s, pr), numeric), 1e-10);
        }
    }
}

TEST(Residue, PropositionIdentities)
{
    std::mt19937_64 rng(7);
    for (int i = 0; i < 50; ++i) {
        IntegrandSpec s = random_beta_spec(rng);
        const int k = i % 3;
        const PoleRef base{1, k, 0, true};
        const cplx a = pole_location(s, base);
        const cplx r0 = residue_at(s, base);
        // Symmetry breaking multiplies the residue by sb at the pole.
        IntegrandSpec b = s;
        b.broken = std::array<cplx, 3>{polar_draw(rng, 0.5, 1.2), polar_draw(rng, 0.5, 1.2), polar_draw(rng, 0.5, 1.2)};
        const auto& w = *b.broken;
        EXPECT_LT(rel(residue_at(b, base), sb_factor(w[0], w[1], w[2], a, s.q) * r0), 1e-10);
        // Reciprocal pole.
        EXPECT_LT(rel(residue_at(s, PoleRef{1, k, 0, false}), -r0), 1e-10);
        // p-shifted pole.
        EXPECT_LT(rel(residue_at(s, PoleRef{1, k, 1, true}), integrand_p_ratio(s, a) * r0), 1e-10);
        // Integer p-shift of the parameters.
        IntegrandSpec t = s;
        t.t[1] /= s.p;
        t.t[4] *= s.p;
        EXPECT_LT(rel(residue_at(t, PoleRef{1, k, 1, true}), integrand_shift_ratio(s, {0, -1, 0, 0, 1, 0}, a) * r0), 1e-10);
    }
}

TEST(Residue, HalfIntegerShiftWithRescaledVariable)
{
    std::mt19937_64 rng(11);
    const std::array<int, 6> twice{1, -1, 1, -1, 1, -1};
    for (int i = 0; i < 30; ++i) {
        IntegrandSpec s = random_beta_spec(rng);
        const cplx h = std::sqrt(s.p);
        const int k = i % 3;
        const cplx a = pole_location(s, PoleRef{1, k, 0, true});
        IntegrandSpec t = s;
        Scaled ratio;
        for (int r = 0; r < 6; ++r) {
            t.t[r] *= twice[r] > 0 ? h : 1.0 / h;
            // t_r p^α (a p^½)^{±1} are integer p-shifts of t_r a^{±1}.
            ratio *= gamma_p_shift_ratio((twice[r] + 1) / 2, s.t[r] * a, s.p, s.q);
            ratio *= gamma_p_shift_ratio((twice[r] - 1) / 2, s.t[r] / a, s.p, s.q);
        }
        ratio *= detail::inverse_gamma_square(a * h, s.p, s.q);
        ratio /= detail::inverse_gamma_square(a, s.p, s.q);
        // dz/z is invariant under z -> z p^½, so the left side is a plain residue of the shifted integrand.
        EXPECT_LT(rel(residue_at(t, PoleRef{1, k, 1, true}), ratio.value() * residue_at(s, PoleRef{1, k, 0, true})), 1e-10);
    }
}

TEST(ContourShift, NoPolesCrossed)
{
    std::mt19937_64 rng(8);
    IntegrandSpec s = random_beta_spec(rng);
    ContourShiftReport r = contour_shift_check(s, 1.0);
    EXPECT_TRUE(r.poles.empty());
    EXPECT_LT(r.rel_err, 1e-11);
}

TEST(ContourShift, LimitPatternsAtFiniteP)
{
    std::mt19937_64 rng(9);
    const std::vector<std::array<double, 6>> patterns{
        {-0.5, 0, 0, 0.5, 0.5, 0.5}, {-1, 0, 0.5, 0.5, 0.5, 0.5}, {-1.5, 0, 0.5, 0.5, 0.5, 1}};
    for (const auto& a : patterns)
        for (int i = 0; i < 5; ++i) {
            IntegrandSpec s = pattern_spec(rng, a, 0.02, 0.3);
            double rho = 1.0;
            for (int tries = 0;; ++tries) {
                try {
                    ContourShiftReport r = contour_shift_check(s, rho);
                    EXPECT_FALSE(r.poles.empty());
                    EXPECT_LT(r.rel_err, 1e-8);
                    break;
                } catch (const ContourError& e) {
                    ASSERT_LT(tries, 5);
                    rho = e.suggested_radius;
                }
            }
        }
}

TEST(Boundedness, RescaledGammaStaysInBand)
{
    std::mt19937_64 rng(10);
    std::uniform_int_distribution<int> d(-36, 36);
    for (int i = 0; i < 10; ++i) {
        const Rational a = rat(d(rng), 12);
        const cplx z = polar_draw(rng, 0.8, 1.25), x = polar_draw(rng, 0.5, 1.5);
        BoundednessReport r = boundedness_band(a, z, x, 0.3);
        EXPECT_LT(r.band_ratio, 1e3);
        EXPECT_FALSE(r.diverging());
    }
}

TEST(AdmissibleStep, Values)
{
    EXPECT_EQ(admissible_step({Rational(1, 2)}), 4);
    EXPECT_EQ(admissible_step({Rational(1, 3), Rational(1, 2)}), 12);
    EXPECT_EQ(admissible_step({Rational(2, 3)}), 3);
    EXPECT_EQ(admissible_step({Rational(0), Rational(1)}), 2);
}
