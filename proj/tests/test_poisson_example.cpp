#include <gtest/gtest.h>

#include <cmath>

#include "chaoslab/poisson_example.hpp"

using namespace chaoslab;
namespace pe = chaoslab::poisson_example;

namespace {
double pmf(double lambda, int k) { return std::exp(k * std::log(lambda) - lambda - std::lgamma(k + 1.0)); }
} // namespace

TEST(Params, Examples)
{
    EXPECT_NEAR(pe::param_lambda(32), 0.125, 1e-16);
    EXPECT_NEAR(pe::param_lambda(33), 0.42044820762685727152, 1e-15);
    EXPECT_EQ(pe::param_lambda(2), 1.0);
    EXPECT_EQ(pe::param_lambda(3), 1.0);
    EXPECT_THROW(pe::param_lambda(1), Error);
    for (std::uint64_t n = 1; n < 10'000; ++n) {
        EXPECT_LT(pe::param_lambda(2 * n + 2), pe::param_lambda(2 * n));
        EXPECT_LT(pe::param_lambda(2 * n + 3), pe::param_lambda(2 * n + 1));
        EXPECT_LE(pe::param_lambda(2 * n + 1), 1.0);
    }
}

TEST(F, Examples)
{
    EXPECT_EQ(pe::F_collapsed(16, 3, 0), 0.0);
    EXPECT_NEAR(pe::F_components(16, 3, 0).sum, 0.0, 1e-14);

    const pe::FComponents c = pe::F_components(16, 2, 1);
    EXPECT_NEAR(c.j1, 2.2297633406301020001, 1e-13);
    EXPECT_NEAR(c.j2, 3.0735375182690044329, 1e-13);
    EXPECT_NEAR(c.sum, 5.303300858899106433, 1e-13);
    EXPECT_NEAR(pe::F_collapsed(16, 2, 1), 5.303300858899106433, 1e-13);

    // lambda_2 = 1 and one count makes X_2 vanish
    EXPECT_EQ(pe::F_collapsed(1, 1, 5), 0.0);
    EXPECT_EQ(pe::F_components(1, 1, 5).sum, 0.0);
}

TEST(F, CollapseIdentityGrid)
{
    for (std::uint64_t n = 1; n <= 2000; n += (n < 100 ? 1 : 37))
        for (std::uint32_t ye = 0; ye <= 50; ++ye)
            for (std::uint32_t yo = 0; yo <= 50; ++yo) {
                const pe::FComponents c = pe::F_components(n, ye, yo);
                const double f = pe::F_collapsed(n, ye, yo);
                ASSERT_NEAR(c.sum, f, 1e-10 * std::max(1.0, std::abs(f))) << n << " " << ye << " " << yo;
                ASSERT_EQ(c.j1, pe::J1(n, ye));
            }
}

TEST(F, MomentsByExactEnumeration)
{
    // E(F) and E(F^2) summed over both counts against the product pmf
    for (std::uint64_t n : {1ull, 2ull, 16ull, 500ull}) {
        const double le = pe::param_lambda(2 * n), lo = pe::param_lambda(2 * n + 1);
        double m1 = 0.0, m2 = 0.0;
        for (int a = 0; a <= 60; ++a)
            for (int b = 0; b <= 60; ++b) {
                const double w = pmf(le, a) * pmf(lo, b);
                const double f = pe::F_components(n, a, b).sum;
                m1 += w * f;
                m2 += w * f * f;
            }
        EXPECT_NEAR(m1, 0.0, 1e-12);
        EXPECT_NEAR(m2, pe::second_moment_F(n), 1e-12);
    }
}

TEST(J1, ClosedForm)
{
    EXPECT_NEAR(pe::J1(16, 1), 1.0405562256273809334, 1e-13);
    EXPECT_NEAR(pe::J1_on_one(16), 1.0405562256273809334, 1e-13);
    EXPECT_EQ(pe::J1_on_one(1), 0.0);
    EXPECT_NEAR(pe::J1_on_one(1u << 16), 2.0 - std::pow(2.0, -11.0), 1e-14);
    EXPECT_GT(pe::J1_on_one(1u << 16), pe::J1_on_one(16));
    for (std::uint64_t n = 1; n <= 10'000; ++n)
        ASSERT_NEAR(pe::J1(n, 1), pe::J1_on_one(n), 1e-10 * std::max(1.0, pe::J1_on_one(n)));
}

TEST(J1, IncreasingAndUnbounded)
{
    for (std::uint64_t n = 1; n < 1'000'000; ++n)
        ASSERT_LT(pe::J1_on_one(n), pe::J1_on_one(n + 1));
    EXPECT_GT(pe::J1_on_one(std::uint64_t{1} << 54), 10.0);
}

TEST(L52, BoundAndExact)
{
    EXPECT_NEAR(pe::l52_bound(256), std::sqrt(120.0) / 2.0, 1e-14);
    EXPECT_NEAR(pe::l52_bound(1), std::sqrt(120.0), 1e-14);
    EXPECT_NEAR(pe::l52_bound(200) / pe::l52_bound(100), std::pow(2.0, -1.0 / 8.0), 1e-15);
    EXPECT_NEAR(pe::l52_exact(1).value, 3.921260149138363964, 1e-12);
    for (std::uint64_t n = 1; n <= 1000; ++n)
        ASSERT_LE(pe::l52_exact(n).upper(), pe::l52_bound(n)) << n;
}

TEST(TailBoundM, Values)
{
    // a and b at their zeta values give the mpmath reference; the certified
    // upper brackets can only move the bound up, by a tiny amount
    const double a = 4.5951118258429433807, b = 16.581747646655021396;
    EXPECT_NEAR(pe::tail_bound_M(9.0, a, b), 25.564299041901384353, 1e-12);
    EXPECT_NEAR(pe::tail_bound_M(100.0, a, b), 18.546093594279015907, 1e-12);
    EXPECT_GE(pe::tail_bound_M(9.0), pe::tail_bound_M(9.0, a, b));
    EXPECT_NEAR(pe::tail_bound_M(9.0), 25.564299041901384353, 1e-6);
    try {
        pe::tail_bound_M(8.99);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::DomainError);
    }
}

TEST(TailBoundM, MonotoneAndPowerLaw)
{
    const double a = 4.5951118258429433807, b = 16.581747646655021396;
    double prev = pe::tail_bound_M(9.0, a, b);
    for (double t = 10.0; t < 1e9; t *= 1.5) {
        const double cur = pe::tail_bound_M(t, a, b);
        EXPECT_LT(cur, prev);
        prev = cur;
    }
    // t^(1/24) times the bound stays bounded and the middle term dominates
    for (double t : {1e2, 1e4, 1e6, 1e8}) {
        const double scaled = pe::tail_bound_M(t, a, b) * std::pow(t, 1.0 / 24.0);
        EXPECT_LT(scaled, 40.0);
        EXPECT_GT(scaled, 16.0);
    }
    const double t = 1e30;
    EXPECT_NEAR(pe::tail_bound_M(t, a, b) * std::pow(t, 1.0 / 24.0), 16.0, 0.01);
}

TEST(MomentDelta, FiniteBound)
{
    const double a = 4.5951118258429433807, b = 16.581747646655021396;
    const double bound = pe::moment_delta_bound(1.0 / 48.0, a, b);
    // mpmath quadrature of the same integrand: 8.0000003594
    EXPECT_GE(bound, 8.0000003594);
    EXPECT_LE(bound, 8.03);
    EXPECT_THROW(pe::moment_delta_bound(1.0 / 24.0, a, b), Error);
}

TEST(Events, Probabilities)
{
    const pe::EventProbs e = pe::event_probs(16);
    EXPECT_NEAR(e.p_H_bound, 0.052556025953357158939, 1e-15);
    EXPECT_NEAR(e.p_B, 0.11031211282307442536, 1e-15);
    for (std::uint64_t n = 1; n <= 10'000; ++n) {
        const pe::EventProbs p = pe::event_probs(n, 0.5);
        ASSERT_LE(p.p_H_exact, p.p_H_bound);
        ASSERT_LE(p.p_A_bound, 2.0 * std::pow(double(n), -17.0 / 16.0) / 0.25 + 1e-15);
        ASSERT_GE(p.p_B, std::exp(-1.0) * pe::param_lambda(2 * n));
    }
    // sum of p_B dominates e^-1 sum n^(-3/4), which diverges
    double s = 0.0, minorant = 0.0;
    for (std::uint64_t n = 1; n <= 100'000; ++n) {
        s += pe::event_probs(n).p_B;
        minorant += std::exp(-1.0) * std::pow(double(n), -0.75);
    }
    EXPECT_GE(s, minorant);
    EXPECT_GT(s, 60.0);
    EXPECT_THROW(pe::event_probs(3, 0.0), Error);
}
