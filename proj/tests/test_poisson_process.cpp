#include <gtest/gtest.h>

#include <boost/math/distributions/chi_squared.hpp>

#include <cmath>
#include <memory>
#include <vector>

#include "chaoslab/numeric.hpp"
#include "chaoslab/poisson_process.hpp"

using namespace chaoslab;
namespace pe = chaoslab::poisson_example;

namespace {

std::shared_ptr<const IntervalLayout> shared_layout(std::uint64_t last) { return std::make_shared<const IntervalLayout>(example_layout(last)); }

double pmf(double lambda, int k) { return std::exp(k * std::log(lambda) - lambda - std::lgamma(k + 1.0)); }

} // namespace

TEST(Layout, Boundaries)
{
    const IntervalLayout l = example_layout(4);
    ASSERT_EQ(l.size(), 3u);
    EXPECT_EQ(l.first_index(), 2u);
    EXPECT_EQ(l.last_index(), 4u);
    const auto& b = l.boundaries();
    EXPECT_EQ(b[0], 0.0);
    EXPECT_EQ(b[1], 1.0);
    EXPECT_EQ(b[2], 2.0);
    EXPECT_NEAR(b[3], 2.0 + std::pow(2.0, -0.75), 1e-15);
    EXPECT_EQ(l.length(3), 1.0);
    EXPECT_THROW(l.length(1), Error);
    EXPECT_THROW(l.length(5), Error);
}

TEST(Layout, Properties)
{
    const IntervalLayout l = example_layout(2001);
    const auto& b = l.boundaries();
    for (std::uint64_t k = 2; k <= 2001; ++k) {
        const std::size_t i = l.position(k);
        EXPECT_LT(b[i], b[i + 1]);
        EXPECT_NEAR(b[i + 1] - b[i], pe::param_lambda(k), 1e-12);
    }
    const std::vector<double> bad{1.0, 0.0};
    try {
        build_layout(bad, 2);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::NonPositiveLength);
    }
    EXPECT_THROW(build_layout(std::vector<double>{1.0, -1.0}, 2), Error);
    EXPECT_THROW(build_layout(std::vector<double>{1.0}, 2), Error);
    EXPECT_EQ(build_layout(std::vector<double>{0.5, 0.25}, 2).boundaries().back(), 0.75);
}

TEST(Integrals, Examples)
{
    auto layout = std::make_shared<const IntervalLayout>(build_layout(std::vector<double>{0.5, 0.25}, 2));
    const PpRealization r = manual_realization(layout, {2, 0});
    EXPECT_EQ(I1(r, 1, 1.0), 1.5);
    EXPECT_EQ(I1(r, 2, 3.0), -0.75);
    EXPECT_EQ(I2_product(r, 1, 2, 1.0), 2.0 * 1.5 * -0.25);
    EXPECT_EQ(I2_product(r, 2, 1, 1.0), I2_product(r, 1, 2, 1.0));
    try {
        I2_product(r, 1, 1, 1.0);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::DiagonalPair);
    }
    EXPECT_THROW(manual_realization(layout, {1}), Error);
}

TEST(Decompose, Examples)
{
    auto layout = shared_layout(33);
    std::vector<std::uint32_t> counts(layout->size(), 0);
    counts[layout->position(32)] = 2;
    counts[layout->position(33)] = 1;
    const ChaosDecomposition d = decompose_F(16, manual_realization(layout, counts));
    EXPECT_EQ(d.j0, 0.0);
    EXPECT_NEAR(d.j1, 2.2297633406301020001, 1e-13);
    EXPECT_NEAR(d.j2, 3.0735375182690044329, 1e-13);
    EXPECT_NEAR(d.f, 5.303300858899106433, 1e-13);
    EXPECT_LT(d.residual(), 1e-10);

    counts[layout->position(32)] = 0;
    counts[layout->position(33)] = 0;
    const ChaosDecomposition z = decompose_F(16, manual_realization(layout, counts));
    EXPECT_EQ(z.f, 0.0);
    EXPECT_NEAR(z.j2, -z.j1, 1e-14);
    EXPECT_NEAR(z.j1, -pe::param_lambda(33) * std::sqrt(pe::param_lambda(32)), 1e-15);

    auto small = shared_layout(3);
    const ChaosDecomposition one = decompose_F(1, manual_realization(small, {1, 0}));
    EXPECT_EQ(one.j1, 0.0);
    EXPECT_EQ(one.j2, 0.0);
    EXPECT_EQ(one.f, 0.0);
    EXPECT_THROW(decompose_F(17, manual_realization(layout, counts)), Error);
}

TEST(Decompose, AgreesWithExampleModule)
{
    auto layout = shared_layout(2 * 300 + 1);
    for (std::uint64_t n = 1; n <= 300; n += 7)
        for (std::uint32_t ye = 0; ye <= 50; ye += 3)
            for (std::uint32_t yo = 0; yo <= 50; yo += 5) {
                std::vector<std::uint32_t> counts(layout->size(), 0);
                counts[layout->position(2 * n)] = ye;
                counts[layout->position(2 * n + 1)] = yo;
                const ChaosDecomposition d = decompose_F(n, manual_realization(layout, counts));
                const double f = pe::F_collapsed(n, ye, yo);
                ASSERT_NEAR(d.f, f, 1e-12 * std::max(1.0, std::abs(f)));
                ASSERT_LE(d.residual(), 1e-10 * std::max(1.0, std::abs(f)));
                ASSERT_NEAR(d.j1, pe::J1(n, ye), 1e-12 * std::max(1.0, std::abs(d.j1)));
            }
}

TEST(Realize, UsesPerIndexStreams)
{
    auto layout = shared_layout(41);
    const PpRealization r = realize(layout, 7, 3);
    EXPECT_EQ(r.counts.size(), layout->size());
    for (std::uint64_t k = 2; k <= 41; ++k) {
        Stream s(7, 3, static_cast<std::uint32_t>(k));
        EXPECT_EQ(r.count(k), sample_poisson(pe::param_lambda(k), s));
    }
    EXPECT_EQ(realize(layout, 7, 3).counts, r.counts);
}

TEST(Realize, CountMomentsAndIndependence)
{
    auto layout = shared_layout(33);
    constexpr std::uint64_t kReps = 200'000;
    const double la = layout->length(32), lb = layout->length(33);
    CompensatedSum sa, sb, sab, sa2;
    for (std::uint64_t t = 0; t < kReps; ++t) {
        const PpRealization r = realize(layout, 11, t);
        const double a = r.count(32) - la, b = r.count(33) - lb;
        sa += a;
        sb += b;
        sab += a * b;
        sa2 += a * a;
    }
    const double R = kReps;
    EXPECT_NEAR(sa.value() / R, 0.0, 4.0 * std::sqrt(la / R));
    EXPECT_NEAR(sb.value() / R, 0.0, 4.0 * std::sqrt(lb / R));
    EXPECT_NEAR(sa2.value() / R, la, 4.0 * std::sqrt((3 * la * la + la - la * la) / R));
    EXPECT_NEAR(sab.value() / R, 0.0, 4.0 * std::sqrt(la * lb / R));
}

TEST(Realize, CountsFollowPoissonLaw)
{
    // chi-square goodness of fit for N(A_3), |A_3| = 1
    auto layout = shared_layout(3);
    constexpr std::uint64_t kReps = 100'000;
    constexpr int kCells = 6; // 0..4 and >= 5
    std::vector<double> obs(kCells, 0.0);
    for (std::uint64_t t = 0; t < kReps; ++t)
        obs[std::min<std::uint32_t>(realize(layout, 5, t).count(3), kCells - 1)] += 1.0;
    double stat = 0.0, rest = 1.0;
    for (int k = 0; k < kCells; ++k) {
        const double p = k + 1 < kCells ? pmf(1.0, k) : rest;
        rest -= p;
        const double e = p * kReps;
        stat += (obs[k] - e) * (obs[k] - e) / e;
    }
    const boost::math::chi_squared dist(kCells - 1);
    EXPECT_LT(stat, boost::math::quantile(dist, 1.0 - 1e-4));
}

TEST(Decompose, ChaosComponentsOrthogonal)
{
    constexpr std::uint64_t n = 4;
    auto layout = shared_layout(2 * n + 1);
    constexpr std::uint64_t kReps = 400'000;
    const double lo = pe::param_lambda(2 * n + 1);
    CompensatedSum j1j2, j1sq, j2sq, f2;
    for (std::uint64_t t = 0; t < kReps; ++t) {
        const ChaosDecomposition d = decompose_F(n, realize(layout, 99, t));
        j1j2 += d.j1 * d.j2;
        j1sq += d.j1 * d.j1;
        j2sq += d.j2 * d.j2;
        f2 += d.f * d.f;
    }
    const double R = kReps;
    // E(j1^2) = lambda^2, E(j2^2) = lambda, E(j1 j2) = 0; generous 5 sigma bands
    // from the fourth moments of the normalized counts
    const double le = pe::param_lambda(2 * n);
    const double kurt = 3.0 + 1.0 / le;
    EXPECT_NEAR(j1sq.value() / R, lo * lo, 5.0 * lo * lo * std::sqrt((kurt - 1.0) / R));
    EXPECT_NEAR(j2sq.value() / R, lo, 5.0 * lo * std::sqrt((kurt * (3.0 + 1.0 / lo) - 1.0) / R));
    EXPECT_NEAR(j1j2.value() / R, 0.0, 5.0 * lo * std::sqrt(lo * kurt / R));
    EXPECT_NEAR(f2.value() / R, pe::second_moment_F(n), 5.0 * std::sqrt(4.0 * kurt * (3.0 + 1.0 / lo) / R));
}
