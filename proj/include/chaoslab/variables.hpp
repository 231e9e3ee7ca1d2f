#pragma once

#include <cmath>
#include <cstdint>

#include "chaoslab/error.hpp"

namespace chaoslab {

/// Two-point variable X = value_plus on {Y = 1}, value_minus on {Y = -1},
/// normalized to mean 0 and variance 1.
struct TwoPointSpec {
    double p;
    double value_plus;
    double value_minus;
};

struct PoissonSpec {
    double lambda;
};

inline PoissonSpec poisson_spec(double lambda)
{
    if (!(lambda > 0.0) || !std::isfinite(lambda))
        throw Error(ErrorKind::OutOfRange, "Poisson intensity must be positive");
    return {lambda};
}

struct TwoPointDraw {
    int y;
    double x;
};

inline TwoPointSpec two_point_from_p(double p)
{
    if (!(p > 0.0 && p < 1.0))
        throw Error(ErrorKind::OutOfRange, "two-point probability must lie in (0,1)");
    return {p, std::sqrt((1.0 - p) / p), -std::sqrt(p / (1.0 - p))};
}

/// Y = 1 iff u < p; consumes exactly the one uniform given.
inline TwoPointDraw two_point_from_uniform(const TwoPointSpec& spec, double u) noexcept
{
    return u < spec.p ? TwoPointDraw{1, spec.value_plus} : TwoPointDraw{-1, spec.value_minus};
}

template <class UniformSource>
TwoPointDraw sample_two_point(const TwoPointSpec& spec, UniformSource& rng)
{
    return two_point_from_uniform(spec, rng.uniform());
}

/// Poisson(lambda) by sequential inversion: the smallest k with u < F(k).
///
/// `exp_neg_lambda` is e^-lambda, passed in so hot loops can precompute it.
/// The walk stops if the pmf underflows before the cdf reaches u, which only
/// happens for u within rounding of 1.
inline std::uint32_t poisson_from_uniform(double lambda, double exp_neg_lambda, double u) noexcept
{
    std::uint32_t k = 0;
    double pmf = exp_neg_lambda;
    double cdf = pmf;
    while (u >= cdf) {
        ++k;
        pmf *= lambda / k;
        if (pmf == 0.0)
            break;
        cdf += pmf;
    }
    return k;
}

inline std::uint32_t poisson_from_uniform(double lambda, double u) noexcept
{
    return poisson_from_uniform(lambda, std::exp(-lambda), u);
}

template <class UniformSource>
std::uint32_t sample_poisson(double lambda, UniformSource& rng)
{
    return poisson_from_uniform(lambda, rng.uniform());
}

inline double poisson_normalize(double lambda, std::uint32_t y) noexcept
{
    return (static_cast<double>(y) - lambda) / std::sqrt(lambda);
}

} // namespace chaoslab
