#pragma once

#include <cmath>
#include <cstdint>

#include "chaoslab/error.hpp"
#include "chaoslab/numeric.hpp"

namespace chaoslab {

/// Truncated series result: the true sum lies in [value, value + remainder_bound].
struct CertifiedValue {
    double value;
    double remainder_bound;

    double upper() const noexcept { return value + remainder_bound; }
};

/// Default relative target for certified truncation of moment series.
inline constexpr double kMomentTolerance = 1e-14;

/// lambda^(j+1) / (j+1)!, a majorant of P(Y > j) for Y ~ Poisson(lambda).
inline double poisson_tail_majorant(double lambda, std::uint32_t j) noexcept
{
    const double m = static_cast<double>(j) + 1.0;
    return std::exp(m * std::log(lambda) - std::lgamma(m + 1.0));
}

/// P(Y > j) for Y ~ Poisson(lambda), summed directly over k = j+1, j+2, ...
///
/// Summing the tail itself keeps full relative accuracy when the tail is tiny.
/// Truncation after term K is certified by the geometric majorant
/// pmf(K+1) / (1 - lambda/(K+2)), valid once K+2 > lambda.
inline CertifiedValue poisson_tail(double lambda, std::uint32_t j)
{
    if (!(lambda > 0.0))
        throw Error(ErrorKind::DomainError, "poisson_tail needs lambda > 0");
    double k = static_cast<double>(j) + 1.0;
    double term = std::exp(k * std::log(lambda) - lambda - std::lgamma(k + 1.0));
    CompensatedSum sum;
    for (;;) {
        sum += term;
        const double next = term * lambda / (k + 1.0);
        if (k + 2.0 > lambda) {
            const double remainder = next / (1.0 - lambda / (k + 2.0));
            if (remainder <= 1e-17 * sum.value() || remainder < 1e-300)
                return {sum.value(), remainder};
        }
        term = next;
        k += 1.0;
    }
}

/// E{(Y - lambda)^4} = 3 lambda^2 + lambda.
constexpr double central_moment_4(double lambda) noexcept { return 3.0 * lambda * lambda + lambda; }

/// E(Y^4) = lambda^4 + 6 lambda^3 + 7 lambda^2 + lambda.
constexpr double raw_moment_4(double lambda) noexcept
{
    return ((lambda + 6.0) * lambda + 7.0) * lambda * lambda + lambda;
}

namespace detail {

// Sum_k weight(k) pmf(k) where weight(k) <= k^q for k >= lambda. The tail
// beyond K is bounded by (K+1)^q lambda^(K+1)/(K+1)! / (1 - r) with
// r = (1 + 1/(K+1))^q lambda/(K+2), the worst ratio of consecutive terms.
template <class Weight>
CertifiedValue poisson_expectation(double lambda, double q, Weight weight, double rel_tol)
{
    if (!(lambda > 0.0))
        throw Error(ErrorKind::DomainError, "Poisson moment needs lambda > 0");
    if (!(q >= 0.0))
        throw Error(ErrorKind::DomainError, "moment order must be nonnegative");
    CompensatedSum sum;
    double pmf = std::exp(-lambda);
    double majorant = 1.0; // lambda^k / k!
    for (std::uint32_t k = 0;; ++k) {
        const double kd = static_cast<double>(k);
        sum += weight(kd) * pmf;
        pmf *= lambda / (kd + 1.0);
        majorant *= lambda / (kd + 1.0);
        if (kd + 1.0 < lambda)
            continue;
        const double ratio = std::pow(1.0 + 1.0 / (kd + 1.0), q) * lambda / (kd + 2.0);
        if (ratio >= 1.0)
            continue;
        const double remainder = std::pow(kd + 1.0, q) * majorant / (1.0 - ratio);
        if (remainder < rel_tol * std::max(sum.value(), 1.0))
            return {sum.value(), remainder};
    }
}

} // namespace detail

/// E{|Y - lambda|^q} by certified truncated series.
inline CertifiedValue abs_central_moment(double lambda, double q, double rel_tol = kMomentTolerance)
{
    return detail::poisson_expectation(
        lambda, q, [lambda, q](double k) { return std::pow(std::abs(k - lambda), q); }, rel_tol);
}

/// E(Y^q) by certified truncated series.
inline CertifiedValue raw_abs_moment(double lambda, double q, double rel_tol = kMomentTolerance)
{
    return detail::poisson_expectation(
        lambda, q, [q](double k) { return k == 0.0 && q > 0.0 ? 0.0 : std::pow(k, q); }, rel_tol);
}

} // namespace chaoslab
