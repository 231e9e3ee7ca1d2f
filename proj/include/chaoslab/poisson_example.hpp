#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>

#include "chaoslab/error.hpp"
#include "chaoslab/poisson_moments.hpp"
#include "chaoslab/series.hpp"
#include "chaoslab/variables.hpp"

/// Poisson counterexample.
///
/// Y_k independent Poisson(lambda_k) with lambda_{2n} = n^(-3/4),
/// lambda_{2n+1} = n^(-5/16), X_k = (Y_k - lambda_k)/sqrt(lambda_k), and
///
///   F_n = lambda_{2n+1} X_{2n} + sqrt(lambda_{2n+1}) X_{2n} X_{2n+1} = X_{2n} Y_{2n+1}.
///
/// F_n -> 0 in L_{5/2} and almost surely, sup_n |F_n| has finite moments of
/// order below 1/24, and yet J_1(F_n) = lambda_{2n+1} X_{2n} does not converge.
namespace chaoslab::poisson_example {

inline constexpr std::uint64_t kFirstN = 1;

inline double param_lambda(std::uint64_t k)
{
    if (k < 2)
        throw Error(ErrorKind::BadIndex, "Poisson intensities are defined for k >= 2");
    const double n = static_cast<double>(k / 2);
    return k % 2 == 0 ? std::pow(n, -3.0 / 4.0) : std::pow(n, -5.0 / 16.0);
}

inline void check_n(std::uint64_t n)
{
    if (n < kFirstN)
        throw Error(ErrorKind::BadIndex, "Poisson F_n is defined for n >= 1");
}

/// Chaos components of F_n for realized counts.
struct FComponents {
    double j1; ///< lambda_{2n+1} X_{2n}
    double j2; ///< sqrt(lambda_{2n+1}) X_{2n} X_{2n+1}
    double sum;
};

inline FComponents F_components(std::uint64_t n, std::uint32_t y_even, std::uint32_t y_odd)
{
    check_n(n);
    const double lam_odd = param_lambda(2 * n + 1);
    const double x_even = poisson_normalize(param_lambda(2 * n), y_even);
    const double x_odd = poisson_normalize(lam_odd, y_odd);
    const double j1 = lam_odd * x_even;
    const double j2 = std::sqrt(lam_odd) * x_even * x_odd;
    return {j1, j2, j1 + j2};
}

/// F_n = X_{2n} Y_{2n+1}.
inline double F_collapsed(std::uint64_t n, std::uint32_t y_even, std::uint32_t y_odd)
{
    check_n(n);
    return poisson_normalize(param_lambda(2 * n), y_even) * static_cast<double>(y_odd);
}

inline double J1(std::uint64_t n, std::uint32_t y_even)
{
    check_n(n);
    return param_lambda(2 * n + 1) * poisson_normalize(param_lambda(2 * n), y_even);
}

/// J_1(F_n) on {Y_{2n} = 1}: n^(1/16) - n^(-11/16).
inline double J1_on_one(std::uint64_t n)
{
    check_n(n);
    const double x = static_cast<double>(n);
    return std::pow(x, 1.0 / 16.0) - std::pow(x, -11.0 / 16.0);
}

/// E(F_n) = 0 and E(F_n^2) = E(X_{2n}^2) E(Y_{2n+1}^2) = lambda (1 + lambda), lambda = lambda_{2n+1}.
inline double second_moment_F(std::uint64_t n)
{
    check_n(n);
    const double lam = param_lambda(2 * n + 1);
    return lam * (1.0 + lam);
}

/// sqrt(120) n^(-1/8), the bound on E|F_n|^(5/2).
inline double l52_bound(std::uint64_t n)
{
    check_n(n);
    return std::sqrt(120.0) * std::pow(static_cast<double>(n), -1.0 / 8.0);
}

/// E|F_n|^(5/2) = E|Y_{2n} - lambda_{2n}|^(5/2) / lambda_{2n}^(5/4) * E(Y_{2n+1}^(5/2)).
inline CertifiedValue l52_exact(std::uint64_t n)
{
    check_n(n);
    const double lam_even = param_lambda(2 * n);
    const double scale = std::pow(lam_even, -5.0 / 4.0);
    const CertifiedValue central = abs_central_moment(lam_even, 2.5);
    const CertifiedValue raw = raw_abs_moment(param_lambda(2 * n + 1), 2.5);
    const double value = scale * central.value * raw.value;
    return {value, scale * central.upper() * raw.upper() - value};
}

/// b t^(-1/4) + 16 (t^(2/3) - 1)^(-1/16) + a / (sqrt(t) - 1)^2, valid for t >= 9.
inline double tail_bound_M(double t, double a, double b)
{
    if (!(t >= 9.0))
        throw Error(ErrorKind::DomainError, "the bound on P(M > t) holds for t >= 9");
    const double r = std::sqrt(t) - 1.0;
    return b * std::pow(t, -0.25) + 16.0 * std::pow(std::pow(t, 2.0 / 3.0) - 1.0, -1.0 / 16.0) + a / (r * r);
}

/// Same bound with a and b at the upper ends of their certified brackets.
inline double tail_bound_M(double t)
{
    if (!(t >= 9.0))
        throw Error(ErrorKind::DomainError, "the bound on P(M > t) holds for t >= 9");
    return tail_bound_M(t, constant_a().upper(), constant_b().upper());
}

/// Upper bound on E(M^delta) = int_0^inf P(M > s^(1/delta)) ds, delta in (0, 1/24).
///
/// The integrand is bounded by min(1, tail_bound_M(s^(1/delta))), which is
/// nonincreasing in s, so a left Riemann sum over [0, s_max] is an upper
/// bound. Beyond s_max each term of the bound is integrated in closed form
/// after (t^(2/3) - 1) >= t^(2/3)/2 and (sqrt(t) - 1)^2 >= t/4.
inline double moment_delta_bound(double delta, double a, double b, double s_max = 1000.0, std::uint64_t steps = 1'000'000)
{
    if (!(delta > 0.0 && delta < 1.0 / 24.0))
        throw Error(ErrorKind::DomainError, "moment order must lie in (0, 1/24)");
    const double inv = 1.0 / delta;
    const double t_at_max = std::pow(s_max, inv);
    if (!(std::pow(t_at_max, 2.0 / 3.0) >= 2.0 && t_at_max >= 9.0))
        throw Error(ErrorKind::DomainError, "s_max too small for the closed-form tail");
    auto integrand = [&](double s) {
        const double t = std::pow(s, inv);
        return t < 9.0 ? 1.0 : std::min(1.0, tail_bound_M(t, a, b));
    };
    const double h = s_max / static_cast<double>(steps);
    CompensatedSum sum;
    for (std::uint64_t i = 0; i < steps; ++i)
        sum += integrand(static_cast<double>(i) * h) * h;
    const double e1 = inv / 4.0;
    const double e2 = inv / 24.0;
    sum += b * std::pow(s_max, 1.0 - e1) / (e1 - 1.0);
    sum += 16.0 * std::pow(2.0, 1.0 / 16.0) * std::pow(s_max, 1.0 - e2) / (e2 - 1.0);
    sum += 4.0 * a * std::pow(s_max, 1.0 - inv) / (inv - 1.0);
    return sum.value();
}

/// Borel-Cantelli inputs at index n.
struct EventProbs {
    double p_H_bound;  ///< lambda_{2n} lambda_{2n+1} >= P(Y_{2n} != 0, Y_{2n+1} != 0)
    double p_H_exact;  ///< (1 - e^-lambda_{2n}) (1 - e^-lambda_{2n+1})
    double p_A_bound;  ///< Chebyshev bound on P(Y_{2n+1} > eps n^(3/8))
    double p_B;        ///< P(Y_{2n} = 1), exact
};

inline EventProbs event_probs(std::uint64_t n, double epsilon = 1.0)
{
    check_n(n);
    if (!(epsilon > 0.0))
        throw Error(ErrorKind::DomainError, "epsilon must be positive");
    const double le = param_lambda(2 * n);
    const double lo = param_lambda(2 * n + 1);
    const double x = static_cast<double>(n);
    return {le * lo,
            -std::expm1(-le) * -std::expm1(-lo),
            (lo + lo * lo) / (epsilon * epsilon * std::pow(x, 0.75)),
            std::exp(-le) * le};
}

} // namespace chaoslab::poisson_example
