#pragma once

#include <cmath>
#include <cstdint>
#include <utility>

#include "chaoslab/error.hpp"
#include "chaoslab/kernels.hpp"
#include "chaoslab/variables.hpp"

/// Two-point counterexample.
///
/// Y_k in {-1, 1} independent with P(Y_k = 1) = p_k, X_k the normalized
/// variable, and for n >= 2
///
///   F_n = p_{2n+1} X_{2n} + sqrt(p_{2n+1}(1 - p_{2n+1})) X_{2n} X_{2n+1}
///
/// with p_{2n} = 1/n and p_{2n+1} = n^(-1/sqrt(log n)). F_n -> 0 in L_2 and
/// almost surely while its first-chaos part p_{2n+1} X_{2n} does not.
namespace chaoslab::two_point {

inline constexpr std::uint64_t kFirstN = 2;

/// p_k for k >= 4; smaller indices are outside the construction.
inline double param_p(std::uint64_t k)
{
    if (k < 4)
        throw Error(ErrorKind::BadIndex, "two-point parameters are defined for k >= 4");
    const double n = static_cast<double>(k / 2);
    if (k % 2 == 0)
        return 1.0 / n;
    return std::pow(n, -1.0 / std::sqrt(std::log(n)));
}

inline TwoPointSpec spec(std::uint64_t k) { return two_point_from_p(param_p(k)); }

inline void check_n(std::uint64_t n)
{
    if (n < kFirstN)
        throw Error(ErrorKind::BadIndex, "two-point F_n is defined for n >= 2");
}

/// F_n from realized X_{2n}, X_{2n+1}, evaluated term by term.
inline double F(std::uint64_t n, double x_even, double x_odd)
{
    check_n(n);
    const double p = param_p(2 * n + 1);
    return p * x_even + std::sqrt(p * (1.0 - p)) * x_even * x_odd;
}

/// The same quantity after collapsing: X_{2n} 1{Y_{2n+1} = 1}.
inline double F_collapsed(double x_even, int y_odd) noexcept { return y_odd == 1 ? x_even : 0.0; }

/// E(F_n^2) = p_{2n+1}.
inline double second_moment_F(std::uint64_t n)
{
    check_n(n);
    return param_p(2 * n + 1);
}

/// First-chaos component J_1(F_n) = p_{2n+1} X_{2n}.
inline double J1(std::uint64_t n, double x_even)
{
    check_n(n);
    return param_p(2 * n + 1) * x_even;
}

/// J_1(F_n) on {Y_{2n} = 1}: sqrt(n-1) n^(-1/sqrt(log n)), unbounded in n.
inline double J1_on_plus(std::uint64_t n)
{
    check_n(n);
    const double x = static_cast<double>(n);
    return std::sqrt(x - 1.0) * std::pow(x, -1.0 / std::sqrt(std::log(x)));
}

/// P(Y_{2n} = Y_{2n+1} = 1) = n^(-1-1/sqrt(log n)).
inline double event_prob_AA(std::uint64_t n)
{
    check_n(n);
    return param_p(2 * n) * param_p(2 * n + 1);
}

/// P(Y_{2n} = 1) = 1/n; its sum diverges.
inline double event_prob_B(std::uint64_t n)
{
    check_n(n);
    return param_p(2 * n);
}

/// Degree-1 and degree-2 kernels with F_n = M(first) + M(second) over X_1..X_{2n+1}.
inline std::pair<Kernel, Kernel> chaos_kernels(std::uint64_t n)
{
    check_n(n);
    const double p = param_p(2 * n + 1);
    const std::size_t even = 2 * n;
    return {Kernel(1, {{{even}, p}}), Kernel(2, {{{even, even + 1}, 0.5 * std::sqrt(p * (1.0 - p))}})};
}

} // namespace chaoslab::two_point
