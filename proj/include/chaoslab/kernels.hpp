#pragma once

#include <algorithm>
#include <cstddef>
#include <map>
#include <span>
#include <utility>
#include <vector>

#include "chaoslab/error.hpp"

namespace chaoslab {

using IndexTuple = std::vector<std::size_t>;

/// Symmetric kernel of degree p that vanishes on the diagonal.
///
/// Only canonical (strictly increasing) index tuples are stored. The full
/// symmetric function assigns the stored coefficient to every permutation of
/// a canonical tuple and zero to every tuple with a repeated index. Indices
/// are 1-based, matching X_1, X_2, ...
class Kernel {
public:
    using Entries = std::map<IndexTuple, double>;

    /// Builds a kernel from raw (tuple, value) pairs in any order.
    /// Throws Error{BadArity | DiagonalTuple | ConflictingValue}.
    Kernel(std::size_t degree, const std::vector<std::pair<IndexTuple, double>>& raw)
        : degree_(degree)
    {
        if (degree == 0)
            throw Error(ErrorKind::BadArity, "kernel degree must be at least 1");
        for (const auto& [tuple, value] : raw) {
            if (tuple.size() != degree)
                throw Error(ErrorKind::BadArity, "tuple length differs from kernel degree");
            IndexTuple canonical = tuple;
            std::sort(canonical.begin(), canonical.end());
            if (canonical.front() == 0)
                throw Error(ErrorKind::BadArity, "indices are 1-based");
            if (std::adjacent_find(canonical.begin(), canonical.end()) != canonical.end())
                throw Error(ErrorKind::DiagonalTuple, "kernel must vanish on the diagonal");
            if (value == 0.0)
                continue;
            auto [it, inserted] = entries_.emplace(std::move(canonical), value);
            if (!inserted && it->second != value)
                throw Error(ErrorKind::ConflictingValue, "two permutations of one tuple carry different values");
        }
    }

    std::size_t degree() const noexcept { return degree_; }
    const Entries& entries() const noexcept { return entries_; }

    /// Value of the symmetric function at an arbitrary (ordered) tuple.
    double operator()(IndexTuple tuple) const
    {
        if (tuple.size() != degree_)
            throw Error(ErrorKind::BadArity, "tuple length differs from kernel degree");
        std::sort(tuple.begin(), tuple.end());
        auto it = entries_.find(tuple);
        return it == entries_.end() ? 0.0 : it->second;
    }

    /// Largest index carrying a nonzero coefficient (0 for the zero kernel).
    std::size_t max_index() const noexcept
    {
        std::size_t m = 0;
        for (const auto& [tuple, value] : entries_)
            m = std::max(m, tuple.back());
        return m;
    }

private:
    std::size_t degree_;
    Entries entries_;
};

namespace detail {
inline double factorial(std::size_t p) noexcept
{
    double f = 1.0;
    for (std::size_t i = 2; i <= p; ++i)
        f *= static_cast<double>(i);
    return f;
}
} // namespace detail

/// Martingale partial sum M_n = sum over ordered tuples j in {1..n}^p of
/// f(j) x_{j_1} ... x_{j_p}, where n = x.size() and x[0] holds x_1.
inline double partial_sum_M(const Kernel& kernel, std::span<const double> x)
{
    double sum = 0.0;
    for (const auto& [tuple, value] : kernel.entries()) {
        if (tuple.back() > x.size())
            continue;
        double term = value;
        for (std::size_t j : tuple)
            term *= x[j - 1];
        sum += term;
    }
    return detail::factorial(kernel.degree()) * sum;
}

/// Squared norm over ordered tuples, sum_j f(j)^2; equals sup_n E(M_n^2)
/// when the x's are independent with mean 0 and variance 1.
inline double norm_sq(const Kernel& kernel) noexcept
{
    double sum = 0.0;
    for (const auto& [tuple, value] : kernel.entries())
        sum += value * value;
    return detail::factorial(kernel.degree()) * sum;
}

} // namespace chaoslab
