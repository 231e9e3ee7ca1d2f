#pragma once

#include <cmath>
#include <cstdint>
#include <memory>
#include <span>
#include <vector>

#include "chaoslab/error.hpp"
#include "chaoslab/poisson_example.hpp"
#include "chaoslab/rng.hpp"
#include "chaoslab/variables.hpp"

namespace chaoslab {

/// Consecutive intervals A_k = (s_{k-1}, s_k] of the half-line with
/// |A_k| = lambda_k, for k = first_index, first_index + 1, ...
class IntervalLayout {
public:
    IntervalLayout(std::span<const double> lambdas, std::size_t count, std::uint64_t first_index = 1)
        : first_index_(first_index)
    {
        if (count > lambdas.size())
            throw Error(ErrorKind::BadIndex, "fewer lengths than requested intervals");
        lengths_.assign(lambdas.begin(), lambdas.begin() + static_cast<std::ptrdiff_t>(count));
        boundaries_.reserve(count + 1);
        boundaries_.push_back(0.0);
        for (double len : lengths_) {
            if (!(len > 0.0) || !std::isfinite(len))
                throw Error(ErrorKind::NonPositiveLength, "interval lengths must be positive");
            boundaries_.push_back(boundaries_.back() + len);
        }
    }

    std::uint64_t first_index() const noexcept { return first_index_; }
    std::uint64_t last_index() const noexcept { return first_index_ + lengths_.size() - 1; }
    std::size_t size() const noexcept { return lengths_.size(); }
    bool contains(std::uint64_t k) const noexcept { return k >= first_index_ && k - first_index_ < lengths_.size(); }

    /// Boundaries s_0 = 0 < s_1 < ...; A_k is (boundary(k-1), boundary(k)].
    const std::vector<double>& boundaries() const noexcept { return boundaries_; }

    /// mu(A_k) = lambda_k.
    double length(std::uint64_t k) const { return lengths_[position(k)]; }

    std::size_t position(std::uint64_t k) const
    {
        if (!contains(k))
            throw Error(ErrorKind::BadIndex, "interval index outside the layout");
        return static_cast<std::size_t>(k - first_index_);
    }

private:
    std::uint64_t first_index_;
    std::vector<double> lengths_;
    std::vector<double> boundaries_;
};

inline IntervalLayout build_layout(std::span<const double> lambdas, std::size_t count, std::uint64_t first_index = 1)
{
    return IntervalLayout(lambdas, count, first_index);
}

/// Layout for the Poisson counterexample: A_2, ..., A_{last} with
/// |A_k| = lambda_k. lambda_1 is not part of the construction, so A_2 starts at 0.
inline IntervalLayout example_layout(std::uint64_t last_index)
{
    if (last_index < 2)
        throw Error(ErrorKind::BadIndex, "layout must contain A_2");
    std::vector<double> lambdas;
    for (std::uint64_t k = 2; k <= last_index; ++k)
        lambdas.push_back(poisson_example::param_lambda(k));
    return IntervalLayout(lambdas, lambdas.size(), 2);
}

/// Counts N(A_k) of one realization of the unit-rate process.
struct PpRealization {
    std::shared_ptr<const IntervalLayout> layout;
    std::vector<std::uint32_t> counts;
    std::uint64_t master_seed;
    std::uint64_t trajectory;

    std::uint32_t count(std::uint64_t k) const { return counts[layout->position(k)]; }
};

/// N(A_k) ~ Poisson(|A_k|), independent over k since the intervals are
/// disjoint. Count k is drawn by inversion from Stream(seed, trajectory, k),
/// the same stream the Monte Carlo engine uses for Y_k.
inline PpRealization realize(std::shared_ptr<const IntervalLayout> layout, std::uint64_t master_seed, std::uint64_t trajectory)
{
    PpRealization r{layout, {}, master_seed, trajectory};
    r.counts.reserve(layout->size());
    for (std::uint64_t k = layout->first_index(); k <= layout->last_index(); ++k) {
        Stream stream(master_seed, trajectory, static_cast<std::uint32_t>(k));
        r.counts.push_back(sample_poisson(layout->length(k), stream));
    }
    return r;
}

/// Realization with explicitly given counts (first entry is N(A_{first_index})).
inline PpRealization manual_realization(std::shared_ptr<const IntervalLayout> layout, std::vector<std::uint32_t> counts)
{
    if (counts.size() != layout->size())
        throw Error(ErrorKind::BadIndex, "one count per interval is required");
    return {std::move(layout), std::move(counts), 0, 0};
}

/// I_1(c 1_{A_k}) = c (N(A_k) - mu(A_k)).
inline double I1(const PpRealization& r, std::uint64_t k, double c)
{
    return c * (static_cast<double>(r.count(k)) - r.layout->length(k));
}

/// I_2 of the symmetrized product kernel c (1_{A_m} x 1_{A_n} + 1_{A_n} x 1_{A_m}):
/// 2 c (N(A_m) - mu(A_m)) (N(A_n) - mu(A_n)).
inline double I2_product(const PpRealization& r, std::uint64_t m, std::uint64_t n, double c)
{
    if (m == n)
        throw Error(ErrorKind::DiagonalPair, "product kernel needs disjoint intervals");
    return 2.0 * c * (static_cast<double>(r.count(m)) - r.layout->length(m)) *
           (static_cast<double>(r.count(n)) - r.layout->length(n));
}

/// Chaos decomposition F_n = J_0 + J_1 + J_2 and the collapsed value of F_n.
struct ChaosDecomposition {
    double j0;
    double j1;
    double j2;
    double f;

    double residual() const noexcept { return std::abs(j0 + j1 + j2 - f); }
};

inline ChaosDecomposition decompose_F(std::uint64_t n, const PpRealization& r)
{
    poisson_example::check_n(n);
    const std::uint64_t even = 2 * n;
    const std::uint64_t odd = even + 1;
    if (!r.layout->contains(even) || !r.layout->contains(odd))
        throw Error(ErrorKind::BadIndex, "realization does not cover A_2n and A_2n+1");
    const double lam_even = r.layout->length(even);
    const double lam_odd = r.layout->length(odd);
    const double sqrt_even = std::sqrt(lam_even);
    const double j1 = I1(r, even, lam_odd / sqrt_even);
    const double j2 = I2_product(r, even, odd, 1.0 / (2.0 * sqrt_even));
    const double f = (static_cast<double>(r.count(even)) - lam_even) / sqrt_even * static_cast<double>(r.count(odd));
    return {0.0, j1, j2, f};
}

} // namespace chaoslab
