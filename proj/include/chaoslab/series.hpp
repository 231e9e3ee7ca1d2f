#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <string_view>
#include <thread>
#include <vector>

#include "chaoslab/concurrency.hpp"
#include "chaoslab/error.hpp"
#include "chaoslab/numeric.hpp"

namespace chaoslab {

/// The four deterministic series behind the Borel-Cantelli arguments.
///
///   BcTwoPoint   sum_{n>=2} n^(-1-1/sqrt(log n))   convergent
///   BConst       sum_{n>=1} n^(-17/16)             convergent
///   AConst       sum_{n>=1} n^(-5/4)               convergent
///   HarmonicEven sum_{n>=2} 1/n                    divergent
enum class SeriesId { BcTwoPoint, BConst, AConst, HarmonicEven };

constexpr std::string_view to_string(SeriesId id) noexcept
{
    switch (id) {
    case SeriesId::BcTwoPoint: return "bc_twopoint";
    case SeriesId::BConst: return "b_const";
    case SeriesId::AConst: return "a_const";
    case SeriesId::HarmonicEven: return "harmonic_even";
    }
    return "unknown";
}

constexpr std::uint64_t series_start(SeriesId id) noexcept
{
    return id == SeriesId::BcTwoPoint || id == SeriesId::HarmonicEven ? 2 : 1;
}

constexpr bool series_converges(SeriesId id) noexcept { return id != SeriesId::HarmonicEven; }

inline double series_term(SeriesId id, std::uint64_t n) noexcept
{
    const double x = static_cast<double>(n);
    switch (id) {
    case SeriesId::BcTwoPoint: {
        const double l = std::log(x);
        return std::exp(-l - std::sqrt(l));
    }
    case SeriesId::BConst: return std::pow(x, -17.0 / 16.0);
    case SeriesId::AConst: return std::pow(x, -5.0 / 4.0);
    case SeriesId::HarmonicEven: return 1.0 / x;
    }
    return 0.0;
}

namespace detail {
inline constexpr std::uint64_t kSeriesBlock = 1u << 16;
}

/// Sum of terms start..last in increasing n. Terms are grouped in fixed
/// blocks of 2^16, each compensated-summed, and block totals are combined in
/// block order, so the result does not depend on `threads`.
inline double partial_sum(SeriesId id, std::uint64_t last, unsigned threads = 1)
{
    const std::uint64_t first = series_start(id);
    if (last < first)
        throw Error(ErrorKind::BadIndex, "partial sum must end at or after the series start");
    const std::uint64_t blocks = (last - first) / detail::kSeriesBlock + 1;
    std::vector<double> block_sums(blocks);
    auto work = [&](std::uint64_t worker, std::uint64_t stride) {
        for (std::uint64_t b = worker; b < blocks; b += stride) {
            const std::uint64_t lo = first + b * detail::kSeriesBlock;
            const std::uint64_t hi = std::min(last, lo + detail::kSeriesBlock - 1);
            CompensatedSum s;
            for (std::uint64_t n = lo; n <= hi; ++n)
                s += series_term(id, n);
            block_sums[b] = s.value();
        }
    };
    threads = static_cast<unsigned>(std::clamp<std::uint64_t>(threads, 1, blocks));
    if (threads == 1) {
        work(0, 1);
    } else {
        std::vector<std::jthread> pool;
        for (unsigned w = 0; w < threads; ++w)
            pool.emplace_back(work, w, threads);
    }
    CompensatedSum total;
    for (double s : block_sums)
        total += s;
    return total.value();
}

/// Integral-test bound on sum_{n>N} term(n).
///
/// For n^-s: int_N^inf x^-s dx = N^(1-s)/(s-1). For the two-point series,
/// x^-1 e^(-sqrt(log x)) is decreasing on x > 1 and the substitution
/// u = log x gives 2 (sqrt(v) + 1) e^(-sqrt(v)) with v = log N; N >= 3 is
/// required there.
inline double tail_bound(SeriesId id, std::uint64_t last)
{
    if (!series_converges(id))
        throw Error(ErrorKind::DivergentSeries, "harmonic series has no finite tail");
    if (last < series_start(id))
        throw Error(ErrorKind::BadIndex, "tail bound index precedes the series start");
    const double x = static_cast<double>(last);
    switch (id) {
    case SeriesId::BcTwoPoint: {
        if (last < 3)
            throw Error(ErrorKind::BadIndex, "two-point tail bound needs N >= 3");
        const double w = std::sqrt(std::log(x));
        return 2.0 * (w + 1.0) * std::exp(-w);
    }
    case SeriesId::BConst: return 16.0 * std::pow(x, -1.0 / 16.0);
    case SeriesId::AConst: return 4.0 * std::pow(x, -1.0 / 4.0);
    case SeriesId::HarmonicEven: break;
    }
    return 0.0;
}

/// A series limit bracketed as [value, value + error].
struct SeriesConstant {
    double value;
    double error;
    std::uint64_t terms;

    double upper() const noexcept { return value + error; }
};

inline constexpr std::uint64_t kConstantTerms = 100'000'000;

/// Partial sum up to `terms` (stopping early once the tail bound drops
/// below 1e-6) with the tail bound as certified error.
inline SeriesConstant series_constant(SeriesId id, std::uint64_t terms, unsigned threads = default_threads())
{
    if (!series_converges(id))
        throw Error(ErrorKind::DivergentSeries, "harmonic series has no finite limit");
    // smallest n with tail_bound(n) < 1e-6, by inverting C n^(-e)
    double needed = std::numeric_limits<double>::infinity();
    if (id == SeriesId::AConst)
        needed = std::pow(4.0 / 1e-6, 4.0);
    else if (id == SeriesId::BConst)
        needed = std::pow(16.0 / 1e-6, 16.0);
    const std::uint64_t n = needed < static_cast<double>(terms) ? static_cast<std::uint64_t>(std::ceil(needed)) : terms;
    return {partial_sum(id, n, threads), tail_bound(id, n), n};
}

/// a = sum_n lambda_{2n+1}^4 = sum_{n>=1} n^(-5/4). Cached for the default size.
inline SeriesConstant constant_a(std::uint64_t terms = kConstantTerms)
{
    if (terms != kConstantTerms)
        return series_constant(SeriesId::AConst, terms);
    static const SeriesConstant cached = series_constant(SeriesId::AConst, kConstantTerms);
    return cached;
}

/// b = sum_n lambda_{2n+1} lambda_{2n} = sum_{n>=1} n^(-17/16). Cached for the default size.
inline SeriesConstant constant_b(std::uint64_t terms = kConstantTerms)
{
    if (terms != kConstantTerms)
        return series_constant(SeriesId::BConst, terms);
    static const SeriesConstant cached = series_constant(SeriesId::BConst, kConstantTerms);
    return cached;
}

} // namespace chaoslab
