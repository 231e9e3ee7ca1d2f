#pragma once

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdint>
#include <optional>
#include <span>
#include <string_view>
#include <thread>
#include <vector>

#include "chaoslab/concurrency.hpp"
#include "chaoslab/error.hpp"
#include "chaoslab/kernels.hpp"
#include "chaoslab/numeric.hpp"
#include "chaoslab/poisson_example.hpp"
#include "chaoslab/rng.hpp"
#include "chaoslab/two_point.hpp"
#include "chaoslab/variables.hpp"

namespace chaoslab {

enum class Example { TwoPoint, Poisson };

constexpr std::string_view to_string(Example e) noexcept
{
    return e == Example::TwoPoint ? "twopoint" : "poisson";
}

constexpr std::uint64_t first_n(Example e) noexcept
{
    return e == Example::TwoPoint ? two_point::kFirstN : poisson_example::kFirstN;
}

/// Half-open index window [lo, hi).
struct Window {
    std::uint64_t lo;
    std::uint64_t hi;

    friend bool operator==(const Window&, const Window&) = default;
};

struct SimConfig {
    Example example = Example::Poisson;
    std::uint64_t n_max = 10'000;
    std::uint64_t reps = 100'000;
    std::uint64_t master_seed = 42;
    double epsilon = 1.0;
    /// Trajectory ids are first_replication .. first_replication + reps - 1.
    std::uint64_t first_replication = 0;
    /// 0 means default_threads().
    unsigned threads = 0;
    /// Upper limit on reps * (number of indices n).
    double budget = 2e10;
    /// Disjoint windows for the projection-divergence report; empty selects
    /// [10 2^k, 10 2^(k+1)) for every such window inside the index range.
    std::vector<Window> windows;
};

/// Monte Carlo point estimate. std_error is absent for a single replication.
struct McEstimate {
    double mean;
    std::optional<double> std_error;
    std::uint64_t reps;
    std::uint64_t seed;
};

/// Exact per-index sums over trajectories.
struct IndexSums {
    ExactSum f, f2, f4, l52, l52_sq, j1, j1_sq;
    /// Trajectories with Y_{2n} = 1.
    std::uint64_t event_b = 0;

    IndexSums& operator+=(const IndexSums& o) noexcept
    {
        f += o.f;
        f2 += o.f2;
        f4 += o.f4;
        l52 += o.l52;
        l52_sq += o.l52_sq;
        j1 += o.j1;
        j1_sq += o.j1_sq;
        event_b += o.event_b;
        return *this;
    }

    friend bool operator==(const IndexSums&, const IndexSums&) = default;
};

struct WindowSums {
    Window window;
    /// Trajectories with Y_{2n} = 1 for some n in the window.
    std::uint64_t occurrences = 0;
    double max_abs_j1 = 0.0;
    /// Largest |J_1| observed on {Y_{2n} = 1} and its largest deviation from the closed form.
    double max_event_j1 = 0.0;
    double max_closed_form_gap = 0.0;

    friend bool operator==(const WindowSums&, const WindowSums&) = default;
};

/// Aggregates of one run. Identical configs give identical (==) stats.
struct TrajectoryStats {
    SimConfig config;
    std::vector<IndexSums> per_index;   ///< position n - first_n
    std::vector<double> window_sup;     ///< per trajectory max_n |F_n|
    std::vector<std::uint32_t> last_exceedance; ///< per trajectory last n with |F_n| > epsilon, 0 if none
    std::vector<WindowSums> windows;

    std::uint64_t start() const noexcept { return first_n(config.example); }

    const IndexSums& at(std::uint64_t n) const
    {
        if (n < start() || n > config.n_max)
            throw Error(ErrorKind::BadIndex, "index outside the simulated range");
        return per_index[n - start()];
    }

    bool same_aggregates(const TrajectoryStats& o) const
    {
        return per_index == o.per_index && window_sup == o.window_sup && last_exceedance == o.last_exceedance &&
               windows == o.windows;
    }
};

namespace detail {

inline McEstimate estimate_from_sums(const ExactSum& s1, const ExactSum& s2, std::uint64_t reps, std::uint64_t seed)
{
    const double r = static_cast<double>(reps);
    const double mean = s1.value() / r;
    if (reps < 2)
        return {mean, std::nullopt, reps, seed};
    const double var = std::max(0.0, (s2.value() - r * mean * mean) / (r - 1.0));
    return {mean, std::sqrt(var / r), reps, seed};
}

inline McEstimate frequency(std::uint64_t hits, std::uint64_t reps, std::uint64_t seed)
{
    const double r = static_cast<double>(reps);
    const double p = static_cast<double>(hits) / r;
    if (reps < 2)
        return {p, std::nullopt, reps, seed};
    return {p, std::sqrt(p * (1.0 - p) / r), reps, seed};
}

inline std::vector<Window> default_windows(std::uint64_t start, std::uint64_t n_max)
{
    std::vector<Window> out;
    for (std::uint64_t lo = 10; 2 * lo - 1 <= n_max; lo *= 2)
        if (lo >= start)
            out.push_back({lo, 2 * lo});
    if (out.empty())
        out.push_back({start, n_max + 1});
    return out;
}

// Per-index constants shared by all trajectories.
//   TwoPoint: {p, value_plus, value_minus}, mix = sqrt(p_odd (1 - p_odd))
//   Poisson:  {lambda, e^-lambda, sqrt(lambda)}, mix = sqrt(lambda_odd)
struct IndexParams {
    double even[3];
    double odd[3];
    double mix;
    double closed_form; // |J_1| on {Y_{2n} = 1}
    int window;         // -1 when in no window
};

} // namespace detail

inline void validate(const SimConfig& c)
{
    const std::uint64_t start = first_n(c.example);
    if (c.n_max < start)
        throw Error(ErrorKind::DomainError, "n_max precedes the first index");
    if (c.reps < 1)
        throw Error(ErrorKind::DomainError, "at least one replication is required");
    if (!(c.epsilon > 0.0))
        throw Error(ErrorKind::DomainError, "epsilon must be positive");
    if (c.n_max >= (1u << 30))
        throw Error(ErrorKind::ResourceLimit, "n_max exceeds the stream index range");
    const double work = static_cast<double>(c.reps) * static_cast<double>(c.n_max - start + 1);
    if (work > c.budget)
        throw Error(ErrorKind::ResourceLimit, "reps * n_max exceeds the configured budget");
    for (const Window& w : c.windows)
        if (w.lo < start || w.hi <= w.lo || w.hi > c.n_max + 1)
            throw Error(ErrorKind::DomainError, "window outside the simulated range");
}

/// Simulates `config.reps` independent trajectories of (F_n) for n up to n_max.
///
/// Variable Y_k of trajectory r is drawn from Stream(master_seed, r, k), one
/// uniform each. Trajectories are distributed over workers in chunks; every
/// aggregate is an exact sum or a max, so the result is bitwise independent
/// of the thread count and of scheduling.
inline TrajectoryStats run(SimConfig config)
{
    validate(config);
    const std::uint64_t start = first_n(config.example);
    const std::uint64_t count = config.n_max - start + 1;
    if (config.windows.empty())
        config.windows = detail::default_windows(start, config.n_max);

    std::vector<detail::IndexParams> params(count);
    std::vector<Window> sorted = config.windows;
    std::sort(sorted.begin(), sorted.end(), [](auto& a, auto& b) { return a.lo < b.lo; });
    for (std::size_t i = 1; i < sorted.size(); ++i)
        if (sorted[i].lo < sorted[i - 1].hi)
            throw Error(ErrorKind::DomainError, "windows must be disjoint");
    for (std::uint64_t i = 0; i < count; ++i) {
        const std::uint64_t n = start + i;
        auto& p = params[i];
        if (config.example == Example::TwoPoint) {
            const TwoPointSpec e = two_point::spec(2 * n);
            const TwoPointSpec o = two_point::spec(2 * n + 1);
            p = {{e.p, e.value_plus, e.value_minus}, {o.p, o.value_plus, o.value_minus},
                 std::sqrt(o.p * (1.0 - o.p)), two_point::J1_on_plus(n), -1};
        } else {
            const double le = poisson_example::param_lambda(2 * n);
            const double lo = poisson_example::param_lambda(2 * n + 1);
            p = {{le, std::exp(-le), std::sqrt(le)}, {lo, std::exp(-lo), std::sqrt(lo)},
                 std::sqrt(lo), poisson_example::J1_on_one(n), -1};
        }
        for (std::size_t w = 0; w < config.windows.size(); ++w)
            if (n >= config.windows[w].lo && n < config.windows[w].hi)
                p.window = static_cast<int>(w);
    }

    TrajectoryStats stats;
    stats.config = config;
    stats.window_sup.assign(config.reps, 0.0);
    stats.last_exceedance.assign(config.reps, 0);

    struct Partial {
        std::vector<IndexSums> sums;
        std::vector<WindowSums> windows;
    };
    const unsigned threads = static_cast<unsigned>(
        std::clamp<std::uint64_t>(config.threads == 0 ? default_threads() : config.threads, 1, config.reps));
    std::vector<Partial> partials(threads);
    constexpr std::uint64_t kChunk = 64;
    std::atomic<std::uint64_t> next_chunk{0};
    const bool two_point_example = config.example == Example::TwoPoint;
    const std::size_t n_windows = config.windows.size();

    auto worker = [&](unsigned id) {
        Partial& part = partials[id];
        part.sums.assign(count, IndexSums{});
        part.windows.resize(n_windows);
        for (std::size_t w = 0; w < n_windows; ++w)
            part.windows[w].window = config.windows[w];
        std::vector<char> occurred(n_windows);
        for (;;) {
            const std::uint64_t chunk = next_chunk.fetch_add(1);
            const std::uint64_t lo = chunk * kChunk;
            if (lo >= config.reps)
                break;
            const std::uint64_t hi = std::min(config.reps, lo + kChunk);
            for (std::uint64_t local = lo; local < hi; ++local) {
                const std::uint64_t traj = config.first_replication + local;
                std::fill(occurred.begin(), occurred.end(), 0);
                double sup = 0.0;
                std::uint32_t last = 0;
                for (std::uint64_t i = 0; i < count; ++i) {
                    const std::uint64_t n = start + i;
                    const detail::IndexParams& p = params[i];
                    Stream se(config.master_seed, traj, static_cast<std::uint32_t>(2 * n));
                    Stream so(config.master_seed, traj, static_cast<std::uint32_t>(2 * n + 1));
                    const double ue = se.uniform();
                    const double uo = so.uniform();
                    double x_even, f, j1;
                    bool event;
                    double x_odd;
                    if (two_point_example) {
                        event = ue < p.even[0];
                        x_even = event ? p.even[1] : p.even[2];
                        x_odd = uo < p.odd[0] ? p.odd[1] : p.odd[2];
                    } else {
                        const std::uint32_t ye = poisson_from_uniform(p.even[0], p.even[1], ue);
                        const std::uint32_t yo = poisson_from_uniform(p.odd[0], p.odd[1], uo);
                        event = ye == 1;
                        x_even = (static_cast<double>(ye) - p.even[0]) / p.even[2];
                        x_odd = (static_cast<double>(yo) - p.odd[0]) / p.odd[2];
                    }
                    j1 = p.odd[0] * x_even;
                    f = j1 + p.mix * x_even * x_odd;
                    IndexSums& s = part.sums[i];
                    const double af = std::abs(f);
                    if (af != 0.0) {
                        const double f2 = f * f;
                        const double l52 = f2 * std::sqrt(af);
                        s.f += f;
                        s.f2 += f2;
                        s.f4 += f2 * f2;
                        s.l52 += l52;
                        s.l52_sq += l52 * l52;
                        sup = std::max(sup, af);
                        if (af > config.epsilon)
                            last = static_cast<std::uint32_t>(n);
                    }
                    s.j1 += j1;
                    s.j1_sq += j1 * j1;
                    if (event)
                        ++s.event_b;
                    if (p.window >= 0) {
                        WindowSums& w = part.windows[static_cast<std::size_t>(p.window)];
                        const double aj = std::abs(j1);
                        w.max_abs_j1 = std::max(w.max_abs_j1, aj);
                        if (event) {
                            occurred[static_cast<std::size_t>(p.window)] = 1;
                            w.max_event_j1 = std::max(w.max_event_j1, aj);
                            w.max_closed_form_gap = std::max(w.max_closed_form_gap, std::abs(aj - p.closed_form));
                        }
                    }
                }
                stats.window_sup[local] = sup;
                stats.last_exceedance[local] = last;
                for (std::size_t w = 0; w < n_windows; ++w)
                    part.windows[w].occurrences += static_cast<std::uint64_t>(occurred[w]);
            }
        }
    };

    if (threads == 1) {
        worker(0);
    } else {
        std::vector<std::jthread> pool;
        for (unsigned id = 0; id < threads; ++id)
            pool.emplace_back(worker, id);
    }

    stats.per_index.assign(count, IndexSums{});
    stats.windows.resize(n_windows);
    for (std::size_t w = 0; w < n_windows; ++w)
        stats.windows[w].window = config.windows[w];
    for (const Partial& part : partials) {
        if (part.sums.empty())
            continue;
        for (std::uint64_t i = 0; i < count; ++i)
            stats.per_index[i] += part.sums[i];
        for (std::size_t w = 0; w < n_windows; ++w) {
            WindowSums& dst = stats.windows[w];
            const WindowSums& src = part.windows[w];
            dst.occurrences += src.occurrences;
            dst.max_abs_j1 = std::max(dst.max_abs_j1, src.max_abs_j1);
            dst.max_event_j1 = std::max(dst.max_event_j1, src.max_event_j1);
            dst.max_closed_form_gap = std::max(dst.max_closed_form_gap, src.max_closed_form_gap);
        }
    }
    return stats;
}

/// Combines runs over consecutive replication ranges into the aggregates of
/// one run over the union.
inline TrajectoryStats merge(const TrajectoryStats& a, const TrajectoryStats& b)
{
    const SimConfig& ca = a.config;
    const SimConfig& cb = b.config;
    if (ca.example != cb.example || ca.n_max != cb.n_max || ca.master_seed != cb.master_seed ||
        ca.epsilon != cb.epsilon || ca.windows != cb.windows || cb.first_replication != ca.first_replication + ca.reps)
        throw Error(ErrorKind::DomainError, "runs must share a config and cover consecutive replications");
    TrajectoryStats out = a;
    out.config.reps = ca.reps + cb.reps;
    for (std::size_t i = 0; i < out.per_index.size(); ++i)
        out.per_index[i] += b.per_index[i];
    out.window_sup.insert(out.window_sup.end(), b.window_sup.begin(), b.window_sup.end());
    out.last_exceedance.insert(out.last_exceedance.end(), b.last_exceedance.begin(), b.last_exceedance.end());
    for (std::size_t w = 0; w < out.windows.size(); ++w) {
        WindowSums& dst = out.windows[w];
        const WindowSums& src = b.windows[w];
        dst.occurrences += src.occurrences;
        dst.max_abs_j1 = std::max(dst.max_abs_j1, src.max_abs_j1);
        dst.max_event_j1 = std::max(dst.max_event_j1, src.max_event_j1);
        dst.max_closed_form_gap = std::max(dst.max_closed_form_gap, src.max_closed_form_gap);
    }
    return out;
}

// Per-index estimators.

inline McEstimate mean_F(const TrajectoryStats& s, std::uint64_t n)
{
    const IndexSums& x = s.at(n);
    return detail::estimate_from_sums(x.f, x.f2, s.config.reps, s.config.master_seed);
}

inline McEstimate mean_F2(const TrajectoryStats& s, std::uint64_t n)
{
    const IndexSums& x = s.at(n);
    return detail::estimate_from_sums(x.f2, x.f4, s.config.reps, s.config.master_seed);
}

inline McEstimate mean_l52(const TrajectoryStats& s, std::uint64_t n)
{
    const IndexSums& x = s.at(n);
    return detail::estimate_from_sums(x.l52, x.l52_sq, s.config.reps, s.config.master_seed);
}

inline McEstimate mean_J1(const TrajectoryStats& s, std::uint64_t n)
{
    const IndexSums& x = s.at(n);
    return detail::estimate_from_sums(x.j1, x.j1_sq, s.config.reps, s.config.master_seed);
}

inline McEstimate prob_event_b(const TrajectoryStats& s, std::uint64_t n)
{
    return detail::frequency(s.at(n).event_b, s.config.reps, s.config.master_seed);
}

/// P(max_{n <= n_max} |F_n| > t), a lower bound on P(M > t).
inline McEstimate sup_window(const TrajectoryStats& s, double t)
{
    if (!(t > 0.0))
        throw Error(ErrorKind::DomainError, "threshold must be positive");
    const auto hits = static_cast<std::uint64_t>(
        std::count_if(s.window_sup.begin(), s.window_sup.end(), [t](double m) { return m > t; }));
    return detail::frequency(hits, s.config.reps, s.config.master_seed);
}

/// P(sup_{n0 <= n <= n_max} |F_n| > epsilon) for each n0 of the grid.
/// The threshold is fixed at simulation time, so epsilon must match the config.
inline std::vector<McEstimate> as_diagnostic(const TrajectoryStats& s, double epsilon, std::span<const std::uint64_t> grid)
{
    if (epsilon != s.config.epsilon)
        throw Error(ErrorKind::DomainError, "diagnostic epsilon differs from the simulated threshold");
    std::vector<McEstimate> out;
    for (std::uint64_t n0 : grid) {
        if (n0 < s.start() || n0 > s.config.n_max)
            throw Error(ErrorKind::BadIndex, "diagnostic start outside the simulated range");
        const auto hits = static_cast<std::uint64_t>(std::count_if(
            s.last_exceedance.begin(), s.last_exceedance.end(), [n0](std::uint32_t last) { return last >= n0; }));
        out.push_back(detail::frequency(hits, s.config.reps, s.config.master_seed));
    }
    return out;
}

struct WindowReport {
    Window window;
    McEstimate occurrence;            ///< empirical P(Y_{2n} = 1 for some n in window)
    double exact_occurrence;          ///< 1 - prod (1 - P(Y_{2n} = 1))
    double max_abs_j1;
    double max_event_j1;
    double max_closed_form_gap;       ///< 0 up to rounding when |J_1| matches its closed form
    double closed_form_lo;            ///< closed form |J_1| at the window's first index
    double closed_form_hi;            ///< ... and at its last index
};

inline double exact_event_b_prob(Example e, std::uint64_t n)
{
    if (e == Example::TwoPoint)
        return two_point::event_prob_B(n);
    return poisson_example::event_probs(n).p_B;
}

inline double j1_closed_form(Example e, std::uint64_t n)
{
    return e == Example::TwoPoint ? two_point::J1_on_plus(n) : poisson_example::J1_on_one(n);
}

inline std::vector<WindowReport> j1_divergence_report(const TrajectoryStats& s)
{
    std::vector<WindowReport> out;
    for (const WindowSums& w : s.windows) {
        double none = 1.0;
        for (std::uint64_t n = w.window.lo; n < w.window.hi; ++n)
            none *= 1.0 - exact_event_b_prob(s.config.example, n);
        out.push_back({w.window,
                       detail::frequency(w.occurrences, s.config.reps, s.config.master_seed),
                       1.0 - none,
                       w.max_abs_j1,
                       w.max_event_j1,
                       w.max_closed_form_gap,
                       j1_closed_form(s.config.example, w.window.lo),
                       j1_closed_form(s.config.example, w.window.hi - 1)});
    }
    return out;
}

/// Monte Carlo estimate of E(M_n^2) for a finite kernel, with n its largest
/// index and X_j i.i.d. two-point variables; X_j of replication r comes from
/// Stream(seed, r, j).
inline McEstimate kernel_second_moment_mc(const Kernel& kernel, const TwoPointSpec& spec, std::uint64_t reps, std::uint64_t seed)
{
    const std::size_t n = kernel.max_index();
    std::vector<double> x(n);
    ExactSum s1, s2;
    for (std::uint64_t r = 0; r < reps; ++r) {
        for (std::size_t j = 1; j <= n; ++j) {
            Stream stream(seed, r, static_cast<std::uint32_t>(j));
            x[j - 1] = sample_two_point(spec, stream).x;
        }
        const double m = partial_sum_M(kernel, x);
        s1 += m * m;
        s2 += m * m * m * m;
    }
    return detail::estimate_from_sums(s1, s2, reps, seed);
}

} // namespace chaoslab
