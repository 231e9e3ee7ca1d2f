#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "chaoslab/mc_engine.hpp"
#include "chaoslab/poisson_example.hpp"
#include "chaoslab/poisson_moments.hpp"
#include "chaoslab/poisson_process.hpp"
#include "chaoslab/report.hpp"
#include "chaoslab/series.hpp"
#include "chaoslab/two_point.hpp"

/// Experiments behind the command-line tool. Each command is a pure function
/// of its options and returns a Report; the front end only parses flags and
/// prints.
namespace chaoslab::cli {

enum ExitCode : int { kPass = 0, kUsage = 1, kCheckFailure = 2, kResourceLimit = 3 };

/// Additive slack on analytic inequalities.
inline constexpr double kSlack = 1e-14;
/// Width of Monte Carlo acceptance bands, in standard errors.
inline constexpr double kSigmas = 3.0;

inline std::string join(const std::vector<double>& xs)
{
    std::string out;
    for (std::size_t i = 0; i < xs.size(); ++i)
        out += (i ? "," : "") + format_double(xs[i]);
    return out;
}

inline std::string label(const std::string& base, const std::vector<std::pair<std::string, std::string>>& kv)
{
    std::string out = base;
    for (const auto& [k, v] : kv)
        out += " " + k + "=" + v;
    return out;
}

// ---------------------------------------------------------------- moments

struct MomentsOptions {
    static std::vector<double> default_grid()
    {
        std::vector<double> g;
        for (int i = 1; i <= 100; ++i)
            g.push_back(i / 100.0);
        return g;
    }

    std::vector<double> lambdas = default_grid();
    std::uint32_t j_max = 20;
};

inline Report cmd_moments(const MomentsOptions& opt)
{
    Report rep{"moments", {{"lambda_grid", join(opt.lambdas)}, {"j_max", std::to_string(opt.j_max)}}, std::nullopt, {}};
    for (double lam : opt.lambdas) {
        if (!(lam > 0.0))
            throw Error(ErrorKind::DomainError, "lambda must be positive");
        const std::string ls = format_double(lam);
        for (std::uint32_t j = 0; j <= opt.j_max; ++j) {
            const CertifiedValue tail = poisson_tail(lam, j);
            const double bound = poisson_tail_majorant(lam, j);
            rep.add(label("P(Y>j) <= lambda^(j+1)/(j+1)!", {{"lambda", ls}, {"j", std::to_string(j)}}), tail.value,
                    bound + kSlack, tail.upper() <= bound + kSlack);
        }
        if (lam > 1.0)
            continue;
        const CertifiedValue c52 = abs_central_moment(lam, 2.5);
        const CertifiedValue r52 = raw_abs_moment(lam, 2.5);
        const CertifiedValue c1 = abs_central_moment(lam, 1.0);
        const CertifiedValue c4 = abs_central_moment(lam, 4.0);
        const CertifiedValue r4 = raw_abs_moment(lam, 4.0);
        rep.add(label("E|Y-lambda|^(5/2) <= sqrt(8) lambda", {{"lambda", ls}}), c52.value,
                std::sqrt(8.0) * lam + kSlack, c52.upper() <= std::sqrt(8.0) * lam + kSlack);
        rep.add(label("E(Y^(5/2)) <= sqrt(15) lambda", {{"lambda", ls}}), r52.value, std::sqrt(15.0) * lam + kSlack,
                r52.upper() <= std::sqrt(15.0) * lam + kSlack);
        rep.add(label("E|Y-lambda| <= 2 lambda", {{"lambda", ls}}), c1.value, 2.0 * lam + kSlack,
                c1.upper() <= 2.0 * lam + kSlack);
        rep.add(label("E(Y-lambda)^4 = 3 lambda^2 + lambda <= 4 lambda", {{"lambda", ls}}), central_moment_4(lam),
                4.0 * lam + kSlack, central_moment_4(lam) <= 4.0 * lam + kSlack);
        rep.add(label("E(Y^4) = lambda^4 + 6 lambda^3 + 7 lambda^2 + lambda <= 15 lambda", {{"lambda", ls}}),
                raw_moment_4(lam), 15.0 * lam + kSlack, raw_moment_4(lam) <= 15.0 * lam + kSlack);
        const double cs_lhs = c52.upper() * c52.upper();
        const double cs_rhs = central_moment_4(lam) * c1.upper();
        rep.add(label("(E|Y-lambda|^(5/2))^2 <= E(Y-lambda)^4 E|Y-lambda|", {{"lambda", ls}}), cs_lhs, cs_rhs + 1e-10,
                cs_lhs <= cs_rhs + 1e-10);
        const double rel_c4 = std::abs(c4.value - central_moment_4(lam)) / central_moment_4(lam);
        const double rel_r4 = std::abs(r4.value - raw_moment_4(lam)) / raw_moment_4(lam);
        rep.add(label("|series - (3 lambda^2 + lambda)| / closed form", {{"lambda", ls}}), rel_c4, 1e-12, rel_c4 <= 1e-12);
        rep.add(label("|series - (lambda^4 + 6 lambda^3 + 7 lambda^2 + lambda)| / closed form", {{"lambda", ls}}),
                rel_r4, 1e-12, rel_r4 <= 1e-12);
        const double rem = std::max({c52.remainder_bound, r52.remainder_bound, c1.remainder_bound,
                                     c4.remainder_bound, r4.remainder_bound});
        rep.add(label("max certified truncation remainder", {{"lambda", ls}}), rem, 1e-12, rem <= 1e-12);
    }
    return rep;
}

// ----------------------------------------------------------------- series

struct SeriesOptions {
    std::vector<SeriesId> series{SeriesId::BcTwoPoint, SeriesId::BConst, SeriesId::AConst, SeriesId::HarmonicEven};
    std::uint64_t n = 1'000'000;
    /// Terms used for the constants a and b.
    std::uint64_t constant_terms = kConstantTerms;
};

inline std::optional<SeriesId> parse_series(const std::string& name)
{
    for (SeriesId id : {SeriesId::BcTwoPoint, SeriesId::BConst, SeriesId::AConst, SeriesId::HarmonicEven})
        if (name == to_string(id))
            return id;
    return std::nullopt;
}

/// Smallest N with sum_{n=2}^N 1/n > threshold.
inline std::uint64_t harmonic_crossing(double threshold)
{
    CompensatedSum s;
    std::uint64_t n = 1;
    while (s.value() <= threshold)
        s += 1.0 / static_cast<double>(++n);
    return n;
}

inline Report cmd_series(const SeriesOptions& opt)
{
    std::string names;
    for (SeriesId id : opt.series)
        names += (names.empty() ? "" : ",") + std::string(to_string(id));
    Report rep{"series", {{"series", names}, {"n", std::to_string(opt.n)}}, std::nullopt, {}};
    const unsigned threads = default_threads();
    for (SeriesId id : opt.series) {
        const std::string name(to_string(id));
        const std::uint64_t n = std::max(opt.n, series_start(id));
        const double s_n = partial_sum(id, n, threads);
        rep.add(label("partial sum", {{"series", name}, {"N", std::to_string(n)}}), s_n, std::nullopt, true);
        if (!series_converges(id)) {
            rep.add(label("tail bound", {{"series", name}, {"status", "divergent, none"}}), std::nan(""), std::nullopt, true);
            rep.add(label("partial sum exceeds 5", {{"series", name}, {"N", std::to_string(n)}}), s_n, 5.0, s_n > 5.0);
            const std::uint64_t cross = harmonic_crossing(5.0);
            rep.add(label("first N with partial sum > 5", {{"series", name}}), static_cast<double>(cross), std::nullopt,
                    cross <= n);
            continue;
        }
        const std::uint64_t n_tail = id == SeriesId::BcTwoPoint ? std::max<std::uint64_t>(n, 3) : n;
        const double tail = tail_bound(id, n_tail);
        rep.add(label("tail bound", {{"series", name}, {"N", std::to_string(n_tail)}}), tail, std::nullopt, true);
        const std::uint64_t n2 = 10 * n_tail;
        const double s_lo = partial_sum(id, n_tail, threads);
        const double s_hi = partial_sum(id, n2, threads);
        rep.add(label("bracket S(N) <= S(10N) <= S(N) + tail(N)", {{"series", name}, {"N", std::to_string(n_tail)}}),
                s_hi, s_lo + tail, s_lo <= s_hi && s_hi <= s_lo + tail);
        if (id == SeriesId::BcTwoPoint) {
            bool decreasing = true;
            const std::uint64_t scan = std::min<std::uint64_t>(n2, 1'000'000);
            for (std::uint64_t k = 3; k < scan && decreasing; ++k)
                decreasing = series_term(id, k + 1) < series_term(id, k);
            rep.add(label("terms decreasing for 3 <= n", {{"series", name}, {"up_to", std::to_string(scan)}}),
                    decreasing ? 1.0 : 0.0, std::nullopt, decreasing);
        }
        if (id == SeriesId::AConst || id == SeriesId::BConst) {
            const SeriesConstant c = id == SeriesId::AConst ? constant_a(opt.constant_terms) : constant_b(opt.constant_terms);
            rep.add(label(id == SeriesId::AConst ? "constant a" : "constant b",
                          {{"terms", std::to_string(c.terms)}, {"bracket", "[value, value + error]"}}),
                    c.value, c.upper(), c.value <= c.upper());
        }
    }
    return rep;
}

// --------------------------------------------------------------- simulate

struct SimulateOptions {
    Example example = Example::Poisson;
    std::uint64_t n_max = 10'000;
    std::uint64_t reps = 100'000;
    std::uint64_t seed = 42;
    double epsilon = 1.0;
    unsigned threads = 0;
    double budget = 2e10;
};

struct SimulateResult {
    Report report;
    std::vector<CsvRow> csv;
};

/// Indices checked in the report: the first index and the powers of 4 from 4 on.
inline std::vector<std::uint64_t> check_grid(std::uint64_t start, std::uint64_t n_max)
{
    std::vector<std::uint64_t> g{start};
    for (std::uint64_t n = 4; n <= n_max; n *= 4)
        if (n > start)
            g.push_back(n);
    return g;
}

/// Diagnostic starting points: first index, then 10, 100, ... up to n_max.
inline std::vector<std::uint64_t> diagnostic_grid(std::uint64_t start, std::uint64_t n_max)
{
    std::vector<std::uint64_t> g{start};
    for (std::uint64_t n = 10; n <= n_max; n *= 10)
        if (n > start)
            g.push_back(n);
    if (g.back() != n_max)
        g.push_back(n_max);
    return g;
}

inline CsvRow mc_row(std::uint64_t n, std::string stat, const McEstimate& e)
{
    return {n, std::move(stat), e.mean, e.std_error, true};
}

inline bool within(const McEstimate& e, double target)
{
    return std::abs(e.mean - target) <= kSigmas * e.std_error.value_or(0.0);
}

inline SimulateResult cmd_simulate(const SimulateOptions& opt)
{
    SimConfig cfg;
    cfg.example = opt.example;
    cfg.n_max = opt.n_max;
    cfg.reps = opt.reps;
    cfg.master_seed = opt.seed;
    cfg.epsilon = opt.epsilon;
    cfg.threads = opt.threads;
    cfg.budget = opt.budget;
    const TrajectoryStats stats = run(cfg);
    const bool poisson = opt.example == Example::Poisson;
    const bool stochastic_checks = opt.reps >= 2;
    const std::string note = stochastic_checks ? "" : " (single replication, not evaluated)";

    SimulateResult out;
    Report& rep = out.report;
    rep.experiment = "simulate";
    rep.params = {{"example", std::string(to_string(opt.example))},
                  {"n_max", std::to_string(opt.n_max)},
                  {"reps", std::to_string(opt.reps)},
                  {"epsilon", format_double(opt.epsilon)}};
    rep.seed = opt.seed;

    const std::uint64_t start = first_n(opt.example);
    for (std::uint64_t n = start; n <= opt.n_max; ++n) {
        const McEstimate f = mean_F(stats, n);
        const McEstimate f2 = mean_F2(stats, n);
        const McEstimate l52 = mean_l52(stats, n);
        const McEstimate j1 = mean_J1(stats, n);
        const McEstimate eb = prob_event_b(stats, n);
        const double f2_exact = poisson ? poisson_example::second_moment_F(n) : two_point::second_moment_F(n);
        out.csv.push_back(mc_row(n, "F_mean", f));
        out.csv.push_back(mc_row(n, "F2_mean", f2));
        out.csv.push_back({n, "F2_exact", f2_exact, std::nullopt});
        out.csv.push_back(mc_row(n, "abs_F_5_2_mean", l52));
        if (poisson) {
            out.csv.push_back({n, "abs_F_5_2_exact", poisson_example::l52_exact(n).value, std::nullopt});
            out.csv.push_back({n, "abs_F_5_2_bound", poisson_example::l52_bound(n), std::nullopt});
        }
        out.csv.push_back(mc_row(n, "J1_mean", j1));
        out.csv.push_back(mc_row(n, "event_B_freq", eb));
        out.csv.push_back({n, "event_B_exact", exact_event_b_prob(opt.example, n), std::nullopt});
    }

    for (std::uint64_t n : check_grid(start, opt.n_max)) {
        const std::string ns = std::to_string(n);
        const McEstimate f = mean_F(stats, n);
        rep.add(label("E(F_n) = 0 within 3 stderr" + note, {{"n", ns}}), f.mean, 0.0,
                !stochastic_checks || within(f, 0.0), f.std_error);
        const McEstimate f2 = mean_F2(stats, n);
        const double f2_exact = poisson ? poisson_example::second_moment_F(n) : two_point::second_moment_F(n);
        rep.add(label(std::string(poisson ? "E(F_n^2) = lambda(1+lambda)" : "E(F_n^2) = p_{2n+1}") +
                          " within 3 stderr" + note,
                      {{"n", ns}}),
                f2.mean, f2_exact, !stochastic_checks || within(f2, f2_exact), f2.std_error);
        if (poisson) {
            const McEstimate l52 = mean_l52(stats, n);
            const double bound = poisson_example::l52_bound(n);
            rep.add(label("E|F_n|^(5/2) <= sqrt(120) n^(-1/8) + 3 stderr" + note, {{"n", ns}}), l52.mean, bound,
                    !stochastic_checks || l52.mean <= bound + kSigmas * *l52.std_error, l52.std_error);
            const CertifiedValue exact = poisson_example::l52_exact(n);
            rep.add(label("exact E|F_n|^(5/2) <= sqrt(120) n^(-1/8)", {{"n", ns}}), exact.value, bound,
                    exact.upper() <= bound + kSlack);
        }
    }

    if (poisson) {
        const McEstimate sup9 = sup_window(stats, 9.0);
        const double bound = poisson_example::tail_bound_M(9.0);
        rep.add(label("P(max_{n<=n_max} |F_n| > t) - 3 stderr <= bound" + note, {{"t", "9"}}), sup9.mean, bound,
                sup9.mean - kSigmas * sup9.std_error.value_or(0.0) <= bound, sup9.std_error);
    }

    const std::vector<std::uint64_t> dgrid = diagnostic_grid(start, opt.n_max);
    const std::vector<McEstimate> diag = as_diagnostic(stats, opt.epsilon, dgrid);
    bool nonincreasing = true;
    for (std::size_t i = 0; i < diag.size(); ++i) {
        out.csv.push_back(mc_row(dgrid[i], "sup_tail_gt_epsilon", diag[i]));
        if (i > 0)
            nonincreasing = nonincreasing && diag[i].mean <= diag[i - 1].mean;
        rep.add(label("P(sup_{n>=n0} |F_n| > epsilon)", {{"n0", std::to_string(dgrid[i])}}), diag[i].mean,
                std::nullopt, true, diag[i].std_error);
    }
    rep.add("a.s. diagnostic nonincreasing in n0", nonincreasing ? 1.0 : 0.0, std::nullopt, nonincreasing);

    for (const WindowReport& w : j1_divergence_report(stats)) {
        const std::string ws = "[" + std::to_string(w.window.lo) + "," + std::to_string(w.window.hi) + ")";
        out.csv.push_back(mc_row(w.window.lo, "window_event_B_freq", w.occurrence));
        out.csv.push_back({w.window.lo, "window_event_B_exact", w.exact_occurrence, std::nullopt});
        out.csv.push_back({w.window.lo, "window_max_event_abs_J1", w.max_event_j1, std::nullopt});
        out.csv.push_back({w.window.lo, "window_closed_form_J1_hi", w.closed_form_hi, std::nullopt});
        rep.add(label("P(Y_{2n}=1 for some n in window) within 3 stderr" + note, {{"window", ws}}), w.occurrence.mean,
                w.exact_occurrence, !stochastic_checks || within(w.occurrence, w.exact_occurrence),
                w.occurrence.std_error);
        const double tol = 1e-10 * (1.0 + w.closed_form_hi);
        rep.add(label("|J1| on {Y_{2n}=1} matches closed form", {{"window", ws}}), w.max_closed_form_gap, tol,
                w.max_closed_form_gap <= tol);
    }
    return out;
}

// -------------------------------------------------------------- decompose

struct DecomposeOptions {
    std::uint64_t n = 16;
    /// (Y_{2n}, Y_{2n+1}); sampled from the seed when absent.
    std::optional<std::pair<std::uint32_t, std::uint32_t>> counts;
    std::uint64_t seed = 42;
    std::uint64_t trajectory = 0;
};

inline Report cmd_decompose(const DecomposeOptions& opt)
{
    poisson_example::check_n(opt.n);
    const std::uint64_t even = 2 * opt.n;
    auto layout = std::make_shared<const IntervalLayout>(example_layout(even + 1));
    PpRealization r;
    Report rep{"decompose", {{"n", std::to_string(opt.n)}}, std::nullopt, {}};
    if (opt.counts) {
        std::vector<std::uint32_t> counts(layout->size(), 0);
        counts[layout->position(even)] = opt.counts->first;
        counts[layout->position(even + 1)] = opt.counts->second;
        r = manual_realization(layout, std::move(counts));
        rep.params.emplace_back("counts", std::to_string(opt.counts->first) + "," + std::to_string(opt.counts->second));
    } else {
        r = realize(layout, opt.seed, opt.trajectory);
        rep.seed = opt.seed;
        rep.params.emplace_back("trajectory", std::to_string(opt.trajectory));
        rep.params.emplace_back("counts", std::to_string(r.count(even)) + "," + std::to_string(r.count(even + 1)));
    }
    const ChaosDecomposition d = decompose_F(opt.n, r);
    rep.add("J0", d.j0, std::nullopt, true);
    rep.add("J1 = I1(lambda_{2n+1} lambda_{2n}^(-1/2) 1_{A_2n})", d.j1, std::nullopt, true);
    rep.add("J2 = I2(f_n)", d.j2, std::nullopt, true);
    rep.add("F = X_{2n} Y_{2n+1}", d.f, std::nullopt, true);
    const double tol = 1e-10 * std::max(1.0, std::abs(d.f));
    rep.add("residual |J0 + J1 + J2 - F|", d.residual(), tol, d.residual() <= tol);
    return rep;
}

// ------------------------------------------------------------------- tail

struct TailOptions {
    std::vector<double> t_grid{9.0, 16.0, 25.0, 100.0};
    std::uint64_t n_max = 10'000;
    std::uint64_t reps = 100'000;
    std::uint64_t seed = 42;
    unsigned threads = 0;
    double budget = 2e10;
};

inline Report cmd_tail(const TailOptions& opt)
{
    if (opt.t_grid.empty())
        throw Error(ErrorKind::DomainError, "t grid is empty");
    for (double t : opt.t_grid)
        if (!(t > 0.0))
            throw Error(ErrorKind::DomainError, "thresholds must be positive");
    SimConfig cfg;
    cfg.example = Example::Poisson;
    cfg.n_max = opt.n_max;
    cfg.reps = opt.reps;
    cfg.master_seed = opt.seed;
    cfg.threads = opt.threads;
    cfg.budget = opt.budget;
    const TrajectoryStats stats = run(cfg);
    Report rep{"tail",
               {{"t_grid", join(opt.t_grid)}, {"n_max", std::to_string(opt.n_max)}, {"reps", std::to_string(opt.reps)}},
               opt.seed,
               {}};
    for (double t : opt.t_grid) {
        const McEstimate e = sup_window(stats, t);
        const std::string ts = format_double(t);
        if (t < 9.0) {
            rep.add(label("P(max_{n<=n_max} |F_n| > t) [bound not applicable (t < 9)]", {{"t", ts}}), e.mean,
                    std::nullopt, true, e.std_error);
            continue;
        }
        const double bound = poisson_example::tail_bound_M(t);
        rep.add(label("P(max_{n<=n_max} |F_n| > t) - 3 stderr <= bound", {{"t", ts}}), e.mean, bound,
                e.mean - kSigmas * e.std_error.value_or(0.0) <= bound, e.std_error);
    }
    return rep;
}

} // namespace chaoslab::cli
