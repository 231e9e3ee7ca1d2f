// chaoslab: command-line front end for the chaos-sum experiments.

#include <cmath>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <limits>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "chaoslab/commands.hpp"

namespace {

using namespace chaoslab;
using namespace chaoslab::cli;

// Counts given as doubles so that "1e6" is accepted.
std::uint64_t as_count(double x, const char* flag)
{
    if (!(x >= 0.0) || x != std::floor(x) || x > 1.8e19)
        throw CLI::ValidationError(flag, "expected a nonnegative integer");
    return static_cast<std::uint64_t>(x);
}

int emit(const Report& report, const std::string& format)
{
    if (format == "json")
        std::cout << to_json(report).dump(2) << '\n';
    else
        std::cout << to_text(report);
    return report.passed() ? kPass : kCheckFailure;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Chaos-sum counterexamples: exact checks and reproducible Monte Carlo"};
    app.require_subcommand(1);
    std::string format = "text";
    app.add_option("--format", format, "Report format")->check(CLI::IsMember({"text", "json"}));

    // moments
    auto* moments = app.add_subcommand("moments", "Poisson tail and moment inequalities on a lambda grid");
    std::vector<double> lambda_grid = MomentsOptions::default_grid();
    std::uint32_t j_max = 20;
    moments->add_option("--lambda-grid", lambda_grid, "Comma-separated intensities")->delimiter(',');
    moments->add_option("--j-max", j_max, "Largest tail index j");

    // series
    auto* series = app.add_subcommand("series", "Partial sums, tail bounds and the constants a, b");
    std::string series_name = "all";
    double series_n = 1e6;
    series->add_option("--series", series_name, "bc_twopoint | b_const | a_const | harmonic_even | all");
    series->add_option("--n", series_n, "Partial-sum length N");

    // simulate
    auto* simulate = app.add_subcommand("simulate", "Monte Carlo trajectories of F_n");
    std::string example = "poisson";
    double sim_n_max = 1e4, sim_reps = 1e5, sim_budget = 2e10;
    std::uint64_t sim_seed = 42;
    double sim_epsilon = std::numeric_limits<double>::quiet_NaN();
    std::string csv_out;
    simulate->add_option("--example", example, "twopoint | poisson")->check(CLI::IsMember({"twopoint", "poisson"}));
    simulate->add_option("--n-max", sim_n_max, "Trajectory length");
    simulate->add_option("--reps", sim_reps, "Replications");
    simulate->add_option("--seed", sim_seed, "Master seed");
    simulate->add_option("--epsilon", sim_epsilon, "Threshold of the a.s. diagnostic (default 1, or 0.1 for twopoint)");
    simulate->add_option("--out", csv_out, "Write per-index CSV here");
    simulate->add_option("--budget", sim_budget, "Upper limit on reps * n_max");

    // decompose
    auto* decompose = app.add_subcommand("decompose", "Chaos decomposition of F_n for given or sampled counts");
    double dec_n = 16;
    std::vector<std::uint32_t> dec_counts;
    std::uint64_t dec_seed = 42, dec_traj = 0;
    decompose->add_option("--n", dec_n, "Index n");
    auto* counts_opt = decompose->add_option("--counts", dec_counts, "Y_{2n},Y_{2n+1}")->delimiter(',')->expected(2);
    auto* seed_opt = decompose->add_option("--seed", dec_seed, "Sample counts from this master seed");
    decompose->add_option("--trajectory", dec_traj, "Trajectory id for sampled counts");
    counts_opt->excludes(seed_opt);

    // tail
    auto* tail = app.add_subcommand("tail", "Window-sup exceedance of F_n versus the bound on P(M > t)");
    std::vector<double> t_grid{9, 16, 25, 100};
    double tail_n_max = 1e4, tail_reps = 1e5, tail_budget = 2e10;
    std::uint64_t tail_seed = 42;
    tail->add_option("--t-grid", t_grid, "Comma-separated thresholds")->delimiter(',');
    tail->add_option("--n-max", tail_n_max, "Trajectory length");
    tail->add_option("--reps", tail_reps, "Replications");
    tail->add_option("--seed", tail_seed, "Master seed");
    tail->add_option("--budget", tail_budget, "Upper limit on reps * n_max");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kUsage;
    }

    try {
        if (*moments) {
            if (lambda_grid.empty())
                throw CLI::ValidationError("--lambda-grid", "empty grid");
            return emit(cmd_moments({lambda_grid, j_max}), format);
        }
        if (*series) {
            SeriesOptions opt;
            opt.n = as_count(series_n, "--n");
            if (series_name != "all") {
                const auto id = parse_series(series_name);
                if (!id)
                    throw CLI::ValidationError("--series", "unknown series " + series_name);
                opt.series = {*id};
            }
            return emit(cmd_series(opt), format);
        }
        if (*simulate) {
            SimulateOptions opt;
            opt.example = example == "twopoint" ? Example::TwoPoint : Example::Poisson;
            opt.n_max = as_count(sim_n_max, "--n-max");
            opt.reps = as_count(sim_reps, "--reps");
            opt.seed = sim_seed;
            opt.epsilon = std::isnan(sim_epsilon) ? (opt.example == Example::TwoPoint ? 0.1 : 1.0) : sim_epsilon;
            opt.budget = sim_budget;
            const SimulateResult result = cmd_simulate(opt);
            if (!csv_out.empty()) {
                std::ofstream out(csv_out, std::ios::binary);
                if (!out)
                    throw CLI::ValidationError("--out", "cannot open " + csv_out);
                out << to_csv(result.csv);
            }
            return emit(result.report, format);
        }
        if (*decompose) {
            DecomposeOptions opt;
            opt.n = as_count(dec_n, "--n");
            opt.seed = dec_seed;
            opt.trajectory = dec_traj;
            if (!dec_counts.empty())
                opt.counts = {{dec_counts[0], dec_counts[1]}};
            return emit(cmd_decompose(opt), format);
        }
        if (*tail) {
            TailOptions opt;
            opt.t_grid = t_grid;
            opt.n_max = as_count(tail_n_max, "--n-max");
            opt.reps = as_count(tail_reps, "--reps");
            opt.seed = tail_seed;
            opt.budget = tail_budget;
            return emit(cmd_tail(opt), format);
        }
    } catch (const CLI::ValidationError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kUsage;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return e.kind() == ErrorKind::ResourceLimit ? kResourceLimit : kUsage;
    }
    return kUsage;
}
