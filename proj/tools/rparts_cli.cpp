// rparts command line: exact counting, bijection maps, asymptotic tables,
// random sampling, and the experiment drivers.
//
// Exit codes: 0 success, 1 usage/input error, 2 resource-cap refusal.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "rparts/asymptotics.hpp"
#include "rparts/counting.hpp"
#include "rparts/experiments.hpp"
#include "rparts/partition.hpp"
#include "rparts/sampling.hpp"

namespace {

using namespace rparts;

std::vector<std::string> gather_inputs(const std::vector<std::string>& args)
{
    if (!args.empty())
        return args;
    std::vector<std::string> lines;
    std::string line;
    while (std::getline(std::cin, line))
        lines.push_back(line);
    return lines;
}

void write_out(const std::string& path, const std::string& payload)
{
    if (path.empty()) {
        std::fputs(payload.c_str(), stdout);
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw std::runtime_error("cannot open output file: " + path);
    out << payload;
}

int run(int argc, char** argv)
{
    CLI::App app{"partitions with nonnegative r-th differences: exact counts, "
                 "bijection, asymptotics, samplers, experiments"};
    app.require_subcommand(1);

    // ---- diff ----------------------------------------------------------
    unsigned diff_r = 1;
    std::vector<std::string> diff_inputs;
    auto* diff_cmd = app.add_subcommand("diff", "print the r-th differences of partitions");
    diff_cmd->add_option("--r", diff_r, "difference order")->required();
    diff_cmd->add_option("partitions", diff_inputs, "partitions as '6,3,1' (default: stdin)");

    // ---- map -----------------------------------------------------------
    unsigned map_r = 1;
    bool map_inverse = false;
    std::vector<std::string> map_inputs;
    auto* map_cmd = app.add_subcommand(
        "map", "apply the bijection: partition -> 'part^mult+...' (or back with --inverse; "
               "inputs containing '^' are inverted automatically)");
    map_cmd->add_option("--r", map_r, "difference order")->required();
    map_cmd->add_flag("--inverse", map_inverse, "map multiplicity form back to a partition");
    map_cmd->add_option("inputs", map_inputs, "inputs (default: stdin)");

    // ---- count ---------------------------------------------------------
    unsigned count_r = 1;
    std::optional<std::uint64_t> count_n;
    std::optional<std::uint64_t> count_nmax;
    std::uint64_t count_cap = kDefaultTableCap;
    auto* count_cmd = app.add_subcommand(
        "count", "exact p_r(n); --n prints one count, --n-max emits CSV n,r,p_r_exact");
    count_cmd->add_option("--r", count_r, "difference order")->required();
    count_cmd->add_option("--n", count_n, "single weight");
    count_cmd->add_option("--n-max", count_nmax, "emit the whole table 0..n_max");
    count_cmd->add_option("--table-cap", count_cap, "count-table resource cap");

    // ---- delta ---------------------------------------------------------
    unsigned delta_r = 1;
    std::uint64_t delta_m = 1;
    std::vector<std::uint64_t> delta_ns;
    auto* delta_cmd = app.add_subcommand(
        "delta", "exact average number of r-th differences >= m; CSV n,r,m,numerator,denominator,value");
    delta_cmd->add_option("--r", delta_r, "difference order")->required();
    delta_cmd->add_option("--m", delta_m, "multiplicity threshold");
    delta_cmd->add_option("--n", delta_ns, "weights")->required()->delimiter(',');

    // ---- sample --------------------------------------------------------
    std::uint64_t sample_n = 0, sample_count = 1, sample_seed = 1;
    unsigned sample_r = 1;
    std::string sample_method = "reject";
    auto* sample_cmd = app.add_subcommand(
        "sample", "draw uniform partitions of n into binomial parts; one 'part^mult+...' line "
                  "per sample, then a JSON summary line");
    sample_cmd->add_option("--n", sample_n, "target weight")->required();
    sample_cmd->add_option("--r", sample_r, "difference order")->required();
    sample_cmd->add_option("--count", sample_count, "number of samples");
    sample_cmd->add_option("--seed", sample_seed, "RNG seed");
    sample_cmd->add_option("--method", sample_method, "reject | exact")
        ->check(CLI::IsMember({"reject", "exact"}));

    // ---- asym ----------------------------------------------------------
    unsigned asym_r = 1;
    std::vector<std::uint64_t> asym_grid;
    std::optional<std::uint64_t> asym_m;
    auto* asym_cmd = app.add_subcommand(
        "asym", "exact vs estimate table: p_r(n) by default, delta_{r,m}(n) with --m; "
                "CSV n,exact,estimate,log_estimate,ratio");
    asym_cmd->add_option("--r", asym_r, "difference order")->required();
    asym_cmd->add_option("--n-grid", asym_grid, "weights")->required()->delimiter(',');
    asym_cmd->add_option("--m", asym_m, "switch to the delta statistic at this threshold");

    // ---- experiment ----------------------------------------------------
    std::string exp_kind = "theorem3";
    ExperimentConfig config;
    std::string exp_method = "reject";
    std::string exp_format = "csv";
    auto* exp_cmd = app.add_subcommand("experiment", "run an experiment driver");
    exp_cmd->add_option("--kind", exp_kind, "theorem3 | tables | local-clt")
        ->check(CLI::IsMember({"theorem3", "tables", "local-clt"}));
    exp_cmd->add_option("--r", config.r, "difference order")->required();
    exp_cmd->add_option("--m-values", config.m_values, "multiplicity thresholds")->delimiter(',');
    exp_cmd->add_option("--n-grid", config.n_grid, "ascending weights")->required()->delimiter(',');
    exp_cmd->add_option("--trials", config.trials, "samples (or trials) per grid point");
    exp_cmd->add_option("--seed", config.seed, "master seed; per-n seeds are split from it");
    exp_cmd->add_option("--method", exp_method, "reject | exact | enumerate (theorem3 only)")
        ->check(CLI::IsMember({"reject", "exact", "enumerate"}));
    exp_cmd->add_option("--format", exp_format, "csv | json")
        ->check(CLI::IsMember({"csv", "json"}));
    exp_cmd->add_option("--out", config.out_path, "output path (default stdout)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;   // usage problems are exit 1, --help is 0
    }

    if (diff_cmd->parsed()) {
        for (const auto& text : gather_inputs(diff_inputs))
            std::puts(rth_differences(Partition::parse(text), static_cast<int>(diff_r)).str().c_str());
        return 0;
    }

    if (map_cmd->parsed()) {
        for (const auto& text : gather_inputs(map_inputs)) {
            const bool inverse = map_inverse || text.find('^') != std::string::npos;
            if (inverse)
                std::puts(bijection_inverse(MultiplicityPartition::parse(text, map_r)).str().c_str());
            else
                std::puts(bijection_forward(Partition::parse(text), static_cast<int>(map_r)).str().c_str());
        }
        return 0;
    }

    if (count_cmd->parsed()) {
        if (count_n && count_nmax)
            throw std::invalid_argument("--n and --n-max are mutually exclusive");
        if (count_nmax) {
            CountTable table(count_r, *count_nmax, count_cap);
            std::string out = "n,r,p_r_exact\n";
            for (std::uint64_t n = 0; n <= *count_nmax; ++n)
                out += std::to_string(n) + ',' + std::to_string(count_r) + ',' +
                       to_decimal(table.at(n)) + '\n';
            std::fputs(out.c_str(), stdout);
        } else if (count_n) {
            CountTable table(count_r, *count_n, std::max(*count_n, count_cap));
            std::puts(to_decimal(table.at(*count_n)).c_str());
        } else {
            throw std::invalid_argument("one of --n / --n-max is required");
        }
        return 0;
    }

    if (delta_cmd->parsed()) {
        std::uint64_t n_top = *std::max_element(delta_ns.begin(), delta_ns.end());
        CountTable table(delta_r, n_top);
        std::string out = "n,r,m,numerator,denominator,value\n";
        for (std::uint64_t n : delta_ns) {
            ExactStatistic stat = delta_exact(table, n, delta_m);
            out += std::to_string(n) + ',' + std::to_string(delta_r) + ',' +
                   std::to_string(delta_m) + ',' + to_decimal(stat.numerator) + ',' +
                   to_decimal(stat.denominator) + ',' + format_sig12(stat.as_float) + '\n';
        }
        std::fputs(out.c_str(), stdout);
        return 0;
    }

    if (sample_cmd->parsed()) {
        std::string out;
        double total_attempts = 0.0;
        if (sample_method == "reject") {
            GeometricPartitionSampler sampler(GeometricEnsembleSpec::tilted(sample_n, sample_r));
            sampler.sample_many(sample_seed, sample_count,
                                [&](const std::vector<std::uint64_t>& draw, std::uint64_t attempts) {
                                    out += sampler.to_multiplicities(draw).str() + '\n';
                                    total_attempts += static_cast<double>(attempts);
                                });
        } else {
            ExactSampler sampler(sample_r, sample_n);
            Xoshiro256StarStar rng(sample_seed);
            for (std::uint64_t i = 0; i < sample_count; ++i) {
                out += sampler.sample(rng).str() + '\n';
                total_attempts += 1.0;
            }
        }
        nlohmann::json summary = {{"n", sample_n},
                                  {"r", sample_r},
                                  {"method", sample_method},
                                  {"seed", sample_seed},
                                  {"samples", sample_count},
                                  {"mean_attempts", total_attempts / static_cast<double>(sample_count)}};
        out += summary.dump() + '\n';
        std::fputs(out.c_str(), stdout);
        return 0;
    }

    if (asym_cmd->parsed()) {
        std::uint64_t n_top = *std::max_element(asym_grid.begin(), asym_grid.end());
        CountTable table(asym_r, n_top);
        std::string out = "n,exact,estimate,log_estimate,ratio\n";
        for (std::uint64_t n : asym_grid) {
            if (asym_m) {
                ExactStatistic stat = delta_exact(table, n, *asym_m);
                const double est = asym_delta(n, asym_r, *asym_m);
                out += std::to_string(n) + ',' + format_sig12(stat.as_float) + ',' +
                       format_sig12(est) + ',' + format_sig12(std::log(est)) + ',' +
                       format_sig12(est / stat.as_float) + '\n';
            } else {
                const AsymEstimate est = asym_pr(n, asym_r);
                const double ratio = std::exp(est.log_value - log_bigcount(table.at(n)));
                out += std::to_string(n) + ',' + to_decimal(table.at(n)) + ',' +
                       format_sig12(est.value) + ',' + format_sig12(est.log_value) + ',' +
                       format_sig12(ratio) + '\n';
            }
        }
        std::fputs(out.c_str(), stdout);
        return 0;
    }

    if (exp_cmd->parsed()) {
        config.method = parse_method(exp_method);
        config.format = exp_format == "json" ? OutputFormat::Json : OutputFormat::Csv;
        auto emit = [&](const auto& result) {
            for (const auto& warning : result.warnings)
                std::fprintf(stderr, "warning: %s\n", warning.c_str());
            if (config.format == OutputFormat::Json)
                write_out(config.out_path, to_json(result.rows).dump(2) + "\n");
            else
                write_out(config.out_path, to_csv(result.rows));
        };
        if (exp_kind == "theorem3")
            emit(run_theorem3(config));
        else if (exp_kind == "tables")
            emit(run_convergence_tables(config));
        else
            emit(run_local_clt(config));
        return 0;
    }

    return 0;
}

} // namespace

int main(int argc, char** argv)
{
    try {
        return run(argc, argv);
    } catch (const rparts::CapExceeded& e) {
        std::fprintf(stderr, "refused: %s\n", e.what());
        return 2;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
}
