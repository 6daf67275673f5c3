#pragma once

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "rparts/asymptotics.hpp"
#include "rparts/counting.hpp"
#include "rparts/sampling.hpp"
#include "rparts/stats.hpp"

namespace rparts {

inline std::string format_sig12(double v)
{
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    return buf;
}

enum class Method { ExactEnumeration, ExactSampler, RejectionSampler };

inline const char* method_name(Method m)
{
    switch (m) {
    case Method::ExactEnumeration: return "exact-enumeration";
    case Method::ExactSampler: return "exact-sampler";
    case Method::RejectionSampler: return "rejection-sampler";
    }
    return "?";
}

inline Method parse_method(const std::string& name)
{
    if (name == "exact-enumeration" || name == "enumerate") return Method::ExactEnumeration;
    if (name == "exact-sampler" || name == "exact") return Method::ExactSampler;
    if (name == "rejection-sampler" || name == "reject") return Method::RejectionSampler;
    throw std::invalid_argument("unknown method: " + name);
}

enum class OutputFormat { Csv, Json };

struct ExperimentConfig {
    unsigned r = 1;
    std::vector<std::uint64_t> m_values = {2, 3, 4};
    std::vector<std::uint64_t> n_grid = {100};
    std::uint64_t trials = 10'000;
    std::uint64_t seed = 1;
    Method method = Method::RejectionSampler;
    std::string out_path;           // empty = stdout
    OutputFormat format = OutputFormat::Csv;
    std::uint64_t enum_cap = enumeration_cap();

    void validate() const
    {
        if (r < 1)
            throw std::invalid_argument("order r must be >= 1");
        if (trials < 1)
            throw std::invalid_argument("trials must be >= 1");
        if (n_grid.empty())
            throw std::invalid_argument("n grid must not be empty");
        for (std::size_t i = 0; i + 1 < n_grid.size(); ++i)
            if (n_grid[i] >= n_grid[i + 1])
                throw std::invalid_argument("n grid must be strictly ascending");
        for (std::uint64_t m : m_values)
            if (m < 1)
                throw std::invalid_argument("m values must be >= 1");
    }
};

/// One estimate of E[D_{n,r,m} / D_{n,r}] against the limit m^{-1/r}.
struct RatioEstimate {
    std::uint64_t n;
    unsigned r;
    std::uint64_t m;
    std::string method;
    std::uint64_t trials;
    double estimate;
    double stderr_;
    double target;
};

template <typename Rows>
struct ExperimentResult {
    Rows rows;
    std::vector<std::string> warnings;   // per-n cap/method conflicts, non-fatal
};

/// Estimates the mean positive-difference ratio for every (n, m) cell.
/// Cells are seeded as derive_seed(config.seed, index of n in the grid);
/// all m values for one n reuse the same samples.
inline ExperimentResult<std::vector<RatioEstimate>> run_theorem3(const ExperimentConfig& config)
{
    config.validate();
    ExperimentResult<std::vector<RatioEstimate>> result;
    for (std::size_t cell = 0; cell < config.n_grid.size(); ++cell) {
        const std::uint64_t n = config.n_grid[cell];
        const std::uint64_t cell_seed = derive_seed(config.seed, cell);
        try {
            if (config.method == Method::ExactEnumeration) {
                for (std::uint64_t m : config.m_values) {
                    BigRational exact = exact_mean_ratio(n, config.r, m, config.enum_cap);
                    result.rows.push_back(RatioEstimate{
                        n, config.r, m, method_name(config.method),
                        to_u64(BigCount(count_pr(n, config.r))), rational_to_double(exact), 0.0,
                        std::pow(static_cast<double>(m), -1.0 / config.r)});
                }
                continue;
            }
            std::vector<RunningMoments> acc(config.m_values.size());
            auto record = [&](const MultiplicityPartition& mu) {
                const double d = static_cast<double>(mu.distinct_sizes());
                for (std::size_t mi = 0; mi < config.m_values.size(); ++mi)
                    acc[mi].add(static_cast<double>(
                                    mu.sizes_with_multiplicity_at_least(config.m_values[mi])) /
                                d);
            };
            if (config.method == Method::RejectionSampler) {
                GeometricPartitionSampler sampler(GeometricEnsembleSpec::tilted(n, config.r));
                sampler.sample_many(cell_seed, config.trials,
                                    [&](const std::vector<std::uint64_t>& draw, std::uint64_t) {
                                        record(sampler.to_multiplicities(draw));
                                    });
            } else {
                ExactSampler sampler(config.r, n);
                Xoshiro256StarStar rng(cell_seed);
                for (std::uint64_t t = 0; t < config.trials; ++t)
                    record(sampler.sample(rng));
            }
            for (std::size_t mi = 0; mi < config.m_values.size(); ++mi)
                result.rows.push_back(RatioEstimate{
                    n, config.r, config.m_values[mi], method_name(config.method), config.trials,
                    acc[mi].mean(), acc[mi].stderr_of_mean(),
                    std::pow(static_cast<double>(config.m_values[mi]), -1.0 / config.r)});
        } catch (const CapExceeded& e) {
            result.warnings.push_back("n=" + std::to_string(n) + ": " + e.what());
        }
    }
    return result;
}

inline std::string to_csv(const std::vector<RatioEstimate>& rows)
{
    std::string out = "n,r,m,method,trials,estimate,stderr,target\n";
    for (const auto& row : rows) {
        out += std::to_string(row.n) + ',' + std::to_string(row.r) + ',' + std::to_string(row.m) +
               ',' + row.method + ',' + std::to_string(row.trials) + ',' +
               format_sig12(row.estimate) + ',' + format_sig12(row.stderr_) + ',' +
               format_sig12(row.target) + '\n';
    }
    return out;
}

inline nlohmann::json to_json(const std::vector<RatioEstimate>& rows)
{
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& row : rows)
        arr.push_back({{"n", row.n},
                       {"r", row.r},
                       {"m", row.m},
                       {"method", row.method},
                       {"trials", row.trials},
                       {"estimate", row.estimate},
                       {"stderr", row.stderr_},
                       {"target", row.target}});
    return arr;
}

/// One convergence-table row comparing exact counts and statistics to their
/// closed-form estimates. ratio = estimate / exact in both cases.
struct ConvergenceRow {
    std::uint64_t n;
    unsigned r;
    std::uint64_t m;
    std::string p_exact;      // decimal big integer
    double p_asym;
    double ratio;
    double delta_exact_m;
    double delta_asym_m;
    double delta_ratio;
    double prop3_ratio;       // delta_exact(n,r,m) / delta_exact(n,r,1)
    double prop3_target;      // m^{-1/r}
};

inline ExperimentResult<std::vector<ConvergenceRow>>
run_convergence_tables(const ExperimentConfig& config, std::uint64_t table_cap = kDefaultTableCap)
{
    config.validate();
    ExperimentResult<std::vector<ConvergenceRow>> result;
    std::optional<CountTable> table;
    try {
        table.emplace(config.r, config.n_grid.back(), table_cap);
    } catch (const CapExceeded& e) {
        result.warnings.push_back(e.what());
        return result;
    }
    for (std::uint64_t n : config.n_grid) {
        const AsymEstimate est = asym_pr(n, config.r);
        const double log_exact = log_bigcount(table->at(n));
        const double p_ratio = std::exp(est.log_value - log_exact);
        const ExactStatistic d1 = delta_exact(*table, n, 1);
        for (std::uint64_t m : config.m_values) {
            const ExactStatistic dm = delta_exact(*table, n, m);
            const double da = asym_delta(n, config.r, m);
            BigRational prop3(dm.numerator, d1.numerator);
            prop3.canonicalize();
            result.rows.push_back(ConvergenceRow{
                n, config.r, m, to_decimal(table->at(n)), est.value, p_ratio, dm.as_float, da,
                da / dm.as_float, rational_to_double(prop3),
                std::pow(static_cast<double>(m), -1.0 / config.r)});
        }
    }
    return result;
}

inline std::string to_csv(const std::vector<ConvergenceRow>& rows)
{
    std::string out =
        "n,r,m,p_exact,p_asym,ratio,delta_exact,delta_asym,delta_ratio,prop3_ratio,prop3_target\n";
    for (const auto& row : rows) {
        out += std::to_string(row.n) + ',' + std::to_string(row.r) + ',' + std::to_string(row.m) +
               ',' + row.p_exact + ',' + format_sig12(row.p_asym) + ',' + format_sig12(row.ratio) +
               ',' + format_sig12(row.delta_exact_m) + ',' + format_sig12(row.delta_asym_m) + ',' +
               format_sig12(row.delta_ratio) + ',' + format_sig12(row.prop3_ratio) + ',' +
               format_sig12(row.prop3_target) + '\n';
    }
    return out;
}

inline nlohmann::json to_json(const std::vector<ConvergenceRow>& rows)
{
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& row : rows)
        arr.push_back({{"n", row.n},
                       {"r", row.r},
                       {"m", row.m},
                       {"p_exact", row.p_exact},
                       {"p_asym", row.p_asym},
                       {"ratio", row.ratio},
                       {"delta_exact", row.delta_exact_m},
                       {"delta_asym", row.delta_asym_m},
                       {"delta_ratio", row.delta_ratio},
                       {"prop3_ratio", row.prop3_ratio},
                       {"prop3_target", row.prop3_target}});
    return arr;
}

struct LocalCltRow {
    std::uint64_t n;
    unsigned r;
    std::uint64_t trials;
    std::uint64_t accepted;
    double estimate;     // n^{(2r+1)/(2(r+1))} * acceptance rate
    double stderr_;
    double sigma_scaled; // sigma_n * acceptance rate
    double target;       // 1/sqrt(2 pi)
};

inline constexpr double kInvSqrtTwoPi = 0.39894228040143267794;

inline ExperimentResult<std::vector<LocalCltRow>> run_local_clt(const ExperimentConfig& config)
{
    config.validate();
    if (config.trials < 10'000)
        throw std::invalid_argument("local CLT runs need at least 10^4 trials");
    ExperimentResult<std::vector<LocalCltRow>> result;
    for (std::size_t cell = 0; cell < config.n_grid.size(); ++cell) {
        const std::uint64_t n = config.n_grid[cell];
        try {
            PointMassEstimate est =
                point_mass_scaling(n, config.r, config.trials, derive_seed(config.seed, cell));
            result.rows.push_back(LocalCltRow{n, config.r, est.trials, est.accepted,
                                              est.scaled_estimate, est.scaled_stderr,
                                              est.sigma_scaled_estimate, kInvSqrtTwoPi});
        } catch (const std::runtime_error& e) {
            result.warnings.push_back("n=" + std::to_string(n) + ": " + e.what());
        }
    }
    return result;
}

inline std::string to_csv(const std::vector<LocalCltRow>& rows)
{
    std::string out = "n,r,trials,accepted,estimate,stderr,sigma_scaled,target\n";
    for (const auto& row : rows) {
        out += std::to_string(row.n) + ',' + std::to_string(row.r) + ',' +
               std::to_string(row.trials) + ',' + std::to_string(row.accepted) + ',' +
               format_sig12(row.estimate) + ',' + format_sig12(row.stderr_) + ',' +
               format_sig12(row.sigma_scaled) + ',' + format_sig12(row.target) + '\n';
    }
    return out;
}

inline nlohmann::json to_json(const std::vector<LocalCltRow>& rows)
{
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& row : rows)
        arr.push_back({{"n", row.n},
                       {"r", row.r},
                       {"trials", row.trials},
                       {"accepted", row.accepted},
                       {"estimate", row.estimate},
                       {"stderr", row.stderr_},
                       {"sigma_scaled", row.sigma_scaled},
                       {"target", row.target}});
    return arr;
}

} // namespace rparts
