#pragma once

#include "fiegarch/estimate.hpp"
#include "fiegarch/innovations.hpp"
#include "fiegarch/spec.hpp"

#include <cstddef>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace fiegarch {

struct NamedSpec {
    std::string name;
    FiegarchSpec spec;
};

/// One experiment: every model is simulated `replications` times with
/// length origin + horizon. Each sub-sample of size n ends at `origin`, is
/// fitted, and forecasts h = 1..horizon are compared with the simulated
/// continuation.
struct ExperimentConfig {
    std::vector<NamedSpec> models;
    std::size_t replications = 50;
    std::vector<std::size_t> sample_sizes{2000};
    std::size_t m_burn = 50'000;
    std::size_t origin = 5000;
    std::size_t horizon = 50;
    std::uint64_t seed = 20'240'601;
    int jobs = 1;
    InnovationDist dist = InnovationDist::ged(1.5);
    bool forecasts = true;
};

/// Flat key=value text. Keys: models (preset names), model.<name> (inline
/// spec "d,omega,theta,gamma;alpha..;beta.."), replications, n, m_burn,
/// origin, horizon, seed, jobs, dist, forecasts. Throws Error(Parse/Usage).
ExperimentConfig parse_experiment_config(const std::string& text, const std::string& origin = "config");

/// Inline spec "d,omega,theta,gamma;alpha1,..;beta1,..".
FiegarchSpec parse_inline_spec(const std::string& text);

/// Seed of replication `rep` of model `model` under `base`.
std::uint64_t replication_seed(std::uint64_t base, std::size_t model, std::size_t rep);

struct SubsampleStats {
    std::size_t n = 0;
    std::size_t successes = 0;
    std::size_t failures = 0;
    McStats params;  ///< order d, omega, theta, gamma, alpha.., beta..
    // Per horizon, averaged over successful replications.
    std::vector<double> mean_sigma2;
    std::vector<double> mean_x2;
    std::vector<double> mean_corrected;
    std::vector<double> mean_plain;
    std::vector<double> mse_corrected_sigma2;
    std::vector<double> mse_corrected_x2;
};

struct ModelReport {
    std::string name;
    FiegarchSpec truth;
    std::vector<SubsampleStats> subsamples;
};

struct ExperimentReport {
    ExperimentConfig config;
    std::vector<ModelReport> models;
};

/// Runs all (model, replication) tasks with config.jobs threads and reduces
/// them in task order, so the report does not depend on the thread count.
ExperimentReport run_experiment(const ExperimentConfig& config);

/// Writes per-model CSV files (full precision and rounded) into `dir` and
/// returns their paths.
std::vector<std::string> write_experiment_report(const ExperimentReport& report, const std::string& dir);

std::vector<std::string> parameter_names(const FiegarchSpec& spec);

}  // namespace fiegarch
