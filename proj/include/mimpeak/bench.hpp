#pragma once

#include <cstdint>
#include <vector>

#include "mimpeak/estimators.hpp"
#include "mimpeak/signal.hpp"

namespace mimpeak {

inline constexpr std::uint64_t kDefaultSeed = 123456789;

/// Monte Carlo experiment grid: a signal model, the sweep axes (sampling
/// rates, noise levels, threshold multipliers), trial count and seeding.
/// The selection threshold for a cell is multiplier * sigma_n.
struct ExperimentSpec {
    SignalModel model = SignalModel::gaussian(1.0, 5.0, 0.2);
    double x_start = 0.0;
    double x_end = 10.0;
    std::vector<double> rates{10.0};
    std::vector<double> sigma_n_levels{0.2, 0.15, 0.1, 0.05, 0.025, 0.01, 0.005};
    std::vector<double> threshold_multipliers{0.5};
    int trials = 5000;
    std::uint64_t master_seed = kDefaultSeed;
    std::vector<Method> estimators{Method::Centroid, Method::Mim1, Method::Mim2};
    IterationConfig iteration{};

    /// Throws ConfigError on empty axes, trials < 1 or invalid model.
    void validate() const;
};

/// Aggregated results of one (rate, sigma_n, multiplier, estimator) cell.
/// Moments are computed over the n_ok successful trials with the n-1
/// variance denominator; bias is mean - true mu.
struct TrialStats {
    Method estimator = Method::Centroid;
    double rate = 0.0;
    double sigma_n = 0.0;
    double threshold_multiplier = 0.0;
    int n_ok = 0;
    int n_failed = 0;
    double mean = 0.0;
    double bias = 0.0;
    double std_dev = 0.0;
    double mean_iterations = 0.0;
    double oscillation_rate = 0.0;
};

std::uint64_t splitmix64(std::uint64_t x);

/// Per-trial noise seed. Mixes the master seed, the sampling rate and the
/// trial index; deliberately independent of the noise level, threshold
/// multiplier and estimator so that cells differing only in those see the
/// same underlying noise realizations (paired comparisons).
std::uint64_t trial_seed(std::uint64_t master_seed, double rate, int trial);

/// Run `spec.trials` trials of one cell: sample the model at `rate`, add
/// N(0, sigma_n^2) noise, select the window at multiplier * sigma_n and run
/// the estimator. Trials failing with window or estimator errors are
/// counted, not propagated. Throws EstimatorError if every trial failed.
TrialStats run_cell(const ExperimentSpec& spec, double rate, double sigma_n,
                    double multiplier, Method estimator);

/// Cells over sigma_n_levels x estimators at rates[0], multipliers[0].
std::vector<TrialStats> snr_sweep(const ExperimentSpec& spec);

/// Cells over rates x estimators at sigma_n_levels[0], multipliers[0].
std::vector<TrialStats> rate_sweep(const ExperimentSpec& spec);

/// Cells over threshold_multipliers x estimators at rates[0],
/// sigma_n_levels[0].
std::vector<TrialStats> threshold_sweep(const ExperimentSpec& spec);

/// Default grids: noise levels 0.2 ... 0.005 at rate 10, multiplier 0.5.
ExperimentSpec snr_sweep_defaults();
/// Rates 3 ... 10 at sigma_n 0.025, multiplier 0.5.
ExperimentSpec rate_sweep_defaults();
/// Multipliers 0.1, 0.3, ..., 3.5 at sigma_n 0.1 (20 dB), rate 10.
ExperimentSpec threshold_sweep_defaults();

} // namespace mimpeak
