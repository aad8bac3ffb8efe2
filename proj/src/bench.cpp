#include "mimpeak/bench.hpp"

#include <bit>
#include <cmath>
#include <sstream>

#include "mimpeak/errors.hpp"
#include "mimpeak/select.hpp"

namespace mimpeak {

void ExperimentSpec::validate() const {
    if (trials < 1) throw ConfigError("trials must be >= 1");
    if (rates.empty()) throw ConfigError("rates list must not be empty");
    if (sigma_n_levels.empty()) throw ConfigError("sigma_n_levels list must not be empty");
    if (threshold_multipliers.empty())
        throw ConfigError("threshold_multipliers list must not be empty");
    if (estimators.empty()) throw ConfigError("estimators list must not be empty");
    for (double m : threshold_multipliers)
        if (!(m > 0.0)) throw ConfigError("threshold multipliers must be > 0");
    for (double r : rates)
        if (!(r > 0.0)) throw ConfigError("sampling rates must be > 0");
    for (double s : sigma_n_levels)
        if (s < 0.0) throw ConfigError("noise levels must be >= 0");
    if (!(model.amplitude > 0.0) || !(model.sigma > 0.0))
        throw ConfigError("model amplitude and sigma must be > 0");
    if (!(x_end > x_start)) throw ConfigError("signal interval must satisfy x_end > x_start");
    if (!(iteration.tol > 0.0) || iteration.max_iters < 1)
        throw ConfigError("iteration config invalid: tol > 0 and max_iters >= 1 required");
}

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

std::uint64_t trial_seed(std::uint64_t master_seed, double rate, int trial) {
    std::uint64_t h = splitmix64(master_seed);
    h = splitmix64(h ^ std::bit_cast<std::uint64_t>(rate));
    h = splitmix64(h ^ static_cast<std::uint64_t>(trial));
    return h;
}

TrialStats run_cell(const ExperimentSpec& spec, double rate, double sigma_n,
                    double multiplier, Method estimator) {
    spec.validate();
    const Spectrum base = sample(spec.model, spec.x_start, spec.x_end, rate);
    const double threshold = multiplier * sigma_n;

    std::vector<double> positions;
    positions.reserve(static_cast<std::size_t>(spec.trials));
    long iteration_sum = 0;
    int oscillated = 0;
    int failed = 0;
    for (int t = 0; t < spec.trials; ++t) {
        const Spectrum noisy =
            add_noise(base, {sigma_n, trial_seed(spec.master_seed, rate, t)});
        try {
            const Window window = select_window(noisy, threshold);
            const PeakEstimate est = estimate(window, estimator, spec.iteration);
            if (!std::isfinite(est.x_p)) throw EstimatorError("non-finite estimate");
            positions.push_back(est.x_p);
            iteration_sum += est.iterations;
            oscillated += est.oscillating ? 1 : 0;
        } catch (const WindowError&) {
            ++failed;
        } catch (const EstimatorError&) {
            ++failed;
        }
    }

    if (positions.empty()) {
        std::ostringstream msg;
        msg << "empty cell: all " << spec.trials << " trials failed (rate=" << rate
            << ", sigma_n=" << sigma_n << ", multiplier=" << multiplier << ")";
        throw EstimatorError(msg.str());
    }

    TrialStats stats;
    stats.estimator = estimator;
    stats.rate = rate;
    stats.sigma_n = sigma_n;
    stats.threshold_multiplier = multiplier;
    stats.n_ok = static_cast<int>(positions.size());
    stats.n_failed = failed;

    double sum = 0.0;
    for (double v : positions) sum += v;
    stats.mean = sum / static_cast<double>(positions.size());
    stats.bias = stats.mean - spec.model.mu;
    double sq = 0.0;
    for (double v : positions) sq += (v - stats.mean) * (v - stats.mean);
    stats.std_dev = positions.size() > 1
                        ? std::sqrt(sq / static_cast<double>(positions.size() - 1))
                        : 0.0;
    stats.mean_iterations =
        static_cast<double>(iteration_sum) / static_cast<double>(positions.size());
    stats.oscillation_rate =
        static_cast<double>(oscillated) / static_cast<double>(positions.size());
    return stats;
}

std::vector<TrialStats> snr_sweep(const ExperimentSpec& spec) {
    spec.validate();
    std::vector<TrialStats> rows;
    for (double sigma_n : spec.sigma_n_levels)
        for (Method m : spec.estimators)
            rows.push_back(
                run_cell(spec, spec.rates.front(), sigma_n, spec.threshold_multipliers.front(), m));
    return rows;
}

std::vector<TrialStats> rate_sweep(const ExperimentSpec& spec) {
    spec.validate();
    std::vector<TrialStats> rows;
    for (double rate : spec.rates)
        for (Method m : spec.estimators)
            rows.push_back(run_cell(spec, rate, spec.sigma_n_levels.front(),
                                    spec.threshold_multipliers.front(), m));
    return rows;
}

std::vector<TrialStats> threshold_sweep(const ExperimentSpec& spec) {
    spec.validate();
    std::vector<TrialStats> rows;
    for (double multiplier : spec.threshold_multipliers)
        for (Method m : spec.estimators)
            rows.push_back(
                run_cell(spec, spec.rates.front(), spec.sigma_n_levels.front(), multiplier, m));
    return rows;
}

ExperimentSpec snr_sweep_defaults() {
    ExperimentSpec spec;
    spec.rates = {10.0};
    spec.sigma_n_levels = {0.2, 0.15, 0.1, 0.05, 0.025, 0.01, 0.005};
    spec.threshold_multipliers = {0.5};
    return spec;
}

ExperimentSpec rate_sweep_defaults() {
    ExperimentSpec spec;
    spec.rates = {3.0, 4.0, 5.0, 6.0, 7.0, 8.0, 9.0, 10.0};
    spec.sigma_n_levels = {0.025};
    spec.threshold_multipliers = {0.5};
    return spec;
}

ExperimentSpec threshold_sweep_defaults() {
    ExperimentSpec spec;
    spec.rates = {10.0};
    spec.sigma_n_levels = {0.1}; // 20 dB for unit amplitude
    spec.threshold_multipliers.clear();
    for (int k = 0; k <= 17; ++k)
        spec.threshold_multipliers.push_back(static_cast<double>(1 + 2 * k) / 10.0);
    return spec;
}

} // namespace mimpeak
