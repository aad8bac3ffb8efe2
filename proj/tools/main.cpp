#include <cstdio>
#include <exception>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "mimpeak/bench.hpp"
#include "mimpeak/errors.hpp"
#include "mimpeak/io.hpp"
#include "mimpeak/selfcheck.hpp"

namespace {

using namespace mimpeak;

// exit codes: 0 ok, 2 input parse, 3 degenerate window, 4 estimator
// failure, 5 config error
constexpr int kExitParse = 2;
constexpr int kExitWindow = 3;
constexpr int kExitEstimator = 4;
constexpr int kExitConfig = 5;

struct EstimateOptions {
    std::string input;
    std::string method = "mim2";
    double threshold = 0.0;
    bool threshold_set = false;
    double threshold_multiplier = 0.5;
    bool multiplier_set = false;
    double sigma_n = 0.0;
    bool sigma_n_set = false;
    double tol = 1e-9;
    int max_iters = 100;
};

int run_estimate(const EstimateOptions& opt) {
    if (opt.threshold_set && opt.multiplier_set)
        throw ConfigError("--threshold conflicts with --threshold-multiplier");
    if (opt.multiplier_set && !opt.sigma_n_set)
        throw ConfigError("--threshold-multiplier needs --sigma-n to form an absolute threshold");
    const auto method = parse_method(opt.method);
    if (!method) throw ConfigError("unknown method '" + opt.method + "'");

    double threshold = 0.0;
    if (opt.threshold_set) threshold = opt.threshold;
    else if (opt.multiplier_set) threshold = opt.threshold_multiplier * opt.sigma_n;

    const Spectrum spectrum = load_spectrum_csv(opt.input);
    const Window window = select_window(spectrum, threshold);
    IterationConfig cfg;
    cfg.tol = opt.tol;
    cfg.max_iters = opt.max_iters;
    const PeakEstimate est = estimate(window, *method, cfg);
    const Residual res = residual_s(window, est.x_p);

    std::printf("method = %s\n", method_name(*method));
    std::printf("window = [%zu, %zu] (%zu samples, threshold %s)\n", window.lo(), window.hi(),
                window.size(), format_double(threshold).c_str());
    std::printf("x_p = %.12g\n", est.x_p);
    std::printf("iterations = %d\n", est.iterations);
    std::printf("converged = %s\n", est.converged ? "true" : "false");
    std::printf("oscillating = %s\n", est.oscillating ? "true" : "false");
    std::printf("residual_s = %.12g (%zu mirrored points in range)\n", res.value, res.included);
    return 0;
}

struct SweepOptions {
    std::string rates;
    std::string sigma_n_levels;
    std::string threshold_multipliers;
    double rate = 10.0;
    double sigma_n = 0.0;
    double threshold_multiplier = 0.5;
    double amplitude = 1.0;
    double mu = 5.0;
    double sigma = 0.2;
    double x_start = 0.0;
    double x_end = 10.0;
    int trials = 5000;
    std::uint64_t seed = kDefaultSeed;
    std::string estimators = "centroid,mim1,mim2";
    double tol = 1e-9;
    int max_iters = 100;
    std::string out;
};

void add_common_flags(CLI::App* cmd, SweepOptions& opt) {
    cmd->add_option("--amplitude", opt.amplitude, "Model peak amplitude");
    cmd->add_option("--mu", opt.mu, "Model peak position");
    cmd->add_option("--sigma", opt.sigma, "Model peak width");
    cmd->add_option("--x-start", opt.x_start, "Signal interval start");
    cmd->add_option("--x-end", opt.x_end, "Signal interval end");
    cmd->add_option("--trials,-n", opt.trials, "Monte Carlo trials per cell");
    cmd->add_option("--seed,-s", opt.seed, "Master seed");
    cmd->add_option("--estimators", opt.estimators, "Comma list: centroid,mim1,mim2");
    cmd->add_option("--tol", opt.tol, "Iteration convergence threshold");
    cmd->add_option("--max-iters", opt.max_iters, "Iteration limit");
    cmd->add_option("--out,-o", opt.out, "Output CSV path");
    cmd->set_config("--config", "", "Flat key=value config file (a manifest works)");
    cmd->allow_config_extras(CLI::config_extras_mode::ignore);
}

ExperimentSpec resolve_spec(const SweepOptions& opt, const ExperimentSpec& defaults) {
    ExperimentSpec spec = defaults;
    spec.model = SignalModel::gaussian(opt.amplitude, opt.mu, opt.sigma);
    spec.x_start = opt.x_start;
    spec.x_end = opt.x_end;
    spec.trials = opt.trials;
    spec.master_seed = opt.seed;
    spec.estimators = parse_method_list(opt.estimators);
    spec.iteration.tol = opt.tol;
    spec.iteration.max_iters = opt.max_iters;
    return spec;
}

void print_summary(const std::vector<TrialStats>& rows) {
    std::printf("%-9s %6s %9s %8s %6s %6s %12s %12s %10s %8s\n", "estimator", "rate", "sigma_n",
                "mult", "ok", "fail", "bias", "std", "mean_iter", "osc");
    for (const TrialStats& r : rows)
        std::printf("%-9s %6g %9g %8g %6d %6d %12.4e %12.4e %10.2f %8.4f\n",
                    method_name(r.estimator), r.rate, r.sigma_n, r.threshold_multiplier, r.n_ok,
                    r.n_failed, r.bias, r.std_dev, r.mean_iterations, r.oscillation_rate);
}

int run_sweep(const std::string& command, const SweepOptions& opt, const ExperimentSpec& spec,
              const std::vector<TrialStats>& rows) {
    const std::string csv = results_csv(spec, rows);
    const std::string out = opt.out.empty() ? command + ".csv" : opt.out;
    write_text_file(out, csv);

    RunManifest manifest;
    manifest.command = command;
    manifest.spec = spec;
    manifest.timestamp = now_iso8601_utc();
    manifest.output = out;
    write_text_file(out + ".manifest", manifest_text(manifest));

    print_summary(rows);
    std::printf("wrote %s (%zu rows) and %s.manifest\n", out.c_str(), rows.size(), out.c_str());
    return 0;
}

int run_selfcheck_cmd(std::size_t windows, std::uint64_t seed) {
    const SelfCheckReport report = run_selfcheck(windows, seed);
    for (const CheckResult& check : report.checks)
        std::printf("[%s] %s: %s\n", check.passed ? "PASS" : "FAIL", check.name.c_str(),
                    check.detail.c_str());
    std::printf("type-II denominator confirmed by the grid oracle: %s\n",
                report.confirmed_denominator.c_str());
    if (report.all_passed()) {
        std::printf("selfcheck: all checks passed\n");
        return 0;
    }
    std::printf("selfcheck: FAILURES detected\n");
    return 1;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Peak-position estimation for symmetric single-peak signals"};
    app.require_subcommand(1);
    app.set_version_flag("--version", std::string(kVersion));

    // estimate
    EstimateOptions est_opt;
    CLI::App* est = app.add_subcommand("estimate", "Estimate the peak position of a spectrum CSV");
    est->add_option("input", est_opt.input, "Spectrum CSV with header x,y")->required();
    est->add_option("--method,-m", est_opt.method, "centroid, mim1 or mim2 (default mim2)");
    est->add_option("--threshold,-t", est_opt.threshold, "Absolute selection threshold");
    est->add_option("--threshold-multiplier", est_opt.threshold_multiplier,
                    "Threshold as multiplier * sigma-n");
    est->add_option("--sigma-n", est_opt.sigma_n, "Noise level for --threshold-multiplier");
    est->add_option("--tol", est_opt.tol, "Iteration convergence threshold");
    est->add_option("--max-iters", est_opt.max_iters, "Iteration limit");

    // sweeps
    SweepOptions snr_opt;
    CLI::App* snr = app.add_subcommand("snr-sweep", "Precision vs noise level");
    snr->add_option("--rate", snr_opt.rate, "Sampling rate");
    snr->add_option("--sigma-n-levels", snr_opt.sigma_n_levels, "Comma list of noise levels");
    snr->add_option("--threshold-multiplier", snr_opt.threshold_multiplier,
                    "Selection threshold multiplier");
    add_common_flags(snr, snr_opt);

    SweepOptions rate_opt;
    CLI::App* rate = app.add_subcommand("rate-sweep", "Precision vs sampling rate");
    rate->add_option("--rates", rate_opt.rates, "Comma list of sampling rates");
    rate->add_option("--sigma-n", rate_opt.sigma_n, "Noise level")->default_val(0.025);
    rate->add_option("--threshold-multiplier", rate_opt.threshold_multiplier,
                     "Selection threshold multiplier");
    add_common_flags(rate, rate_opt);

    SweepOptions thr_opt;
    CLI::App* thr = app.add_subcommand("threshold-sweep", "Precision vs selection threshold");
    thr->add_option("--rate", thr_opt.rate, "Sampling rate");
    thr->add_option("--sigma-n", thr_opt.sigma_n, "Noise level")->default_val(0.1);
    thr->add_option("--threshold-multipliers", thr_opt.threshold_multipliers,
                    "Comma list of threshold multipliers");
    add_common_flags(thr, thr_opt);

    // selfcheck
    std::size_t check_windows = 100;
    std::uint64_t check_seed = kDefaultSeed;
    CLI::App* check = app.add_subcommand("selfcheck", "Run the embedded property checks");
    check->add_option("--windows", check_windows, "Randomized windows for the grid oracle");
    check->add_option("--seed,-s", check_seed, "Seed for the randomized checks");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kExitConfig;
    }

    try {
        if (est->parsed()) {
            est_opt.threshold_set = est->count("--threshold") > 0;
            est_opt.multiplier_set = est->count("--threshold-multiplier") > 0;
            est_opt.sigma_n_set = est->count("--sigma-n") > 0;
            return run_estimate(est_opt);
        }
        if (snr->parsed()) {
            ExperimentSpec spec = resolve_spec(snr_opt, snr_sweep_defaults());
            spec.rates = {snr_opt.rate};
            if (!snr_opt.sigma_n_levels.empty())
                spec.sigma_n_levels = parse_double_list(snr_opt.sigma_n_levels);
            spec.threshold_multipliers = {snr_opt.threshold_multiplier};
            return run_sweep("snr-sweep", snr_opt, spec, snr_sweep(spec));
        }
        if (rate->parsed()) {
            ExperimentSpec spec = resolve_spec(rate_opt, rate_sweep_defaults());
            if (!rate_opt.rates.empty()) spec.rates = parse_double_list(rate_opt.rates);
            spec.sigma_n_levels = {rate_opt.sigma_n};
            spec.threshold_multipliers = {rate_opt.threshold_multiplier};
            return run_sweep("rate-sweep", rate_opt, spec, rate_sweep(spec));
        }
        if (thr->parsed()) {
            ExperimentSpec spec = resolve_spec(thr_opt, threshold_sweep_defaults());
            spec.rates = {thr_opt.rate};
            spec.sigma_n_levels = {thr_opt.sigma_n};
            if (!thr_opt.threshold_multipliers.empty())
                spec.threshold_multipliers = parse_double_list(thr_opt.threshold_multipliers);
            return run_sweep("threshold-sweep", thr_opt, spec, threshold_sweep(spec));
        }
        if (check->parsed()) return run_selfcheck_cmd(check_windows, check_seed);
    } catch (const ParseError& e) {
        std::cerr << "error (input): " << e.what() << "\n";
        return kExitParse;
    } catch (const WindowError& e) {
        std::cerr << "error (window): " << e.what() << "\n";
        return kExitWindow;
    } catch (const EstimatorError& e) {
        std::cerr << "error (estimator): " << e.what() << "\n";
        return kExitEstimator;
    } catch (const ConfigError& e) {
        std::cerr << "error (config): " << e.what() << "\n";
        return kExitConfig;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error (config): " << e.what() << "\n";
        return kExitConfig;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
