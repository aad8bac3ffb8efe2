#include "mimpeak/signal.hpp"

#include <cmath>
#include <random>
#include <stdexcept>
#include <utility>

namespace mimpeak {

namespace {

void check_peak_params(double amplitude, double sigma) {
    if (!(amplitude > 0.0)) throw std::invalid_argument("signal amplitude must be > 0");
    if (!(sigma > 0.0)) throw std::invalid_argument("signal sigma must be > 0");
}

} // namespace

SignalModel SignalModel::gaussian(double amplitude, double mu, double sigma) {
    check_peak_params(amplitude, sigma);
    SignalModel model;
    model.kind = SignalKind::Gaussian;
    model.amplitude = amplitude;
    model.mu = mu;
    model.sigma = sigma;
    return model;
}

SignalModel SignalModel::custom(double amplitude, double mu, double sigma,
                                std::function<double(double)> evaluator) {
    check_peak_params(amplitude, sigma);
    if (!evaluator) throw std::invalid_argument("custom model needs an evaluator");
    SignalModel model;
    model.kind = SignalKind::Custom;
    model.amplitude = amplitude;
    model.mu = mu;
    model.sigma = sigma;
    model.evaluator = std::move(evaluator);
    return model;
}

Spectrum::Spectrum(double x0, double dx, std::vector<double> y)
    : x0_(x0), dx_(dx), y_(std::move(y)) {
    if (!(dx_ > 0.0)) throw std::invalid_argument("spectrum spacing dx must be > 0");
    if (y_.size() < 2) throw std::invalid_argument("spectrum needs at least 2 samples");
}

double evaluate(const SignalModel& model, double x) {
    if (model.kind == SignalKind::Custom) return model.evaluator(x);
    const double z = (x - model.mu) / model.sigma;
    return model.amplitude * std::exp(-0.5 * z * z);
}

Spectrum sample(const SignalModel& model, double x_start, double x_end, double rate) {
    if (!(x_end > x_start)) throw std::invalid_argument("sampling range must satisfy x_end > x_start");
    if (!(rate > 0.0)) throw std::invalid_argument("sampling rate must be > 0");
    const double dx = 1.0 / rate;
    // last grid point <= x_end, with 1e-9*dx slack for inexact ranges
    const auto count = static_cast<std::size_t>(std::floor((x_end - x_start) / dx + 1e-9)) + 1;
    if (count < 3) throw std::invalid_argument("sampling range yields fewer than 3 samples");
    std::vector<double> y(count);
    for (std::size_t i = 0; i < count; ++i)
        y[i] = evaluate(model, x_start + static_cast<double>(i) * dx);
    return Spectrum(x_start, dx, std::move(y));
}

Spectrum add_noise(const Spectrum& spectrum, const NoiseConfig& noise) {
    if (noise.sigma_n < 0.0) throw std::invalid_argument("noise sigma_n must be >= 0");
    if (noise.sigma_n == 0.0) return spectrum;
    std::mt19937_64 rng(noise.seed);
    std::normal_distribution<double> unit(0.0, 1.0);
    std::vector<double> y(spectrum.size());
    for (std::size_t i = 0; i < y.size(); ++i)
        y[i] = spectrum.y(i) + noise.sigma_n * unit(rng);
    return Spectrum(spectrum.x0(), spectrum.dx(), std::move(y));
}

double snr_db(double amplitude, double sigma_n) {
    if (!(amplitude > 0.0)) throw std::invalid_argument("amplitude must be > 0");
    if (sigma_n < 0.0) throw std::invalid_argument("sigma_n must be >= 0");
    if (sigma_n == 0.0) throw std::domain_error("SNR undefined for zero noise");
    return 20.0 * std::log10(amplitude / sigma_n);
}

} // namespace mimpeak
