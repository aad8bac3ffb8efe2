#pragma once

#include <cstdint>
#include <functional>
#include <vector>

namespace mimpeak {

enum class SignalKind { Gaussian, Custom };

/// Parametric symmetric single-peak signal. `mu` is the symmetry axis and
/// the only parameter the estimators recover; `amplitude` and `sigma`
/// describe the peak height and width.
///
/// Custom models supply their own evaluator x -> amplitude. The evaluator
/// must be symmetric about `mu` and non-increasing away from it; the
/// metadata fields still describe the peak so benchmarks can compute bias
/// and noise thresholds.
struct SignalModel {
    SignalKind kind = SignalKind::Gaussian;
    double amplitude = 1.0;
    double mu = 0.0;
    double sigma = 1.0;
    std::function<double(double)> evaluator; // Custom only

    static SignalModel gaussian(double amplitude, double mu, double sigma);
    static SignalModel custom(double amplitude, double mu, double sigma,
                              std::function<double(double)> evaluator);
};

/// Additive white Gaussian noise: standard deviation + RNG seed.
struct NoiseConfig {
    double sigma_n = 0.0;
    std::uint64_t seed = 0;
};

/// Uniformly sampled signal: positions x_i = x0 + i*dx, amplitudes y_i.
class Spectrum {
public:
    Spectrum(double x0, double dx, std::vector<double> y);

    double x0() const noexcept { return x0_; }
    double dx() const noexcept { return dx_; }
    std::size_t size() const noexcept { return y_.size(); }
    double x(std::size_t i) const noexcept { return x0_ + static_cast<double>(i) * dx_; }
    double y(std::size_t i) const noexcept { return y_[i]; }
    double x_back() const noexcept { return x(size() - 1); }
    const std::vector<double>& amplitudes() const noexcept { return y_; }

private:
    double x0_;
    double dx_;
    std::vector<double> y_;
};

/// Model amplitude at position x.
double evaluate(const SignalModel& model, double x);

/// Sample the model on the uniform grid x_start, x_start + 1/rate, ...
/// including the last grid point <= x_end (within 1e-9*dx slack).
/// Throws std::invalid_argument if the range yields fewer than 3 samples.
Spectrum sample(const SignalModel& model, double x_start, double x_end, double rate);

/// Add i.i.d. Gaussian noise N(0, sigma_n^2) drawn from a generator seeded
/// with noise.seed. sigma_n = 0 returns the input unchanged. Amplitudes are
/// not clipped; negative samples are allowed.
Spectrum add_noise(const Spectrum& spectrum, const NoiseConfig& noise);

/// 20*log10(amplitude / sigma_n). Throws std::domain_error for sigma_n = 0.
double snr_db(double amplitude, double sigma_n);

} // namespace mimpeak
