#include "doctest.h"

#include <cmath>
#include <random>

#include "mimpeak/estimators.hpp"
#include "mimpeak/select.hpp"
#include "test_util.hpp"

using namespace mimpeak;
using namespace mimpeak::testutil;

namespace {

constexpr int kInstances = 200;
constexpr double kTol = 1e-8;

double run(const Spectrum& s, double threshold, Method m) {
    return estimate(select_window(s, threshold), m).x_p;
}

} // namespace

TEST_CASE("translation equivariance for all estimators") {
    std::mt19937_64 rng(31415);
    std::uniform_real_distribution<double> shift(-20.0, 20.0);
    for (int i = 0; i < kInstances; ++i) {
        const NoisyCase c = random_case(rng);
        const double offset = shift(rng);
        for (Method m : {Method::Centroid, Method::Mim1, Method::Mim2}) {
            const double base = run(c.spectrum, c.threshold, m);
            const double moved = run(translated(c.spectrum, offset), c.threshold, m);
            CHECK(std::abs(moved - (base + offset)) <= kTol * (1.0 + std::abs(offset)));
        }
    }
}

TEST_CASE("amplitude-scale invariance for all estimators") {
    std::mt19937_64 rng(27182);
    std::uniform_real_distribution<double> log_scale(-3.0, 3.0);
    for (int i = 0; i < kInstances; ++i) {
        const NoisyCase c = random_case(rng);
        const double factor = std::pow(10.0, log_scale(rng));
        for (Method m : {Method::Centroid, Method::Mim1, Method::Mim2}) {
            const double base = run(c.spectrum, c.threshold, m);
            const double scaled =
                run(amplitude_scaled(c.spectrum, factor), c.threshold * factor, m);
            CHECK(std::abs(scaled - base) <= kTol);
        }
    }
}

TEST_CASE("reflection equivariance for all estimators") {
    std::mt19937_64 rng(16180);
    std::uniform_real_distribution<double> axis(-5.0, 15.0);
    for (int i = 0; i < kInstances; ++i) {
        const NoisyCase c = random_case(rng);
        const double mirror_axis = axis(rng);
        for (Method m : {Method::Centroid, Method::Mim1, Method::Mim2}) {
            const double base = run(c.spectrum, c.threshold, m);
            const double flipped = run(reflected(c.spectrum, mirror_axis), c.threshold, m);
            CHECK(std::abs(flipped - (2.0 * mirror_axis - base)) <=
                  kTol * (1.0 + std::abs(mirror_axis)));
        }
    }
}

TEST_CASE("mirror involution on random points") {
    std::mt19937_64 rng(14142);
    std::uniform_real_distribution<double> coord(-1000.0, 1000.0);
    for (int i = 0; i < 1000; ++i) {
        const double x = coord(rng);
        const double p = coord(rng);
        CHECK(std::abs(mirror(mirror(x, p), p) - x) <=
              1e-9 * std::max({1.0, std::abs(x), std::abs(p)}));
    }
}

TEST_CASE("iteration contracts hold on random noisy windows") {
    std::mt19937_64 rng(9001);
    IterationConfig cfg;
    cfg.max_iters = 25;
    for (int i = 0; i < kInstances; ++i) {
        const NoisyCase c = random_case(rng);
        const Window w = select_window(c.spectrum, c.threshold);
        for (Method m : {Method::Mim1, Method::Mim2}) {
            const PeakEstimate est = estimate(w, m, cfg);
            CHECK(est.history.size() == static_cast<std::size_t>(est.iterations));
            CHECK(est.iterations <= cfg.max_iters);
            CHECK_FALSE((est.converged && est.oscillating));
            if (est.converged) {
                const auto n = est.history.size();
                const double prev = n >= 2 ? est.history[n - 2] : est.x_initial;
                CHECK(std::abs(est.history[n - 1] - prev) < cfg.tol);
            }
            if (est.oscillating) CHECK(est.iterations == cfg.max_iters);
            CHECK(std::isfinite(est.x_p));
        }
    }
}

TEST_CASE("exact symmetry makes mu a fixed point of both steps") {
    std::mt19937_64 rng(5050);
    std::uniform_real_distribution<double> width(0.15, 0.5);
    std::uniform_real_distribution<double> amp(0.5, 2.0);
    for (int i = 0; i < 50; ++i) {
        // mu on-grid so the sampled window is exactly symmetric
        const double mu = 5.0;
        const SignalModel model = SignalModel::gaussian(amp(rng), mu, width(rng));
        const Spectrum s = sample(model, 0.0, 10.0, 10.0);
        const Window w = select_window(s, 0.05 * model.amplitude);
        CHECK(mim1_step(w, mu) == doctest::Approx(mu).epsilon(1e-12));
        CHECK(mim2_step(w, mu) == doctest::Approx(mu).epsilon(1e-12));
        CHECK(mim1(w).x_p == doctest::Approx(mu).epsilon(1e-10));
        CHECK(mim2(w).x_p == doctest::Approx(mu).epsilon(1e-10));
    }
}
