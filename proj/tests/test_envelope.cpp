#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "fluxpulse/envelope_fit.hpp"
#include "fluxpulse/errors.hpp"

#include <cmath>
#include <limits>
#include <random>
#include <vector>

using namespace fluxpulse;

namespace {

std::vector<double> arange(double lo, double hi, double step) {
    std::vector<double> t;
    for (double v = lo; v <= hi + 1e-12; v += step)
        t.push_back(v);
    return t;
}

constexpr double kInf = std::numeric_limits<double>::infinity();

} // namespace

TEST_CASE("upper envelope of an undamped cosine is flat") {
    const auto series = synth_decohered_signal(1.0, kInf, 0.5, 0.4, arange(0.0, 60.0, 0.05));
    const auto env = extract_envelope(series, EnvelopeSide::upper);
    CHECK(env.t.size() >= 8);
    for (double y : env.y)
        CHECK(y == doctest::Approx(0.9).epsilon(5e-3));
    const auto lower = extract_envelope(series, EnvelopeSide::lower);
    for (double y : lower.y)
        CHECK(y == doctest::Approx(0.1).epsilon(5e-2));
}

TEST_CASE("damped envelope points track the exponential") {
    const double t_d = 100.0;
    const auto series = synth_decohered_signal(1.0, t_d, 0.5, 0.4, arange(0.0, 400.0, 0.05));
    const auto env = extract_envelope(series, EnvelopeSide::upper);
    for (std::size_t i = 0; i < env.t.size(); ++i)
        CHECK(env.y[i] == doctest::Approx(0.5 + 0.4 * std::exp(-env.t[i] / t_d)).epsilon(2e-3));
}

TEST_CASE("monotone series has no extrema") {
    OscillationSeries mono;
    for (int i = 0; i < 50; ++i) {
        mono.t.push_back(i);
        mono.y.push_back(0.01 * i);
    }
    CHECK_THROWS_AS(extract_envelope(mono, EnvelopeSide::upper), FitError);
}

TEST_CASE("plateaus consolidate to a single extremum") {
    OscillationSeries s;
    const double ys[] = {0.1, 0.5, 0.5, 0.5, 0.1, 0.4, 0.1, 0.6, 0.1};
    for (int i = 0; i < 9; ++i) {
        s.t.push_back(i);
        s.y.push_back(ys[i]);
    }
    const auto idx = local_extrema_indices(s.y, EnvelopeSide::upper);
    REQUIRE(idx.size() == 3);
    CHECK(idx[0] == 2); // middle of the plateau
    CHECK(idx[1] == 5);
    CHECK(idx[2] == 7);
}

TEST_CASE("envelope is an order-preserving subsequence of its input") {
    const auto series =
        synth_decohered_signal(0.7, 50.0, 0.45, 0.35, arange(0.0, 150.0, 0.1));
    const auto env = extract_envelope(series, EnvelopeSide::lower);
    std::size_t cursor = 0;
    for (std::size_t i = 0; i < env.t.size(); ++i) {
        if (i > 0)
            CHECK(env.t[i] > env.t[i - 1]);
        while (cursor < series.t.size() && series.t[cursor] != env.t[i])
            ++cursor;
        REQUIRE(cursor < series.t.size());
        CHECK(series.y[cursor] == env.y[i]);
    }
}

TEST_CASE("noiseless exponential is recovered sharply") {
    OscillationSeries env;
    for (double t = 0.0; t <= 500.0 + 1e-9; t += 25.0) {
        env.t.push_back(t);
        env.y.push_back(0.3 + 0.5 * std::exp(-t / 100.0));
    }
    const EnvelopeFit fit = fit_exponential(env);
    CHECK(std::abs(fit.a1 - 0.3) <= 1e-6);
    CHECK(std::abs(fit.a2 - 0.5) <= 1e-6);
    CHECK(std::abs(fit.t_d - 100.0) <= 1e-4); // 1e-6 relative
    CHECK(fit.rms_residual <= 1e-9);
    CHECK(fit.n_extrema_used == 21);
    CHECK(fit.t_d_identifiable);
}

TEST_CASE("noisy envelope still recovers t_d within a few percent") {
    std::mt19937 rng(2024);
    std::uniform_real_distribution<double> noise(-0.01, 0.01);
    OscillationSeries env;
    for (double t = 0.0; t <= 500.0 + 1e-9; t += 25.0) {
        env.t.push_back(t);
        env.y.push_back(0.3 + 0.5 * std::exp(-t / 100.0) + noise(rng));
    }
    const EnvelopeFit fit = fit_exponential(env);
    CHECK(std::abs(fit.t_d - 100.0) / 100.0 <= 0.05);
}

TEST_CASE("constant data flags t_d as unidentifiable") {
    OscillationSeries env;
    for (int i = 0; i < 12; ++i) {
        env.t.push_back(10.0 * i);
        env.y.push_back(0.25);
    }
    const EnvelopeFit fit = fit_exponential(env);
    CHECK(!fit.t_d_identifiable);
    CHECK(std::abs(fit.a2) <= 1e-6);
}

TEST_CASE("degenerate fit inputs are rejected") {
    OscillationSeries two;
    two.t = {0.0, 1.0};
    two.y = {0.5, 0.4};
    CHECK_THROWS_AS(fit_exponential(two), FitError);

    OscillationSeries nan_y;
    nan_y.t = {0.0, 1.0, 2.0, 3.0};
    nan_y.y = {0.5, std::numeric_limits<double>::quiet_NaN(), 0.3, 0.2};
    CHECK_THROWS_AS(fit_exponential(nan_y), FitError);
}

TEST_CASE("round trip property: exact envelopes recover their parameters") {
    std::mt19937 rng(77);
    std::uniform_real_distribution<double> ua1(0.05, 0.4);
    std::uniform_real_distribution<double> ua2(0.06, 0.5);
    std::uniform_real_distribution<double> utd(5.0, 300.0);
    std::uniform_int_distribution<int> un(8, 40);
    for (int trial = 0; trial < 25; ++trial) {
        const double a1 = ua1(rng), a2 = ua2(rng), t_d = utd(rng);
        const int n = un(rng);
        OscillationSeries env;
        for (int i = 0; i < n; ++i) {
            const double t = 2.5 * t_d * i / (n - 1); // span >= 2 t_d
            env.t.push_back(t);
            env.y.push_back(a1 + a2 * std::exp(-t / t_d));
        }
        const EnvelopeFit fit = fit_exponential(env);
        REQUIRE(fit.t_d_identifiable);
        CHECK(std::abs(fit.a1 - a1) / a1 <= 1e-3);
        CHECK(std::abs(fit.a2 - a2) / a2 <= 1e-3);
        CHECK(std::abs(fit.t_d - t_d) / t_d <= 1e-3);
    }
}

TEST_CASE("rescaling t rescales t_d and nothing else") {
    OscillationSeries env;
    for (double t = 0.0; t <= 300.0 + 1e-9; t += 12.5) {
        env.t.push_back(t);
        env.y.push_back(0.2 + 0.45 * std::exp(-t / 80.0));
    }
    const EnvelopeFit base = fit_exponential(env);
    const double s = 7.5;
    OscillationSeries scaled = env;
    for (double& t : scaled.t)
        t *= s;
    const EnvelopeFit rescaled = fit_exponential(scaled);
    CHECK(rescaled.t_d == doctest::Approx(base.t_d * s).epsilon(1e-9));
    CHECK(rescaled.a1 == doctest::Approx(base.a1).epsilon(1e-9));
    CHECK(rescaled.a2 == doctest::Approx(base.a2).epsilon(1e-9));
}

TEST_CASE("synthetic signal preconditions") {
    CHECK_THROWS_AS(synth_decohered_signal(1.0, 100.0, 0.7, 0.4, arange(0.0, 10.0, 1.0)),
                    std::invalid_argument); // baseline + amplitude > 1
    CHECK_THROWS_AS(synth_decohered_signal(1.0, 100.0, 0.3, 0.4, arange(0.0, 10.0, 1.0)),
                    std::invalid_argument); // baseline - amplitude < 0
    CHECK_THROWS_AS(synth_decohered_signal(1.0, -5.0, 0.5, 0.4, arange(0.0, 10.0, 1.0)),
                    std::invalid_argument);

    const auto flat = synth_decohered_signal(1.0, 100.0, 0.5, 0.0, arange(0.0, 10.0, 1.0));
    for (double y : flat.y)
        CHECK(y == 0.5);
}

TEST_CASE("full pipeline recovers the decay time from a decohered signal") {
    const auto series =
        synth_decohered_signal(1.0, 100.0, 0.5, 0.4, arange(0.0, 400.0, 0.5));
    const auto env = extract_envelope(series, EnvelopeSide::upper);
    const EnvelopeFit fit = fit_exponential(env);
    CHECK(std::abs(fit.t_d - 100.0) / 100.0 <= 0.05);
}
