#pragma once

#include <string>

namespace fluxpulse {

// Flat INI-style experiment description. Every key has a default, so a parsed
// config is always fully resolved; the echo written next to the outputs can
// be fed back in and reproduces the run byte-identically.
struct ExperimentConfig {
    // [params]
    double e_c = 0.009;
    double e_l = 645.0;
    double e_0 = 76.0;
    // [grid]
    double x_max = 0.75;
    int n_points = 1025;
    double d_tau = 0.002;
    // [pulse]  (center defaults to 4 * duration)
    double amplitude = 0.59;
    double duration = 5.0;
    double center = 20.0;
    // [sweep]
    double a_min = 0.4;
    double a_max = 0.9;
    int a_steps = 11;
    double tau0_min = 2.0;
    double tau0_max = 40.0;
    int tau0_steps = 20;
    // [twopulse]  (delta_min defaults to 4 * duration, delta_max to that + 30)
    double delta_min = 20.0;
    double delta_max = 50.0;
    int delta_steps = 121;
    // [output]
    std::string directory = ".";
    int sample_every = 25;

    bool operator==(const ExperimentConfig&) const = default;
};

// Parse and validate; unknown sections/keys are rejected by name, parse
// errors carry the line number. Throws ConfigError.
ExperimentConfig parse_config(const std::string& path);
ExperimentConfig parse_config_text(const std::string& text, const std::string& origin);

// Fully resolved INI document; parse_config_text(render_config(c)) == c.
std::string render_config(const ExperimentConfig& config);

} // namespace fluxpulse
