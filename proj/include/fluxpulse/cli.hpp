#pragma once

#include "fluxpulse/config.hpp"
#include "fluxpulse/envelope_fit.hpp"
#include "fluxpulse/protocols.hpp"

#include <string>

namespace fluxpulse {

// Command entry points: run the experiment described by the (already parsed)
// config, write the output bundle under out_dir (created if needed, always
// including resolved_config.ini), and return the result for summary printing.
// Exit-code mapping and flag handling live in run_cli.

struct RelaxOutcome {
    double e_ground = 0.0;
};

RelaxOutcome cmd_relax(const ExperimentConfig& config, const std::string& out_dir);
RunResult cmd_pulse(const ExperimentConfig& config, const std::string& out_dir);
SweepResult cmd_sweep(const ExperimentConfig& config, const std::string& out_dir, int jobs);
TwoPulseResult cmd_twopulse(const ExperimentConfig& config, const std::string& out_dir,
                            int jobs);
RunResult cmd_profile(const ExperimentConfig& config, const std::string& out_dir);
EnvelopeFit cmd_fit(const ExperimentConfig& config, const std::string& input_csv,
                    const std::string& out_dir);

// Density snapshot times used by the profile command: five instants spanning
// the pulse, center + {-1, -1/2, 0, 1/2, 1} * 2 * duration.
std::vector<double> default_profile_times(const ExperimentConfig& config);

std::string summary_line(const RelaxOutcome& r);
std::string summary_line(const RunResult& r);
std::string summary_line(const SweepResult& r);
std::string summary_line(const TwoPulseResult& r);
std::string summary_line(const EnvelopeFit& r);

// Full command-line front end. Returns the process exit code:
// 0 success, 2 config/usage error, 3 numerical failure, 4 underdetermined fit.
int run_cli(int argc, const char* const* argv);

} // namespace fluxpulse
