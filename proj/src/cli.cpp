#include "fluxpulse/cli.hpp"

#include "fluxpulse/csv_io.hpp"
#include "fluxpulse/errors.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <filesystem>
#include <iostream>
#include <sstream>

namespace fluxpulse {

namespace {

namespace fs = std::filesystem;

void write_bundle_file(const std::string& out_dir, const std::string& name,
                       const std::string& content) {
    fs::create_directories(out_dir);
    write_text_file((fs::path(out_dir) / name).string(), content);
}

void write_echo(const ExperimentConfig& config, const std::string& out_dir) {
    write_bundle_file(out_dir, "resolved_config.ini", render_config(config));
}

PhysicalParams params_of(const ExperimentConfig& c) {
    PhysicalParams p;
    p.e_c = c.e_c;
    p.e_l = c.e_l;
    p.e_0 = c.e_0;
    return p;
}

Grid grid_of(const ExperimentConfig& c) {
    return Grid{c.x_max, c.n_points};
}

RunConfig run_config_of(const ExperimentConfig& c) {
    PulseSpec pulse{c.amplitude, c.duration, c.center};
    RunConfig rc{params_of(c), grid_of(c), c.d_tau, PulseSchedule::single(pulse, c.e_0),
                 c.sample_every, {}, RelaxOptions{}};
    return rc;
}

std::string fmt(double v) {
    std::ostringstream out;
    out.precision(6);
    out << v;
    return out.str();
}

} // namespace

std::vector<double> default_profile_times(const ExperimentConfig& config) {
    std::vector<double> times;
    for (int k = -2; k <= 2; ++k)
        times.push_back(config.center + k * config.duration);
    return times;
}

RelaxOutcome cmd_relax(const ExperimentConfig& config, const std::string& out_dir) {
    const auto [psi, e_ground] =
        relax_ground(grid_of(config), params_of(config), config.e_0, RelaxOptions{});
    write_echo(config, out_dir);
    return RelaxOutcome{e_ground};
}

RunResult cmd_pulse(const ExperimentConfig& config, const std::string& out_dir) {
    const RunResult result = run_single_pulse(run_config_of(config));
    write_echo(config, out_dir);
    write_bundle_file(out_dir, "timeseries.csv", render_timeseries_csv(result.samples));
    return result;
}

SweepResult cmd_sweep(const ExperimentConfig& config, const std::string& out_dir, int jobs) {
    RunConfig base = run_config_of(config);
    const SweepResult result =
        run_sweep(base, linspace(config.a_min, config.a_max, config.a_steps),
                  linspace(config.tau0_min, config.tau0_max, config.tau0_steps), jobs);
    write_echo(config, out_dir);
    write_bundle_file(out_dir, "sweep.csv", render_sweep_csv(result));
    write_bundle_file(out_dir, "sweep_matrix.csv", render_sweep_matrix_csv(result));
    return result;
}

TwoPulseResult cmd_twopulse(const ExperimentConfig& config, const std::string& out_dir,
                            int jobs) {
    RunConfig base = run_config_of(config);
    PulseSpec pulse{config.amplitude, config.duration, config.center};
    const TwoPulseResult result =
        run_two_pulse(base, pulse,
                      linspace(config.delta_min, config.delta_max, config.delta_steps), jobs);
    write_echo(config, out_dir);
    write_bundle_file(out_dir, "twopulse.csv", render_twopulse_csv(result));
    return result;
}

RunResult cmd_profile(const ExperimentConfig& config, const std::string& out_dir) {
    RunConfig rc = run_config_of(config);
    rc.profile_times = default_profile_times(config);
    const RunResult result = snapshot_run(rc);
    write_echo(config, out_dir);
    write_bundle_file(out_dir, "timeseries.csv", render_timeseries_csv(result.samples));
    write_bundle_file(out_dir, "profiles.csv", render_profiles_csv(result.profiles));
    return result;
}

EnvelopeFit cmd_fit(const ExperimentConfig& config, const std::string& input_csv,
                    const std::string& out_dir) {
    const OscillationSeries series = read_series_csv(input_csv);
    const OscillationSeries envelope = extract_envelope(series, EnvelopeSide::upper);
    const EnvelopeFit fit = fit_exponential(envelope);
    write_echo(config, out_dir);
    write_bundle_file(out_dir, "fit.csv", render_fit_csv(fit));
    return fit;
}

std::string summary_line(const RelaxOutcome& r) {
    return "relax: e_ground=" + fmt(r.e_ground) + " K";
}

std::string summary_line(const RunResult& r) {
    return "pulse: p_left=" + fmt(r.final_p_left) + " energy=" + fmt(r.final_energy) +
           " K fidelity=" + fmt(r.fidelity) + " e_ground=" + fmt(r.e_ground) + " K";
}

std::string summary_line(const SweepResult& r) {
    std::size_t failed = 0;
    for (double v : r.p_left)
        if (std::isnan(v))
            ++failed;
    return "sweep: cells=" + std::to_string(r.p_left.size()) +
           " failed=" + std::to_string(failed) + " a=[" + fmt(r.a_values.front()) + "," +
           fmt(r.a_values.back()) + "] tau0=[" + fmt(r.tau0_values.front()) + "," +
           fmt(r.tau0_values.back()) + "]";
}

std::string summary_line(const TwoPulseResult& r) {
    double lo = r.p_left_prime.front(), hi = lo;
    for (double v : r.p_left_prime) {
        lo = std::min(lo, v);
        hi = std::max(hi, v);
    }
    std::string line = "twopulse: points=" + std::to_string(r.p_left_prime.size()) +
                       " omega_reference=" + fmt(r.omega_reference) +
                       " K peak_to_peak=" + fmt(hi - lo);
    if (r.small_separation_warning)
        line += " warning=separation_below_4x_duration";
    return line;
}

std::string summary_line(const EnvelopeFit& r) {
    std::string line = "fit: t_d=" + fmt(r.t_d) + " a1=" + fmt(r.a1) + " a2=" + fmt(r.a2) +
                       " rms_residual=" + fmt(r.rms_residual) +
                       " n_extrema=" + std::to_string(r.n_extrema_used);
    if (!r.t_d_identifiable)
        line += " warning=t_d_unidentifiable";
    return line;
}

int run_cli(int argc, const char* const* argv) {
    CLI::App app{"SQUID double-well pulse simulator"};
    app.require_subcommand(1);

    std::string config_path;
    std::string out_dir;
    std::string input_csv;
    int jobs = 0;

    const auto add_common = [&](CLI::App* sub, bool with_jobs) {
        sub->add_option("--config", config_path, "experiment config file")->required();
        sub->add_option("--out", out_dir, "output directory (default: [output] directory)");
        if (with_jobs)
            sub->add_option("--jobs", jobs, "parallel workers, 0 = all cores");
        return sub;
    };

    CLI::App* relax = add_common(app.add_subcommand("relax", "ground-state relaxation"), false);
    CLI::App* pulse = add_common(app.add_subcommand("pulse", "single-pulse run"), false);
    CLI::App* sweep = add_common(app.add_subcommand("sweep", "(A, tau0) sweep"), true);
    CLI::App* twopulse =
        add_common(app.add_subcommand("twopulse", "two-pulse separation sweep"), true);
    CLI::App* profile =
        add_common(app.add_subcommand("profile", "single-pulse run with density snapshots"),
                   false);
    CLI::App* fit = add_common(app.add_subcommand("fit", "envelope decay fit of a (t, y) CSV"),
                               false);
    fit->add_option("--input", input_csv, "CSV of t,y pairs")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2; // usage problems are config errors
    }

    try {
        const ExperimentConfig config = parse_config(config_path);
        const std::string dir = out_dir.empty() ? config.directory : out_dir;
        std::string summary;
        if (relax->parsed())
            summary = summary_line(cmd_relax(config, dir));
        else if (pulse->parsed())
            summary = summary_line(cmd_pulse(config, dir));
        else if (sweep->parsed())
            summary = summary_line(cmd_sweep(config, dir, jobs));
        else if (twopulse->parsed())
            summary = summary_line(cmd_twopulse(config, dir, jobs));
        else if (profile->parsed())
            summary = summary_line(cmd_profile(config, dir));
        else if (fit->parsed())
            summary = summary_line(cmd_fit(config, input_csv, dir));
        std::cout << summary << std::endl;
        return 0;
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << std::endl;
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "config error: " << e.what() << std::endl;
        return 2;
    } catch (const FitError& e) {
        std::cerr << "fit error: " << e.what() << std::endl;
        return 4;
    } catch (const NumericalError& e) {
        std::cerr << "numerical failure: " << e.what() << std::endl;
        return 3;
    }
}

} // namespace fluxpulse
