#include "fluxpulse/protocols.hpp"

#include "fluxpulse/errors.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <exception>
#include <limits>
#include <map>
#include <sstream>
#include <stdexcept>
#include <thread>

namespace fluxpulse {

namespace {

constexpr double kNormDriftLimit = 1e-4;

int resolve_jobs(int parallelism) {
    if (parallelism > 0)
        return parallelism;
#ifdef _OPENMP
    return omp_get_max_threads();
#else
    const unsigned hc = std::thread::hardware_concurrency();
    return hc > 0 ? static_cast<int>(hc) : 1;
#endif
}

ObservableSample take_sample(Stepper& stepper, const WaveFunction& psi,
                             const PulseSchedule& schedule, double tau) {
    ObservableSample s;
    s.tau = tau;
    s.p_left = prob_left(psi);
    s.norm = wf_norm(psi);
    s.energy = stepper.energy_expectation(psi, ej_at(schedule, tau));
    return s;
}

} // namespace

void RunConfig::validate() const {
    params.validate();
    grid.validate();
    if (!(d_tau > 0.0) || !std::isfinite(d_tau))
        throw std::invalid_argument("RunConfig: d_tau must be > 0");
    if (sample_every < 1)
        throw std::invalid_argument("RunConfig: sample_every must be >= 1");
    for (double t : profile_times)
        if (!(t >= 0.0 && t <= schedule.total_time()))
            throw std::invalid_argument("RunConfig: profile time outside [0, total_time]");
}

PreparedState prepare_left_state(const Grid& grid, const PhysicalParams& params,
                                 const RelaxOptions& opts) {
    auto [psi, e_ground] = relax_ground(grid, params, params.e_0, opts);
    const int mid = grid.mid();
    psi.amp[mid] *= 0.5;
    for (int j = mid + 1; j < grid.n_points; ++j)
        psi.amp[j] = cplx(0.0);
    wf_normalize(psi);
    return {std::move(psi), e_ground};
}

RunResult run_schedule(const RunConfig& config, const PreparedState& prepared) {
    config.validate();
    if (!(prepared.psi.grid == config.grid))
        throw std::invalid_argument("run_schedule: prepared state on wrong grid");

    Stepper stepper(config.grid, config.params, config.schedule);
    WaveFunction psi = prepared.psi;

    const std::int64_t n_steps = std::llround(config.schedule.total_time() / config.d_tau);
    if (n_steps < 1)
        throw std::invalid_argument("run_schedule: schedule shorter than one step");

    // Map requested profile times onto step indices (nearest step).
    std::map<std::int64_t, double> profile_steps;
    for (double t : config.profile_times) {
        std::int64_t k = std::llround(t / config.d_tau);
        k = std::clamp<std::int64_t>(k, 0, n_steps);
        profile_steps.emplace(k, t);
    }

    RunResult result;
    result.e_ground = prepared.e_ground;

    auto maybe_record = [&](std::int64_t k) {
        const double tau = static_cast<double>(k) * config.d_tau;
        if (k % config.sample_every == 0 || k == n_steps) {
            ObservableSample s = take_sample(stepper, psi, config.schedule, tau);
            if (std::abs(s.norm - 1.0) > kNormDriftLimit) {
                std::ostringstream msg;
                msg << "run aborted: norm drift " << s.norm - 1.0 << " at tau " << tau
                    << " (d_tau " << config.d_tau << ", n_points " << config.grid.n_points
                    << " too coarse?)";
                throw NumericalError(msg.str());
            }
            result.samples.push_back(s);
        }
        if (auto it = profile_steps.find(k); it != profile_steps.end())
            result.profiles.push_back(density_profile(psi, tau));
    };

    maybe_record(0);
    for (std::int64_t k = 0; k < n_steps; ++k) {
        stepper.step_real(psi, static_cast<double>(k) * config.d_tau, config.d_tau);
        maybe_record(k + 1);
    }

    result.final_p_left = prob_left(psi);
    result.final_energy = energy_unperturbed(psi, config.params);
    result.fidelity = fidelity(result.final_energy, result.e_ground);
    return result;
}

RunResult run_single_pulse(const RunConfig& config) {
    if (config.schedule.pulses().size() != 1)
        throw std::invalid_argument("run_single_pulse: schedule must hold exactly one pulse");
    const PreparedState prepared =
        prepare_left_state(config.grid, config.params, config.relax);
    return run_schedule(config, prepared);
}

RunResult snapshot_run(const RunConfig& config) {
    if (config.profile_times.empty())
        throw std::invalid_argument("snapshot_run: profile_times must not be empty");
    return run_single_pulse(config);
}

SweepResult run_sweep(const RunConfig& base, const std::vector<double>& a_values,
                      const std::vector<double>& tau0_values, int parallelism) {
    if (a_values.empty() || tau0_values.empty())
        throw std::invalid_argument("run_sweep: empty value lists");
    base.params.validate();
    base.grid.validate();

    SweepResult sweep;
    sweep.a_values = a_values;
    sweep.tau0_values = tau0_values;
    const std::size_t cells = a_values.size() * tau0_values.size();
    sweep.p_left.assign(cells, std::numeric_limits<double>::quiet_NaN());
    sweep.energy.assign(cells, std::numeric_limits<double>::quiet_NaN());
    sweep.fidelity.assign(cells, std::numeric_limits<double>::quiet_NaN());

    // The preparation does not depend on the pulse, so do it once up front.
    const PreparedState prepared = prepare_left_state(base.grid, base.params, base.relax);

    const int na = static_cast<int>(a_values.size());
    const int nt = static_cast<int>(tau0_values.size());
    const int jobs = resolve_jobs(parallelism);
    (void)jobs;

#ifdef _OPENMP
#pragma omp parallel for collapse(2) schedule(dynamic) num_threads(jobs)
#endif
    for (int i = 0; i < na; ++i) {
        for (int j = 0; j < nt; ++j) {
            try {
                PulseSpec pulse;
                pulse.amplitude = a_values[static_cast<std::size_t>(i)];
                pulse.duration = tau0_values[static_cast<std::size_t>(j)];
                pulse.center = 4.0 * pulse.duration;

                RunConfig cell = base;
                cell.schedule = PulseSchedule::single(pulse, base.params.e_0);
                cell.profile_times.clear();
                cell.sample_every = std::numeric_limits<int>::max();

                const RunResult r = run_schedule(cell, prepared);
                const std::size_t idx = sweep.index(static_cast<std::size_t>(i),
                                                    static_cast<std::size_t>(j));
                sweep.p_left[idx] = r.final_p_left;
                sweep.energy[idx] = r.final_energy;
                sweep.fidelity[idx] = r.fidelity;
            } catch (...) {
                // cell stays NaN; sweeps survive isolated failures
            }
        }
    }
    return sweep;
}

TwoPulseResult run_two_pulse(const RunConfig& base, const PulseSpec& pulse,
                             const std::vector<double>& delta_taus, int parallelism) {
    if (delta_taus.empty())
        throw std::invalid_argument("run_two_pulse: empty delta_tau list");
    pulse.validate();
    base.params.validate();
    base.grid.validate();

    TwoPulseResult result;
    result.delta_tau_values = delta_taus;
    result.p_left_prime.assign(delta_taus.size(), 0.0);

    const Spectrum spectrum = lowest_eigenpairs(base.grid, base.params.e_0, base.params, 4);
    result.omega_reference = spectrum.omega.value();

    for (double dt : delta_taus) {
        if (!(dt > 0.0) || !std::isfinite(dt))
            throw std::invalid_argument("run_two_pulse: delta_tau must be > 0");
        if (dt < 4.0 * pulse.duration)
            result.small_separation_warning = true;
    }

    const PreparedState prepared = prepare_left_state(base.grid, base.params, base.relax);

    const int m = static_cast<int>(delta_taus.size());
    const int jobs = resolve_jobs(parallelism);
    (void)jobs;
    std::exception_ptr first_error;

#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic) num_threads(jobs)
#endif
    for (int i = 0; i < m; ++i) {
        try {
            PulseSpec second = pulse;
            second.center = pulse.center + delta_taus[static_cast<std::size_t>(i)];

            RunConfig cell = base;
            cell.schedule = PulseSchedule({pulse, second},
                                          second.center + 4.0 * pulse.duration,
                                          base.params.e_0);
            cell.profile_times.clear();
            cell.sample_every = std::numeric_limits<int>::max();

            const RunResult r = run_schedule(cell, prepared);
            result.p_left_prime[static_cast<std::size_t>(i)] = r.final_p_left;
        } catch (...) {
#ifdef _OPENMP
#pragma omp critical(fluxpulse_twopulse_error)
#endif
            {
                if (!first_error)
                    first_error = std::current_exception();
            }
        }
    }
    if (first_error)
        std::rethrow_exception(first_error);
    return result;
}

std::vector<double> linspace(double lo, double hi, int n) {
    if (n < 1)
        throw std::invalid_argument("linspace: n must be >= 1");
    std::vector<double> v(static_cast<std::size_t>(n));
    if (n == 1) {
        v[0] = lo;
        return v;
    }
    const double step = (hi - lo) / (n - 1);
    for (int i = 0; i < n; ++i)
        v[static_cast<std::size_t>(i)] = lo + i * step;
    v.back() = hi;
    return v;
}

double dominant_angular_frequency(const std::vector<double>& t, const std::vector<double>& y,
                                  double omega_lo, double omega_hi) {
    if (t.size() != y.size() || t.size() < 4)
        throw std::invalid_argument("dominant_angular_frequency: need >= 4 samples");
    if (!(omega_lo > 0.0 && omega_hi > omega_lo))
        throw std::invalid_argument("dominant_angular_frequency: bad frequency window");

    double mean = 0.0;
    for (double v : y)
        mean += v;
    mean /= static_cast<double>(y.size());

    constexpr int n_grid = 4096;
    const auto power = [&](double w) {
        double re = 0.0, im = 0.0;
        for (std::size_t k = 0; k < t.size(); ++k) {
            const double c = y[k] - mean;
            re += c * std::cos(w * t[k]);
            im += c * std::sin(w * t[k]);
        }
        return re * re + im * im;
    };

    int best = 0;
    double best_p = -1.0;
    std::vector<double> p(n_grid);
    for (int i = 0; i < n_grid; ++i) {
        const double w = omega_lo + (omega_hi - omega_lo) * i / (n_grid - 1);
        p[static_cast<std::size_t>(i)] = power(w);
        if (p[static_cast<std::size_t>(i)] > best_p) {
            best_p = p[static_cast<std::size_t>(i)];
            best = i;
        }
    }
    const double dw = (omega_hi - omega_lo) / (n_grid - 1);
    double w = omega_lo + dw * best;
    if (best > 0 && best < n_grid - 1) {
        // parabolic refinement on the three neighboring periodogram samples
        const double pm = p[static_cast<std::size_t>(best - 1)];
        const double pc = p[static_cast<std::size_t>(best)];
        const double pp = p[static_cast<std::size_t>(best + 1)];
        const double denom = pm - 2.0 * pc + pp;
        if (denom < 0.0)
            w += dw * 0.5 * (pm - pp) / denom;
    }
    return w;
}

} // namespace fluxpulse
