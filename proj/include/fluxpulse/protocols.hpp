#pragma once

#include "fluxpulse/grid.hpp"
#include "fluxpulse/model.hpp"
#include "fluxpulse/observables.hpp"
#include "fluxpulse/solver.hpp"

#include <vector>

namespace fluxpulse {

struct RunConfig {
    PhysicalParams params;
    Grid grid;
    double d_tau = 0.002;
    PulseSchedule schedule;
    int sample_every = 25;               // steps between recorded samples
    std::vector<double> profile_times;   // density snapshots, within [0, total_time]
    RelaxOptions relax;

    void validate() const;
};

struct RunResult {
    std::vector<ObservableSample> samples; // monotone in tau; first at 0, last at tau_end
    double final_p_left = 0.0;
    double final_energy = 0.0; // unperturbed E_J = E_0
    double fidelity = 0.0;
    double e_ground = 0.0;     // pre-truncation relaxation energy
    std::vector<DensityProfile> profiles;
};

struct SweepResult {
    std::vector<double> a_values;
    std::vector<double> tau0_values;
    // row-major |a_values| x |tau0_values|; failed cells hold NaN
    std::vector<double> p_left;
    std::vector<double> energy;
    std::vector<double> fidelity;

    std::size_t index(std::size_t i, std::size_t j) const { return i * tau0_values.size() + j; }
};

struct TwoPulseResult {
    std::vector<double> delta_tau_values; // center-to-center separations
    std::vector<double> p_left_prime;
    double omega_reference = 0.0; // doublet-mean spacing of the static spectrum
    bool small_separation_warning = false; // some delta_tau < 4 * duration
};

struct PreparedState {
    WaveFunction psi;
    double e_ground;
};

// Relax to the ground state at E_J = E_0, keep the x < 0 half (amplitude at
// the x = 0 node halved), renormalize.
PreparedState prepare_left_state(const Grid& grid, const PhysicalParams& params,
                                 const RelaxOptions& opts = {});

// Prepared left state, then Crank-Nicolson propagation over the schedule.
// Aborts with NumericalError if the norm drifts beyond 1e-4.
RunResult run_single_pulse(const RunConfig& config);

// Same, reusing an already-prepared initial state (the preparation does not
// depend on the schedule, so sweeps prepare once).
RunResult run_schedule(const RunConfig& config, const PreparedState& prepared);

// run_single_pulse with density snapshots at config.profile_times.
RunResult snapshot_run(const RunConfig& config);

// Independent single-pulse runs over the (A, tau0) product grid, as a
// parallel map; center = 4 tau0 per cell. Failed cells degrade to NaN.
// parallelism <= 0 means all available threads. The result is identical
// for every parallelism degree.
SweepResult run_sweep(const RunConfig& base, const std::vector<double>& a_values,
                      const std::vector<double>& tau0_values, int parallelism);

// Two identical pulses separated (center-to-center) by each delta_tau,
// starting from the prepared left state; records final P'_L per separation.
TwoPulseResult run_two_pulse(const RunConfig& base, const PulseSpec& pulse,
                             const std::vector<double>& delta_taus, int parallelism = 0);

// Inclusive endpoints; n >= 1 (n == 1 yields {lo}).
std::vector<double> linspace(double lo, double hi, int n);

// Periodogram peak of y(t) - mean over [omega_lo, omega_hi], refined by
// parabolic interpolation. Used to cross-check the two-pulse oscillation
// against the spectral omega.
double dominant_angular_frequency(const std::vector<double>& t, const std::vector<double>& y,
                                  double omega_lo, double omega_hi);

} // namespace fluxpulse
