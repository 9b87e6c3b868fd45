#pragma once

#include "fluxpulse/envelope_fit.hpp"
#include "fluxpulse/observables.hpp"
#include "fluxpulse/protocols.hpp"

#include <string>
#include <vector>

namespace fluxpulse {

// Shortest decimal representation that round-trips the exact double
// (std::to_chars). All emitted floats go through this, which is what makes
// repeated runs byte-identical.
std::string format_double(double v);

void write_text_file(const std::string& path, const std::string& content);

// timeseries.csv: tau,p_left,norm,energy
std::string render_timeseries_csv(const std::vector<ObservableSample>& samples);

// sweep.csv: amplitude,tau0,p_left,energy,fidelity row-major over (A, tau0)
std::string render_sweep_csv(const SweepResult& sweep);

// sweep_matrix.csv: first row tau0 values, first column A values, body P_L
std::string render_sweep_matrix_csv(const SweepResult& sweep);

// twopulse.csv: delta_tau,p_left_prime
std::string render_twopulse_csv(const TwoPulseResult& result);

// profiles.csv: tau,x,density (long format)
std::string render_profiles_csv(const std::vector<DensityProfile>& profiles);

// fit.csv: a1,a2,t_d,rms_residual,n_extrema_used
std::string render_fit_csv(const EnvelopeFit& fit);

// CSV of (t, y) pairs; a single non-numeric header line is tolerated.
OscillationSeries read_series_csv(const std::string& path);

} // namespace fluxpulse
