#pragma once

#include <vector>

namespace fluxpulse {

// An oscillating probability trace: t strictly increasing, y within [0, 1].
struct OscillationSeries {
    std::vector<double> t;
    std::vector<double> y;

    void validate() const;
};

enum class EnvelopeSide { upper, lower };

struct EnvelopeFit {
    double a1 = 0.0;
    double a2 = 0.0;
    double t_d = 0.0;           // decay time, same units as t
    double rms_residual = 0.0;
    int n_extrema_used = 0;
    // False when the data carry no decay information (constant envelope);
    // a1/a2/t_d are then not meaningful beyond reproducing the flat fit.
    bool t_d_identifiable = true;
};

// Interior local extrema of the requested side, by 3-point comparison;
// plateaus of exactly equal values consolidate to their middle sample.
std::vector<int> local_extrema_indices(const std::vector<double>& y, EnvelopeSide side);

// The extremum subsequence as a series. Throws FitError with fewer than
// 3 extrema (the exponential fit would be underdetermined).
OscillationSeries extract_envelope(const OscillationSeries& series, EnvelopeSide side);

// Least-squares fit of a1 + a2 exp(-t / t_d): log-spaced scan over t_d
// candidates with a linear solve for (a1, a2) at each, then golden-section
// refinement of t_d between the best candidate's neighbors.
EnvelopeFit fit_exponential(const OscillationSeries& envelope);

// y(t) = baseline + amplitude * exp(-t / t_d) * cos(omega t). Validation
// oracle for the fit pipeline. Requires baseline + amplitude <= 1 and
// baseline - amplitude >= 0 so y stays a probability; t_d may be +infinity
// (no decay).
OscillationSeries synth_decohered_signal(double omega, double t_d, double baseline,
                                         double amplitude, std::vector<double> t_values);

} // namespace fluxpulse
