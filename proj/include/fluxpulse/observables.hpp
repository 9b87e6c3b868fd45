#pragma once

#include "fluxpulse/grid.hpp"
#include "fluxpulse/model.hpp"

#include <vector>

namespace fluxpulse {

struct ObservableSample {
    double tau = 0.0;
    double p_left = 0.0;
    double norm = 0.0;
    double energy = 0.0; // K, evaluated with the instantaneous E_J
};

struct DensityProfile {
    double tau = 0.0;
    std::vector<double> density; // |psi_j|^2 at every node
    Grid grid;
};

// Integrated probability at x < 0, trapezoid rule; the x = 0 node contributes
// half its weight to each side. Expects a normalized state.
double prob_left(const WaveFunction& psi);

// <psi|H(ej)|psi> dx for a normalized state.
double energy_expectation(const WaveFunction& psi, double ej, const PhysicalParams& params);

// Energy against the restored barrier, E_J = E_0.
double energy_unperturbed(const WaveFunction& psi, const PhysicalParams& params);

// F = |e_ground| / (e_final - e_ground); the barrier top sits at zero energy.
// Returns +infinity when the excitation underflows; throws on
// e_final < e_ground (a pulse cannot extract energy below the ground state).
double fidelity(double e_final, double e_ground);

// e_final / |e_ground| = 1/F - 1. Requires e_ground < 0.
double energy_ratio(double e_final, double e_ground);

DensityProfile density_profile(const WaveFunction& psi, double tau);

} // namespace fluxpulse
