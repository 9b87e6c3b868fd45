#include "fluxpulse/observables.hpp"

#include "fluxpulse/kernels.hpp"
#include "fluxpulse/solver.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace fluxpulse {

double prob_left(const WaveFunction& psi) {
    const int mid = psi.grid.mid();
    double s = 0.0;
    for (int j = 1; j < mid; ++j)
        s += std::norm(psi.amp[j]);
    s += 0.5 * std::norm(psi.amp[mid]);
    return s * psi.grid.dx();
}

double energy_expectation(const WaveFunction& psi, double ej, const PhysicalParams& params) {
    const WaveFunction hpsi = apply_hamiltonian(psi, ej, params);
    return wf_inner(psi, hpsi).real();
}

double energy_unperturbed(const WaveFunction& psi, const PhysicalParams& params) {
    return energy_expectation(psi, params.e_0, params);
}

double fidelity(double e_final, double e_ground) {
    if (!(std::isfinite(e_final) && std::isfinite(e_ground)))
        throw std::invalid_argument("fidelity: non-finite energy");
    if (e_final < e_ground)
        throw std::invalid_argument("fidelity: e_final below e_ground is unphysical");
    const double delta = e_final - e_ground;
    const double f = std::abs(e_ground) / delta;
    if (!std::isfinite(f))
        return std::numeric_limits<double>::infinity();
    return f;
}

double energy_ratio(double e_final, double e_ground) {
    if (!(e_ground < 0.0))
        throw std::invalid_argument("energy_ratio: requires e_ground < 0");
    return e_final / std::abs(e_ground);
}

DensityProfile density_profile(const WaveFunction& psi, double tau) {
    DensityProfile p;
    p.tau = tau;
    p.grid = psi.grid;
    p.density.resize(psi.amp.size());
    for (std::size_t j = 0; j < psi.amp.size(); ++j)
        p.density[j] = std::norm(psi.amp[j]);
    return p;
}

} // namespace fluxpulse
