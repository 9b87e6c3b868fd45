#pragma once

#include "fluxpulse/grid.hpp"
#include "fluxpulse/model.hpp"

#include <optional>
#include <utility>
#include <vector>

namespace fluxpulse {

struct RelaxOptions {
    double d_tau = 0.01;    // imaginary-time step
    double tol = 1e-9;      // stop when |dE| per unit tau drops below this (K)
    long max_steps = 500000;
};

// Crank-Nicolson stepper: (1 + c H_mid) psi' = (1 - c H_mid) psi with
// c = i dtau/2 (real time, unitary) or dtau/2 (imaginary time, contracting).
// H_mid is evaluated at E_J(tau + dtau/2). Holds the potential tables and the
// per-step work buffers, so propagation does not allocate; one Stepper per
// thread when running independent simulations concurrently.
class Stepper {
  public:
    Stepper(const Grid& grid, const PhysicalParams& params, const PulseSchedule& schedule);

    void step_real(WaveFunction& psi, double tau, double d_tau);
    // Frozen-E_J imaginary-time step; caller renormalizes.
    void step_imag(WaveFunction& psi, double d_tau, double ej);

    // <psi|H|psi> dx with the given E_J; psi need not be normalized.
    double energy_expectation(const WaveFunction& psi, double ej);

    const PulseSchedule& schedule() const { return schedule_; }

  private:
    void step_with(WaveFunction& psi, cplx coef, double ej);

    Grid grid_;
    PhysicalParams params_;
    PulseSchedule schedule_;
    double c2_; // E_C / (pi^2 dx^2)
    std::vector<double> vbase_; // E_L x^2 - E_0
    std::vector<double> vcos_;  // cos(2 pi x)
    std::vector<cplx> rhs_, ws_, scratch_;
};

// H psi with the 3-point Laplacian and Dirichlet boundaries.
WaveFunction apply_hamiltonian(const WaveFunction& psi, double ej, const PhysicalParams& params);

// One Crank-Nicolson step (allocating convenience wrapper around Stepper).
WaveFunction step_real(const WaveFunction& psi, double tau, double d_tau,
                       const PulseSchedule& schedule, const PhysicalParams& params);

// Imaginary-time relaxation to the ground state at fixed E_J, from a
// symmetric Gaussian guess (width 0.2) unless an initial state is supplied.
// Returns the normalized state and its energy. Throws NumericalError when
// max_steps is exhausted.
std::pair<WaveFunction, double> relax_ground(const Grid& grid, const PhysicalParams& params,
                                             double ej, const RelaxOptions& opts = {},
                                             const WaveFunction* initial = nullptr);

// Overload taking the schedule frozen at tau = 0.
std::pair<WaveFunction, double> relax_ground(const Grid& grid, const PhysicalParams& params,
                                             const PulseSchedule& schedule,
                                             const RelaxOptions& opts = {});

// Lowest eigenpairs of the static Hamiltonian, energies ascending, states
// orthonormal under the dx-weighted inner product. omega is the doublet-mean
// spacing mean(E_2, E_3) - mean(E_0, E_1), available once k >= 4.
struct Spectrum {
    std::vector<double> energies;
    std::vector<WaveFunction> states;
    std::optional<double> omega;
};

// 1 <= k <= 8. Backed by a direct symmetric-tridiagonal eigensolve.
Spectrum lowest_eigenpairs(const Grid& grid, double ej, const PhysicalParams& params, int k);

// Localized well states built from the lowest two doublets:
// l0 = (psi_0 -/+ psi_1)/sqrt(2) with the sign fixed so its mass sits at x < 0.
struct LRBasis {
    WaveFunction l0, r0, l1, r1;
};
LRBasis build_lr_basis(const Spectrum& spectrum);

struct LRDecomposition {
    cplx c_l0, c_l1, c_r0, c_r1;
    double residual_weight; // 1 - sum |c|^2, clamped at 0
};
LRDecomposition project_lr_basis(const WaveFunction& psi, const Spectrum& spectrum);

} // namespace fluxpulse
