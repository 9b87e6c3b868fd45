#include "fluxpulse/solver.hpp"

#include "fluxpulse/errors.hpp"
#include "fluxpulse/kernels.hpp"
#include "fluxpulse/observables.hpp"

#include <lapacke.h>

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <string>

namespace fluxpulse {

Stepper::Stepper(const Grid& grid, const PhysicalParams& params, const PulseSchedule& schedule)
    : grid_(grid), params_(params), schedule_(schedule) {
    grid_.validate();
    params_.validate();
    const std::size_t n = static_cast<std::size_t>(grid_.n_points);
    const double dx = grid_.dx();
    c2_ = params_.kinetic_coeff() / (dx * dx);
    vbase_.resize(n);
    vcos_.resize(n);
    for (std::size_t j = 0; j < n; ++j) {
        const double x = grid_.x(static_cast<int>(j));
        vbase_[j] = params_.e_l * x * x - params_.e_0;
        vcos_[j] = std::cos(2.0 * pi * x);
    }
    rhs_.resize(n);
    ws_.resize(n);
    scratch_.resize(n);
}

void Stepper::step_with(WaveFunction& psi, cplx coef, double ej) {
    const int n = grid_.n_points;
    kernels::cn_rhs(psi.amp.data(), rhs_.data(), n, c2_, vbase_.data(), vcos_.data(), ej, coef);
    if (!kernels::cn_solve(rhs_.data(), psi.amp.data(), ws_.data(), n, c2_, vbase_.data(),
                           vcos_.data(), ej, coef))
        throw NumericalError("Crank-Nicolson tridiagonal solve hit a zero pivot");
}

void Stepper::step_real(WaveFunction& psi, double tau, double d_tau) {
    if (!(d_tau > 0.0))
        throw std::invalid_argument("step_real: d_tau must be > 0");
    const double ej_mid = ej_at(schedule_, tau + 0.5 * d_tau);
    step_with(psi, cplx(0.0, 0.5 * d_tau), ej_mid);
}

void Stepper::step_imag(WaveFunction& psi, double d_tau, double ej) {
    if (!(d_tau > 0.0))
        throw std::invalid_argument("step_imag: d_tau must be > 0");
    step_with(psi, cplx(0.5 * d_tau, 0.0), ej);
}

double Stepper::energy_expectation(const WaveFunction& psi, double ej) {
    const int n = grid_.n_points;
    kernels::apply_h(psi.amp.data(), scratch_.data(), n, c2_, vbase_.data(), vcos_.data(), ej);
    const cplx e = kernels::dot(psi.amp.data(), scratch_.data(), n) * grid_.dx();
    const double nrm2 = kernels::sum_abs2(psi.amp.data(), n) * grid_.dx();
    return e.real() / nrm2;
}

WaveFunction apply_hamiltonian(const WaveFunction& psi, double ej, const PhysicalParams& params) {
    params.validate();
    psi.grid.validate();
    const int n = psi.grid.n_points;
    if (static_cast<int>(psi.amp.size()) != n)
        throw std::invalid_argument("apply_hamiltonian: amplitude size mismatch");
    const double dx = psi.grid.dx();
    const double c2 = params.kinetic_coeff() / (dx * dx);
    std::vector<double> vbase(n), vcos(n);
    for (int j = 0; j < n; ++j) {
        const double x = psi.grid.x(j);
        vbase[j] = params.e_l * x * x - params.e_0;
        vcos[j] = std::cos(2.0 * pi * x);
    }
    WaveFunction out = zero_wavefunction(psi.grid);
    kernels::apply_h(psi.amp.data(), out.amp.data(), n, c2, vbase.data(), vcos.data(), ej);
    return out;
}

WaveFunction step_real(const WaveFunction& psi, double tau, double d_tau,
                       const PulseSchedule& schedule, const PhysicalParams& params) {
    Stepper stepper(psi.grid, params, schedule);
    WaveFunction out = psi;
    stepper.step_real(out, tau, d_tau);
    return out;
}

std::pair<WaveFunction, double> relax_ground(const Grid& grid, const PhysicalParams& params,
                                             double ej, const RelaxOptions& opts,
                                             const WaveFunction* initial) {
    if (!(opts.tol > 0.0))
        throw std::invalid_argument("relax_ground: tol must be > 0");
    if (!(opts.d_tau > 0.0))
        throw std::invalid_argument("relax_ground: d_tau must be > 0");

    // Schedule is irrelevant here; the stepper only needs the potential tables.
    const PulseSchedule frozen = PulseSchedule::free_run(1.0, params.e_0);
    Stepper stepper(grid, params, frozen);

    WaveFunction psi = zero_wavefunction(grid);
    if (initial) {
        if (!(initial->grid == grid))
            throw std::invalid_argument("relax_ground: initial guess on wrong grid");
        psi = *initial;
    } else {
        constexpr double width = 0.2;
        for (int j = 1; j < grid.n_points - 1; ++j) {
            const double x = grid.x(j);
            psi.amp[j] = std::exp(-x * x / (2.0 * width * width));
        }
    }
    wf_normalize(psi);

    double e_prev = stepper.energy_expectation(psi, ej);
    for (long it = 0; it < opts.max_steps; ++it) {
        stepper.step_imag(psi, opts.d_tau, ej);
        wf_normalize(psi);
        const double e = stepper.energy_expectation(psi, ej);
        if (std::abs(e - e_prev) / opts.d_tau < opts.tol)
            return {std::move(psi), e};
        e_prev = e;
    }
    throw NumericalError("relax_ground: no convergence after " + std::to_string(opts.max_steps) +
                         " steps, last energy " + std::to_string(e_prev) + " K");
}

std::pair<WaveFunction, double> relax_ground(const Grid& grid, const PhysicalParams& params,
                                             const PulseSchedule& schedule,
                                             const RelaxOptions& opts) {
    return relax_ground(grid, params, ej_at(schedule, 0.0), opts);
}

Spectrum lowest_eigenpairs(const Grid& grid, double ej, const PhysicalParams& params, int k) {
    if (k < 1 || k > 8)
        throw std::invalid_argument("lowest_eigenpairs: k must be in [1, 8]");
    grid.validate();
    params.validate();

    const int m = grid.n_points - 2; // interior
    const double dx = grid.dx();
    const double c2 = params.kinetic_coeff() / (dx * dx);
    std::vector<double> diag(m), off(m > 1 ? m - 1 : 0, -c2);
    for (int j = 0; j < m; ++j)
        diag[j] = 2.0 * c2 + potential_at(grid.x(j + 1), ej, params);

    std::vector<double> w(m);
    std::vector<double> z(static_cast<std::size_t>(m) * k);
    std::vector<lapack_int> isuppz(2 * static_cast<std::size_t>(k));
    lapack_int found = 0;
    const lapack_int info = LAPACKE_dstevr(LAPACK_COL_MAJOR, 'V', 'I', m, diag.data(), off.data(),
                                           0.0, 0.0, 1, k, 0.0, &found, w.data(), z.data(), m,
                                           isuppz.data());
    if (info != 0 || found < k)
        throw NumericalError("lowest_eigenpairs: dstevr failed (info " + std::to_string(info) +
                             ", found " + std::to_string(found) + ")");

    Spectrum spec;
    spec.energies.assign(w.begin(), w.begin() + k);
    const double inv_sqrt_dx = 1.0 / std::sqrt(dx);
    for (int i = 0; i < k; ++i) {
        WaveFunction psi = zero_wavefunction(grid);
        const double* col = z.data() + static_cast<std::size_t>(i) * m;
        // LAPACK returns unit Euclidean norm and an arbitrary overall sign;
        // rescale to the dx-weighted norm and make the largest entry positive.
        int jmax = 0;
        for (int j = 1; j < m; ++j)
            if (std::abs(col[j]) > std::abs(col[jmax]))
                jmax = j;
        const double sign = col[jmax] < 0.0 ? -1.0 : 1.0;
        for (int j = 0; j < m; ++j)
            psi.amp[j + 1] = sign * col[j] * inv_sqrt_dx;
        spec.states.push_back(std::move(psi));
    }
    if (k >= 4)
        spec.omega = 0.5 * (spec.energies[2] + spec.energies[3]) -
                     0.5 * (spec.energies[0] + spec.energies[1]);
    return spec;
}

namespace {

WaveFunction combine(const WaveFunction& a, const WaveFunction& b, double sb) {
    WaveFunction out = a;
    const double s = 1.0 / std::sqrt(2.0);
    for (std::size_t j = 0; j < out.amp.size(); ++j)
        out.amp[j] = s * (a.amp[j] + sb * b.amp[j]);
    return out;
}

} // namespace

LRBasis build_lr_basis(const Spectrum& spectrum) {
    if (spectrum.states.size() < 4)
        throw std::invalid_argument("build_lr_basis: need at least 4 states");
    LRBasis basis;
    const auto split = [](const WaveFunction& even, const WaveFunction& odd, WaveFunction& left,
                          WaveFunction& right) {
        WaveFunction minus = combine(even, odd, -1.0);
        WaveFunction plus = combine(even, odd, +1.0);
        if (prob_left(minus) > 0.5) {
            left = std::move(minus);
            right = std::move(plus);
        } else {
            left = std::move(plus);
            right = std::move(minus);
        }
    };
    split(spectrum.states[0], spectrum.states[1], basis.l0, basis.r0);
    split(spectrum.states[2], spectrum.states[3], basis.l1, basis.r1);
    return basis;
}

LRDecomposition project_lr_basis(const WaveFunction& psi, const Spectrum& spectrum) {
    const LRBasis basis = build_lr_basis(spectrum);
    LRDecomposition d;
    d.c_l0 = wf_inner(basis.l0, psi);
    d.c_l1 = wf_inner(basis.l1, psi);
    d.c_r0 = wf_inner(basis.r0, psi);
    d.c_r1 = wf_inner(basis.r1, psi);
    const double total = std::norm(d.c_l0) + std::norm(d.c_l1) + std::norm(d.c_r0) +
                         std::norm(d.c_r1);
    d.residual_weight = std::max(0.0, 1.0 - total);
    return d;
}

} // namespace fluxpulse
