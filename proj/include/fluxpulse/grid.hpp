#pragma once

#include <complex>
#include <vector>

namespace fluxpulse {

using cplx = std::complex<double>;

// Uniform grid on [-x_max, +x_max]. n_points is odd so that x = 0 is a node;
// the left/right split is defined by the node index, not by float comparison.
struct Grid {
    double x_max = 0.75;
    int n_points = 1025;

    double dx() const { return 2.0 * x_max / (n_points - 1); }
    double x(int j) const { return -x_max + j * dx(); }
    int mid() const { return (n_points - 1) / 2; }

    void validate() const;

    bool operator==(const Grid&) const = default;
};

// Complex amplitudes on a Grid. The first and last entries are the Dirichlet
// boundary and stay zero through every operation.
struct WaveFunction {
    std::vector<cplx> amp;
    Grid grid;
};

WaveFunction zero_wavefunction(const Grid& grid);

// sqrt(sum |psi_j|^2 dx); boundaries are zero so trapezoid == rectangle rule.
double wf_norm(const WaveFunction& psi);

void wf_normalize(WaveFunction& psi);

// <a|b> = sum conj(a_j) b_j dx
cplx wf_inner(const WaveFunction& a, const WaveFunction& b);

// psi(-x)
WaveFunction wf_reflect(const WaveFunction& psi);

} // namespace fluxpulse
