#include "fluxpulse/grid.hpp"

#include "fluxpulse/kernels.hpp"

#include <cmath>
#include <stdexcept>

namespace fluxpulse {

void Grid::validate() const {
    if (!(std::isfinite(x_max) && x_max > 0.5))
        throw std::invalid_argument("Grid: x_max must be > 0.5 (must contain both wells)");
    if (n_points < 64)
        throw std::invalid_argument("Grid: n_points must be >= 64");
    if (n_points % 2 == 0)
        throw std::invalid_argument("Grid: n_points must be odd (x = 0 must be a node)");
}

WaveFunction zero_wavefunction(const Grid& grid) {
    grid.validate();
    return WaveFunction{std::vector<cplx>(static_cast<std::size_t>(grid.n_points), cplx(0.0)),
                        grid};
}

double wf_norm(const WaveFunction& psi) {
    const int n = static_cast<int>(psi.amp.size());
    return std::sqrt(kernels::sum_abs2(psi.amp.data(), n) * psi.grid.dx());
}

void wf_normalize(WaveFunction& psi) {
    const double nrm = wf_norm(psi);
    if (!(nrm > 0.0) || !std::isfinite(nrm))
        throw std::invalid_argument("wf_normalize: zero or non-finite norm");
    const double inv = 1.0 / nrm;
    for (auto& a : psi.amp)
        a *= inv;
}

cplx wf_inner(const WaveFunction& a, const WaveFunction& b) {
    if (a.amp.size() != b.amp.size() || !(a.grid == b.grid))
        throw std::invalid_argument("wf_inner: mismatched grids");
    return kernels::dot(a.amp.data(), b.amp.data(), static_cast<int>(a.amp.size())) *
           a.grid.dx();
}

WaveFunction wf_reflect(const WaveFunction& psi) {
    WaveFunction out = psi;
    const std::size_t n = psi.amp.size();
    for (std::size_t j = 0; j < n; ++j)
        out.amp[j] = psi.amp[n - 1 - j];
    return out;
}

} // namespace fluxpulse
