#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "fluxpulse/observables.hpp"
#include "fluxpulse/protocols.hpp"
#include "fluxpulse/solver.hpp"

#include <cmath>
#include <limits>
#include <random>

using namespace fluxpulse;

namespace {

const Grid kGrid{0.75, 1025};

WaveFunction random_state(unsigned seed) {
    WaveFunction psi = zero_wavefunction(kGrid);
    std::mt19937 rng(seed);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    for (int j = 1; j < kGrid.n_points - 1; ++j)
        psi.amp[j] = cplx(u(rng), u(rng));
    wf_normalize(psi);
    return psi;
}

} // namespace

TEST_CASE("symmetric state has p_left one half") {
    WaveFunction psi = zero_wavefunction(kGrid);
    for (int j = 1; j < kGrid.n_points - 1; ++j) {
        const double x = kGrid.x(j);
        psi.amp[j] = std::exp(-x * x * 100.0) * cplx(1.0, 0.5);
    }
    wf_normalize(psi);
    CHECK(prob_left(psi) == doctest::Approx(0.5).epsilon(1e-10));
}

TEST_CASE("prepared left state has p_left one") {
    const PhysicalParams p;
    const PreparedState prep = prepare_left_state(kGrid, p);
    CHECK(prob_left(prep.psi) == doctest::Approx(1.0).epsilon(1e-6));
    // truncation costs only a little energy: the cut sits where psi is tiny
    CHECK(energy_unperturbed(prep.psi, p) == doctest::Approx(prep.e_ground).epsilon(0.03));
}

TEST_CASE("reflection complements p_left") {
    for (unsigned seed : {1u, 2u, 3u}) {
        const WaveFunction psi = random_state(seed);
        CHECK(prob_left(psi) + prob_left(wf_reflect(psi)) == doctest::Approx(1.0).epsilon(1e-10));
    }
}

TEST_CASE("ground state energy against the restored barrier") {
    const PhysicalParams p;
    const auto [psi, e] = relax_ground(kGrid, p, p.e_0);
    CHECK(energy_unperturbed(psi, p) == doctest::Approx(-41.1).epsilon(0.02));
}

TEST_CASE("fidelity examples") {
    CHECK(fidelity(-39.8, -41.1) == doctest::Approx(41.1 / 1.3).epsilon(1e-10));
    CHECK(std::isinf(fidelity(-41.1, -41.1)));
    CHECK(fidelity(0.0, -41.1) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK_THROWS_AS(fidelity(-41.2, -41.1), std::invalid_argument);
}

TEST_CASE("energy ratio examples") {
    CHECK(energy_ratio(-39.8, -41.1) == doctest::Approx(-39.8 / 41.1).epsilon(1e-12));
    CHECK(energy_ratio(-41.1, -41.1) == doctest::Approx(-1.0).epsilon(1e-12));
    CHECK(energy_ratio(0.0, -41.1) == 0.0);
    CHECK_THROWS_AS(energy_ratio(-1.0, 0.0), std::invalid_argument);
}

TEST_CASE("energy ratio equals 1/F - 1 whenever F is finite") {
    std::mt19937 rng(99);
    std::uniform_real_distribution<double> eg(-80.0, -1.0);
    std::uniform_real_distribution<double> lift(1e-6, 50.0);
    for (int i = 0; i < 500; ++i) {
        const double e_ground = eg(rng);
        const double e_final = e_ground + lift(rng);
        const double f = fidelity(e_final, e_ground);
        REQUIRE(std::isfinite(f));
        CHECK(std::abs(energy_ratio(e_final, e_ground) - (1.0 / f - 1.0)) <= 1e-12);
    }
}

TEST_CASE("density profile integrates to the squared norm") {
    const WaveFunction psi = random_state(7);
    const DensityProfile prof = density_profile(psi, 3.25);
    CHECK(prof.tau == 3.25);
    double integral = 0.0;
    for (double d : prof.density)
        integral += d;
    integral *= kGrid.dx();
    const double n = wf_norm(psi);
    CHECK(integral == doctest::Approx(n * n).epsilon(1e-10));
}

TEST_CASE("prepared state density sits entirely at x < 0") {
    const PhysicalParams p;
    const PreparedState prep = prepare_left_state(kGrid, p);
    const DensityProfile prof = density_profile(prep.psi, 0.0);
    for (int j = kGrid.mid() + 1; j < kGrid.n_points; ++j)
        CHECK(prof.density[static_cast<std::size_t>(j)] == 0.0);
}
