// Timing harness for the propagation kernels: serial reference vs OpenMP
// variants across grid sizes, a full Crank-Nicolson step, and a small sweep
// at several worker counts. Reports nanoseconds per grid point.

#include "fluxpulse/kernels.hpp"
#include "fluxpulse/model.hpp"
#include "fluxpulse/protocols.hpp"
#include "fluxpulse/solver.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <string>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace {

using fluxpulse::cplx;
using clock_type = std::chrono::steady_clock;

double seconds_since(clock_type::time_point t0) {
    return std::chrono::duration<double>(clock_type::now() - t0).count();
}

struct Workspace {
    std::vector<cplx> x, y, ws;
    std::vector<double> vbase, vcos;
    double c2;

    explicit Workspace(int n) : x(n), y(n), ws(n), vbase(n), vcos(n) {
        const double dx = 1.5 / (n - 1);
        for (int j = 0; j < n; ++j) {
            const double xx = -0.75 + j * dx;
            vbase[j] = 645.0 * xx * xx - 76.0;
            vcos[j] = std::cos(2.0 * fluxpulse::pi * xx);
            x[j] = cplx(std::exp(-xx * xx * 40.0), 0.1 * xx);
        }
        x[0] = x[n - 1] = cplx(0.0);
        c2 = (0.009 / (fluxpulse::pi * fluxpulse::pi)) / (dx * dx);
    }
};

template <typename F>
double time_per_point(F&& body, int n, int reps) {
    body(); // warm up
    const auto t0 = clock_type::now();
    for (int r = 0; r < reps; ++r)
        body();
    return seconds_since(t0) / reps / n * 1e9;
}

void bench_kernels() {
    std::printf("%-10s %9s %13s %13s %8s\n", "kernel", "n", "serial ns/pt", "omp ns/pt",
                "speedup");
    for (const int n : {1025, 16385, 262145, 1048577}) {
        Workspace w(n);
        const int reps = n <= 20000 ? 2000 : 20;
        const cplx coef(0.0, 0.001);

        const double s_apply = time_per_point(
            [&] {
                fluxpulse::kernels::serial::apply_h(w.x.data(), w.y.data(), n, w.c2,
                                                    w.vbase.data(), w.vcos.data(), 76.0);
            },
            n, reps);
        const double p_apply = time_per_point(
            [&] {
                fluxpulse::kernels::par::apply_h(w.x.data(), w.y.data(), n, w.c2,
                                                 w.vbase.data(), w.vcos.data(), 76.0);
            },
            n, reps);
        std::printf("%-10s %9d %13.2f %13.2f %7.2fx\n", "apply_h", n, s_apply, p_apply,
                    s_apply / p_apply);

        const double s_rhs = time_per_point(
            [&] {
                fluxpulse::kernels::serial::cn_rhs(w.x.data(), w.y.data(), n, w.c2,
                                                   w.vbase.data(), w.vcos.data(), 76.0, coef);
            },
            n, reps);
        const double p_rhs = time_per_point(
            [&] {
                fluxpulse::kernels::par::cn_rhs(w.x.data(), w.y.data(), n, w.c2,
                                                w.vbase.data(), w.vcos.data(), 76.0, coef);
            },
            n, reps);
        std::printf("%-10s %9d %13.2f %13.2f %7.2fx\n", "cn_rhs", n, s_rhs, p_rhs,
                    s_rhs / p_rhs);

        const double s_dot = time_per_point(
            [&] { fluxpulse::kernels::serial::sum_abs2(w.x.data(), n); }, n, reps);
        const double p_dot = time_per_point(
            [&] { fluxpulse::kernels::par::sum_abs2(w.x.data(), n); }, n, reps);
        std::printf("%-10s %9d %13.2f %13.2f %7.2fx\n", "sum_abs2", n, s_dot, p_dot,
                    s_dot / p_dot);

        const double t_solve = time_per_point(
            [&] {
                fluxpulse::kernels::cn_solve(w.x.data(), w.y.data(), w.ws.data(), n, w.c2,
                                             w.vbase.data(), w.vcos.data(), 76.0, coef);
            },
            n, reps);
        std::printf("%-10s %9d %13.2f %13s %8s\n", "cn_solve", n, t_solve, "(serial)", "-");
    }
}

void bench_step() {
    fluxpulse::PhysicalParams params;
    std::printf("\nfull Crank-Nicolson step, ns per grid point\n");
    for (const int n : {1025, 4097, 65537, 1048577}) {
        const fluxpulse::Grid grid{0.75, n};
        const fluxpulse::PulseSpec pulse{0.59, 5.0, 20.0};
        const auto schedule = fluxpulse::PulseSchedule::single(pulse, params.e_0);
        fluxpulse::Stepper stepper(grid, params, schedule);
        auto psi = fluxpulse::zero_wavefunction(grid);
        for (int j = 1; j < n - 1; ++j) {
            const double x = grid.x(j);
            psi.amp[j] = std::exp(-(x + 0.3) * (x + 0.3) * 500.0);
        }
        fluxpulse::wf_normalize(psi);
        const int reps = n <= 20000 ? 2000 : 50;
        const auto t0 = clock_type::now();
        for (int r = 0; r < reps; ++r)
            stepper.step_real(psi, r * 0.002, 0.002);
        const double ns = seconds_since(t0) / reps / n * 1e9;
        std::printf("  n=%8d  %8.2f ns/pt\n", n, ns);
    }
}

void bench_sweep() {
    std::printf("\n4x4 sweep wall time by worker count\n");
    const fluxpulse::PhysicalParams params;
    const fluxpulse::PulseSpec seed_pulse{0.59, 2.0, 8.0};
    fluxpulse::RunConfig base{params,
                              fluxpulse::Grid{0.75, 257},
                              0.01,
                              fluxpulse::PulseSchedule::single(seed_pulse, params.e_0),
                              25,
                              {},
                              fluxpulse::RelaxOptions{}};
    const auto a_values = fluxpulse::linspace(0.5, 0.8, 4);
    const auto tau0_values = fluxpulse::linspace(2.0, 8.0, 4);
#ifdef _OPENMP
    const int max_jobs = omp_get_max_threads();
#else
    const int max_jobs = 1;
#endif
    for (int jobs = 1; jobs <= max_jobs; jobs *= 2) {
        const auto t0 = clock_type::now();
        fluxpulse::run_sweep(base, a_values, tau0_values, jobs);
        std::printf("  jobs=%d  %.3f s\n", jobs, seconds_since(t0));
    }
}

} // namespace

int main(int argc, char** argv) {
    const std::string mode = argc > 1 ? argv[1] : "all";
    if (mode == "all" || mode == "kernels")
        bench_kernels();
    if (mode == "all" || mode == "step")
        bench_step();
    if (mode == "all" || mode == "sweep")
        bench_sweep();
    return 0;
}
