#pragma once

#include <complex>
#include <cstddef>

// Dense per-step kernels of the propagator. Every kernel exists in a serial
// reference version and an OpenMP version; the unqualified entry points pick
// one by array length. The OpenMP reductions accumulate fixed-size blocks in
// index order, so their result is bit-identical for any thread count (and to
// one-thread execution), which keeps full runs reproducible under any
// parallelism setting.
//
// Array convention: length n includes the two Dirichlet boundary entries,
// which are zero on input and are written as zero on output. V_j is assembled
// on the fly as vbase_j + ej * vcos_j.

namespace fluxpulse::kernels {

using cplx = std::complex<double>;

// Arrays at least this long go to the OpenMP variants.
std::size_t parallel_threshold();
void set_parallel_threshold(std::size_t n);

namespace serial {
void apply_h(const cplx* x, cplx* y, int n, double c2, const double* vbase,
             const double* vcos, double ej);
void cn_rhs(const cplx* x, cplx* r, int n, double c2, const double* vbase,
            const double* vcos, double ej, cplx coef);
double sum_abs2(const cplx* x, int n);
cplx dot(const cplx* a, const cplx* b, int n);
} // namespace serial

namespace par {
void apply_h(const cplx* x, cplx* y, int n, double c2, const double* vbase,
             const double* vcos, double ej);
void cn_rhs(const cplx* x, cplx* r, int n, double c2, const double* vbase,
            const double* vcos, double ej, cplx coef);
double sum_abs2(const cplx* x, int n);
cplx dot(const cplx* a, const cplx* b, int n);
} // namespace par

// y = H x with H = -c2 * (x_{j-1} - 2 x_j + x_{j+1}) + V_j x_j
void apply_h(const cplx* x, cplx* y, int n, double c2, const double* vbase,
             const double* vcos, double ej);

// r = (1 - coef * H) x; coef = i dt/2 for real time, dt/2 for imaginary time
void cn_rhs(const cplx* x, cplx* r, int n, double c2, const double* vbase,
            const double* vcos, double ej, cplx coef);

double sum_abs2(const cplx* x, int n);
cplx dot(const cplx* a, const cplx* b, int n);

// Solve (1 + coef * H) out = r on the interior, Dirichlet boundaries.
// Thomas algorithm with the constant off-diagonal -coef*c2; inherently
// sequential, so there is no parallel variant. ws must hold n entries.
// The system is diagonally dominant for the coefficients the propagator
// produces; a vanishing pivot is reported by returning false.
bool cn_solve(const cplx* r, cplx* out, cplx* ws, int n, double c2,
              const double* vbase, const double* vcos, double ej, cplx coef);

} // namespace fluxpulse::kernels
