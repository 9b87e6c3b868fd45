#include "fluxpulse/kernels.hpp"

#include <atomic>
#include <vector>

namespace fluxpulse::kernels {

namespace {
std::atomic<std::size_t> g_parallel_threshold{16384};

// Reduction block size. Fixed independently of the thread count so that the
// blocked sums are reproducible bit-for-bit.
constexpr int kBlock = 4096;
} // namespace

std::size_t parallel_threshold() { return g_parallel_threshold.load(); }
void set_parallel_threshold(std::size_t n) { g_parallel_threshold.store(n); }

namespace serial {

void apply_h(const cplx* x, cplx* y, int n, double c2, const double* vbase,
             const double* vcos, double ej) {
    y[0] = cplx(0.0);
    y[n - 1] = cplx(0.0);
    for (int j = 1; j < n - 1; ++j) {
        const double v = vbase[j] + ej * vcos[j];
        y[j] = c2 * (2.0 * x[j] - x[j - 1] - x[j + 1]) + v * x[j];
    }
}

void cn_rhs(const cplx* x, cplx* r, int n, double c2, const double* vbase,
            const double* vcos, double ej, cplx coef) {
    r[0] = cplx(0.0);
    r[n - 1] = cplx(0.0);
    for (int j = 1; j < n - 1; ++j) {
        const double v = vbase[j] + ej * vcos[j];
        const cplx hx = c2 * (2.0 * x[j] - x[j - 1] - x[j + 1]) + v * x[j];
        r[j] = x[j] - coef * hx;
    }
}

double sum_abs2(const cplx* x, int n) {
    double s = 0.0;
    for (int j = 0; j < n; ++j)
        s += x[j].real() * x[j].real() + x[j].imag() * x[j].imag();
    return s;
}

cplx dot(const cplx* a, const cplx* b, int n) {
    double re = 0.0, im = 0.0;
    for (int j = 0; j < n; ++j) {
        const cplx t = std::conj(a[j]) * b[j];
        re += t.real();
        im += t.imag();
    }
    return {re, im};
}

} // namespace serial

namespace par {

void apply_h(const cplx* x, cplx* y, int n, double c2, const double* vbase,
             const double* vcos, double ej) {
    y[0] = cplx(0.0);
    y[n - 1] = cplx(0.0);
#pragma omp parallel for schedule(static)
    for (int j = 1; j < n - 1; ++j) {
        const double v = vbase[j] + ej * vcos[j];
        y[j] = c2 * (2.0 * x[j] - x[j - 1] - x[j + 1]) + v * x[j];
    }
}

void cn_rhs(const cplx* x, cplx* r, int n, double c2, const double* vbase,
            const double* vcos, double ej, cplx coef) {
    r[0] = cplx(0.0);
    r[n - 1] = cplx(0.0);
#pragma omp parallel for schedule(static)
    for (int j = 1; j < n - 1; ++j) {
        const double v = vbase[j] + ej * vcos[j];
        const cplx hx = c2 * (2.0 * x[j] - x[j - 1] - x[j + 1]) + v * x[j];
        r[j] = x[j] - coef * hx;
    }
}

double sum_abs2(const cplx* x, int n) {
    const int nblocks = (n + kBlock - 1) / kBlock;
    std::vector<double> partial(nblocks);
#pragma omp parallel for schedule(static)
    for (int b = 0; b < nblocks; ++b) {
        const int lo = b * kBlock;
        const int hi = lo + kBlock < n ? lo + kBlock : n;
        double s = 0.0;
        for (int j = lo; j < hi; ++j)
            s += x[j].real() * x[j].real() + x[j].imag() * x[j].imag();
        partial[b] = s;
    }
    double s = 0.0;
    for (int b = 0; b < nblocks; ++b)
        s += partial[b];
    return s;
}

cplx dot(const cplx* a, const cplx* b, int n) {
    const int nblocks = (n + kBlock - 1) / kBlock;
    std::vector<cplx> partial(nblocks);
#pragma omp parallel for schedule(static)
    for (int bi = 0; bi < nblocks; ++bi) {
        const int lo = bi * kBlock;
        const int hi = lo + kBlock < n ? lo + kBlock : n;
        double re = 0.0, im = 0.0;
        for (int j = lo; j < hi; ++j) {
            const cplx t = std::conj(a[j]) * b[j];
            re += t.real();
            im += t.imag();
        }
        partial[bi] = {re, im};
    }
    cplx s(0.0);
    for (int bi = 0; bi < nblocks; ++bi)
        s += partial[bi];
    return s;
}

} // namespace par

void apply_h(const cplx* x, cplx* y, int n, double c2, const double* vbase,
             const double* vcos, double ej) {
    if (static_cast<std::size_t>(n) >= parallel_threshold())
        par::apply_h(x, y, n, c2, vbase, vcos, ej);
    else
        serial::apply_h(x, y, n, c2, vbase, vcos, ej);
}

void cn_rhs(const cplx* x, cplx* r, int n, double c2, const double* vbase,
            const double* vcos, double ej, cplx coef) {
    if (static_cast<std::size_t>(n) >= parallel_threshold())
        par::cn_rhs(x, r, n, c2, vbase, vcos, ej, coef);
    else
        serial::cn_rhs(x, r, n, c2, vbase, vcos, ej, coef);
}

double sum_abs2(const cplx* x, int n) {
    if (static_cast<std::size_t>(n) >= parallel_threshold())
        return par::sum_abs2(x, n);
    return serial::sum_abs2(x, n);
}

cplx dot(const cplx* a, const cplx* b, int n) {
    if (static_cast<std::size_t>(n) >= parallel_threshold())
        return par::dot(a, b, n);
    return serial::dot(a, b, n);
}

bool cn_solve(const cplx* r, cplx* out, cplx* ws, int n, double c2,
              const double* vbase, const double* vcos, double ej, cplx coef) {
    // Hand-rolled complex arithmetic: the recurrence is latency-bound, and
    // one real division per point (via the pivot reciprocal) beats
    // std::complex operator/ by a wide margin here.
    const double cr = coef.real(), ci = coef.imag();
    const double er = -cr * c2, ei = -ci * c2; // off-diagonal, constant
    out[0] = cplx(0.0);
    out[n - 1] = cplx(0.0);

    double h = 2.0 * c2 + vbase[1] + ej * vcos[1];
    double pr = 1.0 + cr * h, pi = ci * h; // pivot = 1 + coef * h
    double den = pr * pr + pi * pi;
    if (den == 0.0)
        return false;
    double s = 1.0 / den;
    double ivr = pr * s, ivi = -pi * s; // 1 / pivot
    out[1] = cplx(r[1].real() * ivr - r[1].imag() * ivi,
                  r[1].real() * ivi + r[1].imag() * ivr);

    for (int j = 2; j < n - 1; ++j) {
        const double wr = er * ivr - ei * ivi; // ws = off / previous pivot
        const double wi = er * ivi + ei * ivr;
        ws[j] = cplx(wr, wi);
        h = 2.0 * c2 + vbase[j] + ej * vcos[j];
        pr = 1.0 + cr * h - (er * wr - ei * wi); // pivot = diag - off * ws
        pi = ci * h - (er * wi + ei * wr);
        den = pr * pr + pi * pi;
        if (den == 0.0)
            return false;
        s = 1.0 / den;
        ivr = pr * s;
        ivi = -pi * s;
        const double nr = r[j].real() - (er * out[j - 1].real() - ei * out[j - 1].imag());
        const double ni = r[j].imag() - (er * out[j - 1].imag() + ei * out[j - 1].real());
        out[j] = cplx(nr * ivr - ni * ivi, nr * ivi + ni * ivr);
    }
    for (int j = n - 3; j >= 1; --j)
        out[j] -= ws[j + 1] * out[j + 1];
    return true;
}

} // namespace fluxpulse::kernels
