#include <vector>

#include "se2n/kernels.hpp"

namespace se2n::kernels::scalar {

void cmul(const cplx* a, const cplx* b, cplx* out, std::size_t n, bool conj_b) {
    const double sg = conj_b ? -1.0 : 1.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double ar = a[i].real(), ai = a[i].imag();
        const double br = b[i].real(), bi = sg * b[i].imag();
        out[i] = cplx(ar * br - ai * bi, ar * bi + ai * br);
    }
}

cplx triple_sum(const cplx* a, const cplx* b, const cplx* c, std::size_t n) {
    double re = 0.0, im = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double pr = a[i].real() * b[i].real() - a[i].imag() * b[i].imag();
        const double pi = a[i].real() * b[i].imag() + a[i].imag() * b[i].real();
        const double cr = c[i].real(), ci = c[i].imag();
        re += pr * cr + pi * ci;
        im += pi * cr - pr * ci;
    }
    return {re, im};
}

void cn_advance(const CnPlan& P, double* x, int steps) {
    const int N = P.N;
    const std::size_t pairs = P.pairs, L = 2 * pairs;
    const double c = P.c;
    std::vector<double> xs(N), d(N);
    for (std::size_t q = 0; q < L; ++q) {
        const std::size_t p = q >> 1;
        for (int r = 0; r < N; ++r) xs[r] = x[r * L + q];
        for (int it = 0; it < steps; ++it) {
            for (int r = 0; r < N; ++r) {
                const double lo = xs[r == 0 ? N - 1 : r - 1];
                const double hi = xs[r == N - 1 ? 0 : r + 1];
                d[r] = (2.0 - P.b[r * pairs + p]) * xs[r] - c * (lo + hi);
            }
            d[0] *= P.inv[p];
            for (int r = 1; r < N; ++r) d[r] = (d[r] - c * d[r - 1]) * P.inv[r * pairs + p];
            for (int r = N - 2; r >= 0; --r) d[r] -= P.cp[r * pairs + p] * d[r + 1];
            const double t = (d[0] + P.s[p] * d[N - 1]) * P.kappa[p];
            for (int r = 0; r < N; ++r) xs[r] = d[r] - t * P.z[r * pairs + p];
        }
        for (int r = 0; r < N; ++r) x[r * L + q] = xs[r];
    }
}

}  // namespace se2n::kernels::scalar
