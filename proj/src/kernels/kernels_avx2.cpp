#include <immintrin.h>

#include <vector>

#include "se2n/kernels.hpp"

namespace se2n::kernels::avx2 {

namespace {

// (v0, v1) -> (v0, v0, v1, v1): one coefficient per pair, two lanes per pair.
inline __m256d dup_pairs(const double* ptr) {
    return _mm256_permute4x64_pd(_mm256_castpd128_pd256(_mm_loadu_pd(ptr)), 0x50);
}

inline __m256d cmul_pd(__m256d a, __m256d b, bool conj_b) {
    const __m256d br = _mm256_movedup_pd(b);
    const __m256d bi = _mm256_permute_pd(b, 0xF);
    const __m256d t = _mm256_mul_pd(_mm256_permute_pd(a, 0x5), bi);
    return conj_b ? _mm256_fmsubadd_pd(a, br, t) : _mm256_fmaddsub_pd(a, br, t);
}

struct Lane4 {
    __m256d v;
};

}  // namespace

void cmul(const cplx* a, const cplx* b, cplx* out, std::size_t n, bool conj_b) {
    const double* pa = reinterpret_cast<const double*>(a);
    const double* pb = reinterpret_cast<const double*>(b);
    double* po = reinterpret_cast<double*>(out);
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) {
        const __m256d va = _mm256_loadu_pd(pa + 2 * i);
        const __m256d vb = _mm256_loadu_pd(pb + 2 * i);
        _mm256_storeu_pd(po + 2 * i, cmul_pd(va, vb, conj_b));
    }
    if (i < n) scalar::cmul(a + i, b + i, out + i, n - i, conj_b);
}

cplx triple_sum(const cplx* a, const cplx* b, const cplx* c, std::size_t n) {
    const double* pa = reinterpret_cast<const double*>(a);
    const double* pb = reinterpret_cast<const double*>(b);
    const double* pc = reinterpret_cast<const double*>(c);
    __m256d acc = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) {
        const __m256d ab = cmul_pd(_mm256_loadu_pd(pa + 2 * i), _mm256_loadu_pd(pb + 2 * i), false);
        acc = _mm256_add_pd(acc, cmul_pd(ab, _mm256_loadu_pd(pc + 2 * i), true));
    }
    alignas(32) double lanes[4];
    _mm256_store_pd(lanes, acc);
    cplx total(lanes[0] + lanes[2], lanes[1] + lanes[3]);
    if (i < n) total += scalar::triple_sum(a + i, b + i, c + i, n - i);
    return total;
}

void cn_advance(const CnPlan& P, double* x, int steps) {
    const int N = P.N;
    const std::size_t pairs = P.pairs, L = 2 * pairs;
    const __m256d c = _mm256_set1_pd(P.c);
    const __m256d two = _mm256_set1_pd(2.0);
    std::vector<Lane4> xsv(N), dv(N);
    Lane4* xs = xsv.data();
    Lane4* d = dv.data();
    std::size_t q = 0;
    for (; q + 4 <= L; q += 4) {
        const std::size_t p = q >> 1;
        for (int r = 0; r < N; ++r) xs[r].v = _mm256_loadu_pd(x + r * L + q);
        const __m256d s = dup_pairs(&P.s[p]);
        const __m256d kappa = dup_pairs(&P.kappa[p]);
        for (int it = 0; it < steps; ++it) {
            for (int r = 0; r < N; ++r) {
                const __m256d lo = xs[r == 0 ? N - 1 : r - 1].v;
                const __m256d hi = xs[r == N - 1 ? 0 : r + 1].v;
                const __m256d diag = _mm256_sub_pd(two, dup_pairs(&P.b[r * pairs + p]));
                d[r].v = _mm256_fnmadd_pd(c, _mm256_add_pd(lo, hi), _mm256_mul_pd(diag, xs[r].v));
            }
            d[0].v = _mm256_mul_pd(d[0].v, dup_pairs(&P.inv[p]));
            for (int r = 1; r < N; ++r)
                d[r].v = _mm256_mul_pd(_mm256_fnmadd_pd(c, d[r - 1].v, d[r].v), dup_pairs(&P.inv[r * pairs + p]));
            for (int r = N - 2; r >= 0; --r) d[r].v = _mm256_fnmadd_pd(dup_pairs(&P.cp[r * pairs + p]), d[r + 1].v, d[r].v);
            const __m256d t = _mm256_mul_pd(_mm256_fmadd_pd(s, d[N - 1].v, d[0].v), kappa);
            for (int r = 0; r < N; ++r) xs[r].v = _mm256_fnmadd_pd(t, dup_pairs(&P.z[r * pairs + p]), d[r].v);
        }
        for (int r = 0; r < N; ++r) _mm256_storeu_pd(x + r * L + q, xs[r].v);
    }
    if (q < L) {
        // Odd pair count leaves one pair (two lanes); run it through the reference path.
        CnPlan tail;
        tail.N = N;
        tail.pairs = 1;
        tail.c = P.c;
        const std::size_t p = q >> 1;
        for (int r = 0; r < N; ++r) {
            tail.b.push_back(P.b[r * pairs + p]);
            tail.cp.push_back(P.cp[r * pairs + p]);
            tail.inv.push_back(P.inv[r * pairs + p]);
            tail.z.push_back(P.z[r * pairs + p]);
        }
        tail.s = {P.s[p]};
        tail.kappa = {P.kappa[p]};
        std::vector<double> buf(2 * N);
        for (int r = 0; r < N; ++r) {
            buf[2 * r] = x[r * L + q];
            buf[2 * r + 1] = x[r * L + q + 1];
        }
        scalar::cn_advance(tail, buf.data(), steps);
        for (int r = 0; r < N; ++r) {
            x[r * L + q] = buf[2 * r];
            x[r * L + q + 1] = buf[2 * r + 1];
        }
    }
}

}  // namespace se2n::kernels::avx2
