#include <atomic>
#include <cstdlib>
#include <cstring>

#include "se2n/errors.hpp"
#include "se2n/kernels.hpp"

namespace se2n::kernels {

namespace {

Isa detect() {
    const char* env = std::getenv("SE2N_SIMD");
    if (env && std::strcmp(env, "scalar") == 0) return Isa::Scalar;
    return avx2_available() ? Isa::Avx2 : Isa::Scalar;
}

std::atomic<int> g_forced{-1};

}  // namespace

bool avx2_available() {
#if defined(__x86_64__) || defined(__i386__)
    __builtin_cpu_init();
    return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
    return false;
#endif
}

Isa active_isa() {
    const int f = g_forced.load();
    if (f >= 0) return static_cast<Isa>(f);
    static const Isa detected = detect();
    return detected;
}

void force_isa(Isa isa) {
    if (isa == Isa::Avx2 && !avx2_available()) throw Unsupported("AVX2 path requested on a CPU without AVX2/FMA");
    g_forced.store(static_cast<int>(isa));
}

void reset_isa() { g_forced.store(-1); }

const char* isa_name(Isa isa) { return isa == Isa::Avx2 ? "avx2" : "scalar"; }

void cmul(const cplx* a, const cplx* b, cplx* out, std::size_t n, bool conj_b) {
    if (active_isa() == Isa::Avx2) return avx2::cmul(a, b, out, n, conj_b);
    scalar::cmul(a, b, out, n, conj_b);
}

cplx triple_sum(const cplx* a, const cplx* b, const cplx* c, std::size_t n) {
    if (active_isa() == Isa::Avx2) return avx2::triple_sum(a, b, c, n);
    return scalar::triple_sum(a, b, c, n);
}

void cn_advance(const CnPlan& plan, double* x, int steps) {
    if (active_isa() == Isa::Avx2) return avx2::cn_advance(plan, x, steps);
    scalar::cn_advance(plan, x, steps);
}

CnPlan cn_prepare(int N, std::size_t pairs, const double* g, double off, double dt) {
    if (N < 3) throw Unsupported("cyclic Thomas needs N >= 3");
    CnPlan p;
    p.N = N;
    p.pairs = pairs;
    const double h = 0.5 * dt;
    p.c = -h * off;
    p.b.resize(N * pairs);
    p.cp.resize(N * pairs);
    p.inv.resize(N * pairs);
    p.z.resize(N * pairs);
    p.s.resize(pairs);
    p.kappa.resize(pairs);
    const double c = p.c;
    std::vector<double> bb(N), u(N), d(N);
    for (std::size_t q = 0; q < pairs; ++q) {
        for (int r = 0; r < N; ++r) p.b[r * pairs + q] = 1.0 - h * g[r * pairs + q];
        const double b0 = p.b[q];
        const double gamma = -b0;
        for (int r = 0; r < N; ++r) bb[r] = p.b[r * pairs + q];
        bb[0] -= gamma;
        bb[N - 1] -= c * c / gamma;
        double cprev = 0.0;
        for (int r = 0; r < N; ++r) {
            const double den = r == 0 ? bb[0] : bb[r] - c * cprev;
            const double iv = 1.0 / den;
            cprev = c * iv;
            p.cp[r * pairs + q] = cprev;
            p.inv[r * pairs + q] = iv;
        }
        std::fill(u.begin(), u.end(), 0.0);
        u[0] = gamma;
        u[N - 1] = c;
        d[0] = u[0] * p.inv[q];
        for (int r = 1; r < N; ++r) d[r] = (u[r] - c * d[r - 1]) * p.inv[r * pairs + q];
        for (int r = N - 2; r >= 0; --r) d[r] -= p.cp[r * pairs + q] * d[r + 1];
        for (int r = 0; r < N; ++r) p.z[r * pairs + q] = d[r];
        p.s[q] = c / gamma;
        p.kappa[q] = 1.0 / (1.0 + d[0] + p.s[q] * d[N - 1]);
    }
    return p;
}

}  // namespace se2n::kernels
