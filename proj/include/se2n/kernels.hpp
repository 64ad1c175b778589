#pragma once

#include <cstddef>
#include <vector>

#include "se2n/types.hpp"

namespace se2n::kernels {

enum class Isa { Scalar, Avx2 };

bool avx2_available();
// Scalar unless the CPU has AVX2+FMA; env SE2N_SIMD=scalar forces the reference path.
Isa active_isa();
void force_isa(Isa isa);
void reset_isa();
const char* isa_name(Isa isa);

// out[i] = a[i] * b[i]  (or a[i] * conj(b[i]))
void cmul(const cplx* a, const cplx* b, cplx* out, std::size_t n, bool conj_b);
// sum_i a[i] * b[i] * conj(c[i])
cplx triple_sum(const cplx* a, const cplx* b, const cplx* c, std::size_t n);

// Crank-Nicolson for many independent systems x' = G_p x, one per pair p,
// G_p = diag(g_p) + off * (S + S^{-1}) on Z_N, N >= 3. Each pair carries a
// complex state stored as two real lanes (re, im); lane q belongs to pair q/2
// and the state is laid out x[r * 2*pairs + q].
struct CnPlan {
    int N = 0;
    std::size_t pairs = 0;
    double c = 0.0;           // off-diagonal of I - dt/2 G
    std::vector<double> b;    // diagonal of I - dt/2 G, [r * pairs + p]
    std::vector<double> cp;   // Thomas sweep coefficients
    std::vector<double> inv;  // inverse pivots
    std::vector<double> z;    // Sherman-Morrison correction vector
    std::vector<double> s;    // per pair
    std::vector<double> kappa;
};

CnPlan cn_prepare(int N, std::size_t pairs, const double* g, double off, double dt);
void cn_advance(const CnPlan& plan, double* x, int steps);

namespace scalar {
void cmul(const cplx* a, const cplx* b, cplx* out, std::size_t n, bool conj_b);
cplx triple_sum(const cplx* a, const cplx* b, const cplx* c, std::size_t n);
void cn_advance(const CnPlan& plan, double* x, int steps);
}  // namespace scalar

namespace avx2 {
void cmul(const cplx* a, const cplx* b, cplx* out, std::size_t n, bool conj_b);
cplx triple_sum(const cplx* a, const cplx* b, const cplx* c, std::size_t n);
void cn_advance(const CnPlan& plan, double* x, int steps);
}  // namespace avx2

}  // namespace se2n::kernels
