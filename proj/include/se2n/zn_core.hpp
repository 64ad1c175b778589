#pragma once

#include "se2n/types.hpp"

namespace se2n {

struct CyclicIndex {
    int value = 0;
    int N = 1;

    CyclicIndex() = default;
    CyclicIndex(long v, int n) : value(wrap(v, n)), N(n) {}

    CyclicIndex operator+(const CyclicIndex& o) const { return {value + o.value, N}; }
    CyclicIndex operator-(const CyclicIndex& o) const { return {value - o.value, N}; }
    CyclicIndex operator-() const { return {-value, N}; }
    bool operator==(const CyclicIndex& o) const { return value == o.value && N == o.N; }
};

// out[h] = v[h - k]
CVec shift_apply(long k, const CVec& v);
CMat shift_matrix(long k, int N);

// Unitary DFT on Z_N: out[q] = N^{-1/2} sum_h e^{-2 pi i q h / N} v[h].
CVec dft_zn(const CVec& v);
CVec idft_zn(const CVec& v);
// Matrix of dft_zn, entry (q, h).
CMat dft_matrix(int N);

struct CirculantMatrix {
    CVec generator;  // first column, M(i, j) = generator[i - j]

    int size() const { return static_cast<int>(generator.size()); }
    CMat dense() const;
    CVec apply(const CVec& v) const;
};

// sqrt(N) * dft_zn(generator): eigenvalue for the eigenvector column q of dft_matrix^*.
CVec circ_eigenvalues(const CirculantMatrix& m);

// Cyclic means the shifts of v span C^N. Screened by the smallest circulant
// eigenvalue modulus relative to max |v_i|.
bool is_cyclic(const CVec& v, double tol = 1e-9);

// Even-N machinery. w lives on the first N/2 indices; B w extends it to
// v(h + N/2) = conj v(h).
CVec r_extend(const CVec& w);
CVec r_restrict(const CVec& v);
CVec r_shift(const CVec& w);  // B^{-1} S B

struct RCirculantMatrix {
    CVec generator;  // length N/2

    int order() const { return 2 * static_cast<int>(generator.size()); }
    // Columns w, S_R w, ..., S_R^{N/2-1} w.
    CMat dense() const;
    // Real N x N matrix with columns (Re, Im) of S_R^k w, k = 0..N-1. Its rank
    // is the real dimension of span{S(k) B w}; full rank means R-cyclic.
    Eigen::MatrixXd realified() const;
};

// Smallest singular value of the realified shift matrix divided by max |w_i|.
double r_cyclic_margin(const CVec& w);
bool is_r_cyclic(const CVec& w, double tol = 1e-9);
// Order-aware entry point: throws Unsupported for odd N.
bool is_r_cyclic(const CVec& w, int N, double tol = 1e-9);

}  // namespace se2n
