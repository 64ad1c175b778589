#pragma once

#include "se2n/types.hpp"
#include "se2n/zn_core.hpp"

namespace se2n {

// (k, x) in Z_N x R^2 with (k,x)(h,y) = (k+h, x + R_k y).
struct GroupElement {
    long k = 0;
    Vec2 x;
};

GroupElement compose(const GroupElement& a, const GroupElement& b, int N);
GroupElement inverse(const GroupElement& a, int N);

// lambda = R_offset * canonical, canonical angle in [0, 2pi/N).
struct CanonicalFrequency {
    Vec2 lambda;
    int offset = 0;
};

CanonicalFrequency canonicalize(const Vec2& lambda, int N);

struct IrredRep {
    Vec2 lambda;
    int N;

    IrredRep(const Vec2& l, int n);  // throws InvalidFrequency for lambda = 0
};

// diag_h(e^{i <R_h lambda, x>}) S(k).
CMat rep_matrix(const IrredRep& rep, const GroupElement& g);
// Same formula without the lambda != 0 guard (lambda = 0 gives the regular
// representation of Z_N, needed when rotated sums vanish).
CMat rep_matrix_any(const Vec2& lambda, int N, const GroupElement& g);

// Section sigma: H/K -> H, the identity embedding of the canonical slice.
struct SliceMap {
    int N;
    // x = R_h sigma(y)
    void decompose(const Vec2& x, long& h, Vec2& y) const;
};

// Generalized Bessel sum, see apfun.hpp; declared here for rep_coeff_dual.
cplx gen_bessel(long n_hat, const Vec2& lambda, const Vec2& y, int N);

// (F^* T^lambda(g) F)_{m,n} with F the unitary DFT matrix, evaluated through
// the generalized Bessel factorization.
cplx rep_coeff_dual(const IrredRep& rep, const GroupElement& g, const CyclicIndex& m_hat,
                    const CyclicIndex& n_hat, const SliceMap& section);

// A: C^{N x N} -> (+)_h C^N, (A t)_h(l) = t(l, l + h). t is stored with
// row index l1, column index l2, i.e. the Kronecker index l1 * N + l2.
struct InductionReductionMap {
    int N;

    std::vector<CVec> apply(const CMat& t) const;
    CMat adjoint(const std::vector<CVec>& blocks) const;
    // Permutation matrix on C^{N^2}: block h occupies rows h*N .. h*N+N-1.
    Eigen::MatrixXd dense() const;
};

std::vector<CVec> ind_red_apply(const InductionReductionMap& A, const CMat& t);

}  // namespace se2n
