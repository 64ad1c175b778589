#include "se2n/repr.hpp"

#include "se2n/errors.hpp"

namespace se2n {

GroupElement compose(const GroupElement& a, const GroupElement& b, int N) {
    return {wrap(a.k + b.k, N), a.x + rotate_k(b.x, a.k, N)};
}

GroupElement inverse(const GroupElement& a, int N) {
    return {wrap(-a.k, N), -rotate_k(a.x, -a.k, N)};
}

CanonicalFrequency canonicalize(const Vec2& lambda, int N) {
    if (lambda.x == 0.0 && lambda.y == 0.0) return {lambda, 0};
    const double sector = kTwoPi / N;
    double a = std::atan2(lambda.y, lambda.x);
    if (a < 0) a += kTwoPi;
    long l = static_cast<long>(std::floor(a / sector + 1e-12));
    if (l >= N) l = 0;
    Vec2 c = rotate_k(lambda, -l, N);
    // Points a hair below the slice edge are folded back onto angle 0.
    if (c.angle() < 0 && c.angle() > -1e-9) c.y = 0.0;
    return {c, static_cast<int>(l)};
}

IrredRep::IrredRep(const Vec2& l, int n) : lambda(l), N(n) {
    if (l.x == 0.0 && l.y == 0.0)
        throw InvalidFrequency("T^lambda needs lambda != 0; use the layer mean for lambda = 0");
    if (n < 1) throw InvalidFrequency("rotation order must be positive");
}

CMat rep_matrix_any(const Vec2& lambda, int N, const GroupElement& g) {
    CMat t = CMat::Zero(N, N);
    for (int j = 0; j < N; ++j) {
        const int i = wrap(j + g.k, N);
        t(i, j) = std::polar(1.0, dot(rotate_k(lambda, i, N), g.x));
    }
    return t;
}

CMat rep_matrix(const IrredRep& rep, const GroupElement& g) { return rep_matrix_any(rep.lambda, rep.N, g); }

void SliceMap::decompose(const Vec2& x, long& h, Vec2& y) const {
    const CanonicalFrequency c = canonicalize(x, N);
    h = c.offset;
    y = c.lambda;
}

cplx gen_bessel(long n_hat, const Vec2& lambda, const Vec2& y, int N) {
    const double xi = lambda.norm(), omega = lambda.angle();
    const double rho = y.norm(), alpha = y.angle();
    const double z = xi * rho;
    cplx acc = 0.0;
    for (int r = 0; r < N; ++r) {
        const double phase = z * std::cos(alpha - omega + kTwoPi * r / N) -
                             kTwoPi * static_cast<double>(wrap(n_hat * r, N)) / N;
        acc += std::polar(1.0, phase);
    }
    return acc;
}

cplx rep_coeff_dual(const IrredRep& rep, const GroupElement& g, const CyclicIndex& m_hat,
                    const CyclicIndex& n_hat, const SliceMap& section) {
    const int N = rep.N;
    long h = 0;
    Vec2 y;
    section.decompose(g.x, h, y);
    const long d = m_hat.value - n_hat.value;
    const double ph = kTwoPi * static_cast<double>(wrap(n_hat.value * g.k + d * h, N)) / N;
    return std::polar(1.0 / N, ph) * gen_bessel(d, rep.lambda, y, N);
}

std::vector<CVec> InductionReductionMap::apply(const CMat& t) const {
    if (t.rows() != N || t.cols() != N) throw DimensionError("induction-reduction: tensor must be N x N");
    std::vector<CVec> out(N, CVec::Zero(N));
    for (int h = 0; h < N; ++h)
        for (int l = 0; l < N; ++l) out[h][l] = t(l, wrap(l + h, N));
    return out;
}

CMat InductionReductionMap::adjoint(const std::vector<CVec>& blocks) const {
    if (static_cast<int>(blocks.size()) != N) throw DimensionError("induction-reduction: need N blocks");
    CMat t(N, N);
    for (int r = 0; r < N; ++r)
        for (int s = 0; s < N; ++s) {
            const CVec& b = blocks[wrap(s - r, N)];
            if (b.size() != N) throw DimensionError("induction-reduction: block length must be N");
            t(r, s) = b[r];
        }
    return t;
}

Eigen::MatrixXd InductionReductionMap::dense() const {
    Eigen::MatrixXd a = Eigen::MatrixXd::Zero(N * N, N * N);
    for (int h = 0; h < N; ++h)
        for (int l = 0; l < N; ++l) a(h * N + l, l * N + wrap(l + h, N)) = 1.0;
    return a;
}

std::vector<CVec> ind_red_apply(const InductionReductionMap& A, const CMat& t) { return A.apply(t); }

}  // namespace se2n
