#include "se2n/invariants.hpp"

#include <cmath>

#include "se2n/errors.hpp"
#include "se2n/kernels.hpp"
#include "se2n/repr.hpp"
#include "se2n/zn_core.hpp"

namespace se2n {

InvariantKind parse_kind(const std::string& s) {
    if (s == "ps") return InvariantKind::PS;
    if (s == "bs") return InvariantKind::BS;
    if (s == "rps") return InvariantKind::RPS;
    if (s == "rbs") return InvariantKind::RBS;
    if (s == "rpsbs") return InvariantKind::RPSBS;
    throw InputError("unknown invariant kind '" + s + "' (ps, bs, rps, rbs, rpsbs)");
}

const char* kind_name(InvariantKind k) {
    switch (k) {
        case InvariantKind::PS: return "ps";
        case InvariantKind::BS: return "bs";
        case InvariantKind::RPS: return "rps";
        case InvariantKind::RBS: return "rbs";
        case InvariantKind::RPSBS: return "rpsbs";
    }
    return "?";
}

CMat kron(const CMat& a, const CMat& b) {
    CMat out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i)
        for (Eigen::Index j = 0; j < a.cols(); ++j)
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    return out;
}

CMat ps_matrix(const SpectralField& F, const Vec2& lambda) {
    const CMat m = F.matrix(lambda);
    return m * m.adjoint();
}

CMat tensor_transform(const SpectralField& F, const Vec2& l1, const Vec2& l2) {
    const int N = F.N;
    const Eigen::MatrixXd A = InductionReductionMap{N}.dense();
    CMat blocks = CMat::Zero(N * N, N * N);
    for (int h = 0; h < N; ++h) blocks.block(h * N, h * N, N, N) = F.matrix(l1 + rotate_k(l2, h, N));
    return A.transpose().cast<cplx>() * blocks * A.cast<cplx>();
}

CMat bs_matrix(const SpectralField& F, const Vec2& l1, const Vec2& l2) {
    return kron(F.matrix(l1), F.matrix(l2)) * tensor_transform(F, l1, l2).adjoint();
}

CMat rbs_matrix(const SpectralField& F, const Vec2& l1, const Vec2& l2, long k) {
    return kron(F.matrix(rotate_k(l1, k, F.N)), F.matrix(l2)) * tensor_transform(F, l1, l2).adjoint();
}

cplx ps_reduced(const CVec& a) { return a.squaredNorm(); }

cplx rps_reduced(const CVec& a, long h) {
    const int N = static_cast<int>(a.size());
    cplx s = 0.0;
    for (int l = 0; l < N; ++l) s += a[l] * std::conj(a[wrap(l - h, N)]);
    return s;
}

cplx bs_reduced(const CVec& a, const CVec& b, const CVec& c) {
    if (a.size() != b.size() || a.size() != c.size()) throw DimensionError("bispectral scalar: orbit lengths differ");
    return kernels::triple_sum(a.data(), b.data(), c.data(), static_cast<std::size_t>(a.size()));
}

cplx rbs_reduced(const CVec& a, const CVec& b, const CVec& c, long h) {
    return bs_reduced(a, shift_apply(h, b), c);
}

std::size_t feature_length(const FeatureLayout& layout, InvariantKind kind) {
    const std::size_t N = layout.N, s = layout.singles.size(), p = layout.pairs.size();
    switch (kind) {
        case InvariantKind::PS: return 2 * s;
        case InvariantKind::RPS: return 2 * N * s;
        case InvariantKind::BS: return 2 * p;
        case InvariantKind::RBS: return 2 * N * p;
        case InvariantKind::RPSBS: return 2 * N * s + 2 * p;
    }
    return 0;
}

FeatureVector reduced_invariants(const OrbitFn& orbit, const FeatureLayout& layout, InvariantKind kind,
                                 bool moduli_only) {
    const int N = layout.N;
    FeatureVector fv;
    fv.kind = kind;
    fv.N = N;
    fv.singles = layout.singles.size();
    fv.pairs = layout.pairs.size();
    fv.values.reserve(feature_length(layout, kind));
    auto push = [&](cplx z) {
        if (moduli_only) {
            fv.values.push_back(std::abs(z));
            fv.values.push_back(0.0);
        } else {
            fv.values.push_back(z.real());
            fv.values.push_back(z.imag());
        }
    };
    const bool singles = kind == InvariantKind::PS || kind == InvariantKind::RPS || kind == InvariantKind::RPSBS;
    const bool rot_single = kind != InvariantKind::PS;
    const bool pairs = kind == InvariantKind::BS || kind == InvariantKind::RBS || kind == InvariantKind::RPSBS;
    const bool rot_pair = kind == InvariantKind::RBS;
    if (singles)
        for (const auto& l : layout.singles) {
            const CVec a = orbit(l);
            if (rot_single)
                for (int h = 0; h < N; ++h) push(rps_reduced(a, h));
            else
                push(ps_reduced(a));
        }
    if (pairs)
        for (const auto& pr : layout.pairs) {
            const CVec a = orbit(pr.l1), b = orbit(pr.l2), c = orbit(pr.l1 + pr.l2);
            if (rot_pair)
                for (int h = 0; h < N; ++h) push(rbs_reduced(a, b, c, h));
            else
                push(bs_reduced(a, b, c));
        }
    return fv;
}

double relative_distance(const std::vector<double>& a, const std::vector<double>& b) {
    if (a.size() != b.size()) throw DimensionError("feature vectors have different lengths");
    double d = 0.0, na = 0.0, nb = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        d += (a[i] - b[i]) * (a[i] - b[i]);
        na += a[i] * a[i];
        nb += b[i] * b[i];
    }
    const double den = std::sqrt(std::max(na, nb));
    return den > 0.0 ? std::sqrt(d) / den : 0.0;
}

WeakCyclicity weak_cyclicity_report(const std::vector<CVec>& orbits, double tol) {
    WeakCyclicity r;
    if (orbits.empty()) return r;
    std::size_t good = 0, plain = 0;
    for (const auto& v : orbits) {
        const int N = static_cast<int>(v.size());
        const bool pc = is_cyclic(v, tol);
        const bool ok = N % 2 == 1 ? pc : is_r_cyclic(r_restrict(v), tol);
        r.flags.push_back(ok);
        r.plain_flags.push_back(pc);
        good += ok;
        plain += pc;
    }
    r.fraction = static_cast<double>(good) / orbits.size();
    r.plain_fraction = static_cast<double>(plain) / orbits.size();
    return r;
}

}  // namespace se2n
