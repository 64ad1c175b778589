#include "se2n/zn_core.hpp"

#include <map>
#include <mutex>

#include "se2n/errors.hpp"

namespace se2n {

namespace {

const std::vector<cplx>& twiddles(int N) {
    static std::mutex mu;
    static std::map<int, std::vector<cplx>> cache;
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(N);
    if (it != cache.end()) return it->second;
    std::vector<cplx> t(N);
    for (int m = 0; m < N; ++m) t[m] = std::polar(1.0, -kTwoPi * m / N);
    return cache.emplace(N, std::move(t)).first->second;
}

CVec dft_impl(const CVec& v, bool inverse) {
    const int N = static_cast<int>(v.size());
    CVec out = CVec::Zero(N);
    if (N == 0) return out;
    const auto& tw = twiddles(N);
    const double scale = 1.0 / std::sqrt(static_cast<double>(N));
    for (int q = 0; q < N; ++q) {
        cplx acc = 0.0;
        for (int h = 0; h < N; ++h) {
            const cplx w = tw[(static_cast<long>(q) * h) % N];
            acc += (inverse ? std::conj(w) : w) * v[h];
        }
        out[q] = acc * scale;
    }
    return out;
}

}  // namespace

CVec shift_apply(long k, const CVec& v) {
    const int N = static_cast<int>(v.size());
    CVec out(N);
    for (int h = 0; h < N; ++h) out[h] = v[wrap(h - k, N)];
    return out;
}

CMat shift_matrix(long k, int N) {
    CMat s = CMat::Zero(N, N);
    for (int j = 0; j < N; ++j) s(wrap(j + k, N), j) = 1.0;
    return s;
}

CVec dft_zn(const CVec& v) { return dft_impl(v, false); }
CVec idft_zn(const CVec& v) { return dft_impl(v, true); }

CMat dft_matrix(int N) {
    CMat f(N, N);
    const auto& tw = twiddles(N);
    const double scale = 1.0 / std::sqrt(static_cast<double>(N));
    for (int q = 0; q < N; ++q)
        for (int h = 0; h < N; ++h) f(q, h) = tw[(static_cast<long>(q) * h) % N] * scale;
    return f;
}

CMat CirculantMatrix::dense() const {
    const int N = size();
    CMat m(N, N);
    for (int i = 0; i < N; ++i)
        for (int j = 0; j < N; ++j) m(i, j) = generator[wrap(i - j, N)];
    return m;
}

CVec CirculantMatrix::apply(const CVec& v) const {
    const int N = size();
    if (v.size() != N) throw DimensionError("circulant apply: length mismatch");
    CVec out = CVec::Zero(N);
    for (int i = 0; i < N; ++i)
        for (int j = 0; j < N; ++j) out[i] += generator[wrap(i - j, N)] * v[j];
    return out;
}

CVec circ_eigenvalues(const CirculantMatrix& m) {
    return dft_zn(m.generator) * std::sqrt(static_cast<double>(m.size()));
}

bool is_cyclic(const CVec& v, double tol) {
    if (v.size() == 0) return false;
    const double scale = v.cwiseAbs().maxCoeff();
    if (scale == 0.0) return false;
    const CVec ev = circ_eigenvalues(CirculantMatrix{v});
    return ev.cwiseAbs().minCoeff() > tol * scale;
}

CVec r_extend(const CVec& w) {
    const int h = static_cast<int>(w.size());
    CVec v(2 * h);
    for (int i = 0; i < h; ++i) {
        v[i] = w[i];
        v[i + h] = std::conj(w[i]);
    }
    return v;
}

CVec r_restrict(const CVec& v) {
    if (v.size() % 2 != 0) throw Unsupported("R-restriction needs even order");
    return v.head(v.size() / 2);
}

CVec r_shift(const CVec& w) { return r_restrict(shift_apply(1, r_extend(w))); }

CMat RCirculantMatrix::dense() const {
    const int h = static_cast<int>(generator.size());
    CMat m(h, h);
    CVec col = generator;
    for (int j = 0; j < h; ++j) {
        m.col(j) = col;
        col = r_shift(col);
    }
    return m;
}

Eigen::MatrixXd RCirculantMatrix::realified() const {
    const int h = static_cast<int>(generator.size());
    Eigen::MatrixXd r(2 * h, 2 * h);
    CVec col = generator;
    for (int j = 0; j < 2 * h; ++j) {
        r.col(j).head(h) = col.real();
        r.col(j).tail(h) = col.imag();
        col = r_shift(col);
    }
    return r;
}

double r_cyclic_margin(const CVec& w) {
    if (w.size() == 0) return 0.0;
    const double scale = w.cwiseAbs().maxCoeff();
    if (scale == 0.0) return 0.0;
    const Eigen::MatrixXd r = RCirculantMatrix{w}.realified();
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(r);
    return svd.singularValues().minCoeff() / scale;
}

bool is_r_cyclic(const CVec& w, double tol) { return r_cyclic_margin(w) > tol; }

bool is_r_cyclic(const CVec& w, int N, double tol) {
    if (N % 2 != 0) throw Unsupported("R-cyclicity is defined for even N only");
    if (2 * w.size() != N) throw DimensionError("R-cyclicity: generator must have N/2 entries");
    return is_r_cyclic(w, tol);
}

}  // namespace se2n
