#include <doctest.h>

#include <algorithm>

#include "oracles.hpp"
#include "se2n/errors.hpp"
#include "se2n/zn_core.hpp"

using namespace se2n;
using oracle::max_abs;

namespace {

CVec vec(std::initializer_list<cplx> xs) {
    CVec v(static_cast<int>(xs.size()));
    int i = 0;
    for (auto x : xs) v[i++] = x;
    return v;
}

// Real dimension of span{S(k) v : k in Z_N} for v in the conjugate-symmetric space.
int real_span_rank(const CVec& w) {
    const int h = static_cast<int>(w.size()), N = 2 * h;
    CVec v(N);
    for (int i = 0; i < h; ++i) {
        v[i] = w[i];
        v[i + h] = std::conj(w[i]);
    }
    Eigen::MatrixXd m(2 * N, N);
    for (int k = 0; k < N; ++k)
        for (int i = 0; i < N; ++i) {
            const cplx s = v[((i - k) % N + N) % N];
            m(i, k) = s.real();
            m(N + i, k) = s.imag();
        }
    Eigen::FullPivLU<Eigen::MatrixXd> lu(m);
    lu.setThreshold(1e-10);
    return static_cast<int>(lu.rank());
}

}  // namespace

TEST_CASE("shift_apply on basis vectors") {
    CHECK(max_abs(shift_apply(0, vec({1, 2, 3})) - vec({1, 2, 3})) == 0.0);
    CHECK(max_abs(shift_apply(1, vec({1, 0, 0})) - vec({0, 1, 0})) == 0.0);
    const cplx a{1, 2}, b{3, -1}, c{0, 5}, d{-2, 0};
    CHECK(max_abs(shift_apply(2, vec({a, b, c, d})) - vec({c, d, a, b})) == 0.0);
    CHECK(max_abs(shift_apply(-3, vec({a, b, c, d})) - shift_apply(1, vec({a, b, c, d}))) == 0.0);
}

TEST_CASE("shift matrix composes and matches shift_apply") {
    const CVec v = oracle::random_cvec(7);
    for (int k = -8; k < 9; ++k) CHECK(max_abs(shift_matrix(k, 7) * v - shift_apply(k, v)) == 0.0);
    CHECK(max_abs(shift_matrix(3, 7) * shift_matrix(5, 7) - shift_matrix(8, 7)) == 0.0);
}

TEST_CASE("unitary DFT on Z_N") {
    CHECK(max_abs(dft_zn(vec({1, 1, 1, 1})) - vec({2, 0, 0, 0})) < 1e-15);
    CHECK(max_abs(dft_zn(vec({1, 0, 0, 0})) - vec({0.5, 0.5, 0.5, 0.5})) < 1e-15);
    const CVec v = oracle::random_cvec(8);
    CHECK(std::abs(dft_zn(v).norm() - v.norm()) < 1e-12);
    CVec naive(8);
    for (int q = 0; q < 8; ++q) {
        cplx acc = 0.0;
        for (int h = 0; h < 8; ++h) acc += std::polar(1.0, -2 * M_PI * q * h / 8) * v[h];
        naive[q] = acc / std::sqrt(8.0);
    }
    CHECK(max_abs(dft_zn(v) - naive) < 1e-13);
    CHECK(max_abs(idft_zn(dft_zn(v)) - v) < 1e-14);
    CHECK(max_abs(dft_matrix(8) * v - naive) < 1e-13);
}

TEST_CASE("circulant eigenvalues") {
    CirculantMatrix id{vec({1, 0, 0, 0, 0})};
    CHECK(max_abs(circ_eigenvalues(id) - CVec::Ones(5)) < 1e-15);

    CirculantMatrix s{vec({0, 1, 0, 0})};
    const CVec ev = circ_eigenvalues(s);
    Eigen::ComplexEigenSolver<CMat> es(s.dense());
    std::vector<cplx> a(ev.data(), ev.data() + 4), b(es.eigenvalues().data(), es.eigenvalues().data() + 4);
    for (const auto& x : a) {
        auto it = std::min_element(b.begin(), b.end(), [&](cplx p, cplx q) { return std::abs(p - x) < std::abs(q - x); });
        CHECK(std::abs(*it - x) < 1e-12);
    }

    CirculantMatrix r{oracle::random_cvec(6)};
    const CVec e6 = circ_eigenvalues(r);
    Eigen::ComplexEigenSolver<CMat> es6(r.dense());
    std::vector<cplx> rest(es6.eigenvalues().data(), es6.eigenvalues().data() + 6);
    for (int i = 0; i < 6; ++i) {
        auto it = std::min_element(rest.begin(), rest.end(),
                                   [&](cplx p, cplx q) { return std::abs(p - e6[i]) < std::abs(q - e6[i]); });
        CHECK(std::abs(*it - e6[i]) < 1e-10);
        rest.erase(it);
    }
    // eigenvector convention: column q of dft_matrix^* with eigenvalue e6[q]
    const CMat V = dft_matrix(6).adjoint();
    for (int q = 0; q < 6; ++q) CHECK(max_abs(r.dense() * V.col(q) - e6[q] * V.col(q)) < 1e-12);
    const CVec x = oracle::random_cvec(6);
    CHECK(max_abs(r.apply(x) - r.dense() * x) < 1e-12);
}

TEST_CASE("is_cyclic") {
    CHECK(is_cyclic(vec({1, 0, 0})));
    CHECK_FALSE(is_cyclic(vec({1, 1, 1, 1})));
    CHECK(is_cyclic(vec({2, 1, 0, 0}), 1e-9));
    CHECK(std::abs(CirculantMatrix{vec({2, 1, 0, 0})}.dense().determinant()) > 1e-6);
    CHECK_FALSE(is_cyclic(CVec::Zero(5)));
}

TEST_CASE("R-cyclicity against the real span of all shifts") {
    // (1, 0, 1, 0) has only two distinct shifts
    CHECK_FALSE(is_r_cyclic(vec({1, 0}), 4));
    CHECK(real_span_rank(vec({1, 0})) == 2);
    CHECK(is_r_cyclic(vec({1, cplx(0.3, 0.7)}), 4));
    CHECK(real_span_rank(vec({1, cplx(0.3, 0.7)})) == 4);
    CHECK_FALSE(is_r_cyclic(vec({0, 0}), 4));
    const CVec w = vec({1, cplx(0, 1)});
    CHECK(is_r_cyclic(w, 4) == (real_span_rank(w) == 4));
    // The N/2-column complex matrix of the even circulant is singular here, the real span is not.
    CHECK(std::abs(RCirculantMatrix{w}.dense().determinant()) < 1e-14);
    CHECK(real_span_rank(w) == 4);
    for (int t = 0; t < 20; ++t) {
        CVec r = oracle::random_cvec(3);
        if (t % 4 == 0) r[1] = r[0];  // still generic
        if (t % 5 == 0) r = vec({1, 1, 1});
        CHECK(is_r_cyclic(r, 6) == (real_span_rank(r) == 6));
    }
    CHECK_THROWS_AS(is_r_cyclic(vec({1, 0}), 5), Unsupported);
}

TEST_CASE("r_extend and r_shift conjugate the shift") {
    const CVec w = oracle::random_cvec(4);
    const CVec v = r_extend(w);
    for (int h = 0; h < 4; ++h) CHECK(std::abs(v[h + 4] - std::conj(v[h])) == 0.0);
    CHECK(max_abs(r_restrict(v) - w) == 0.0);
    CHECK(max_abs(r_extend(r_shift(w)) - shift_apply(1, v)) < 1e-15);
}

TEST_CASE("cyclic index arithmetic wraps") {
    CyclicIndex a(7, 5), b(-1, 5);
    CHECK(a.value == 2);
    CHECK(b.value == 4);
    CHECK((a + b).value == 1);
    CHECK((a - b).value == 3);
    CHECK((-a).value == 3);
}
