#include <doctest.h>

#include "oracles.hpp"
#include "se2n/errors.hpp"
#include "se2n/fft.hpp"
#include "se2n/lift.hpp"
#include "se2n/ncft.hpp"

using namespace se2n;
using oracle::max_abs;

namespace {

GroupFunction random_gf(int N, int M, bool real = false) {
    GroupFunction f(N, M);
    for (auto& v : f.values) v = real ? cplx(oracle::gauss(), 0.0) : oracle::cgauss();
    return f;
}

double l2(const GroupFunction& f) {
    double s = 0.0;
    for (auto& v : f.values) s += std::norm(v);
    return s;
}

double max_diff(const GroupFunction& a, const GroupFunction& b) {
    double m = 0.0;
    for (std::size_t i = 0; i < a.values.size(); ++i) m = std::max(m, std::abs(a.values[i] - b.values[i]));
    return m;
}

}  // namespace

TEST_CASE("fft2 against the direct sum") {
    const int M = 6;
    std::vector<cplx> f(M * M);
    for (auto& v : f) v = oracle::cgauss();
    const auto F = fft2(f, M), G = oracle::dft2(f, M);
    double e = 0.0;
    for (int i = 0; i < M * M; ++i) e = std::max(e, std::abs(F[i] - G[i]));
    CHECK(e < 1e-12);
    const auto back = ifft2(F, M);
    e = 0.0;
    for (int i = 0; i < M * M; ++i) e = std::max(e, std::abs(back[i] - f[i]));
    CHECK(e < 1e-13);
}

TEST_CASE("spectrum lookup is exact on the lattice and bilinear between") {
    const int M = 8;
    std::vector<cplx> f(M * M);
    for (auto& v : f) v = oracle::cgauss();
    const PlanarSpectrum S = PlanarSpectrum::of(f, M);
    for (int p1 = -4; p1 < 4; ++p1)
        for (int p2 = -4; p2 < 4; ++p2) {
            const Vec2 l = from_lattice(p1, p2, M);
            CHECK(std::abs(S.at(l) - oracle::dtft(f, M, l)) < 1e-11);
        }
    const Vec2 mid = from_lattice(1.5, 0.0, M);
    const cplx expect = 0.5 * (S.at(from_lattice(1, 0, M)) + S.at(from_lattice(2, 0, M)));
    CHECK(std::abs(S.at(mid) - expect) < 1e-12);
}

TEST_CASE("orbit vectors") {
    const int M = 16;
    Image radial(M, M);
    for (int y = 0; y < M; ++y)
        for (int x = 0; x < M; ++x) {
            const double a = x < M / 2 ? x : x - M, b = y < M / 2 ? y : y - M;
            radial.at(x, y) = std::exp(-(a * a + b * b) / 6.0);
        }
    const PlanarSpectrum S = PlanarSpectrum::of(radial);
    const CVec o = orbit_vector(S, from_lattice(3, 1, M), 4);
    CHECK(max_abs(o - CVec::Constant(4, o[0])) < 1e-12);
    const CVec z = orbit_vector(S, {0, 0}, 4);
    CHECK(max_abs(z - CVec::Constant(4, S.F[0])) == 0.0);

    const PlanarSpectrum R = PlanarSpectrum::of(oracle::random_image(M));
    const Vec2 l = from_lattice(2, 5, M);
    for (long h = 0; h < 4; ++h)
        CHECK(max_abs(orbit_vector(R, rotate_k(l, -h, 4), 4) - shift_apply(h, orbit_vector(R, l, 4))) < 1e-12);
}

TEST_CASE("delta on layer zero") {
    GroupFunction f(4, 8);
    f.at(0, 0, 0) = 1.0;
    const SpectralField F = ncft_forward(f);
    for (std::size_t n = 0; n < F.size(); ++n) {
        CHECK(max_abs(F.mats[n] - CMat::Identity(4, 4)) < 1e-14);
    }
    const SpectralField Z = ncft_forward(GroupFunction(4, 8));
    for (const auto& m : Z.mats) CHECK(max_abs(m) == 0.0);
    CHECK(max_abs(Z.zero_slot) == 0.0);
}

TEST_CASE("entries follow the layer-difference rule at rotated frequencies") {
    const int N = 4, M = 8;
    const GroupFunction f = random_gf(N, M);
    const SpectralField F = ncft_forward(f);
    const Vec2 l = from_lattice(3, 1, M);
    const CMat m = F.matrix(l);
    for (int i = 0; i < N; ++i)
        for (int j = 0; j < N; ++j) {
            std::vector<cplx> layer(f.layer(wrap(j - i, N)), f.layer(wrap(j - i, N)) + f.plane());
            CHECK(std::abs(m(i, j) - oracle::dtft(layer, M, rotate_k(l, j, N))) < 1e-11);
        }
}

TEST_CASE("real input: opposite frequencies give conjugate matrices") {
    const int N = 4, M = 8;
    const SpectralField F = ncft_forward(random_gf(N, M, true));
    for (const auto& node : F.nodes) {
        const CMat a = F.matrix(node.lambda), b = F.matrix(-node.lambda);
        CHECK(max_abs(b - a.conjugate()) < 1e-12);
        // rotating lambda permutes indices
        const CMat r = F.matrix(rotate_k(node.lambda, 1, N));
        for (int i = 0; i < N; ++i)
            for (int j = 0; j < N; ++j) CHECK(std::abs(r(i, j) - a(wrap(i + 1, N), wrap(j + 1, N))) < 1e-12);
    }
}

TEST_CASE("round trip and Plancherel on rotation-closed grids") {
    for (int N : {1, 2, 4}) {
        for (int M : {8, 9, 16}) {
            const GroupFunction f = random_gf(N, M);
            const SpectralField F = ncft_forward(f);
            CHECK(max_diff(ncft_inverse(F, M), f) < 1e-10);
            CHECK(std::abs(plancherel_norm2(F) - l2(f)) < 1e-8 * l2(f));
        }
    }
    const SpectralField Z = ncft_forward(GroupFunction(4, 8));
    CHECK(max_diff(ncft_inverse(Z, 8), GroupFunction(4, 8)) == 0.0);
}

TEST_CASE("missing frequencies are rejected") {
    SpectralField F = ncft_forward(random_gf(4, 8));
    F.mats.pop_back();
    F.nodes.pop_back();
    CHECK_THROWS_AS(ncft_inverse(F, 8), IncompleteField);
    CHECK_THROWS_AS(ncft_inverse(ncft_forward(random_gf(4, 8)), 16), IncompleteField);
}

TEST_CASE("left translation multiplies by the inverse representation") {
    const int N = 4, M = 8;
    const GroupFunction g = random_gf(N, M);
    const GroupElement a{3, {2, -1}};
    const SpectralField G = ncft_forward(g), F = ncft_forward(left_action(a, g));
    for (const auto& node : G.nodes) {
        const CMat T = rep_matrix_any(node.lambda, N, a);
        CHECK(max_abs(F.matrix(node.lambda) - G.matrix(node.lambda) * T.adjoint()) < 1e-9);
    }
    CHECK(max_diff(ncft_inverse(F, M), left_action(a, g)) < 1e-10);
}

TEST_CASE("approximate inverse for orders that do not divide 4") {
    // Interpolated rotations are not exact; the round trip is only close for smooth data.
    const int N = 3, M = 16;
    GroupFunction f(N, M);
    for (int k = 0; k < N; ++k)
        for (int y = 0; y < M; ++y)
            for (int x = 0; x < M; ++x) f.at(k, x, y) = 1.0 + 0.2 * k + 0.1 * std::cos(kTwoPi * x / M);
    const GroupFunction back = ncft_inverse(ncft_forward(f), M);
    CHECK(max_diff(back, f) < 0.5);
    double mean_err = 0.0;
    for (std::size_t i = 0; i < f.values.size(); ++i) mean_err += std::abs(back.values[i] - f.values[i]);
    MESSAGE("N=3 round-trip mean abs error " << mean_err / f.values.size());
}

TEST_CASE("lift transforms are outer products") {
    CHECK(max_abs(ft_of_lift(CVec::Zero(3), oracle::random_cvec(3))) == 0.0);
    CVec e0 = CVec::Zero(3), e1 = CVec::Zero(3);
    e0[0] = 1.0;
    e1[1] = 1.0;
    CMat expect = CMat::Zero(3, 3);
    expect(0, 1) = 1.0;
    CHECK(max_abs(ft_of_lift(e0, e1) - expect) == 0.0);
    CHECK_THROWS_AS(ft_of_lift(e0, CVec::Zero(2)), DimensionError);

    const int N = 4, M = 16;
    const Image f = oracle::random_image(M);
    const Wavelet psi = Wavelet::gaussian(M, 1.5);
    const SpectralField L = ncft_forward(wavelet_lift(psi, f, N));
    const PlanarSpectrum S = PlanarSpectrum::of(f);
    double scale = 0.0;
    for (const auto& node : L.nodes) scale = std::max(scale, max_abs(L.matrix(node.lambda)));
    for (const auto& node : L.nodes) {
        const CMat r1 = ft_of_lift(psi.psi_star_orbit(node.lambda, N), orbit_vector(S, node.lambda, N));
        const CMat got = L.matrix(node.lambda);
        CHECK(max_abs(got - r1) < 1e-9 * std::max(1.0, max_abs(r1)));
        Eigen::JacobiSVD<CMat> svd(got);
        const auto s = svd.singularValues();
        // roundoff of the transforms sits at ~1e-15 of the largest entry
        if (s[0] > 1e-4 * scale) CHECK(s[1] / s[0] < 1e-8);
    }
}
